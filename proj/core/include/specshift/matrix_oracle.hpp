#pragma once

#include <cstddef>
#include <vector>

#include "specshift/measures.hpp"
#include "specshift/rank_one.hpp"

namespace specshift {

/// Diagonal realization of an atomic measure: multiplication by x on the
/// atoms, with cyclic vector components sqrt(w_i).
struct OracleModel {
    std::vector<double> diag;  // strictly increasing eigenvalues
    std::vector<double> vec;   // positive cyclic-vector components
};

OracleModel measure_to_model(const AtomicMeasure& m);
AtomicMeasure model_to_measure(const OracleModel& model);

struct PerturbedSpectrum {
    AtomicMeasure measure;
    /// Projections below 1e-14 are kept in the measure (when positive) but
    /// reported here, never dropped silently.
    std::vector<std::pair<double, double>> tiny;  // (location, mass)
};

inline constexpr std::size_t kOracleSizeCap = 512;

/// Ground truth: forms the dense symmetric matrix diag + lambda * v v^T,
/// runs a full eigendecomposition, and reads the perturbed spectral measure
/// off the eigenvector projections. Total mass is preserved to solver
/// tolerance.
PerturbedSpectrum perturb_spectrum_full(const OracleModel& model, Coupling lam,
                                        std::size_t size_cap = kOracleSizeCap);

AtomicMeasure perturb_spectrum(const OracleModel& model, Coupling lam,
                               std::size_t size_cap = kOracleSizeCap);

/// Cross-validation of the perturbation pipelines against the oracle:
/// compares (a) matrix diagonalization, (b) pole/residue extraction from the
/// resolvent relation, (c) the phase-shift product formulas, pairwise.
struct DiscrepancyReport {
    std::size_t n = 0;
    double lambda = 0.0;
    double max_location_error = 0.0;  // pairwise, all three routes
    double max_mass_error = 0.0;
    double base_reconstruction_error = 0.0;  // pipeline mu vs input measure
    double mass_conservation_error = 0.0;    // oracle total vs input total
    bool interlaced = false;                 // strict, on the correct side
    bool counts_match = false;
};

DiscrepancyReport compare_with_formula(const AtomicMeasure& m, Coupling lam);

}  // namespace specshift
