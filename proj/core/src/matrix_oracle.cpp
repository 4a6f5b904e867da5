#include "specshift/matrix_oracle.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "specshift/phase_shift.hpp"

namespace specshift {

OracleModel measure_to_model(const AtomicMeasure& m) {
    if (auto err = validate(m))
        throw std::invalid_argument("measure_to_model: " + *err);
    if (m.infinity_mass > 0.0)
        throw std::invalid_argument("measure_to_model: mass at infinity has no finite realization");
    OracleModel model;
    model.diag.reserve(m.atoms.size());
    model.vec.reserve(m.atoms.size());
    for (const auto& a : m.atoms) {
        model.diag.push_back(a.x);
        model.vec.push_back(std::sqrt(a.w));
    }
    return model;
}

AtomicMeasure model_to_measure(const OracleModel& model) {
    if (model.diag.size() != model.vec.size())
        throw std::invalid_argument("model_to_measure: size mismatch");
    std::vector<Atom> atoms;
    atoms.reserve(model.diag.size());
    for (size_t i = 0; i < model.diag.size(); ++i) {
        if (!(model.vec[i] > 0.0))
            throw std::invalid_argument("model_to_measure: cyclic vector needs positive entries");
        atoms.push_back({model.diag[i], model.vec[i] * model.vec[i]});
    }
    return make_measure(std::move(atoms));
}

PerturbedSpectrum perturb_spectrum_full(const OracleModel& model, Coupling lam,
                                        std::size_t size_cap) {
    const size_t n = model.diag.size();
    if (n != model.vec.size())
        throw std::invalid_argument("perturb_spectrum: size mismatch");
    if (n > size_cap)
        throw std::invalid_argument("perturb_spectrum: model exceeds the desk-scale cap");
    PerturbedSpectrum out;
    if (n == 0) return out;

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd v(n);
    for (size_t i = 0; i < n; ++i) {
        A(i, i) = model.diag[i];
        v(static_cast<Eigen::Index>(i)) = model.vec[i];
    }
    A += lam.lambda * v * v.transpose();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(A);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("perturb_spectrum: eigensolver failed (cond estimate " +
                                 std::to_string(A.norm()) + ")");

    std::vector<Atom> atoms;
    atoms.reserve(n);
    for (size_t j = 0; j < n; ++j) {
        double loc = solver.eigenvalues()(static_cast<Eigen::Index>(j));
        double proj = solver.eigenvectors().col(static_cast<Eigen::Index>(j)).dot(v);
        double mass = proj * proj;
        if (mass < 1e-14) out.tiny.emplace_back(loc, mass);
        if (mass > 0.0) atoms.push_back({loc, mass});
    }
    out.measure = make_measure(std::move(atoms));
    return out;
}

AtomicMeasure perturb_spectrum(const OracleModel& model, Coupling lam,
                               std::size_t size_cap) {
    return perturb_spectrum_full(model, lam, size_cap).measure;
}

namespace {

bool strictly_interlaced(const AtomicMeasure& base, const AtomicMeasure& pert,
                         double lambda) {
    const auto& a = base.atoms;
    const auto& b = pert.atoms;
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (lambda > 0.0) {
            // a_i < b_i < a_{i+1}
            if (!(a[i].x < b[i].x)) return false;
            if (i + 1 < a.size() && !(b[i].x < a[i + 1].x)) return false;
        } else {
            // b_i < a_i < b_{i+1}
            if (!(b[i].x < a[i].x)) return false;
            if (i + 1 < a.size() && !(a[i].x < b[i + 1].x)) return false;
        }
    }
    return true;
}

}  // namespace

DiscrepancyReport compare_with_formula(const AtomicMeasure& m, Coupling lam) {
    DiscrepancyReport rep;
    rep.n = m.atoms.size();
    rep.lambda = lam.lambda;

    AtomicMeasure via_oracle = perturb_spectrum(measure_to_model(m), lam);
    AtomicMeasure via_resolvent = perturbed_measure_resolvent(m, lam);
    PhaseShift u = exact_shift_from_measure(m, lam.lambda);
    MeasurePair pair = pair_from_shift(u, lam.lambda);
    const AtomicMeasure& via_shift = pair.nu;

    rep.counts_match = via_oracle.atoms.size() == via_resolvent.atoms.size() &&
                       via_oracle.atoms.size() == via_shift.atoms.size();
    if (rep.counts_match) {
        for (size_t i = 0; i < via_oracle.atoms.size(); ++i) {
            double x1 = via_oracle.atoms[i].x, x2 = via_resolvent.atoms[i].x,
                   x3 = via_shift.atoms[i].x;
            double w1 = via_oracle.atoms[i].w, w2 = via_resolvent.atoms[i].w,
                   w3 = via_shift.atoms[i].w;
            rep.max_location_error =
                std::max({rep.max_location_error, std::abs(x1 - x2),
                          std::abs(x1 - x3), std::abs(x2 - x3)});
            rep.max_mass_error =
                std::max({rep.max_mass_error, std::abs(w1 - w2),
                          std::abs(w1 - w3), std::abs(w2 - w3)});
        }
    }
    if (pair.mu.atoms.size() == m.atoms.size()) {
        for (size_t i = 0; i < m.atoms.size(); ++i) {
            rep.base_reconstruction_error =
                std::max({rep.base_reconstruction_error,
                          std::abs(pair.mu.atoms[i].x - m.atoms[i].x),
                          std::abs(pair.mu.atoms[i].w - m.atoms[i].w)});
        }
    } else {
        rep.base_reconstruction_error = std::numeric_limits<double>::infinity();
    }
    rep.mass_conservation_error =
        std::abs(total_mass(via_oracle) - total_mass(m));
    rep.interlaced = strictly_interlaced(m, via_oracle, lam.lambda);
    return rep;
}

}  // namespace specshift
