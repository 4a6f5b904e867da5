#pragma once

#include <optional>
#include <string>
#include <vector>

namespace specshift {

/// A point of the extended real line: either a finite value or the point at
/// infinity. Infinity compares above every finite value.
struct ExtendedReal {
    double value = 0.0;
    bool at_infinity = false;

    static ExtendedReal finite(double v) { return {v, false}; }
    static ExtendedReal infinity() { return {0.0, true}; }

    friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
        if (a.at_infinity || b.at_infinity) return a.at_infinity == b.at_infinity;
        return a.value == b.value;
    }
    friend bool operator<(const ExtendedReal& a, const ExtendedReal& b) {
        if (a.at_infinity) return false;
        if (b.at_infinity) return true;
        return a.value < b.value;
    }
};

/// One atom: a point mass w > 0 at a finite location x.
struct Atom {
    double x = 0.0;
    double w = 0.0;
};

/// Finite nonnegative atomic measure on the extended real line. Atom
/// locations are strictly increasing; an optional extra mass sits at the
/// point at infinity. Values are immutable by convention: no operation in
/// this library mutates its inputs.
struct AtomicMeasure {
    std::vector<Atom> atoms;
    double infinity_mass = 0.0;
};

/// Open interval (left, right), left < right.
struct Interval {
    double left = 0.0;
    double right = 0.0;
    double length() const { return right - left; }
    bool contains(double x) const { return left < x && x < right; }
};

/// Finite union of pairwise disjoint open intervals, sorted ascending.
/// Touching endpoints (right_i == left_{i+1}) are allowed.
struct IntervalSet {
    std::vector<Interval> intervals;
    bool contains(double x) const;
    double total_length() const;
};

/// Default separation below which two atom locations are considered a
/// duplicate. Duplicates are rejected, never merged.
inline constexpr double kMergeTolerance = 1e-12;

/// Checks all invariants; returns a description of the first violation,
/// or nullopt if the measure is valid.
std::optional<std::string> validate(const AtomicMeasure& m,
                                    double merge_tol = kMergeTolerance);

std::optional<std::string> validate(const IntervalSet& s);

/// Total variation mass, Σ w_i + mass at infinity.
double total_mass(const AtomicMeasure& m);

/// Measure-space norm: (1/π) Σ w_i / (1 + x_i^2) + infinity mass.
double measure_norm(const AtomicMeasure& m);

/// Keeps exactly the atoms lying inside some interval of `s`; the mass at
/// infinity is dropped.
AtomicMeasure restrict_to(const AtomicMeasure& m, const IntervalSet& s);

/// Mass of the atom at x, if there is one within `tol`; 0 otherwise.
double mass_at(const AtomicMeasure& m, double x, double tol = kMergeTolerance);

/// Builds a measure from unsorted (x, w) pairs; throws std::invalid_argument
/// if the result fails validation.
AtomicMeasure make_measure(std::vector<Atom> atoms, double infinity_mass = 0.0);

/// Union of two measures whose atom locations are disjoint.
AtomicMeasure disjoint_union(const AtomicMeasure& a, const AtomicMeasure& b);

}  // namespace specshift
