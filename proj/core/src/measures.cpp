#include "specshift/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace specshift {

bool IntervalSet::contains(double x) const {
    for (const auto& iv : intervals)
        if (iv.contains(x)) return true;
    return false;
}

double IntervalSet::total_length() const {
    double s = 0.0;
    for (const auto& iv : intervals) s += iv.length();
    return s;
}

std::optional<std::string> validate(const AtomicMeasure& m, double merge_tol) {
    if (m.infinity_mass < 0.0) return "negative infinity mass";
    if (!std::isfinite(m.infinity_mass)) return "non-finite infinity mass";
    for (size_t i = 0; i < m.atoms.size(); ++i) {
        const Atom& a = m.atoms[i];
        if (!std::isfinite(a.x)) return "non-finite atom location";
        if (!(a.w > 0.0)) return "nonpositive mass";
        if (!std::isfinite(a.w)) return "non-finite mass";
        if (i > 0) {
            if (m.atoms[i - 1].x > a.x) return "unsorted";
            if (a.x - m.atoms[i - 1].x < merge_tol)
                return "duplicate locations (closer than merge tolerance)";
        }
    }
    return std::nullopt;
}

std::optional<std::string> validate(const IntervalSet& s) {
    for (size_t i = 0; i < s.intervals.size(); ++i) {
        const Interval& iv = s.intervals[i];
        if (!std::isfinite(iv.left) || !std::isfinite(iv.right))
            return "non-finite endpoint";
        if (!(iv.left < iv.right)) return "empty or inverted interval";
        if (i > 0 && s.intervals[i - 1].right > iv.left)
            return "overlapping intervals";
    }
    return std::nullopt;
}

double total_mass(const AtomicMeasure& m) {
    double s = m.infinity_mass;
    for (const auto& a : m.atoms) s += a.w;
    return s;
}

double measure_norm(const AtomicMeasure& m) {
    double s = 0.0;
    for (const auto& a : m.atoms) s += a.w / (1.0 + a.x * a.x);
    return s / std::numbers::pi + m.infinity_mass;
}

AtomicMeasure restrict_to(const AtomicMeasure& m, const IntervalSet& s) {
    AtomicMeasure out;
    for (const auto& a : m.atoms)
        if (s.contains(a.x)) out.atoms.push_back(a);
    return out;
}

double mass_at(const AtomicMeasure& m, double x, double tol) {
    for (const auto& a : m.atoms)
        if (std::abs(a.x - x) <= tol) return a.w;
    return 0.0;
}

AtomicMeasure make_measure(std::vector<Atom> atoms, double infinity_mass) {
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.x < b.x; });
    AtomicMeasure m{std::move(atoms), infinity_mass};
    if (auto err = validate(m)) throw std::invalid_argument("make_measure: " + *err);
    return m;
}

AtomicMeasure disjoint_union(const AtomicMeasure& a, const AtomicMeasure& b) {
    std::vector<Atom> atoms = a.atoms;
    atoms.insert(atoms.end(), b.atoms.begin(), b.atoms.end());
    return make_measure(std::move(atoms), a.infinity_mass + b.infinity_mass);
}

}  // namespace specshift
