#pragma once

// Shared generators for the randomized suites. Everything is seeded
// explicitly so runs are reproducible.

#include <random>
#include <vector>

#include "specshift/measures.hpp"
#include "specshift/phase_shift.hpp"

namespace testsupport {

using specshift::Atom;
using specshift::AtomicMeasure;
using specshift::Interval;
using specshift::PhaseShift;

// n atoms with locations in (lo, hi), pairwise gaps >= min_gap, masses in
// (0.1, 1).
inline AtomicMeasure random_measure(std::mt19937_64& rng, int max_atoms = 12,
                                    double min_gap = 1e-3, double lo = 0.0,
                                    double hi = 1.0) {
    std::uniform_int_distribution<int> nd(1, max_atoms);
    std::uniform_real_distribution<double> xd(lo + 1e-3, hi - 1e-3);
    std::uniform_real_distribution<double> wd(0.1, 1.0);
    const int n = nd(rng);
    std::vector<double> xs;
    while ((int)xs.size() < n) {
        double x = xd(rng);
        bool ok = true;
        for (double p : xs)
            if (std::abs(p - x) < min_gap) ok = false;
        if (ok) xs.push_back(x);
    }
    std::sort(xs.begin(), xs.end());
    std::vector<Atom> atoms;
    for (double x : xs) atoms.push_back({x, wd(rng)});
    return specshift::make_measure(std::move(atoms));
}

// Exact shift with up to max_intervals intervals in (0,1), endpoint gaps
// >= min_gap.
inline PhaseShift random_exact_shift(std::mt19937_64& rng,
                                     int max_intervals = 15,
                                     double min_gap = 1e-3) {
    std::uniform_int_distribution<int> nd(1, max_intervals);
    std::uniform_real_distribution<double> xd(1e-3, 1.0 - 1e-3);
    const int n = nd(rng);
    std::vector<double> pts;
    while ((int)pts.size() < 2 * n) {
        double x = xd(rng);
        bool ok = true;
        for (double p : pts)
            if (std::abs(p - x) < min_gap) ok = false;
        if (ok) pts.push_back(x);
    }
    std::sort(pts.begin(), pts.end());
    std::vector<Interval> ivs;
    for (int i = 0; i < n; ++i) ivs.push_back({pts[2 * i], pts[2 * i + 1]});
    return specshift::exact_shift(+1, std::move(ivs));
}

}  // namespace testsupport
