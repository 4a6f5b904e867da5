#pragma once

// Internal helpers: piecewise-constant boundary functions and the clipped
// logarithmic integrals every pointwise criterion reduces to.

#include <cmath>
#include <vector>

#include "specshift/phase_shift.hpp"

namespace specshift::detail {

// Piecewise-constant function: vals[i] on (pts[i], pts[i+1]), 0 outside
// [pts.front(), pts.back()]. pts strictly increasing.
struct PiecewiseConstant {
    std::vector<double> pts;
    std::vector<double> vals;

    bool empty() const { return vals.empty(); }
    double left_end() const { return pts.front(); }
    double right_end() const { return pts.back(); }

    double value_at(double x) const;
    double right_value(double x) const;  // limit from the right
    double left_value(double x) const;   // limit from the left
};

PiecewiseConstant from_shift(const PhaseShift& u);

// Restriction to (lo, hi); pieces outside are dropped.
PiecewiseConstant clip(const PiecewiseConstant& f, double lo, double hi);

// f + c * indicator of (lo, hi).
PiecewiseConstant add_indicator(const PiecewiseConstant& f, double c,
                                double lo, double hi);

// f - g on the union of supports.
PiecewiseConstant subtract(const PiecewiseConstant& f,
                           const PiecewiseConstant& g);

// The symmetric clipped integral of g(t)/(t - x):
//   I(eps) = integral over supp(g) \ (x-eps, x+eps)
//          = finite_part + gamma * log(1/eps) + o(1),
// with gamma = g(x+) - g(x-) exactly. finite_part is the principal value
// when gamma == 0.
struct ClippedLogIntegral {
    double gamma = 0.0;
    double finite_part = 0.0;
};

ClippedLogIntegral clipped_log_integral(const PiecewiseConstant& g, double x);

// Exact value of the clipped integral at a specific eps > 0.
double clipped_log_value(const PiecewiseConstant& g, double x, double eps);

// Geometric height/clip sequence y_k = y0 * ratio^k, k = 0..steps-1.
std::vector<double> geometric_sequence(double y0, double ratio, int steps);

// Richardson extrapolation on a geometric sample window (ratio r per step).
double richardson(const std::vector<double>& window, double r);

}  // namespace specshift::detail
