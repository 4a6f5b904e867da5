#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "specshift/measures.hpp"
#include "specshift/phase_shift.hpp"

namespace specshift {

/// Point z = x + iy of the open upper half-plane, y > 0.
struct UpperHalfPlanePoint {
    double x = 0.0;
    double y = 1.0;
    Complex z() const { return {x, y}; }
};

/// Vertical-ray boundary limit machinery. The ray realizes nontangential
/// approach: for Herglotz transforms of finite atomic measures the vertical
/// limit exists iff the nontangential one does.
struct LimitConfig {
    double y0 = 0.1;      // first height
    double ratio = 0.5;   // geometric ratio of the height sequence
    int steps = 40;       // number of samples
    double tol = 1e-8;    // extrapolant agreement threshold
    double cap = 1e12;    // magnitude cap for divergence
    int window = 8;       // extrapolation window
};

struct BoundaryLimitResult {
    enum class Kind { converged, diverges_plus, diverges_minus, undecided };
    Kind kind = Kind::undecided;
    Complex value{};  // meaningful iff kind == converged
    std::vector<std::pair<double, Complex>> evidence;  // (y, f(x+iy)) samples
};

using HalfPlaneFunction = std::function<Complex(UpperHalfPlanePoint)>;

/// Cauchy transform (1/pi) * sum w_i / (x_i - z). Strictly positive
/// imaginary part on the upper half-plane. Rejects measures carrying mass at
/// infinity: the transform would silently ignore it.
Complex cauchy(const AtomicMeasure& m, UpperHalfPlanePoint z);

/// Poisson integral (1/pi) * sum w_i * y / ((x - x_i)^2 + y^2) plus
/// y * (mass at infinity). Equals Im cauchy when the infinity mass is zero.
double poisson(const AtomicMeasure& m, UpperHalfPlanePoint z);

/// Cauchy transform of a phase shift, (1/pi) * integral of u(t)/(t-z) dt.
/// Exact shifts take the closed logarithmic form
///   sign * sum log((b_i - z)/(a_i - z)),
/// branch-consistent because every factor lies in the upper half-plane for
/// z in C_+. Sampled shifts are integrated by quadrature on the linear
/// interpolant (lower trust).
Complex cauchy_of_shift(const PhaseShift& u, UpperHalfPlanePoint z);

/// Same integral evaluated by adaptive quadrature even for exact shifts;
/// used as the independent cross-check of the closed form.
Complex cauchy_of_shift_quadrature(const PhaseShift& u, UpperHalfPlanePoint z);

/// Conjugate Poisson integral Qu = -Re K u.
double conj_poisson(const PhaseShift& u, UpperHalfPlanePoint z);

/// Samples f along x + i*y_k, y_k = y0 * ratio^k, and runs Richardson
/// extrapolation on a sliding window. Converged when successive extrapolants
/// agree to tol; divergent when |f| grows monotonically past the cap;
/// undecided otherwise (undecided is a value, not an error).
BoundaryLimitResult nontangential_limit(const HalfPlaneFunction& f, double x,
                                        const LimitConfig& config = {});

struct PvConfig {
    double eps0 = 0.25;   // first clip radius
    int steps = 30;       // geometric clip sequence eps_k = eps0 * 2^-k
    double tol = 1e-9;
    int trend_window = 8;
};

struct PvResult {
    enum class Kind { finite, plus_inf, minus_inf, undecided };
    Kind kind = Kind::undecided;
    double value = 0.0;  // meaningful iff kind == finite
    std::vector<std::pair<double, double>> partials;  // (eps, clipped value)
};

/// Principal value of the integral of u(x + t)/t over (-window, window).
/// Exact shifts are evaluated in closed form: the clipped integral equals
/// C + gamma * log(1/eps) with gamma the jump of u at x, so the verdict is
/// exact. Sampled shifts use clipped quadrature with trend detection over
/// the last `trend_window` truncations.
PvResult pv_integral(const PhaseShift& u, double x, double window = 0.0,
                     const PvConfig& config = {});

struct HilbertCorrection {
    double sup = 0.0;      // sup over sampled heights of the correction
    double last = 0.0;     // correction at the smallest height
    bool tends_to_zero = false;
    std::vector<std::pair<double, double>> trail;  // (y, |Qu - truncated|)
};

/// Difference between Qu(x+iy) and the y-truncated singular integral
/// of u(t)/(x - t). Bounded near every point; o(1) at Lebesgue points of u
/// (interior points of constancy intervals, for exact shifts).
HilbertCorrection hilbert_correction_check(const PhaseShift& u, double x,
                                           const LimitConfig& config = {});

struct StieltjesAtomResult {
    BoundaryLimitResult::Kind kind = BoundaryLimitResult::Kind::undecided;
    double mass = 0.0;
    std::vector<std::pair<double, double>> trail;  // (y, y*Im(pi f))
};

/// Stieltjes inversion of the atom mass at x: the limit of y * Im(pi f(x+iy))
/// for f the Cauchy transform of a finite nonnegative measure.
StieltjesAtomResult stieltjes_atom(const HalfPlaneFunction& f, double x,
                                   const LimitConfig& config = {});

struct ClarkLimitCheck {
    double x = 0.0;
    double expected = 0.0;
    BoundaryLimitResult limit;
    bool passed = false;
};

struct ClarkLimitReport {
    std::vector<ClarkLimitCheck> checks;
    bool all_passed = false;
};

/// Boundary-limit property of normalized Cauchy quotients: with F formed as
/// (1 + K(f*sigma))/(1 + K sigma) for atomic sigma, the nontangential limit
/// of F at each atom equals the value of f there. `f_values` pairs with
/// sigma's atoms; `xs` selects which atoms to check (indices into sigma).
ClarkLimitReport verify_clark_limit(const AtomicMeasure& sigma,
                                    const std::vector<double>& f_values,
                                    const std::vector<size_t>& xs,
                                    double tol = 1e-6,
                                    const LimitConfig& config = {});

}  // namespace specshift
