#pragma once

#include <complex>
#include <vector>

#include "specshift/measures.hpp"
#include "specshift/transforms.hpp"

namespace specshift {

/// Real coupling constant of the perturbation family A + lambda*(., v)v.
struct Coupling {
    double lambda = 0.0;
};

/// Circle-side parametrization of a family member: the unimodular parameter
/// together with the Poisson scaling factor c = 1/(1 + pi^2 lambda^2).
struct CircleParam {
    Complex alpha{1.0, 0.0};
    double scale_c = 1.0;
};

/// beta = (1 + i pi lambda)/(1 - i pi lambda), c = 1/(1 + pi^2 lambda^2).
CircleParam coupling_to_circle(Coupling lam);

/// Inverse map lambda = (i/pi)(1 - alpha)/(1 + alpha); requires |alpha| = 1
/// (within 1e-12) and alpha != -1 (infinite coupling).
Coupling circle_to_coupling(Complex alpha);

/// Cauchy transform of the lambda-perturbed measure via the resolvent
/// relation K_lambda = K_0 / (1 + pi*lambda*K_0). Herglotz on C_+.
Complex perturbed_cauchy(const AtomicMeasure& m0, Coupling lam,
                         UpperHalfPlanePoint z);

/// Perturbed measure extracted from the poles and residues of the resolvent
/// relation: locations are the gap-wise roots of the real boundary value of
/// 1 + pi*lambda*K(m0), masses come from the derivative of the transform at
/// each root. Independent of the phase-shift pipeline's product formulas.
AtomicMeasure perturbed_measure_resolvent(const AtomicMeasure& m0, Coupling lam);

/// Contractive analytic function attached to a base measure by
/// -i*K(m0) = (1 + phi)/(1 - phi); evaluated on demand, never stored in a
/// series or rational canonical form.
struct CharFunction {
    AtomicMeasure base;
};

/// phi(z) = (w - 1)/(w + 1) with w = -i*K(base)(z); |phi| < 1 strictly.
Complex char_function_eval(const CharFunction& cf, UpperHalfPlanePoint z);

/// Poisson integral of the family member at parameter alpha:
/// Re (alpha + phi)/(alpha - phi), nonnegative on C_+.
double clark_member_poisson(const CharFunction& cf, Complex alpha,
                            UpperHalfPlanePoint z);

struct AtomTestConfig {
    double limit_tol = 1e-6;          // |phi limit - alpha| match threshold
    double quotient_rel_tol = 1e-6;   // difference-quotient convergence
    LimitConfig limits{};             // sampling ray
    // The quotient (phi - alpha)/(i y) loses all significant digits once y
    // drops near machine precision; the quotient trail stops at this height.
    double quotient_y_floor = 1e-9;
};

/// Per-point classification verdict with its full numeric evidence trail.
struct SpectralVerdict {
    enum class Kind { atom, no_atom, singular_continuous_evidence, undecided };
    Kind kind = Kind::undecided;
    double mass = 0.0;        // member-measure mass at x when kind == atom
    Complex phi_limit{};      // extrapolated boundary value of phi (if any)
    double limit_gap = 0.0;   // |phi_limit - alpha|
    bool limit_converged = false;
    bool quotient_diverging = false;
    std::vector<std::pair<double, double>> quotient_trail;  // (y, |quotient|)
};

/// Atom test at x for the member at parameter alpha: the member has a point
/// mass iff phi approaches alpha with a finite difference quotient
/// (phi(z) - alpha)/(z - x). A diverging quotient under a shrinking
/// |phi - alpha| is reported as singular-continuous evidence; anything
/// short of that stays undecided.
SpectralVerdict atom_test_nontangential(const CharFunction& cf, Complex alpha,
                                        double x,
                                        const AtomTestConfig& config = {});

}  // namespace specshift
