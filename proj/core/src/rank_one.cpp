#include "specshift/rank_one.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "piecewise.hpp"
#include "specshift/phase_shift.hpp"

namespace specshift {

namespace {
constexpr double kPi = std::numbers::pi;
}

CircleParam coupling_to_circle(Coupling lam) {
    const Complex i{0.0, 1.0};
    CircleParam out;
    out.alpha = (1.0 + i * kPi * lam.lambda) / (1.0 - i * kPi * lam.lambda);
    out.scale_c = 1.0 / (1.0 + kPi * kPi * lam.lambda * lam.lambda);
    return out;
}

Coupling circle_to_coupling(Complex alpha) {
    if (std::abs(std::abs(alpha) - 1.0) > 1e-12)
        throw std::invalid_argument("circle_to_coupling: |alpha| must be 1");
    if (std::abs(alpha + 1.0) < 1e-12)
        throw std::invalid_argument("circle_to_coupling: alpha = -1 is infinite coupling");
    const Complex i{0.0, 1.0};
    Complex lam = (i / kPi) * (1.0 - alpha) / (1.0 + alpha);
    return {lam.real()};
}

Complex perturbed_cauchy(const AtomicMeasure& m0, Coupling lam,
                         UpperHalfPlanePoint z) {
    Complex k0 = cauchy(m0, z);
    return k0 / (1.0 + kPi * lam.lambda * k0);
}

AtomicMeasure perturbed_measure_resolvent(const AtomicMeasure& m0, Coupling lam) {
    if (auto err = validate(m0))
        throw std::invalid_argument("perturbed_measure_resolvent: " + *err);
    if (lam.lambda == 0.0) return m0;
    // The sign-change roots of 1 + pi*lambda*K(m0) on the boundary are the
    // endpoints of the exact shift's intervals opposite the input atoms.
    PhaseShift u = exact_shift_from_measure(m0, lam.lambda);
    std::vector<Atom> atoms;
    atoms.reserve(u.intervals.size());
    for (const auto& iv : u.intervals) {
        double r = lam.lambda > 0.0 ? iv.right : iv.left;
        double s2 = 0.0;
        for (const auto& a : m0.atoms) {
            double d = a.x - r;
            s2 += a.w / (d * d);
        }
        atoms.push_back({r, 1.0 / (lam.lambda * lam.lambda * s2)});
    }
    return make_measure(std::move(atoms));
}

Complex char_function_eval(const CharFunction& cf, UpperHalfPlanePoint z) {
    const Complex i{0.0, 1.0};
    Complex w = -i * cauchy(cf.base, z);
    return (w - 1.0) / (w + 1.0);
}

double clark_member_poisson(const CharFunction& cf, Complex alpha,
                            UpperHalfPlanePoint z) {
    Complex phi = char_function_eval(cf, z);
    return ((alpha + phi) / (alpha - phi)).real();
}

SpectralVerdict atom_test_nontangential(const CharFunction& cf, Complex alpha,
                                        double x, const AtomTestConfig& config) {
    SpectralVerdict out;
    auto phi = [&](UpperHalfPlanePoint z) { return char_function_eval(cf, z); };
    BoundaryLimitResult lim = nontangential_limit(phi, x, config.limits);

    std::vector<double> ys;
    for (double y : detail::geometric_sequence(config.limits.y0,
                                               config.limits.ratio,
                                               config.limits.steps))
        if (y >= config.quotient_y_floor) ys.push_back(y);
    std::vector<double> qmag, gap;
    for (double y : ys) {
        Complex p = phi({x, y});
        Complex q = (p - alpha) / Complex{0.0, y};
        qmag.push_back(std::abs(q));
        gap.push_back(std::abs(p - alpha));
        out.quotient_trail.emplace_back(y, std::abs(q));
    }

    const int n = static_cast<int>(qmag.size());
    const int w = std::min(config.limits.window, n);
    bool q_increasing = true, gap_decreasing = true;
    for (int k = n - w; k + 1 < n; ++k) {
        if (qmag[k + 1] <= qmag[k]) q_increasing = false;
        if (gap[k + 1] >= gap[k]) gap_decreasing = false;
    }
    // A finite quotient limit is approached linearly in y, so successive
    // window extrapolants stabilize; genuine divergence keeps growing
    // geometrically across the window.
    bool q_converged = false;
    if (n >= w + 1 && w >= 2) {
        std::vector<double> win1(qmag.end() - w, qmag.end());
        std::vector<double> win0(qmag.end() - w - 1, qmag.end() - 1);
        double e1 = detail::richardson(win1, config.limits.ratio);
        double e0 = detail::richardson(win0, config.limits.ratio);
        double scale = std::max(1.0, std::abs(e1));
        q_converged = std::isfinite(e1) && std::isfinite(e0) &&
                      std::abs(e1 - e0) < config.quotient_rel_tol * scale;
    }
    out.quotient_diverging =
        q_increasing && !q_converged && qmag.back() > 2.0 * qmag[n - w];

    if (lim.kind == BoundaryLimitResult::Kind::converged) {
        out.limit_converged = true;
        out.phi_limit = lim.value;
        out.limit_gap = std::abs(lim.value - alpha);
        if (out.limit_gap > config.limit_tol) {
            out.kind = SpectralVerdict::Kind::no_atom;
            return out;
        }
        if (q_converged) {
            out.kind = SpectralVerdict::Kind::atom;
            // Member mass by Stieltjes inversion of the member's Poisson
            // integral y * Re (alpha + phi)/(alpha - phi), over the same
            // cancellation-safe heights.
            std::vector<double> h;
            for (double y : ys)
                h.push_back(kPi * y * clark_member_poisson(cf, alpha, {x, y}));
            std::vector<double> win(h.end() - w, h.end());
            out.mass = detail::richardson(win, config.limits.ratio);
            return out;
        }
        if (out.quotient_diverging) {
            out.kind = SpectralVerdict::Kind::singular_continuous_evidence;
            return out;
        }
        out.kind = SpectralVerdict::Kind::undecided;
        return out;
    }

    // No clean limit: still report singular-continuous evidence when phi
    // creeps toward alpha while the quotient blows up (log-slow approach).
    if (gap_decreasing && out.quotient_diverging) {
        out.kind = SpectralVerdict::Kind::singular_continuous_evidence;
        out.limit_gap = gap.back();
        return out;
    }
    out.kind = SpectralVerdict::Kind::undecided;
    return out;
}

}  // namespace specshift
