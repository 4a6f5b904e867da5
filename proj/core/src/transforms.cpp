#include "specshift/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "piecewise.hpp"

namespace specshift {

namespace {

constexpr double kPi = std::numbers::pi;

void require_upper(const UpperHalfPlanePoint& z) {
    if (!(z.y > 0.0)) throw std::invalid_argument("point not in the upper half-plane");
}

// Complex Richardson over a window of geometric samples.
Complex richardson_c(const std::vector<Complex>& window, double r) {
    std::vector<Complex> t = window;
    const size_t w = t.size();
    double rj = 1.0;
    for (size_t j = 1; j < w; ++j) {
        rj *= r;
        for (size_t i = 0; i + j < w; ++i)
            t[i] = (t[i + 1] - rj * t[i]) / (1.0 - rj);
    }
    return t[0];
}

// Adaptive Simpson for complex integrands.
Complex simpson_step(const std::function<Complex(double)>& f, double a,
                     double b, Complex fa, Complex fm, Complex fb,
                     Complex whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    Complex flm = f(lm), frm = f(rm);
    Complex left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    Complex right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    Complex delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) < 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

Complex adaptive_simpson(const std::function<Complex(double)>& f, double a,
                         double b, double tol) {
    Complex fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    Complex whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

Complex cauchy(const AtomicMeasure& m, UpperHalfPlanePoint z) {
    require_upper(z);
    if (m.infinity_mass > 0.0)
        throw std::invalid_argument(
            "cauchy: measure has mass at infinity, which the transform would drop");
    Complex s{0.0, 0.0};
    const Complex zz = z.z();
    for (const auto& a : m.atoms) s += a.w / (a.x - zz);
    return s / kPi;
}

double poisson(const AtomicMeasure& m, UpperHalfPlanePoint z) {
    require_upper(z);
    double s = 0.0;
    for (const auto& a : m.atoms) {
        double dx = z.x - a.x;
        s += a.w * z.y / (dx * dx + z.y * z.y);
    }
    return s / kPi + z.y * m.infinity_mass;
}

Complex cauchy_of_shift(const PhaseShift& u, UpperHalfPlanePoint z) {
    require_upper(z);
    const Complex zz = z.z();
    if (u.form == PhaseShift::Form::exact) {
        // Each factor (b-z)/(a-z) lies in C_+ for z in C_+, so the principal
        // logs are branch-consistent term by term.
        Complex s{0.0, 0.0};
        for (const auto& iv : u.intervals)
            s += std::log(iv.right - zz) - std::log(iv.left - zz);
        return static_cast<double>(u.sign) * s;
    }
    // Sampled form: exact integral of the linear interpolant against the
    // Cauchy kernel, segment by segment.
    Complex s{0.0, 0.0};
    for (size_t i = 0; i + 1 < u.samples.size(); ++i) {
        double t1 = u.samples[i].first, t2 = u.samples[i + 1].first;
        double u1 = u.samples[i].second, u2 = u.samples[i + 1].second;
        if (!(t2 > t1)) continue;
        double slope = (u2 - u1) / (t2 - t1);
        s += slope * (t2 - t1) +
             (u1 + slope * (zz - t1)) * (std::log(t2 - zz) - std::log(t1 - zz));
    }
    return s / kPi;
}

Complex cauchy_of_shift_quadrature(const PhaseShift& u, UpperHalfPlanePoint z) {
    require_upper(z);
    const Complex zz = z.z();
    if (u.form == PhaseShift::Form::sampled) return cauchy_of_shift(u, z);
    Complex s{0.0, 0.0};
    const double level = u.sign * kPi;
    for (const auto& iv : u.intervals) {
        auto f = [&](double t) { return level / (t - zz); };
        s += adaptive_simpson(f, iv.left, iv.right, 1e-13);
    }
    return s / kPi;
}

double conj_poisson(const PhaseShift& u, UpperHalfPlanePoint z) {
    return -cauchy_of_shift(u, z).real();
}

BoundaryLimitResult nontangential_limit(const HalfPlaneFunction& f, double x,
                                        const LimitConfig& config) {
    BoundaryLimitResult out;
    auto ys = detail::geometric_sequence(config.y0, config.ratio, config.steps);
    out.evidence.reserve(ys.size());
    for (double y : ys) out.evidence.emplace_back(y, f({x, y}));

    const int n = static_cast<int>(out.evidence.size());
    if (n == 0) return out;  // undecided: nothing sampled
    const int w = std::min(config.window, n);

    // Divergence: magnitude grows monotonically through the cap.
    bool monotone = true;
    for (int k = n - w; k + 1 < n; ++k)
        if (std::abs(out.evidence[k + 1].second) <=
            std::abs(out.evidence[k].second)) {
            monotone = false;
            break;
        }
    if (monotone && std::abs(out.evidence.back().second) > config.cap) {
        Complex last = out.evidence.back().second;
        bool real_dominant = std::abs(last.real()) >= std::abs(last.imag());
        double lead = real_dominant ? last.real() : last.imag();
        out.kind = lead >= 0.0 ? BoundaryLimitResult::Kind::diverges_plus
                               : BoundaryLimitResult::Kind::diverges_minus;
        return out;
    }

    // Convergence: successive window extrapolants must agree.
    std::vector<Complex> extrap;
    for (int m = w - 1; m < n; ++m) {
        std::vector<Complex> win;
        for (int k = m - w + 1; k <= m; ++k) win.push_back(out.evidence[k].second);
        extrap.push_back(richardson_c(win, config.ratio));
    }
    if (extrap.size() >= 3) {
        Complex e2 = extrap[extrap.size() - 1];
        Complex e1 = extrap[extrap.size() - 2];
        Complex e0 = extrap[extrap.size() - 3];
        double scale = std::max(1.0, std::abs(e2));
        if (std::isfinite(e2.real()) && std::isfinite(e2.imag()) &&
            std::abs(e2 - e1) < config.tol * scale &&
            std::abs(e1 - e0) < config.tol * scale) {
            out.kind = BoundaryLimitResult::Kind::converged;
            out.value = e2;
            return out;
        }
    }
    out.kind = BoundaryLimitResult::Kind::undecided;
    return out;
}

PvResult pv_integral(const PhaseShift& u, double x, double window,
                     const PvConfig& config) {
    PvResult out;
    if (u.form == PhaseShift::Form::exact) {
        auto f = detail::from_shift(u);
        if (window > 0.0 && !f.empty()) f = detail::clip(f, x - window, x + window);
        auto cli = detail::clipped_log_integral(f, x);
        for (double eps :
             detail::geometric_sequence(config.eps0, 0.5, config.steps))
            out.partials.emplace_back(eps, detail::clipped_log_value(f, x, eps));
        if (cli.gamma == 0.0) {
            out.kind = PvResult::Kind::finite;
            out.value = cli.finite_part;
        } else {
            out.kind = cli.gamma > 0.0 ? PvResult::Kind::plus_inf
                                       : PvResult::Kind::minus_inf;
        }
        return out;
    }

    // Sampled path: clipped trapezoid sums with trend detection. The clip
    // sequence stops at the grid resolution; below it the samples carry no
    // further information and the sums would flatline artificially.
    double min_dx = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i + 1 < u.samples.size(); ++i)
        min_dx = std::min(min_dx, u.samples[i + 1].first - u.samples[i].first);
    auto ys = detail::geometric_sequence(config.eps0, 0.5, config.steps);
    while (!ys.empty() && ys.back() < 2.0 * min_dx) ys.pop_back();
    for (double eps : ys) {
        double s = 0.0;
        for (size_t i = 0; i + 1 < u.samples.size(); ++i) {
            double t1 = u.samples[i].first, t2 = u.samples[i + 1].first;
            if (t2 <= t1) continue;
            double mid = 0.5 * (t1 + t2);
            if (std::abs(mid - x) < eps) continue;
            if (window > 0.0 && std::abs(mid - x) > window) continue;
            double um = 0.5 * (u.samples[i].second + u.samples[i + 1].second);
            s += um * (t2 - t1) / (mid - x);
        }
        out.partials.emplace_back(eps, s);
    }
    const int n = static_cast<int>(out.partials.size());
    if (n == 0) return out;  // undecided: grid too coarse for any clip radius
    const int w = std::min(config.trend_window, n);
    bool inc = true, dec = true;
    for (int k = n - w; k + 1 < n; ++k) {
        double a = out.partials[k].second, b = out.partials[k + 1].second;
        if (b <= a) inc = false;
        if (b >= a) dec = false;
    }
    double spread = 0.0;
    for (int k = n - w; k + 1 < n; ++k)
        spread = std::max(spread, std::abs(out.partials[k + 1].second -
                                           out.partials[k].second));
    if (spread < config.tol * 10.0 + 1e-12) {
        out.kind = PvResult::Kind::finite;
        out.value = out.partials.back().second;
    } else if (inc) {
        out.kind = PvResult::Kind::plus_inf;
    } else if (dec) {
        out.kind = PvResult::Kind::minus_inf;
    } else {
        out.kind = PvResult::Kind::undecided;
    }
    return out;
}

HilbertCorrection hilbert_correction_check(const PhaseShift& u, double x,
                                           const LimitConfig& config) {
    if (u.form != PhaseShift::Form::exact)
        throw std::invalid_argument("hilbert_correction_check: exact form required");
    HilbertCorrection out;
    auto f = detail::from_shift(u);
    // The probe walks the 45-degree ray z = (x + y) + iy toward x. On the
    // flat (vertical) ray the jump contribution to the correction cancels
    // identically against the symmetric clipping, which would make the check
    // vacuous at jump points.
    const double slope = 1.0;
    for (double y : detail::geometric_sequence(config.y0, config.ratio,
                                               config.steps)) {
        double zx = x + slope * y;
        double q = conj_poisson(u, {zx, y});
        double trunc = -detail::clipped_log_value(f, zx, y) / kPi;
        out.trail.emplace_back(y, std::abs(q - trunc));
    }
    for (const auto& [y, d] : out.trail) out.sup = std::max(out.sup, d);
    out.last = out.trail.back().second;
    // o(1) verdict: the tail of the trail has to shrink below a fraction of
    // its peak.
    double tail = 0.0;
    size_t n = out.trail.size();
    for (size_t k = n - std::min<size_t>(4, n); k < n; ++k)
        tail = std::max(tail, out.trail[k].second);
    out.tends_to_zero = tail < 1e-3 * std::max(out.sup, 1e-30) || tail < 1e-6;
    return out;
}

StieltjesAtomResult stieltjes_atom(const HalfPlaneFunction& f, double x,
                                   const LimitConfig& config) {
    StieltjesAtomResult out;
    auto ys = detail::geometric_sequence(config.y0, config.ratio, config.steps);
    std::vector<double> g;
    for (double y : ys) {
        double v = y * (kPi * f({x, y})).imag();
        g.push_back(v);
        out.trail.emplace_back(y, v);
    }
    const int n = static_cast<int>(g.size());
    if (n == 0) return out;  // undecided: nothing sampled
    const int w = std::min(config.window, n);
    std::vector<double> extrap;
    for (int m = w - 1; m < n; ++m) {
        std::vector<double> win(g.begin() + (m - w + 1), g.begin() + m + 1);
        extrap.push_back(detail::richardson(win, config.ratio));
    }
    if (extrap.size() >= 3) {
        double e2 = extrap[extrap.size() - 1];
        double e1 = extrap[extrap.size() - 2];
        double e0 = extrap[extrap.size() - 3];
        double scale = std::max(1.0, std::abs(e2));
        if (std::isfinite(e2) && std::abs(e2 - e1) < config.tol * scale &&
            std::abs(e1 - e0) < config.tol * scale) {
            out.kind = BoundaryLimitResult::Kind::converged;
            out.mass = e2;
            return out;
        }
    }
    out.kind = BoundaryLimitResult::Kind::undecided;
    return out;
}

ClarkLimitReport verify_clark_limit(const AtomicMeasure& sigma,
                                    const std::vector<double>& f_values,
                                    const std::vector<size_t>& xs, double tol,
                                    const LimitConfig& config) {
    if (f_values.size() != sigma.atoms.size())
        throw std::invalid_argument("verify_clark_limit: one f value per atom");
    ClarkLimitReport report;
    auto F = [&](UpperHalfPlanePoint z) {
        Complex zz = z.z();
        Complex k_sigma{0.0, 0.0}, k_fsigma{0.0, 0.0};
        for (size_t j = 0; j < sigma.atoms.size(); ++j) {
            Complex kern = sigma.atoms[j].w / (sigma.atoms[j].x - zz);
            k_sigma += kern;
            k_fsigma += f_values[j] * kern;
        }
        return (1.0 + k_fsigma / kPi) / (1.0 + k_sigma / kPi);
    };
    report.all_passed = true;
    for (size_t idx : xs) {
        if (idx >= sigma.atoms.size())
            throw std::invalid_argument("verify_clark_limit: atom index out of range");
        ClarkLimitCheck c;
        c.x = sigma.atoms[idx].x;
        c.expected = f_values[idx];
        c.limit = nontangential_limit(F, c.x, config);
        c.passed = c.limit.kind == BoundaryLimitResult::Kind::converged &&
                   std::abs(c.limit.value - Complex{c.expected, 0.0}) < tol;
        report.all_passed = report.all_passed && c.passed;
        report.checks.push_back(c);
    }
    return report;
}

}  // namespace specshift
