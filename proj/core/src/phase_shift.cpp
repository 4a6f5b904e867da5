#include "specshift/phase_shift.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "piecewise.hpp"
#include "specshift/transforms.hpp"

namespace specshift {

namespace {

constexpr double kPi = std::numbers::pi;

// Boundary value of 1 + pi*lambda*K(mu) on the real axis (real off atoms).
double perturbation_denominator(const AtomicMeasure& mu, double lambda,
                                double x) {
    double s = 0.0;
    for (const auto& a : mu.atoms) s += a.w / (a.x - x);
    return 1.0 + lambda * s;
}

double perturbation_denominator_deriv(const AtomicMeasure& mu, double lambda,
                                      double x) {
    double s = 0.0;
    for (const auto& a : mu.atoms) {
        double d = a.x - x;
        s += a.w / (d * d);
    }
    return lambda * s;
}

// Root of the monotone function h = 1 + pi*lambda*K(mu) inside a bracket on
// which h changes sign. Bisection followed by Newton polish.
double bracketed_root(const AtomicMeasure& mu, double lambda, double lo,
                      double hi) {
    double flo = perturbation_denominator(mu, lambda, lo);
    double fhi = perturbation_denominator(mu, lambda, hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw std::runtime_error("bracketed_root: no sign change in bracket");
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        double fm = perturbation_denominator(mu, lambda, mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-16 * std::max({1.0, std::abs(lo), std::abs(hi)})) break;
    }
    double r = 0.5 * (lo + hi);
    for (int it = 0; it < 3; ++it) {
        double f = perturbation_denominator(mu, lambda, r);
        double df = perturbation_denominator_deriv(mu, lambda, r);
        if (df == 0.0) break;
        double step = f / df;
        double next = r - step;
        if (next <= lo || next >= hi) break;
        r = next;
    }
    return r;
}

}  // namespace

double PhaseShift::support_left() const {
    if (form == Form::exact)
        return intervals.empty() ? 0.0 : intervals.front().left;
    return samples.empty() ? 0.0 : samples.front().first;
}

double PhaseShift::support_right() const {
    if (form == Form::exact)
        return intervals.empty() ? 0.0 : intervals.back().right;
    return samples.empty() ? 0.0 : samples.back().first;
}

double PhaseShift::value_at(double x) const {
    if (form != Form::exact)
        throw std::logic_error("value_at: exact form only");
    for (const auto& iv : intervals)
        if (iv.contains(x)) return sign * kPi;
    return 0.0;
}

PhaseShift exact_shift(int sign, std::vector<Interval> intervals) {
    std::sort(intervals.begin(), intervals.end(),
              [](const Interval& a, const Interval& b) { return a.left < b.left; });
    PhaseShift u;
    u.form = PhaseShift::Form::exact;
    u.sign = sign;
    u.intervals = std::move(intervals);
    if (auto err = validate(u)) throw std::invalid_argument("exact_shift: " + *err);
    return u;
}

PhaseShift sampled_shift(int sign, std::vector<std::pair<double, double>> samples) {
    PhaseShift u;
    u.form = PhaseShift::Form::sampled;
    u.sign = sign;
    u.samples = std::move(samples);
    if (auto err = validate(u)) throw std::invalid_argument("sampled_shift: " + *err);
    return u;
}

std::optional<std::string> validate(const PhaseShift& u) {
    if (u.sign != 1 && u.sign != -1) return "sign must be +1 or -1";
    if (u.form == PhaseShift::Form::exact) {
        for (size_t i = 0; i < u.intervals.size(); ++i) {
            const Interval& iv = u.intervals[i];
            if (!std::isfinite(iv.left) || !std::isfinite(iv.right))
                return "unbounded interval";
            if (!(iv.left < iv.right)) return "empty or inverted interval";
            if (i > 0 && !(u.intervals[i - 1].right < iv.left))
                return "intervals must be strictly separated";
        }
        return std::nullopt;
    }
    for (size_t i = 0; i < u.samples.size(); ++i) {
        if (std::abs(u.samples[i].second) > kPi + 1e-9)
            return "sample value exceeds pi";
        if (i > 0 && !(u.samples[i - 1].first < u.samples[i].first))
            return "samples must be strictly increasing in x";
    }
    return std::nullopt;
}

Complex exp_K_shift(const PhaseShift& u, Complex z) {
    if (u.form != PhaseShift::Form::exact)
        throw std::invalid_argument("exp_K_shift: exact form required");
    Complex p{1.0, 0.0};
    for (const auto& iv : u.intervals) p *= (iv.right - z) / (iv.left - z);
    return u.sign > 0 ? p : 1.0 / p;
}

double exp_K_shift_boundary(const PhaseShift& u, double x) {
    if (u.form != PhaseShift::Form::exact)
        throw std::invalid_argument("exp_K_shift_boundary: exact form required");
    double p = 1.0;
    for (const auto& iv : u.intervals) p *= (iv.right - x) / (iv.left - x);
    return u.sign > 0 ? p : 1.0 / p;
}

double exp_K_shift_boundary_log_deriv(const PhaseShift& u, double x) {
    double s = 0.0;
    for (const auto& iv : u.intervals)
        s += 1.0 / (iv.left - x) - 1.0 / (iv.right - x);
    return u.sign > 0 ? s : -s;
}

MeasurePair pair_from_shift(const PhaseShift& u, double lambda) {
    if (u.form != PhaseShift::Form::exact)
        throw std::invalid_argument("pair_from_shift: exact form required");
    if (auto err = validate(u))
        throw std::invalid_argument("pair_from_shift: " + *err);
    if (lambda == 0.0)
        throw std::invalid_argument("pair_from_shift: lambda must be nonzero");
    if ((lambda > 0.0) != (u.sign > 0))
        throw std::invalid_argument("pair_from_shift: sign of lambda must match shift sign");

    const auto& ivs = u.intervals;
    const size_t n = ivs.size();
    MeasurePair pair;
    pair.lambda = lambda;
    if (n == 0) return pair;

    // Residues of the rational function R = exp[K u]. For sign +1 the poles
    // of K(mu) sit at left endpoints and those of K(nu) at right endpoints;
    // sign -1 swaps the roles.
    std::vector<Atom> at_left(n), at_right(n);
    for (size_t j = 0; j < n; ++j) {
        const double aj = ivs[j].left, bj = ivs[j].right;
        double prod_left = 1.0, prod_right = 1.0;
        for (size_t i = 0; i < n; ++i) {
            if (i == j) continue;
            prod_left *= (ivs[i].right - aj) / (ivs[i].left - aj);
            prod_right *= (ivs[i].left - bj) / (ivs[i].right - bj);
        }
        const double len = bj - aj;
        if (u.sign > 0) {
            at_left[j] = {aj, len / lambda * prod_left};
            at_right[j] = {bj, len / lambda * prod_right};
        } else {
            at_left[j] = {aj, -len / lambda * prod_left};
            at_right[j] = {bj, -len / lambda * prod_right};
        }
    }
    if (u.sign > 0) {
        pair.mu = make_measure(std::move(at_left));
        pair.nu = make_measure(std::move(at_right));
    } else {
        pair.mu = make_measure(std::move(at_right));
        pair.nu = make_measure(std::move(at_left));
    }
    return pair;
}

ShiftSampling shift_from_pair(const AtomicMeasure& mu, double lambda,
                              const std::vector<double>& grid) {
    if (lambda == 0.0)
        throw std::invalid_argument("shift_from_pair: lambda must be nonzero");
    if (auto err = validate(mu))
        throw std::invalid_argument("shift_from_pair: " + *err);

    ShiftSampling out;
    std::vector<std::pair<double, double>> samples;
    LimitConfig cfg;
    for (double x : grid) {
        bool near_atom = false;
        for (const auto& a : mu.atoms)
            if (std::abs(a.x - x) < 1e-9) { near_atom = true; break; }
        if (near_atom) {
            out.skipped.push_back(x);
            continue;
        }
        // arg(1 + pi*lambda*K mu) along the vertical ray; the argument itself
        // is extrapolated so the value lands on the correct side of the cut.
        std::vector<double> args;
        for (double y : detail::geometric_sequence(cfg.y0, cfg.ratio, cfg.steps)) {
            Complex v = 1.0 + kPi * lambda * cauchy(mu, {x, y});
            args.push_back(std::arg(v));
        }
        std::vector<double> win(args.end() - cfg.window, args.end());
        double val = detail::richardson(win, cfg.ratio);
        val = std::clamp(val, lambda > 0 ? 0.0 : -kPi, lambda > 0 ? kPi : 0.0);
        samples.emplace_back(x, val);
    }
    std::sort(samples.begin(), samples.end());
    out.shift = sampled_shift(lambda > 0 ? +1 : -1, std::move(samples));
    return out;
}

PhaseShift exact_shift_from_measure(const AtomicMeasure& mu, double lambda) {
    if (lambda == 0.0)
        throw std::invalid_argument("exact_shift_from_measure: lambda must be nonzero");
    if (auto err = validate(mu))
        throw std::invalid_argument("exact_shift_from_measure: " + *err);
    const auto& atoms = mu.atoms;
    const size_t n = atoms.size();
    std::vector<Interval> ivs;
    ivs.reserve(n);
    if (n == 0) return exact_shift(lambda > 0 ? +1 : -1, {});

    if (lambda > 0.0) {
        // 1 + pi*lambda*K(mu) is negative exactly on (x_i, r_i) with r_i the
        // root in the gap above x_i.
        for (size_t i = 0; i < n; ++i) {
            double lo = atoms[i].x;
            double hi;
            if (i + 1 < n) {
                hi = atoms[i + 1].x;
            } else {
                // expand until the boundary value turns positive
                double width = std::max(1.0, lambda * total_mass(mu));
                hi = lo + width;
                while (perturbation_denominator(mu, lambda, hi) <= 0.0) {
                    width *= 2.0;
                    hi = lo + width;
                    if (width > 1e12)
                        throw std::runtime_error("exact_shift_from_measure: runaway root");
                }
            }
            double gap = hi - lo;
            double dlo = gap * 1e-13;
            for (int guard = 0; guard < 60 &&
                 perturbation_denominator(mu, lambda, lo + dlo) >= 0.0; ++guard)
                dlo *= 0.5;
            double dhi = (i + 1 < n) ? gap * 1e-13 : 0.0;
            for (int guard = 0; guard < 60 && i + 1 < n &&
                 perturbation_denominator(mu, lambda, hi - dhi) <= 0.0; ++guard)
                dhi *= 0.5;
            double root = bracketed_root(mu, lambda, lo + dlo, hi - dhi);
            ivs.push_back({lo, root});
        }
        return exact_shift(+1, std::move(ivs));
    }

    // lambda < 0: negative exactly on (l_i, x_i) with l_i the root below x_i.
    for (size_t i = 0; i < n; ++i) {
        double hi = atoms[i].x;
        double lo;
        if (i > 0) {
            lo = atoms[i - 1].x;
        } else {
            double width = std::max(1.0, -lambda * total_mass(mu));
            lo = hi - width;
            while (perturbation_denominator(mu, lambda, lo) <= 0.0) {
                width *= 2.0;
                lo = hi - width;
                if (width > 1e12)
                    throw std::runtime_error("exact_shift_from_measure: runaway root");
            }
        }
        double gap = hi - lo;
        double dhi = gap * 1e-13;
        for (int guard = 0; guard < 60 &&
             perturbation_denominator(mu, lambda, hi - dhi) >= 0.0; ++guard)
            dhi *= 0.5;
        double dlo = (i > 0) ? gap * 1e-13 : 0.0;
        for (int guard = 0; guard < 60 && i > 0 &&
             perturbation_denominator(mu, lambda, lo + dlo) <= 0.0; ++guard)
            dlo *= 0.5;
        double root = bracketed_root(mu, lambda, lo + dlo, hi - dhi);
        ivs.push_back({root, hi});
    }
    return exact_shift(-1, std::move(ivs));
}

namespace {

CriterionResult criterion_from_integrand(const detail::PiecewiseConstant& g,
                                         double x) {
    CriterionResult out;
    auto cli = detail::clipped_log_integral(g, x);
    out.log_coefficient = cli.gamma;
    for (double eps : detail::geometric_sequence(0.25, 0.5, 24))
        out.partials.emplace_back(eps, detail::clipped_log_value(g, x, eps));
    if (cli.gamma == 0.0) {
        out.verdict = AtomVerdict::atom;
        out.value = cli.finite_part;
    } else {
        out.verdict = AtomVerdict::no_atom;
    }
    return out;
}

}  // namespace

CriterionResult atom_criterion_mu(const PhaseShift& u, double x) {
    if (u.form != PhaseShift::Form::exact)
        throw std::invalid_argument("atom_criterion_mu: exact form required");
    // integrand (pi*chi_(x,x+1) - u(y)) / (y - x) over the unit window
    auto f = detail::from_shift(u);
    auto clipped = detail::clip(f, x - 1.0, x + 1.0);
    detail::PiecewiseConstant ind;
    ind.pts = {x, x + 1.0};
    ind.vals = {kPi};
    auto g = detail::subtract(ind, clipped);
    return criterion_from_integrand(g, x);
}

CriterionResult atom_criterion_nu(const PhaseShift& u, double x) {
    if (u.form != PhaseShift::Form::exact)
        throw std::invalid_argument("atom_criterion_nu: exact form required");
    // (pi*chi_(x-1,x) - u(y)) / (x - y)  ==  (u(y) - pi*chi_(x-1,x)) / (y - x)
    auto f = detail::from_shift(u);
    auto clipped = detail::clip(f, x - 1.0, x + 1.0);
    detail::PiecewiseConstant ind;
    ind.pts = {x - 1.0, x};
    ind.vals = {kPi};
    auto g = detail::subtract(clipped, ind);
    return criterion_from_integrand(g, x);
}

SingularSupportResult singular_support_test(const PhaseShift& u, double x) {
    if (u.form != PhaseShift::Form::exact)
        throw std::invalid_argument("singular_support_test: exact form required");
    SingularSupportResult out;
    auto f = detail::from_shift(u);
    auto cli = detail::clipped_log_integral(f, x);
    out.log_coefficient = cli.gamma;
    for (double eps : detail::geometric_sequence(0.25, 0.5, 24))
        out.partials.emplace_back(eps, detail::clipped_log_value(f, x, eps));
    if (cli.gamma > 0.0) {
        out.side = SingularSide::mu_side;
    } else if (cli.gamma < 0.0) {
        out.side = SingularSide::nu_side;
    } else {
        out.side = SingularSide::neither;
        out.finite_value = cli.finite_part;
    }
    return out;
}

RegionSingularity singularity_region_test(const PhaseShift& u,
                                          const IntervalSet& K, double tol) {
    RegionSingularity out;
    if (u.form == PhaseShift::Form::exact) {
        // |u| is {0, pi}-valued off the (measure-zero) jump set.
        out.singular = true;
        out.off_fraction = 0.0;
        return out;
    }
    size_t total = 0, off = 0;
    for (const auto& s : u.samples) {
        if (!K.contains(s.first)) continue;
        ++total;
        double av = std::abs(s.second);
        if (std::min(av, std::abs(kPi - av)) > tol) ++off;
    }
    out.off_fraction = total == 0 ? 0.0 : double(off) / double(total);
    out.singular = off == 0;
    return out;
}

ShiftComparison compare_shifts(const PhaseShift& u1, const PhaseShift& u2,
                               double x) {
    if (u1.form != PhaseShift::Form::exact || u2.form != PhaseShift::Form::exact)
        throw std::invalid_argument("compare_shifts: exact forms required");
    ShiftComparison out;
    auto d = detail::subtract(detail::from_shift(u1), detail::from_shift(u2));
    auto cli = detail::clipped_log_integral(d, x);
    if (cli.gamma != 0.0) {
        out.kind = ShiftComparison::Kind::undecided;  // not a Lebesgue point
        return out;
    }
    out.kind = ShiftComparison::Kind::comparable;
    out.f = cli.finite_part;
    // Exact residue calculus fixes the normalization: point masses scale by
    // exp(f/pi) on the mu side, exp(-f/pi) on the nu side.
    out.mu_density = std::exp(out.f / kPi);
    out.nu_density = std::exp(-out.f / kPi);
    return out;
}

double pair_identity_residual(const PhaseShift& u, const MeasurePair& pair,
                              const std::vector<Complex>& grid_points) {
    double worst = 0.0;
    for (Complex z : grid_points) {
        UpperHalfPlanePoint p{z.real(), z.imag()};
        Complex R = exp_K_shift(u, z);
        Complex lhs = R * (1.0 - kPi * pair.lambda * cauchy(pair.nu, p));
        Complex rhs = R - (1.0 + kPi * pair.lambda * cauchy(pair.mu, p));
        worst = std::max(worst, std::abs(lhs - 1.0));
        worst = std::max(worst, std::abs(rhs));
    }
    return worst;
}

}  // namespace specshift
