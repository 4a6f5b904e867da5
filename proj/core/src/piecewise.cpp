#include "piecewise.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace specshift::detail {

double PiecewiseConstant::value_at(double x) const {
    if (empty() || x <= pts.front() || x >= pts.back()) return 0.0;
    auto it = std::upper_bound(pts.begin(), pts.end(), x);
    size_t i = static_cast<size_t>(it - pts.begin()) - 1;
    if (i >= vals.size()) return 0.0;
    return vals[i];
}

double PiecewiseConstant::right_value(double x) const {
    if (empty() || x >= pts.back() || x < pts.front()) return 0.0;
    auto it = std::upper_bound(pts.begin(), pts.end(), x);  // first point > x
    size_t i = static_cast<size_t>(it - pts.begin());
    return (i >= 1 && i - 1 < vals.size()) ? vals[i - 1] : 0.0;
}

double PiecewiseConstant::left_value(double x) const {
    if (empty() || x <= pts.front() || x > pts.back()) return 0.0;
    auto it = std::lower_bound(pts.begin(), pts.end(), x);  // first point >= x
    size_t i = static_cast<size_t>(it - pts.begin());
    return (i >= 1 && i - 1 < vals.size()) ? vals[i - 1] : 0.0;
}

PiecewiseConstant from_shift(const PhaseShift& u) {
    PiecewiseConstant f;
    if (u.intervals.empty()) return f;
    const double level = u.sign * std::numbers::pi;
    for (const auto& iv : u.intervals) {
        if (!f.pts.empty() && iv.left == f.pts.back()) {
            f.vals.push_back(level);
            f.pts.push_back(iv.right);
            continue;
        }
        if (!f.pts.empty()) {
            f.vals.push_back(0.0);
            f.pts.push_back(iv.left);
            f.vals.push_back(level);
            f.pts.push_back(iv.right);
        } else {
            f.pts.push_back(iv.left);
            f.vals.push_back(level);
            f.pts.push_back(iv.right);
        }
    }
    return f;
}

PiecewiseConstant clip(const PiecewiseConstant& f, double lo, double hi) {
    PiecewiseConstant out;
    if (f.empty() || hi <= f.left_end() || lo >= f.right_end() || lo >= hi)
        return out;
    for (size_t i = 0; i < f.vals.size(); ++i) {
        double a = std::max(f.pts[i], lo);
        double b = std::min(f.pts[i + 1], hi);
        if (a >= b) continue;
        if (out.pts.empty()) out.pts.push_back(a);
        out.vals.push_back(f.vals[i]);
        out.pts.push_back(b);
    }
    return out;
}

namespace {

// Resamples f onto a merged breakpoint grid covering [lo, hi].
PiecewiseConstant on_grid(const PiecewiseConstant& f,
                          const std::vector<double>& grid) {
    PiecewiseConstant out;
    out.pts = grid;
    out.vals.resize(grid.size() - 1);
    for (size_t i = 0; i + 1 < grid.size(); ++i)
        out.vals[i] = f.value_at(0.5 * (grid[i] + grid[i + 1]));
    return out;
}

std::vector<double> merged_points(const PiecewiseConstant& f,
                                  const PiecewiseConstant& g,
                                  double extra_lo, double extra_hi) {
    std::vector<double> pts;
    pts.insert(pts.end(), f.pts.begin(), f.pts.end());
    pts.insert(pts.end(), g.pts.begin(), g.pts.end());
    pts.push_back(extra_lo);
    pts.push_back(extra_hi);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

void drop_trivial(PiecewiseConstant& f) {
    // merge adjacent equal values and strip zero tails
    if (f.empty()) return;
    PiecewiseConstant out;
    out.pts.push_back(f.pts.front());
    for (size_t i = 0; i < f.vals.size(); ++i) {
        if (!out.vals.empty() && out.vals.back() == f.vals[i]) {
            out.pts.back() = f.pts[i + 1];
        } else {
            out.vals.push_back(f.vals[i]);
            out.pts.push_back(f.pts[i + 1]);
        }
    }
    while (!out.vals.empty() && out.vals.front() == 0.0) {
        out.vals.erase(out.vals.begin());
        out.pts.erase(out.pts.begin());
    }
    while (!out.vals.empty() && out.vals.back() == 0.0) {
        out.vals.pop_back();
        out.pts.pop_back();
    }
    if (out.vals.empty()) out.pts.clear();
    f = std::move(out);
}

}  // namespace

PiecewiseConstant add_indicator(const PiecewiseConstant& f, double c,
                                double lo, double hi) {
    if (lo >= hi) return f;
    PiecewiseConstant ind;
    ind.pts = {lo, hi};
    ind.vals = {c};
    double a = f.empty() ? lo : std::min(lo, f.left_end());
    double b = f.empty() ? hi : std::max(hi, f.right_end());
    auto grid = merged_points(f, ind, a, b);
    auto fg = on_grid(f, grid);
    auto ig = on_grid(ind, grid);
    for (size_t i = 0; i < fg.vals.size(); ++i) fg.vals[i] += ig.vals[i];
    drop_trivial(fg);
    return fg;
}

PiecewiseConstant subtract(const PiecewiseConstant& f,
                           const PiecewiseConstant& g) {
    if (f.empty() && g.empty()) return {};
    double a = f.empty() ? g.left_end()
                         : (g.empty() ? f.left_end()
                                      : std::min(f.left_end(), g.left_end()));
    double b = f.empty() ? g.right_end()
                         : (g.empty() ? f.right_end()
                                      : std::max(f.right_end(), g.right_end()));
    auto grid = merged_points(f, g, a, b);
    auto fg = on_grid(f, grid);
    auto gg = on_grid(g, grid);
    for (size_t i = 0; i < fg.vals.size(); ++i) fg.vals[i] -= gg.vals[i];
    drop_trivial(fg);
    return fg;
}

ClippedLogIntegral clipped_log_integral(const PiecewiseConstant& g, double x) {
    ClippedLogIntegral out;
    if (g.empty()) return out;
    out.gamma = g.right_value(x) - g.left_value(x);
    // Split every piece at x; skip the log at t == x. The skipped +-log(eps)
    // terms cancel exactly when gamma == 0, so finite_part is then the
    // principal value.
    double s = 0.0;
    for (size_t i = 0; i < g.vals.size(); ++i) {
        double v = g.vals[i];
        if (v == 0.0) continue;
        double p = g.pts[i], q = g.pts[i + 1];
        if (p < x && x < q) {
            s += v * (std::log(std::abs(q - x)) - std::log(std::abs(p - x)));
            continue;
        }
        double lp = (p == x) ? 0.0 : std::log(std::abs(p - x));
        double lq = (q == x) ? 0.0 : std::log(std::abs(q - x));
        s += v * (lq - lp);
    }
    out.finite_part = s;
    return out;
}

double clipped_log_value(const PiecewiseConstant& g, double x, double eps) {
    if (g.empty()) return 0.0;
    double s = 0.0;
    const double lo = x - eps, hi = x + eps;
    // distance to x, evaluated as eps exactly at the clip edges (the naive
    // subtraction (x - eps) - x cancels catastrophically for small eps)
    auto ldist = [&](double t) {
        return (t == lo || t == hi) ? std::log(eps) : std::log(std::abs(t - x));
    };
    for (size_t i = 0; i < g.vals.size(); ++i) {
        double v = g.vals[i];
        if (v == 0.0) continue;
        double p = g.pts[i], q = g.pts[i + 1];
        // left of the clip window
        double a = p, b = std::min(q, lo);
        if (a < b) s += v * (ldist(b) - ldist(a));
        // right of the clip window
        a = std::max(p, hi), b = q;
        if (a < b) s += v * (ldist(b) - ldist(a));
    }
    return s;
}

std::vector<double> geometric_sequence(double y0, double ratio, int steps) {
    std::vector<double> ys;
    ys.reserve(static_cast<size_t>(steps));
    double y = y0;
    for (int k = 0; k < steps; ++k) {
        ys.push_back(y);
        y *= ratio;
    }
    return ys;
}

double richardson(const std::vector<double>& window, double r) {
    std::vector<double> t = window;
    const size_t w = t.size();
    double rj = 1.0;
    for (size_t j = 1; j < w; ++j) {
        rj *= r;
        for (size_t i = 0; i + j < w; ++i)
            t[i] = (t[i + 1] - rj * t[i]) / (1.0 - rj);
    }
    return t[0];
}

}  // namespace specshift::detail
