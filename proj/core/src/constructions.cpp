#include "specshift/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <sstream>
#include <tuple>
#include <stdexcept>

#include "piecewise.hpp"
#include "specshift/transforms.hpp"

namespace specshift {

namespace {
constexpr double kPi = std::numbers::pi;

// log contribution of the gap (p,q) to the one-sided unit-window integral
// at y; 0 when the clipped piece is empty.
double right_gap_term(const Interval& iv, double y) {
    double a = std::max(iv.left, y), b = std::min(iv.right, y + 1.0);
    if (a >= b) return 0.0;
    return std::log(b - y) - std::log(a - y);
}

double left_gap_term(const Interval& iv, double y) {
    double a = std::max(iv.left, y - 1.0), b = std::min(iv.right, y);
    if (a >= b) return 0.0;
    return std::log(y - a) - std::log(y - b);
}

}  // namespace

// ---------------------------------------------------------------------------
// Well-mixed machinery
// ---------------------------------------------------------------------------

WellMixedCheck is_well_mixed(const std::vector<double>& a,
                             const std::vector<double>& b) {
    WellMixedCheck out;
    if (a.empty() || b.empty()) {
        out.violation = "both sequences must be nonempty";
        return out;
    }
    std::vector<double> sa = a, sb = b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    for (double x : sa)
        if (std::binary_search(sb.begin(), sb.end(), x)) {
            out.violation = "sequences are not disjoint";
            return out;
        }
    auto check_between = [](const std::vector<double>& own,
                            const std::vector<double>& other,
                            const char* other_name, std::string* msg) {
        for (size_t i = 0; i + 1 < own.size(); ++i) {
            auto lo = std::upper_bound(other.begin(), other.end(), own[i]);
            if (lo == other.end() || *lo >= own[i + 1]) {
                std::ostringstream os;
                os << "(" << own[i] << "," << own[i + 1] << ") contains no "
                   << other_name;
                *msg = os.str();
                return false;
            }
        }
        if (other.front() > own.front() && other.back() < own.back()) {
            std::ostringstream os;
            os << "no " << other_name << " outside the closed span of the other set";
            *msg = os.str();
            return false;
        }
        return true;
    };
    if (!check_between(sa, sb, "b", &out.violation)) return out;
    if (!check_between(sb, sa, "a", &out.violation)) return out;
    out.ok = true;
    return out;
}

PhaseShift build_interleaved_shift(const std::vector<double>& a,
                                   const std::vector<double>& b) {
    auto wm = is_well_mixed(a, b);
    if (!wm.ok)
        throw std::invalid_argument("build_interleaved_shift: not well-mixed: " +
                                    wm.violation);
    std::vector<double> sa = a, sb = b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa.size() != sb.size())
        throw std::invalid_argument(
            "build_interleaved_shift: no jump-consistent assignment (unequal counts)");
    // The alternation must start with an a and end with a b for a compactly
    // supported up-at-a shift to exist.
    std::vector<Interval> ivs;
    for (size_t i = 0; i < sa.size(); ++i) {
        if (!(sa[i] < sb[i]) || (i + 1 < sa.size() && !(sb[i] < sa[i + 1])))
            throw std::invalid_argument(
                "build_interleaved_shift: no jump-consistent assignment "
                "(orientation: the b set leads; swap the roles)");
        ivs.push_back({sa[i], sb[i]});
    }
    return exact_shift(+1, std::move(ivs));
}

// ---------------------------------------------------------------------------
// Dyadic accumulation example
// ---------------------------------------------------------------------------

AccumulationExample accumulation_atom_example(int n) {
    if (n < 2) throw std::invalid_argument("accumulation_atom_example: n >= 2");
    AccumulationExample out;
    auto a_val = [](int k) {
        return (k % 2 == 1 ? -1.0 : 1.0) * std::ldexp(1.0, -k);
    };
    auto b_val = [&](int k) {
        if (k == 1) return -1.0;
        return a_val(k - 1) + (k % 2 == 0 ? 1.0 : -1.0) * std::ldexp(1.0, -2 * k);
    };
    for (int k = 1; k <= n; ++k) {
        out.seq_a.push_back(a_val(k));
        out.seq_b.push_back(b_val(k));
    }
    out.well_mixed = is_well_mixed(out.seq_a, out.seq_b).ok;
    out.resolved_scale = std::ldexp(1.0, -n);

    // Truncated forced shift. Negative side keeps the resolved hugging pairs
    // (a_k, b_{k+1}); on the positive side the unresolved tail below the
    // innermost positive b is closed with the dominant phase, placing the
    // up-jump at 0. The outer closer b_1 and the two hug-less extremes drop
    // out of the jump set at finite depth.
    std::vector<Interval> ivs;
    for (int k = 1; k + 1 <= n; k += 2) ivs.push_back({a_val(k), b_val(k + 1)});
    int jstar = (n % 2 == 1) ? n : n - 1;  // innermost positive b index
    if (jstar >= 3) {
        ivs.push_back({0.0, b_val(jstar)});
        for (int j = jstar; j >= 5; j -= 2)
            ivs.push_back({a_val(j - 1), b_val(j - 2)});
    }
    out.shift = exact_shift(+1, std::move(ivs));

    out.mu_criterion_at_zero = atom_criterion_mu(out.shift, 0.0);
    auto f = detail::from_shift(out.shift);
    auto clipped = detail::clip(f, -1.0, 1.0);
    detail::PiecewiseConstant ind;
    ind.pts = {0.0, 1.0};
    ind.vals = {kPi};
    auto g = detail::subtract(ind, clipped);
    out.clipped_value = detail::clipped_log_value(g, 0.0, out.resolved_scale);
    if (jstar >= 3) {
        MeasurePair pair = pair_from_shift(out.shift, 1.0);
        out.pair_mass_at_zero = mass_at(pair.mu, 0.0, 1e-14);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Thinness condition
// ---------------------------------------------------------------------------

ThinnessReport thinness_check(const IntervalSet& removed, double y,
                              const std::vector<int>& generation_tags,
                              double fail_cap, double growth_floor) {
    if (auto err = validate(removed))
        throw std::invalid_argument("thinness_check: " + *err);
    if (!generation_tags.empty() &&
        generation_tags.size() != removed.intervals.size())
        throw std::invalid_argument("thinness_check: one tag per interval");

    ThinnessReport out;
    const double endpoint_tol = 1e-12;
    int excluded = -1;
    for (size_t i = 0; i < removed.intervals.size(); ++i) {
        const auto& iv = removed.intervals[i];
        if (std::abs(y - iv.left) < endpoint_tol ||
            std::abs(y - iv.right) < endpoint_tol) {
            if (excluded >= 0)
                throw std::invalid_argument("thinness_check: y touches two intervals");
            excluded = static_cast<int>(i);
            continue;
        }
        if (iv.contains(y))
            throw std::invalid_argument(
                "thinness_check: y lies inside a removed interval");
    }
    out.endpoint_excluded = excluded >= 0;

    int max_tag = 0;
    for (int t : generation_tags) max_tag = std::max(max_tag, t);
    if (!generation_tags.empty()) out.per_generation.assign(max_tag + 1, 0.0);

    for (size_t i = 0; i < removed.intervals.size(); ++i) {
        if (static_cast<int>(i) == excluded) continue;
        const auto& iv = removed.intervals[i];
        double term;
        if (iv.right <= y) {
            term = std::log(y - iv.left) - std::log(y - iv.right);
        } else {
            term = std::log(iv.right - y) - std::log(iv.left - y);
        }
        out.total += term;
        if (!generation_tags.empty()) out.per_generation[generation_tags[i]] += term;
    }

    // A finite sum alone never witnesses divergence; the verdict needs the
    // generation structure to extrapolate sustained growth past the cap.
    if (!out.per_generation.empty()) {
        double run = 0.0;
        for (double g : out.per_generation) {
            run += g;
            out.cumulative.push_back(run);
        }
        size_t m = out.per_generation.size();
        bool sustained = m >= 3;
        for (size_t k = m - std::min<size_t>(3, m); k < m; ++k)
            sustained = sustained && out.per_generation[k] >= growth_floor;
        out.diverging = (out.total > fail_cap) && sustained;
    }
    out.passes = !out.diverging;
    return out;
}

// ---------------------------------------------------------------------------
// Porous embedding
// ---------------------------------------------------------------------------

PorousEmbedding porous_embed(const IntervalSet& hosts,
                             const std::vector<double>& budgets,
                             int levels_per_end) {
    if (auto err = validate(hosts))
        throw std::invalid_argument("porous_embed: " + *err);
    if (budgets.size() != hosts.intervals.size())
        throw std::invalid_argument("porous_embed: one budget per host interval");
    PorousEmbedding out;
    out.budget = budgets;
    out.certificate_ok = true;

    struct Placed {
        Interval iv;
        int host;
    };
    std::vector<Placed> placed;
    const double rho = 0.125;
    for (size_t i = 0; i < hosts.intervals.size(); ++i) {
        const auto& J = hosts.intervals[i];
        const double B = budgets[i];
        if (!(B > 0.0))
            throw std::invalid_argument("porous_embed: budgets must be positive");
        const double L = J.length();
        double a = L;
        for (int m = 1; m <= levels_per_end; ++m) {
            a *= rho;
            double stretch = std::exp(B * std::ldexp(1.0, -m) / 4.0);
            // accumulating at the left endpoint
            placed.push_back({{J.left + a, J.left + a * stretch}, (int)i});
            // mirrored at the right endpoint
            placed.push_back({{J.right - a * stretch, J.right - a}, (int)i});
        }
    }
    std::sort(placed.begin(), placed.end(),
              [](const Placed& u, const Placed& v) { return u.iv.left < v.iv.left; });
    for (const auto& p : placed) {
        out.removed.intervals.push_back(p.iv);
        out.host.push_back(p.host);
    }
    if (auto err = validate(out.removed))
        throw std::runtime_error("porous_embed: construction overlap: " + *err);

    // Exact worst-case certification: for y outside the host, every log term
    // increases monotonically as y moves toward the host, so the endpoint
    // values dominate.
    out.certified.assign(hosts.intervals.size(), 0.0);
    for (size_t i = 0; i < hosts.intervals.size(); ++i) {
        const auto& J = hosts.intervals[i];
        double at_left = 0.0, at_right = 0.0;
        for (size_t k = 0; k < out.removed.intervals.size(); ++k) {
            if (out.host[k] != static_cast<int>(i)) continue;
            const auto& iv = out.removed.intervals[k];
            at_left += std::log(iv.right - J.left) - std::log(iv.left - J.left);
            at_right += std::log(J.right - iv.left) - std::log(J.right - iv.right);
        }
        out.certified[i] = std::max(at_left, at_right);
        if (!(out.certified[i] < budgets[i])) out.certificate_ok = false;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Greedy divergent-family selection
// ---------------------------------------------------------------------------

SelectionCertificate select_divergent_families(
    const IntervalSet& gaps, int generations,
    const std::vector<double>& sample_ys) {
    if (auto err = validate(gaps))
        throw std::invalid_argument("select_divergent_families: " + *err);
    if (generations < 1)
        throw std::invalid_argument("select_divergent_families: need >= 1 generation");
    if (sample_ys.empty())
        throw std::invalid_argument("select_divergent_families: need sample points");

    SelectionCertificate cert;
    cert.pool = gaps.intervals;
    std::sort(cert.pool.begin(), cert.pool.end(),
              [](const Interval& u, const Interval& v) {
                  if (u.length() != v.length()) return u.length() > v.length();
                  return u.left < v.left;
              });
    cert.sample_points = sample_ys;

    const double endpoint_tol = 1e-12;
    auto right_applicable = [&](double y) {
        for (const auto& iv : cert.pool)
            if (std::abs(y - iv.left) < endpoint_tol) return false;
        return true;
    };
    auto left_applicable = [&](double y) {
        for (const auto& iv : cert.pool)
            if (std::abs(y - iv.right) < endpoint_tol) return false;
        return true;
    };
    std::vector<bool> want_right, want_left;
    for (double y : sample_ys) {
        want_right.push_back(right_applicable(y));
        want_left.push_back(left_applicable(y));
        for (const auto& iv : cert.pool)
            if (iv.contains(y))
                throw std::invalid_argument(
                    "select_divergent_families: sample point inside a gap");
    }

    size_t next = 0;
    for (int g = 0; g < generations; ++g) {
        std::vector<size_t> gen;
        std::vector<double> rinc(sample_ys.size(), 0.0), linc(sample_ys.size(), 0.0);
        auto satisfied = [&]() {
            for (size_t s = 0; s < sample_ys.size(); ++s) {
                if (want_right[s] && !(rinc[s] > 1.0)) return false;
                if (want_left[s] && !(linc[s] > 1.0)) return false;
            }
            return true;
        };
        while (!satisfied()) {
            if (next >= cert.pool.size()) {
                std::ostringstream os;
                os << "select_divergent_families: pool exhausted in generation "
                   << (g + 1)
                   << "; the gap family does not cover enough measure at this scale";
                throw std::runtime_error(os.str());
            }
            size_t idx = next++;
            gen.push_back(idx);
            for (size_t s = 0; s < sample_ys.size(); ++s) {
                rinc[s] += right_gap_term(cert.pool[idx], sample_ys[s]);
                linc[s] += left_gap_term(cert.pool[idx], sample_ys[s]);
            }
        }
        cert.right_increments.push_back(std::move(rinc));
        cert.left_increments.push_back(std::move(linc));
        auto& target = (g % 2 == 0) ? cert.L : cert.M;
        target.insert(target.end(), gen.begin(), gen.end());
        cert.generations.push_back(std::move(gen));
    }
    return cert;
}

// ---------------------------------------------------------------------------
// Refinement with principal-value bound
// ---------------------------------------------------------------------------

RefinementResult refine_with_pv_bound(const SelectionCertificate& cert,
                                      const std::vector<double>& z_points,
                                      double interior_y,
                                      const std::vector<double>& endpoint_ys) {
    const auto& pool = cert.pool;
    if (z_points.size() != pool.size())
        throw std::invalid_argument("refine_with_pv_bound: one z per gap");
    for (size_t i = 0; i < pool.size(); ++i) {
        double len = pool[i].length();
        if (!(pool[i].contains(z_points[i])))
            throw std::invalid_argument("refine_with_pv_bound: z_n must lie in I_n");
        if (!(pool[i].right - z_points[i] < len * len))
            throw std::invalid_argument(
                "refine_with_pv_bound: z_n violates the quadratic closeness bound");
    }

    RefinementResult out;
    out.quarter_distance_ok = true;
    std::vector<bool> in_M(pool.size(), false), used(pool.size(), false);
    for (size_t idx : cert.M) in_M[idx] = true;

    std::vector<Interval> chosen_chain_intervals;
    for (size_t l = 0; l < pool.size(); ++l) {
        const double yl = pool[l].right;
        const double len = pool[l].length();
        double dist_prior = 1.0;
        for (const auto& civ : chosen_chain_intervals)
            if (civ.left > yl) dist_prior = std::min(dist_prior, civ.left - yl);
        double delta = std::min((1.0 - 1e-9) * len * len,
                                0.25 * (yl - z_points[l]) * dist_prior *
                                    (1.0 - 1e-9));
        if (!(delta > 0.0)) continue;

        std::vector<size_t> chain;
        for (size_t k = 0; k < pool.size(); ++k) {
            if (!in_M[k] || used[k]) continue;
            if (pool[k].left > yl && pool[k].right < yl + delta) chain.push_back(k);
        }
        if (chain.empty()) continue;
        // accumulate toward yl: farthest first
        std::sort(chain.begin(), chain.end(), [&](size_t u, size_t v) {
            return pool[u].left > pool[v].left;
        });
        for (size_t k : chain) {
            used[k] = true;
            chosen_chain_intervals.push_back(pool[k]);
            out.N.push_back(k);
        }
        out.refined.push_back(l);
        out.delta.push_back(delta);
        out.delta_quad_ratio.push_back(delta / (len * len));
        if (!(delta < 0.25 * (yl - z_points[l]) * dist_prior) ||
            !(delta < len * len))
            out.quarter_distance_ok = false;
    }

    // (a) divergence evidence at requested right endpoints
    for (double y : endpoint_ys) {
        std::vector<double> partials;
        double run = 0.0;
        // walk the union of chains from farthest to nearest
        std::vector<size_t> all = out.N;
        std::sort(all.begin(), all.end(), [&](size_t u, size_t v) {
            return pool[u].left > pool[v].left;
        });
        for (size_t k : all) {
            double t = right_gap_term(pool[k], y);
            if (t <= 0.0) continue;
            run += t;
            partials.push_back(run);
        }
        out.endpoint_partials.push_back(std::move(partials));
    }

    // (b) principal-value boundedness at the interior point: indicator of
    // the union of refined gaps and all right-end caps [z_n, y_n]
    std::vector<Interval> pieces;
    for (size_t k : out.N) pieces.push_back(pool[k]);
    for (size_t i = 0; i < pool.size(); ++i)
        pieces.push_back({z_points[i], pool[i].right});
    std::sort(pieces.begin(), pieces.end(),
              [](const Interval& u, const Interval& v) { return u.left < v.left; });
    std::vector<Interval> merged;
    for (const auto& iv : pieces) {
        if (!merged.empty() && iv.left <= merged.back().right)
            merged.back().right = std::max(merged.back().right, iv.right);
        else
            merged.push_back(iv);
    }
    detail::PiecewiseConstant chi;
    for (const auto& iv : merged) {
        if (!chi.pts.empty() && iv.left == chi.pts.back()) {
            chi.vals.push_back(1.0);
            chi.pts.push_back(iv.right);
            continue;
        }
        if (!chi.pts.empty()) {
            chi.vals.push_back(0.0);
            chi.pts.push_back(iv.left);
        } else {
            chi.pts.push_back(iv.left);
        }
        chi.vals.push_back(1.0);
        chi.pts.push_back(iv.right);
    }
    auto win = detail::clip(chi, interior_y - 1.0, interior_y + 1.0);
    for (double eps : detail::geometric_sequence(0.25, 0.5, 24)) {
        double v = detail::clipped_log_value(win, interior_y, eps);
        out.pv_trail.emplace_back(eps, v);
        out.pv_bound = std::max(out.pv_bound, std::abs(v));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Staged insertion
// ---------------------------------------------------------------------------

StageInsertion insert_eigenvalue_stage(const PhaseShift& u, double b, int stage) {
    if (u.form != PhaseShift::Form::exact)
        throw std::invalid_argument("insert_eigenvalue_stage: exact form required");
    if (u.sign != +1)
        throw std::invalid_argument("insert_eigenvalue_stage: positive-coupling shifts only");
    if (stage < 1) throw std::invalid_argument("insert_eigenvalue_stage: stage >= 1");

    // b must fall strictly inside a zero-gap of u.
    std::vector<double> jumps;
    for (const auto& iv : u.intervals) {
        jumps.push_back(iv.left);
        jumps.push_back(iv.right);
        if (iv.left <= b && b <= iv.right)
            throw std::invalid_argument(
                "insert_eigenvalue_stage: b lies inside (or on) a support interval");
    }
    for (double j : jumps)
        if (std::abs(j - b) < 1e-12)
            throw std::invalid_argument("insert_eigenvalue_stage: b is already a jump point");

    double gap_hi = std::numeric_limits<double>::infinity();
    double room_guard = std::numeric_limits<double>::infinity();
    for (double j : jumps) {
        room_guard = std::min(room_guard, std::abs(j - b));
        if (j > b) gap_hi = std::min(gap_hi, j);
    }
    if (!std::isfinite(room_guard)) room_guard = 1.0;  // empty shift

    StageInsertion out;
    out.b = b;
    out.stage = stage;
    out.bound_target = std::ldexp(1.0, -(stage + 1));
    // spacing rule: |b - c| below dist(b, other jumps)/2^{stage+1}
    out.distance_guard = room_guard / std::ldexp(1.0, stage + 1);

    double delta = out.distance_guard * 0.5;
    if (std::isfinite(gap_hi)) delta = std::min(delta, 0.5 * (gap_hi - b));
    auto bound_at = [&](double d) {
        double worst = 0.0;
        for (double y : jumps)
            worst = std::max(worst,
                             kPi * std::abs(std::log(std::abs(b + d - y)) -
                                            std::log(std::abs(b - y))));
        return worst;
    };
    // factor-of-2 safety margin on the per-stage bound
    while (bound_at(delta) > 0.5 * out.bound_target) {
        delta *= 0.5;
        if (delta < 1e-300)
            throw std::runtime_error(
                "insert_eigenvalue_stage: no admissible c (perturbation bound binds)");
    }
    out.c = b + delta;
    out.bound_value = bound_at(delta);

    std::vector<Interval> ivs = u.intervals;
    ivs.push_back({b, out.c});
    out.next = exact_shift(+1, std::move(ivs));

    // mass drift of the preexisting atoms through the shift comparison;
    // equals the rational ratio (c - y)/(b - y) exactly
    for (const auto& iv : u.intervals) {
        auto cmp = compare_shifts(out.next, u, iv.left);
        if (cmp.kind != ShiftComparison::Kind::comparable)
            throw std::logic_error("insert_eigenvalue_stage: drift comparison failed");
        out.drift.emplace_back(iv.left, cmp.mu_density);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Cantor construction
// ---------------------------------------------------------------------------

CantorSpec default_cantor_spec(int depth) {
    CantorSpec spec;
    spec.depth = depth;
    for (int n = 1; n <= depth; ++n)
        spec.ratios.push_back(n == 1 ? 0.5 : 1.0 / (double(n) * double(n)));
    return spec;
}

CantorCertificate certify_cantor_spec(const CantorSpec& spec) {
    CantorCertificate cert;
    if (spec.depth < 1 || spec.ratios.size() != static_cast<size_t>(spec.depth)) {
        cert.note = "depth/ratio mismatch";
        return cert;
    }
    cert.shape_ok = true;
    for (size_t i = 0; i < spec.ratios.size(); ++i) {
        double r = spec.ratios[i];
        if (!(r > 0.0 && r < 1.0)) cert.shape_ok = false;
        if (i > 0 && r > spec.ratios[i - 1] + 1e-15) cert.shape_ok = false;
    }
    if (!cert.shape_ok) {
        cert.note = "ratios must be nonincreasing and in (0,1)";
        return cert;
    }
    auto def = default_cantor_spec(spec.depth);
    cert.tail_exact = std::equal(spec.ratios.begin(), spec.ratios.end(),
                                 def.ratios.begin());
    double prod = 1.0;
    for (double r : spec.ratios) prod *= 1.0 - r;
    if (cert.tail_exact) {
        // Tail products telescope: prod_{k>=n}(1 - 1/k^2) = (n-1)/n, so the
        // defect 1 - prod_{k>=n}(1-a_k) equals 1/n exactly for every n >= 2.
        // n = 1 is excluded: the defect is 1 - |C| < 1 while the bound is 1.
        cert.conforming = true;
        cert.measure_lower_bound = 0.25;  // exact limit measure
        cert.note = "defect condition holds with equality for n >= 2 (telescoping tails)";
    } else {
        cert.conforming = false;
        cert.measure_lower_bound = prod;  // finite-depth product, no tail certificate
        cert.note = "tail uncertified beyond supplied depth; finite product reported";
    }
    return cert;
}

CantorTree cantor_build(const CantorSpec& spec) {
    if (spec.depth < 1 || spec.ratios.size() != static_cast<size_t>(spec.depth))
        throw std::invalid_argument("cantor_build: need one ratio per level");
    CantorTree tree;
    tree.spec = spec;
    tree.certificate = certify_cantor_spec(spec);
    tree.levels.push_back({{0.0, 1.0}});
    tree.level_length.push_back(1.0);
    tree.level_measure.push_back(1.0);
    for (int n = 1; n <= spec.depth; ++n) {
        double r = spec.ratios[n - 1];
        // all intervals of a level share one exact length; halving is exact,
        // so 2^n * len reproduces the running product of (1 - a_k) bit for bit
        double len = tree.level_length.back() * (1.0 - r) / 2.0;
        std::vector<Interval> level, gaps;
        level.reserve(tree.levels.back().size() * 2);
        for (const auto& iv : tree.levels.back()) {
            level.push_back({iv.left, iv.left + len});
            level.push_back({iv.right - len, iv.right});
            gaps.push_back({iv.left + len, iv.right - len});
        }
        tree.levels.push_back(std::move(level));
        tree.removed.push_back(std::move(gaps));
        tree.level_length.push_back(len);
        tree.level_measure.push_back(std::ldexp(len, n));
    }
    return tree;
}

IntervalSet cantor_removed(const CantorTree& tree, int depth,
                           std::vector<int>* generation_tags) {
    if (depth < 1 || depth > tree.spec.depth)
        throw std::invalid_argument("cantor_removed: depth out of range");
    struct Tagged {
        Interval iv;
        int gen;
    };
    std::vector<Tagged> all;
    for (int n = 1; n <= depth; ++n)
        for (const auto& iv : tree.removed[n - 1]) all.push_back({iv, n});
    std::sort(all.begin(), all.end(), [](const Tagged& u, const Tagged& v) {
        return u.iv.left < v.iv.left;
    });
    IntervalSet out;
    if (generation_tags) generation_tags->clear();
    for (const auto& t : all) {
        out.intervals.push_back(t.iv);
        if (generation_tags) generation_tags->push_back(t.gen);
    }
    return out;
}

PhaseShift cantor_shift(const CantorTree& tree, int depth) {
    if (depth < 1 || depth > tree.spec.depth)
        throw std::invalid_argument("cantor_shift: depth out of range");
    std::vector<Interval> ivs = tree.levels[depth];
    return exact_shift(+1, std::move(ivs));
}

std::vector<DensityChainCheck> cantor_density_chain(const CantorTree& tree,
                                                    int depth) {
    if (depth < 2 || depth > tree.spec.depth)
        throw std::invalid_argument("cantor_density_chain: depth out of range");
    std::vector<DensityChainCheck> out;
    for (int n = 2; n <= depth; ++n) {
        DensityChainCheck c;
        c.level = n;
        c.density = std::ldexp(tree.level_length[depth], depth - n) /
                    tree.level_length[n];
        c.one_over_n = 1.0 / double(n);
        c.log_bound = std::log(2.0) / (-std::log(tree.level_length[n]));
        c.holds = c.density >= c.one_over_n && c.one_over_n >= c.log_bound;
        out.push_back(c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Derivative evidence
// ---------------------------------------------------------------------------

namespace {

// level-k interval containing x, if any
const Interval* containing_interval(const std::vector<Interval>& level,
                                    double x) {
    auto it = std::upper_bound(level.begin(), level.end(), x,
                               [](double v, const Interval& iv) {
                                   return v < iv.left;
                               });
    if (it == level.begin()) return nullptr;
    --it;
    if (x >= it->left && x <= it->right) return &*it;
    return nullptr;
}

}  // namespace

DerivativeReport nontangential_derivative_report(const CantorTree& tree,
                                                 double x, int depth) {
    if (depth < 3 || depth > tree.spec.depth)
        throw std::invalid_argument("nontangential_derivative_report: depth out of range");
    DerivativeReport out;
    PhaseShift u = cantor_shift(tree, depth);
    const auto& leaves = tree.levels[depth];
    const Interval* leaf = containing_interval(leaves, x);

    if (leaf == nullptr) {
        // outside the depth set
        double dist = std::numeric_limits<double>::infinity();
        for (const auto& iv : leaves)
            dist = std::min({dist, std::abs(x - iv.left), std::abs(x - iv.right)});
        if (dist < 1e-9) {
            out.kind = DerivativeReport::Kind::undecided;
            return out;
        }
        double ux = 0.0;  // boundary value of Re K u (u vanishes near x)
        for (const auto& iv : u.intervals)
            ux += std::log(std::abs(iv.right - x)) - std::log(std::abs(iv.left - x));
        LimitConfig cfg;
        cfg.y0 = std::min(0.1, 0.5 * dist);
        std::vector<double> qre;
        for (double y : detail::geometric_sequence(cfg.y0, cfg.ratio, cfg.steps)) {
            Complex U = cauchy_of_shift(u, {x, y});
            Complex q = (U - Complex{ux, 0.0}) / Complex{0.0, y};
            qre.push_back(q.real());
        }
        std::vector<double> win(qre.end() - cfg.window, qre.end());
        out.derivative = detail::richardson(win, cfg.ratio);
        for (const auto& iv : u.intervals)
            out.derivative_closed_form +=
                1.0 / (iv.left - x) - 1.0 / (iv.right - x);
        // per-step error contraction of the raw quotient (about cfg.ratio for
        // a differentiable point); measured where the steps are still above
        // rounding noise
        size_t mid = qre.size() / 2;
        if (mid >= 2) {
            double e1 = std::abs(qre[mid] - qre[mid - 1]);
            double e0 = std::abs(qre[mid - 1] - qre[mid - 2]);
            if (e0 > 0.0) out.convergence_factor = e1 / e0;
        }
        out.kind = DerivativeReport::Kind::outside_converged;
        return out;
    }

    // inside: walk the midpoint sequence of the nested intervals
    for (int k = 1; k + 1 <= depth; ++k) {
        const Interval* node = containing_interval(tree.levels[k], x);
        if (node == nullptr) break;
        double xk = 0.5 * (node->left + node->right);
        double yk = std::abs(x - xk);
        if (yk == 0.0) continue;
        double pu = cauchy_of_shift(u, {xk, yk}).imag();
        double pk = kPi - pu;
        out.trail.emplace_back(yk, pk, pk / (std::sqrt(2.0) * yk));
    }
    std::sort(out.trail.begin(), out.trail.end(),
              [](const auto& a, const auto& b) {
                  return std::get<0>(a) > std::get<0>(b);
              });
    const size_t m = out.trail.size();
    if (m >= 4) {
        double fitted = std::numeric_limits<double>::infinity();
        for (size_t k = m / 3; k < m; ++k)
            fitted = std::min(fitted, std::get<1>(out.trail[k]) *
                                          std::abs(std::log(std::get<0>(out.trail[k]))));
        out.fitted_d = fitted;
        auto median_of = [&](size_t lo, size_t hi, int field) {
            std::vector<double> v;
            for (size_t k = lo; k < hi; ++k)
                v.push_back(field == 1 ? std::get<1>(out.trail[k])
                                       : std::get<2>(out.trail[k]));
            std::sort(v.begin(), v.end());
            return v[v.size() / 2];
        };
        size_t third = std::max<size_t>(1, m / 3);
        double p_coarse = median_of(0, third, 1);
        double p_fine = median_of(m - third, m, 1);
        double q_coarse = median_of(0, third, 2);
        double q_fine = median_of(m - third, m, 2);
        out.decay_to_zero = p_fine < 0.9 * p_coarse;
        out.quotient_growing = q_fine > 4.0 * q_coarse;
    }
    out.kind = DerivativeReport::Kind::inside_sc_evidence;
    return out;
}

// ---------------------------------------------------------------------------
// Coupling sweep
// ---------------------------------------------------------------------------

namespace {

double log_R(const PhaseShift& u, double x) {
    double s = 0.0;
    for (const auto& iv : u.intervals)
        s += std::log(std::abs(iv.right - x)) - std::log(std::abs(iv.left - x));
    return u.sign > 0 ? s : -s;
}

// root of log R = log(target) on a bracket where the difference changes sign
double sweep_root(const PhaseShift& u, double target, double lo, double hi) {
    const double lt = std::log(target);
    auto f = [&](double x) { return log_R(u, x) - lt; };
    double flo = f(lo), fhi = f(hi);
    if ((flo > 0.0) == (fhi > 0.0))
        throw std::runtime_error("sweep_root: bracket does not straddle the root");
    for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    double r = 0.5 * (lo + hi);
    for (int it = 0; it < 3; ++it) {
        double d = exp_K_shift_boundary_log_deriv(u, r);
        if (d == 0.0) break;
        double next = r - f(r) / d;
        if (next <= lo || next >= hi) break;
        r = next;
    }
    return r;
}

}  // namespace

std::vector<double> cantor_sc_sample_points(const CantorTree& tree, int depth,
                                            int count) {
    std::vector<double> pts;
    for (int level = 0; level <= depth && (int)pts.size() < 4 * count; ++level) {
        for (const auto& iv : tree.levels[level]) {
            pts.push_back(iv.left);
            pts.push_back(iv.right);
        }
        if ((int)pts.size() >= 4 * count) break;
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if ((int)pts.size() > count) {
        // deterministic spread across the set
        std::vector<double> picked;
        for (int i = 0; i < count; ++i)
            picked.push_back(pts[i * pts.size() / count]);
        return picked;
    }
    return pts;
}

std::vector<LambdaReport> classify_lambda_sweep(const CantorTree& tree,
                                                int depth,
                                                const std::vector<double>& lambdas,
                                                const SweepConfig& config) {
    PhaseShift u = cantor_shift(tree, depth);
    const auto& leaves = tree.levels[depth];
    auto samples = cantor_sc_sample_points(tree, depth, config.sc_sample_count);

    std::vector<LambdaReport> reports;
    for (double lambda : lambdas) {
        LambdaReport rep;
        rep.lambda = lambda;
        rep.gap_count = leaves.size() - 1;

        const bool boundary =
            std::abs(lambda) < config.lambda_boundary_tol ||
            std::abs(lambda - 1.0) < config.lambda_boundary_tol;
        if (boundary) {
            rep.verdict = LambdaReport::Class::boundary_pair;
            MeasurePair pair = pair_from_shift(u, 1.0);
            for (const auto& a : pair.mu.atoms)
                rep.max_truncation_mass = std::max(rep.max_truncation_mass, a.w);
            // atom criteria must fail at non-jump points of the set
            for (size_t i = 0; i < leaves.size() && rep.criteria_checked.size() < 8;
                 i += std::max<size_t>(1, leaves.size() / 8)) {
                double mid = 0.5 * (leaves[i].left + leaves[i].right);
                auto cm = atom_criterion_mu(u, mid);
                auto cn = atom_criterion_nu(u, mid);
                if (cm.verdict == AtomVerdict::no_atom &&
                    cn.verdict == AtomVerdict::no_atom)
                    rep.criteria_checked.push_back(mid);
            }
            reports.push_back(std::move(rep));
            continue;
        }

        const double target = 1.0 - 1.0 / lambda;
        if (lambda > 0.0 && lambda < 1.0) {
            rep.verdict = LambdaReport::Class::sc_evidence;
            // target < 0 while exp[K u] > 0 off the support closure
            rep.off_support_root_free = true;
            for (size_t i = 0; i + 1 < leaves.size(); ++i) {
                double mid = 0.5 * (leaves[i].right + leaves[i + 1].left);
                if (!(exp_K_shift_boundary(u, mid) > 0.0))
                    rep.off_support_root_free = false;
            }
            rep.sc_samples = samples.size();
            for (double x : samples) {
                auto dr = nontangential_derivative_report(tree, x, depth);
                if (dr.kind == DerivativeReport::Kind::inside_sc_evidence &&
                    dr.fitted_d > 0.0 && dr.quotient_growing)
                    ++rep.sc_positive;
            }
            reports.push_back(std::move(rep));
            continue;
        }

        // lambda outside [0,1]: one root per interior gap, plus one outer root
        rep.verdict = LambdaReport::Class::pure_point_evidence;
        for (size_t i = 0; i + 1 < leaves.size(); ++i) {
            double gl = leaves[i].right, gr = leaves[i + 1].left;
            double w = gr - gl;
            double r = sweep_root(u, target, gl + w * 1e-12, gr - w * 1e-12);
            double dlogR = exp_K_shift_boundary_log_deriv(u, r);
            double Rp = target * dlogR;  // R'(r) = R(r) * (log R)'(r)
            GapAtom ga;
            ga.x = r;
            ga.mass = 1.0 / (lambda * lambda * Rp);
            ga.gap = {gl, gr};
            rep.atoms.push_back(ga);
        }
        double hull_l = leaves.front().left, hull_r = leaves.back().right;
        const double edge = 1e-13 * std::max({1.0, std::abs(hull_l), std::abs(hull_r)});
        if (lambda < 0.0) {
            // target > 1: outer root below the support
            double dist = 1.0;
            while (log_R(u, hull_l - dist) > std::log(target)) dist *= 2.0;
            double r = sweep_root(u, target, hull_l - dist, hull_l - edge);
            GapAtom ga;
            ga.x = r;
            ga.mass = 1.0 / (lambda * lambda * target *
                             exp_K_shift_boundary_log_deriv(u, r));
            ga.gap = {hull_l - dist, hull_l};
            rep.atoms.insert(rep.atoms.begin(), ga);
        } else {
            // lambda > 1, target in (0,1): outer root above the support
            double dist = 1.0;
            while (log_R(u, hull_r + dist) < std::log(target)) dist *= 2.0;
            double r = sweep_root(u, target, hull_r + edge, hull_r + dist);
            GapAtom ga;
            ga.x = r;
            ga.mass = 1.0 / (lambda * lambda * target *
                             exp_K_shift_boundary_log_deriv(u, r));
            ga.gap = {hull_r, hull_r + dist};
            rep.atoms.push_back(ga);
        }
        reports.push_back(std::move(rep));
    }
    return reports;
}

}  // namespace specshift
