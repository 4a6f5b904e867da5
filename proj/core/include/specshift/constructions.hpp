#pragma once

#include <tuple>
#include <string>
#include <vector>

#include "specshift/measures.hpp"
#include "specshift/phase_shift.hpp"
#include "specshift/rank_one.hpp"

namespace specshift {

// ---------------------------------------------------------------------------
// Well-mixed sequences and interleaved shifts
// ---------------------------------------------------------------------------

struct WellMixedCheck {
    bool ok = false;
    std::string violation;  // first violated condition, human-readable
};

/// Two disjoint finite sets are well-mixed when between any two points of
/// one set, and outside their closed span, lies a point of the other.
WellMixedCheck is_well_mixed(const std::vector<double>& a,
                             const std::vector<double>& b);

/// The unique piecewise-{0,pi} shift jumping up at each a and down at each b.
/// Requires the merged order to alternate starting with an a and ending with
/// a b; support intervals pair each a with its successor b.
PhaseShift build_interleaved_shift(const std::vector<double>& a,
                                   const std::vector<double>& b);

// ---------------------------------------------------------------------------
// Dyadic accumulation example: well-mixed sequences forcing an atom at a
// point that belongs to neither sequence
// ---------------------------------------------------------------------------

struct AccumulationExample {
    std::vector<double> seq_a;  // (-1)^n / 2^n
    std::vector<double> seq_b;  // -1, then a_{n-1} + (-1)^n / 4^n
    bool well_mixed = false;
    PhaseShift shift;              // truncated forced shift (n >= 3)
    CriterionResult mu_criterion_at_zero;
    double resolved_scale = 0.0;   // innermost structure scale 2^-n
    double clipped_value = 0.0;    // criterion integral clipped at that scale
    double pair_mass_at_zero = 0.0;
};

/// Builds the truncation at depth n of the dyadic well-mixed pair whose
/// forced shift carries a point mass at 0. The accumulating tail below the
/// resolution scale is closed with the dominant phase on each side of 0,
/// which puts the up-jump at 0 itself; the outermost closer b_1 and the two
/// unresolved huggers drop out of the jump set at finite depth.
AccumulationExample accumulation_atom_example(int n);

// ---------------------------------------------------------------------------
// Complement-thinness condition and porous embeddings
// ---------------------------------------------------------------------------

struct ThinnessReport {
    double total = 0.0;
    bool endpoint_excluded = false;   // adjacent-interval exclusion was taken
    std::vector<double> per_generation;        // increments, by tag
    std::vector<double> cumulative;            // running sums, by tag
    bool diverging = false;  // sustained growth past the cap at finite depth
    bool passes = true;      // !diverging
};

/// Evaluates the gap integral sum over removed intervals of dx/|y - x| at a
/// point y of the complement. When y is an endpoint of a removed interval,
/// that interval is excluded. Optional generation tags (one per interval)
/// produce per-generation partial sums; sustained per-generation growth past
/// the cap is classified as divergent at desk scale.
ThinnessReport thinness_check(const IntervalSet& removed, double y,
                              const std::vector<int>& generation_tags = {},
                              double fail_cap = 10.0,
                              double growth_floor = 0.3);

struct PorousEmbedding {
    IntervalSet removed;             // all placed intervals, sorted
    std::vector<int> host;           // index of the host interval, per placed
    std::vector<double> certified;   // exact worst-case endpoint sums, per host
    std::vector<double> budget;      // targets, per host
    bool certificate_ok = false;     // certified[i] < budget[i] for all i
};

/// Places geometrically shrinking intervals accumulating at both endpoints
/// of each host such that the gap integral of the placed family is below the
/// host's budget for every y outside the host. The bound is certified by
/// exact evaluation at the host endpoints, which dominate all outside y.
PorousEmbedding porous_embed(const IntervalSet& hosts,
                             const std::vector<double>& budgets,
                             int levels_per_end = 8);

// ---------------------------------------------------------------------------
// Greedy selection of interval families with divergent gap integrals
// ---------------------------------------------------------------------------

struct SelectionCertificate {
    std::vector<Interval> pool;             // input gaps, sorted by length desc
    std::vector<std::vector<size_t>> generations;  // pool indices per generation
    std::vector<size_t> L, M;               // odd / even generations
    std::vector<double> sample_points;
    // increments[g][s]: generation g's contribution to the right/left gap
    // integral at sample point s
    std::vector<std::vector<double>> right_increments;
    std::vector<std::vector<double>> left_increments;
};

/// Generation-by-generation greedy cover: each generation takes unused gaps
/// (largest first) until its contribution to both one-sided unit-window gap
/// integrals exceeds 1 at every applicable sample point. Odd generations go
/// to L, even to M. Throws with a diagnosis if the pool runs out.
SelectionCertificate select_divergent_families(
    const IntervalSet& gaps, int generations,
    const std::vector<double>& sample_ys);

struct RefinementResult {
    std::vector<size_t> refined;       // pool indices l that received a chain
    std::vector<size_t> N;             // union of the chains, subset of M
    std::vector<double> delta;         // per refined l, the window width
    std::vector<double> delta_quad_ratio;    // delta_l / |I_l|^2 (< 1)
    bool quarter_distance_ok = false;  // spacing constraints all hold
    // divergence evidence at refined right endpoints: per-element partial
    // sums of the chain's gap integral
    std::vector<std::vector<double>> endpoint_partials;
    // principal-value boundedness evidence at an interior point
    std::vector<std::pair<double, double>> pv_trail;  // (eps, clipped value)
    double pv_bound = 0.0;                            // max over the trail
};

/// Refines the even-generation family: near the right endpoint of each large
/// gap, selects a chain of M-intervals inside a window delta_l constrained by
/// both the quadratic bound delta_l < |I_l|^2 and the quarter-distance rule,
/// so that the chain's gap integral diverges at right endpoints while the
/// principal value of the indicator of the refined union plus the [z_n, y_n]
/// caps stays bounded at interior points. z_n in I_n with y_n - z_n < |I_n|^2
/// is validated.
RefinementResult refine_with_pv_bound(const SelectionCertificate& cert,
                                      const std::vector<double>& z_points,
                                      double interior_y,
                                      const std::vector<double>& endpoint_ys);

// ---------------------------------------------------------------------------
// Staged insertion of an eigenvalue pair with certified mass drift
// ---------------------------------------------------------------------------

struct StageInsertion {
    PhaseShift next;
    double b = 0.0;          // inserted up-jump
    double c = 0.0;          // compensating down-jump
    int stage = 0;           // k
    double bound_target = 0.0;   // 2^{-(k+1)}
    double bound_value = 0.0;    // max over prior jumps of pi*I(b,c; y)
    double distance_guard = 0.0; // admissible room from the spacing rule
    // per existing mu-atom: location and predicted mass ratio (c-y)/(b-y)
    std::vector<std::pair<double, double>> drift;
};

/// Inserts a new 0->pi jump at b (inside a zero-gap of u) and a compensating
/// pi->0 jump at c chosen close enough that the perturbation integral
/// pi * int_b^c dx/|x-y| stays under half of 2^{-(k+1)} at every existing
/// jump point y. Masses of preexisting atoms drift by (c-y)/(b-y), inside
/// (1 - 2^-k, 1 + 2^-k).
StageInsertion insert_eigenvalue_stage(const PhaseShift& u, double b, int stage);

// ---------------------------------------------------------------------------
// Cantor construction
// ---------------------------------------------------------------------------

struct CantorSpec {
    std::vector<double> ratios;  // removed fraction per level, nonincreasing
    int depth = 0;
};

/// Default conforming ratio sequence: 1/2, then 1/n^2. The tail products
/// telescope to (n-1)/n exactly, so the density defect condition holds with
/// equality for every n >= 2 and the limit measure is exactly 1/4.
CantorSpec default_cantor_spec(int depth);

struct CantorCertificate {
    bool shape_ok = false;        // ratios in (0,1), nonincreasing
    bool conforming = false;      // defect condition certified for n >= 2
    bool tail_exact = false;      // closed-form tail available (default spec)
    double measure_lower_bound = 0.0;
    std::string note;
};

CantorCertificate certify_cantor_spec(const CantorSpec& spec);

struct CantorTree {
    CantorSpec spec;
    std::vector<std::vector<Interval>> levels;   // levels[n]: 2^n intervals
    std::vector<std::vector<Interval>> removed;  // removed[n]: gaps cut at step n
    std::vector<double> level_length;   // single interval length per level
    std::vector<double> level_measure;  // 2^n * level_length[n], bit-exact
    CantorCertificate certificate;
};

CantorTree cantor_build(const CantorSpec& spec);

/// All removed intervals down to `depth`, tagged by generation.
IntervalSet cantor_removed(const CantorTree& tree, int depth,
                           std::vector<int>* generation_tags = nullptr);

/// The shift equal to pi on the depth-level set and 0 elsewhere.
PhaseShift cantor_shift(const CantorTree& tree, int depth);

/// Per-level density chain check: the density of the depth set inside a
/// level-n interval must be >= 1/n, which in turn dominates
/// ln 2 / (-ln(level length)). Valid for n >= 2; n = 1 is excluded because
/// the defect condition forces the level-1 density at or below 1/2.
struct DensityChainCheck {
    int level = 0;
    double density = 0.0;
    double one_over_n = 0.0;
    double log_bound = 0.0;
    bool holds = false;
};

std::vector<DensityChainCheck> cantor_density_chain(const CantorTree& tree,
                                                    int depth);

// ---------------------------------------------------------------------------
// Nontangential derivative evidence on and off the Cantor set
// ---------------------------------------------------------------------------

struct DerivativeReport {
    enum class Kind { outside_converged, inside_sc_evidence, undecided };
    Kind kind = Kind::undecided;
    double derivative = 0.0;       // when outside
    double derivative_closed_form = 0.0;
    double convergence_factor = 0.0;  // per-step quotient error ratio, outside
    double fitted_d = 0.0;         // min over the fit window of p_k |ln y_k|
    bool decay_to_zero = false;    // p_k -> 0 along the height-sorted sequence
    bool quotient_growing = false; // quotient proxy grows as y shrinks
    // (y_k, pi - Pu(x_k + i y_k), quotient proxy p_k / (sqrt(2) y_k)),
    // sorted by height descending. Individual entries spike when x sits near
    // the center of its interval at some level (the probe then hangs right
    // over the next gap), so the decay/growth verdicts compare medians of
    // the coarse and fine thirds rather than consecutive entries.
    std::vector<std::tuple<double, double, double>> trail;
};

/// Evidence for the derivative dichotomy of the shift transform: off the
/// depth set the difference quotient converges (reported against the closed
/// form); at a point of the set the Poisson defect pi - Pu along the
/// midpoint sequence decays to zero no faster than d/|ln y|, so the
/// difference quotient diverges. Points in a gap within 1e-9 of a gap
/// endpoint are undecided.
DerivativeReport nontangential_derivative_report(const CantorTree& tree,
                                                 double x, int depth);

// ---------------------------------------------------------------------------
// Coupling sweep over the Cantor family
// ---------------------------------------------------------------------------

struct GapAtom {
    double x = 0.0;
    double mass = 0.0;
    Interval gap;       // hosting gap (or outer region)
    bool oracle_ok = false;  // filled by callers running the oracle
};

struct LambdaReport {
    double lambda = 0.0;
    enum class Class { pure_point_evidence, sc_evidence, boundary_pair };
    Class verdict = Class::boundary_pair;
    std::vector<GapAtom> atoms;       // one per hosting gap, when they exist
    size_t gap_count = 0;             // interior gaps examined
    bool off_support_root_free = false;  // for lambda in (0,1)
    size_t sc_samples = 0;
    size_t sc_positive = 0;           // samples with fitted d > 0 and growth
    double max_truncation_mass = 0.0; // largest atom mass of the boundary pair
    std::vector<double> criteria_checked;  // sample points with failing criteria
};

struct SweepConfig {
    int sc_sample_count = 10;
    double lambda_boundary_tol = 1e-12;
};

/// Classifies each coupling against the depth-truncated Cantor shift family:
/// couplings in (0,1) produce no roots of exp[K u] = 1 - 1/lambda off the
/// support and singular-continuous evidence at set points; couplings outside
/// [0,1] produce exactly one root (hence one atom) per complementary gap plus
/// one outer root. lambda in {0,1} reports the truncated boundary pair with
/// decaying largest masses.
std::vector<LambdaReport> classify_lambda_sweep(const CantorTree& tree,
                                                int depth,
                                                const std::vector<double>& lambdas,
                                                const SweepConfig& config = {});

/// Sample points of the depth set suitable for singular-continuous evidence
/// (endpoints of shallow-level intervals, which persist at all depths).
std::vector<double> cantor_sc_sample_points(const CantorTree& tree, int depth,
                                            int count);

}  // namespace specshift
