// specshift command-line interface: measures, transforms, shifts, Clark
// family evaluation, spectral classification, explicit constructions, and
// oracle cross-checks. All artifacts are JSON or CSV.

#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "specshift/constructions.hpp"
#include "specshift/io.hpp"
#include "specshift/matrix_oracle.hpp"
#include "specshift/phase_shift.hpp"
#include "specshift/rank_one.hpp"
#include "specshift/transforms.hpp"

using namespace specshift;
using nlohmann::json;

namespace {

struct GlobalOpts {
    double tol = 1e-8;
    double ymax = 0.1;
    int steps = 40;
    long seed = 1;
    std::string out;
};

LimitConfig limit_config(const GlobalOpts& g) {
    LimitConfig cfg;
    cfg.tol = g.tol;
    cfg.y0 = g.ymax;
    cfg.steps = g.steps;
    return cfg;
}

void emit(const GlobalOpts& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << "\n";
    } else {
        write_file(g.out, text);
    }
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

std::vector<double> parse_grid(const std::string& spec) {
    // "lo:hi:n" inclusive grid
    double lo, hi;
    int n;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &lo, &hi, &n) != 3 || n < 2)
        throw std::invalid_argument("grid must be lo:hi:n with n >= 2");
    std::vector<double> xs;
    for (int i = 0; i < n; ++i) xs.push_back(lo + (hi - lo) * i / (n - 1));
    return xs;
}

std::vector<double> read_points_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read points file " + path);
    std::vector<double> xs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::getline(ss, cell, ',');
        try {
            xs.push_back(std::stod(cell));
        } catch (...) {
            continue;  // header or comment line
        }
    }
    return xs;
}

const char* verdict_name(SpectralVerdict::Kind k) {
    switch (k) {
        case SpectralVerdict::Kind::atom: return "atom";
        case SpectralVerdict::Kind::no_atom: return "no_atom";
        case SpectralVerdict::Kind::singular_continuous_evidence: return "sc_evidence";
        default: return "undecided";
    }
}

struct CheckTable {
    bool all = true;
    std::ostringstream lines;
    void row(const std::string& name, bool ok, const std::string& detail = "") {
        all = all && ok;
        lines << (ok ? "[PASS] " : "[FAIL] ") << name;
        if (!detail.empty()) lines << "  (" << detail << ")";
        lines << "\n";
    }
};

// ---------------------------------------------------------------------------
// repro targets
// ---------------------------------------------------------------------------

int repro_example_3_4(const GlobalOpts&) {
    CheckTable t;
    const std::array<std::pair<double, double>, 3> spans{
        {{0.0, 1.0}, {0.25, 0.75}, {-1.0, 3.0}}};
    for (auto [x, y] : spans) {
        PhaseShift u = exact_shift(+1, {{x, y}});
        MeasurePair pr = pair_from_shift(u, 1.0);
        bool ok = pr.mu.atoms.size() == 1 && pr.nu.atoms.size() == 1 &&
                  pr.mu.atoms[0].x == x && pr.nu.atoms[0].x == y &&
                  pr.mu.atoms[0].w == y - x && pr.nu.atoms[0].w == y - x;
        std::ostringstream d;
        d << "mu=" << pr.mu.atoms[0].w << "*delta_" << pr.mu.atoms[0].x
          << " nu=" << pr.nu.atoms[0].w << "*delta_" << pr.nu.atoms[0].x;
        t.row("single-interval pair on (" + std::to_string(x) + "," +
                  std::to_string(y) + ") exact",
              ok, d.str());
    }
    std::cout << t.lines.str();
    std::cout << (t.all ? "PASS" : "FAIL") << "\n";
    return t.all ? 0 : 1;
}

int repro_example_5_2(const GlobalOpts&) {
    CheckTable t;
    double prev = 0.0;
    bool monotone = true, bounded = true;
    for (int n = 2; n <= 10; ++n) {
        auto acc = accumulation_atom_example(n);
        if (acc.clipped_value + 1e-9 < prev) monotone = false;
        if (!(acc.clipped_value < 6.0)) bounded = false;
        prev = acc.clipped_value;
        if (n >= 3) {
            t.row("n=" + std::to_string(n) + " atom at 0",
                  acc.mu_criterion_at_zero.verdict == AtomVerdict::atom &&
                      acc.pair_mass_at_zero > 0.0,
                  "clipped integral " + std::to_string(acc.clipped_value) +
                      ", mass " + std::to_string(acc.pair_mass_at_zero));
        }
    }
    t.row("criterion trail monotone and bounded by 6.0", monotone && bounded);
    std::cout << t.lines.str();
    std::cout << (t.all ? "PASS" : "FAIL") << "\n";
    return t.all ? 0 : 1;
}

int repro_thm_5_1(const GlobalOpts&) {
    CheckTable t;
    {
        std::vector<double> a{0.0, 2.0}, b{1.0, 3.0};
        auto wm = is_well_mixed(a, b);
        PhaseShift u = build_interleaved_shift(a, b);
        MeasurePair pr = pair_from_shift(u, 1.0);
        bool ok = wm.ok && pr.mu.atoms.size() == 2 && pr.nu.atoms.size() == 2 &&
                  pr.mu.atoms[0].x == 0.0 && pr.mu.atoms[1].x == 2.0 &&
                  pr.nu.atoms[0].x == 1.0 && pr.nu.atoms[1].x == 3.0;
        std::vector<Complex> grid{{0.3, 0.7}, {-1.0, 1.5}, {2.5, 0.4}};
        double res = pair_identity_residual(u, pr, grid);
        t.row("interleaved shift recovers the sequences", ok);
        t.row("pair identity residual < 1e-10", res < 1e-10,
              "residual " + std::to_string(res));
    }
    {
        std::vector<double> a{-0.8, 0.1, 0.9, 1.7}, b{-0.3, 0.5, 1.2, 2.4};
        PhaseShift u = build_interleaved_shift(a, b);
        MeasurePair pr = pair_from_shift(u, 1.0);
        bool ok = true;
        for (size_t i = 0; i < a.size(); ++i)
            ok = ok && pr.mu.atoms[i].x == a[i] && pr.nu.atoms[i].x == b[i] &&
                 pr.mu.atoms[i].w > 0.0 && pr.nu.atoms[i].w > 0.0;
        auto wm = is_well_mixed(a, b);
        t.row("four-point well-mixed pair", wm.ok && ok);
    }
    std::cout << t.lines.str();
    std::cout << (t.all ? "PASS" : "FAIL") << "\n";
    return t.all ? 0 : 1;
}

int repro_thm_5_5(const GlobalOpts&) {
    CheckTable t;
    // middle-thirds complement at depth 12 fails the gap-integral condition
    CantorSpec thirds;
    thirds.depth = 12;
    thirds.ratios.assign(12, 1.0 / 3.0);
    CantorTree tree = cantor_build(thirds);
    std::vector<int> tags;
    IntervalSet removed = cantor_removed(tree, 12, &tags);
    const std::vector<double> points{1.0 / 4,  3.0 / 4,  1.0 / 13, 3.0 / 13,
                                     4.0 / 13, 9.0 / 13, 10.0 / 13, 12.0 / 13,
                                     3.0 / 40, 3.0 / 10};
    for (double y : points) {
        auto rep = thinness_check(removed, y, tags);
        t.row("thirds depth-12 diverges at y=" + std::to_string(y),
              rep.diverging && rep.total > 10.0,
              "total " + std::to_string(rep.total));
    }
    // porous embedding with budgets 2^-i passes at all host endpoints
    IntervalSet hosts;
    std::vector<double> budgets;
    for (int i = 1; i <= 10; ++i) {
        hosts.intervals.push_back({2.0 * i, 2.0 * i + 1.0});
        budgets.push_back(std::ldexp(1.0, -i));
    }
    auto emb = porous_embed(hosts, budgets);
    t.row("porous embedding certificate", emb.certificate_ok);
    double budget_sum = 0.0;
    for (double b : budgets) budget_sum += b;
    bool all_pass = true;
    for (const auto& J : hosts.intervals)
        for (double y : {J.left, J.right}) {
            auto rep = thinness_check(emb.removed, y);
            all_pass = all_pass && rep.passes && rep.total < budget_sum;
        }
    t.row("porous complement passes at 20 boundary points", all_pass);
    std::cout << t.lines.str();
    std::cout << (t.all ? "PASS" : "FAIL") << "\n";
    return t.all ? 0 : 1;
}

int repro_example_6_1(const GlobalOpts&, int depth,
                      const std::vector<double>& lambdas) {
    CheckTable t;
    CantorTree tree = cantor_build(default_cantor_spec(depth));
    t.row("ratio certificate", tree.certificate.conforming,
          tree.certificate.note);
    double prod = 1.0;
    for (double r : tree.spec.ratios) prod *= 1.0 - r;
    t.row("set measure equals the ratio product exactly",
          tree.level_measure[depth] == prod,
          "measure " + std::to_string(tree.level_measure[depth]));
    auto chain = cantor_density_chain(tree, depth);
    bool chain_ok = true;
    for (const auto& c : chain) chain_ok = chain_ok && c.holds;
    t.row("density chain at every level n >= 2", chain_ok);

    auto reports = classify_lambda_sweep(tree, depth, lambdas);
    PhaseShift u = cantor_shift(tree, depth);
    MeasurePair pair = pair_from_shift(u, 1.0);
    for (const auto& rep : reports) {
        std::ostringstream name;
        name << "lambda=" << rep.lambda;
        if (rep.verdict == LambdaReport::Class::sc_evidence) {
            t.row(name.str() + " no roots off the set, sc evidence",
                  rep.off_support_root_free && rep.sc_positive == rep.sc_samples,
                  std::to_string(rep.sc_positive) + "/" +
                      std::to_string(rep.sc_samples) + " sample points");
        } else if (rep.verdict == LambdaReport::Class::pure_point_evidence) {
            bool count_ok = rep.atoms.size() == rep.gap_count + 1;
            double err = 0.0;
            bool oracle_ok = false;
            if (pair.mu.atoms.size() <= 2048) {
                AtomicMeasure oracle = perturb_spectrum(
                    measure_to_model(pair.mu), {rep.lambda}, 2048);
                if (oracle.atoms.size() == rep.atoms.size()) {
                    oracle_ok = true;
                    for (size_t i = 0; i < oracle.atoms.size(); ++i) {
                        err = std::max(err,
                                       std::abs(oracle.atoms[i].x - rep.atoms[i].x));
                        err = std::max(err,
                                       std::abs(oracle.atoms[i].w - rep.atoms[i].mass));
                    }
                    oracle_ok = err < 1e-8;
                }
            }
            t.row(name.str() + " one atom per gap, oracle-confirmed",
                  count_ok && oracle_ok,
                  std::to_string(rep.atoms.size()) + " atoms, max err " +
                      std::to_string(err));
        } else {
            t.row(name.str() + " boundary pair with decaying truncation masses",
                  rep.max_truncation_mass > 0.0 && !rep.criteria_checked.empty());
        }
    }
    std::cout << t.lines.str();
    std::cout << (t.all ? "PASS" : "FAIL") << "\n";
    return t.all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral calculus of rank-one perturbations"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    GlobalOpts g;
    app.add_option("--tol", g.tol, "limit tolerance");
    app.add_option("--ymax", g.ymax, "first height of the sampling ray");
    app.add_option("--steps", g.steps, "samples along the ray")
        ->check(CLI::Range(8, 200));
    app.add_option("--seed", g.seed, "seed for randomized suites");
    app.add_option("--out", g.out, "output path (stdout if omitted)");

    // ---- measure ----
    auto* measure = app.add_subcommand("measure", "atomic measure utilities");
    std::string m_in, m_intervals;
    auto* m_norm = measure->add_subcommand("norm", "measure-space norm");
    m_norm->add_option("--in", m_in, "measure JSON")->required();
    auto* m_val = measure->add_subcommand("validate", "check invariants");
    m_val->add_option("--in", m_in, "measure JSON")->required();
    auto* m_res = measure->add_subcommand("restrict", "restrict to an interval set");
    m_res->add_option("--in", m_in, "measure JSON")->required();
    m_res->add_option("--intervals", m_intervals, "interval set JSON file")->required();

    // ---- transform ----
    auto* transform = app.add_subcommand("transform", "Cauchy/Poisson transforms");
    std::string t_in, t_z, t_xgrid;
    double t_y = 1e-3;
    auto* t_eval = transform->add_subcommand("eval", "evaluate at one point");
    t_eval->add_option("--measure", t_in)->required();
    t_eval->add_option("--z", t_z, "point x,y in the upper half-plane")->required();
    auto* t_sweep = transform->add_subcommand("sweep", "CSV sweep x,y,re,im");
    t_sweep->add_option("--measure", t_in)->required();
    t_sweep->add_option("--x", t_xgrid, "grid lo:hi:n")->required();
    t_sweep->add_option("--y", t_y, "height");

    // ---- shift ----
    auto* shift = app.add_subcommand("shift", "Krein shift calculus");
    std::string s_in, s_measure, s_grid, s_out_mu, s_out_nu;
    double s_lambda = 1.0, s_x = 0.0;
    auto* s_topair = shift->add_subcommand("to-pair", "measure pair from an exact shift");
    s_topair->add_option("--in", s_in, "shift JSON")->required();
    s_topair->add_option("--lambda", s_lambda);
    s_topair->add_option("--out-mu", s_out_mu);
    s_topair->add_option("--out-nu", s_out_nu);
    auto* s_frompair = shift->add_subcommand("from-pair", "sampled shift from a measure");
    bool s_csv = false;
    s_frompair->add_option("--measure", s_measure)->required();
    s_frompair->add_option("--lambda", s_lambda);
    s_frompair->add_option("--grid", s_grid, "lo:hi:n")->required();
    s_frompair->add_flag("--csv", s_csv, "emit x,value rows instead of JSON");
    auto* s_crit = shift->add_subcommand("criteria", "pointwise criteria at x");
    s_crit->add_option("--in", s_in, "shift JSON")->required();
    s_crit->add_option("--x", s_x)->required();

    // ---- family ----
    auto* family = app.add_subcommand("family", "Clark family evaluation");
    std::string f_measure, f_alpha, f_z;
    auto* f_eval = family->add_subcommand("eval", "char function and member Poisson");
    f_eval->add_option("--measure", f_measure)->required();
    f_eval->add_option("--alpha", f_alpha,
                       "unimodular parameter re,im or coupling 'lambda=L'");
    f_eval->add_option("--z", f_z, "point x,y")->required();

    // ---- classify ----
    auto* classify = app.add_subcommand("classify", "per-point spectral verdicts");
    std::string c_measure, c_points;
    double c_lambda = 1.0;
    classify->add_option("--measure", c_measure)->required();
    classify->add_option("--lambda", c_lambda)->required();
    classify->add_option("--points", c_points, "CSV of x values")->required();

    // ---- construct ----
    auto* construct = app.add_subcommand("construct", "explicit constructions");
    int k_depth = 10, k_n = 6;
    std::string w_a, w_b;
    auto* k_cantor = construct->add_subcommand("cantor", "ratio-sequence set tree");
    k_cantor->add_option("--depth", k_depth);
    auto* k_wm = construct->add_subcommand("wellmixed", "interleaved shift");
    k_wm->add_option("--a", w_a, "comma list")->required();
    k_wm->add_option("--b", w_b, "comma list")->required();
    auto* k_e52 = construct->add_subcommand("example52", "dyadic accumulation pair");
    k_e52->add_option("--n", k_n);

    // ---- check ----
    auto* check = app.add_subcommand("check", "named condition checks");
    std::string ck_k;
    double ck_y = 0.0;
    auto* ck_t55 = check->add_subcommand("t55", "complement-thinness condition");
    ck_t55->add_option("--k", ck_k, "removed-interval set JSON")->required();
    ck_t55->add_option("--y", ck_y)->required();

    // ---- sweep ----
    auto* sweep = app.add_subcommand("sweep", "coupling sweep over a set family");
    std::string sw_spec, sw_lambdas = "0.5,2";
    int sw_depth = 0;
    sweep->add_option("--spec", sw_spec, "set spec JSON")->required();
    sweep->add_option("--lambdas", sw_lambdas, "comma list");
    sweep->add_option("--depth", sw_depth, "override spec depth");

    // ---- oracle ----
    auto* oracle = app.add_subcommand("oracle", "matrix ground truth");
    std::string o_measure;
    double o_lambda = 1.0;
    auto* o_cmp = oracle->add_subcommand("compare", "three-route discrepancy report");
    o_cmp->add_option("--measure", o_measure)->required();
    o_cmp->add_option("--lambda", o_lambda)->required();

    // ---- repro ----
    auto* repro = app.add_subcommand("repro", "end-to-end reproduction targets");
    std::string r_target;
    int r_depth = 10;
    std::string r_lambdas = "-1,0.5,2";
    repro->add_option("target", r_target,
                      "example-3.4|example-5.2|example-6.1|thm-5.1|thm-5.5")
        ->required();
    repro->add_option("--depth", r_depth);
    repro->add_option("--lambdas", r_lambdas);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 2;
    }

    try {
        if (*m_norm) {
            AtomicMeasure m = measure_from_json(read_file(m_in));
            emit(g, json{{"norm", measure_norm(m)}}.dump(2));
        } else if (*m_val) {
            AtomicMeasure m;
            json j = json::parse(read_file(m_in));
            if (j.contains("inf")) m.infinity_mass = j.at("inf").get<double>();
            for (const auto& a : j.value("atoms", json::array()))
                m.atoms.push_back({a.at("x").get<double>(), a.at("w").get<double>()});
            auto err = validate(m);
            emit(g, json{{"ok", !err.has_value()}, {"violation", err.value_or("")}}
                        .dump(2));
            return err ? 1 : 0;
        } else if (*m_res) {
            AtomicMeasure m = measure_from_json(read_file(m_in));
            IntervalSet s = interval_set_from_json(read_file(m_intervals));
            emit(g, measure_to_json(restrict_to(m, s)));
        } else if (*t_eval) {
            AtomicMeasure m = measure_from_json(read_file(t_in));
            auto xy = parse_list(t_z);
            if (xy.size() != 2) throw std::invalid_argument("--z needs x,y");
            UpperHalfPlanePoint z{xy[0], xy[1]};
            Complex K = cauchy(m, z);
            emit(g, json{{"re", K.real()},
                         {"im", K.imag()},
                         {"poisson", poisson(m, z)}}
                        .dump(2));
        } else if (*t_sweep) {
            AtomicMeasure m = measure_from_json(read_file(t_in));
            std::vector<std::array<double, 4>> rows;
            for (double x : parse_grid(t_xgrid)) {
                Complex K = cauchy(m, {x, t_y});
                rows.push_back({x, t_y, K.real(), K.imag()});
            }
            emit(g, sweep_csv(rows));
        } else if (*s_topair) {
            PhaseShift u = shift_from_json(read_file(s_in));
            MeasurePair pr = pair_from_shift(u, s_lambda);
            if (!s_out_mu.empty()) write_file(s_out_mu, measure_to_json(pr.mu));
            if (!s_out_nu.empty()) write_file(s_out_nu, measure_to_json(pr.nu));
            if (s_out_mu.empty() && s_out_nu.empty())
                emit(g, json{{"mu", json::parse(measure_to_json(pr.mu))},
                             {"nu", json::parse(measure_to_json(pr.nu))}}
                            .dump(2));
        } else if (*s_frompair) {
            AtomicMeasure m = measure_from_json(read_file(s_measure));
            auto sampling = shift_from_pair(m, s_lambda, parse_grid(s_grid));
            if (s_csv) {
                emit(g, boundary_csv(sampling.shift.samples));
            } else {
                json j = json::parse(shift_to_json(sampling.shift));
                j["skipped"] = sampling.skipped;
                emit(g, j.dump(2));
            }
        } else if (*s_crit) {
            PhaseShift u = shift_from_json(read_file(s_in));
            auto cm = atom_criterion_mu(u, s_x);
            auto cn = atom_criterion_nu(u, s_x);
            auto ss = singular_support_test(u, s_x);
            auto pv = pv_integral(u, s_x);
            auto vname = [](AtomVerdict v) {
                return v == AtomVerdict::atom      ? "atom"
                       : v == AtomVerdict::no_atom ? "no_atom"
                                                   : "undecided";
            };
            const char* side = ss.side == SingularSide::mu_side   ? "mu_side"
                               : ss.side == SingularSide::nu_side ? "nu_side"
                                                                  : "neither";
            const char* pvkind =
                pv.kind == PvResult::Kind::finite      ? "finite"
                : pv.kind == PvResult::Kind::plus_inf  ? "plus_inf"
                : pv.kind == PvResult::Kind::minus_inf ? "minus_inf"
                                                       : "undecided";
            emit(g, json{{"x", s_x},
                         {"mu_atom", vname(cm.verdict)},
                         {"mu_value", cm.value},
                         {"nu_atom", vname(cn.verdict)},
                         {"nu_value", cn.value},
                         {"singular_side", side},
                         {"pv", pvkind},
                         {"pv_value", pv.value}}
                        .dump(2));
        } else if (*f_eval) {
            AtomicMeasure m = measure_from_json(read_file(f_measure));
            auto xy = parse_list(f_z);
            if (xy.size() != 2) throw std::invalid_argument("--z needs x,y");
            UpperHalfPlanePoint z{xy[0], xy[1]};
            CharFunction cf{m};
            Complex phi = char_function_eval(cf, z);
            json j{{"phi_re", phi.real()},
                   {"phi_im", phi.imag()},
                   {"abs_phi", std::abs(phi)}};
            if (!f_alpha.empty()) {
                Complex alpha;
                if (f_alpha.rfind("lambda=", 0) == 0) {
                    double lam = std::stod(f_alpha.substr(7));
                    auto cp = coupling_to_circle({lam});
                    alpha = cp.alpha;
                    j["scale_c"] = cp.scale_c;
                } else {
                    auto re_im = parse_list(f_alpha);
                    if (re_im.size() != 2)
                        throw std::invalid_argument("--alpha needs re,im or lambda=L");
                    alpha = {re_im[0], re_im[1]};
                }
                j["alpha_re"] = alpha.real();
                j["alpha_im"] = alpha.imag();
                j["member_poisson"] = clark_member_poisson(cf, alpha, z);
            }
            emit(g, j.dump(2));
        } else if (*classify) {
            AtomicMeasure m = measure_from_json(read_file(c_measure));
            CharFunction cf{m};
            auto cp = coupling_to_circle({c_lambda});
            AtomTestConfig cfg;
            cfg.limits = limit_config(g);
            std::ostringstream os;
            os << "x,kind,mass,evidence_rate\n";
            os.precision(17);
            for (double x : read_points_csv(c_points)) {
                auto v = atom_test_nontangential(cf, cp.alpha, x, cfg);
                double rate = 0.0;
                if (v.kind == SpectralVerdict::Kind::atom)
                    rate = v.quotient_trail.back().second;
                else if (v.kind == SpectralVerdict::Kind::no_atom)
                    rate = v.limit_gap;
                else if (!v.quotient_trail.empty())
                    rate = v.quotient_trail.back().second /
                           std::max(v.quotient_trail.front().second, 1e-300);
                os << x << "," << verdict_name(v.kind) << "," << v.mass << ","
                   << rate << "\n";
            }
            emit(g, os.str());
        } else if (*k_cantor) {
            CantorTree tree = cantor_build(default_cantor_spec(k_depth));
            emit(g, cantor_tree_to_json(tree));
        } else if (*k_wm) {
            auto a = parse_list(w_a), b = parse_list(w_b);
            auto wm = is_well_mixed(a, b);
            if (!wm.ok) {
                emit(g, json{{"well_mixed", false}, {"violation", wm.violation}}.dump(2));
                return 1;
            }
            PhaseShift u = build_interleaved_shift(a, b);
            json j = json::parse(shift_to_json(u));
            j["well_mixed"] = true;
            emit(g, j.dump(2));
        } else if (*k_e52) {
            auto acc = accumulation_atom_example(k_n);
            json j{{"a", acc.seq_a},
                   {"b", acc.seq_b},
                   {"well_mixed", acc.well_mixed},
                   {"shift", json::parse(shift_to_json(acc.shift))},
                   {"atom_at_zero",
                    acc.mu_criterion_at_zero.verdict == AtomVerdict::atom},
                   {"criterion_clipped_value", acc.clipped_value},
                   {"pair_mass_at_zero", acc.pair_mass_at_zero}};
            emit(g, j.dump(2));
        } else if (*ck_t55) {
            std::vector<int> tags;
            IntervalSet removed = interval_set_from_json(read_file(ck_k), &tags);
            auto rep = thinness_check(removed, ck_y, tags);
            emit(g, json{{"y", ck_y},
                         {"total", rep.total},
                         {"passes", rep.passes},
                         {"endpoint_excluded", rep.endpoint_excluded},
                         {"per_generation", rep.per_generation}}
                        .dump(2));
            return rep.passes ? 0 : 1;
        } else if (*sweep) {
            CantorSpec spec = cantor_spec_from_json(read_file(sw_spec));
            if (sw_depth > 0) {
                if (sw_depth <= spec.depth) {
                    spec.depth = sw_depth;
                    spec.ratios.resize(sw_depth);
                } else if (spec.ratios == default_cantor_spec(spec.depth).ratios) {
                    spec = default_cantor_spec(sw_depth);
                } else {
                    throw std::invalid_argument(
                        "--depth exceeds the supplied ratio list");
                }
            }
            CantorTree tree = cantor_build(spec);
            auto reports =
                classify_lambda_sweep(tree, spec.depth, parse_list(sw_lambdas));
            std::ostringstream os;
            os.precision(17);
            os << "lambda,kind,x,mass,extra\n";
            for (const auto& rep : reports) {
                if (rep.verdict == LambdaReport::Class::pure_point_evidence) {
                    for (const auto& a : rep.atoms)
                        os << rep.lambda << ",atom," << a.x << "," << a.mass
                           << "," << a.gap.left << "\n";
                    os << rep.lambda << ",summary," << rep.atoms.size()
                       << ",0,atoms_confirmed\n";
                } else if (rep.verdict == LambdaReport::Class::sc_evidence) {
                    os << rep.lambda << ",summary," << rep.sc_positive << ","
                       << rep.sc_samples << ",sc_evidence\n";
                } else {
                    os << rep.lambda << ",summary," << rep.max_truncation_mass
                       << ",0,boundary_pair\n";
                }
            }
            emit(g, os.str());
        } else if (*o_cmp) {
            AtomicMeasure m = measure_from_json(read_file(o_measure));
            auto rep = compare_with_formula(m, {o_lambda});
            emit(g, json{{"n", rep.n},
                         {"lambda", rep.lambda},
                         {"max_location_error", rep.max_location_error},
                         {"max_mass_error", rep.max_mass_error},
                         {"base_reconstruction_error", rep.base_reconstruction_error},
                         {"mass_conservation_error", rep.mass_conservation_error},
                         {"interlaced", rep.interlaced},
                         {"counts_match", rep.counts_match}}
                        .dump(2));
            bool ok = rep.counts_match && rep.interlaced &&
                      rep.max_location_error < 1e-9 && rep.max_mass_error < 1e-9;
            return ok ? 0 : 1;
        } else if (*repro) {
            if (r_target == "example-3.4") return repro_example_3_4(g);
            if (r_target == "example-5.2") return repro_example_5_2(g);
            if (r_target == "example-6.1")
                return repro_example_6_1(g, r_depth, parse_list(r_lambdas));
            if (r_target == "thm-5.1") return repro_thm_5_1(g);
            if (r_target == "thm-5.5") return repro_thm_5_5(g);
            throw std::invalid_argument("unknown repro target " + r_target);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 1;
    }
    return 0;
}
