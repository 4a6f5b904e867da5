#include <doctest.h>

#include <cmath>
#include <numbers>

#include "specshift/matrix_oracle.hpp"
#include "specshift/phase_shift.hpp"
#include "specshift/transforms.hpp"
#include "test_support.hpp"

using namespace specshift;
namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("shift validation") {
    CHECK_THROWS_AS(exact_shift(+1, {{0.0, 1.0}, {1.0, 2.0}}),
                    std::invalid_argument);  // abutting erases the jump
    CHECK_THROWS_AS(exact_shift(2, {{0.0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(exact_shift(+1, {{1.0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(sampled_shift(+1, {{0.0, 4.0}}), std::invalid_argument);
    CHECK(!validate(exact_shift(-1, {{0.0, 1.0}, {2.0, 3.0}})));
}

TEST_CASE("exp of the shift transform is the rational product") {
    PhaseShift u = exact_shift(+1, {{0.0, 1.0}});
    Complex i{0.0, 1.0};
    CHECK(std::abs(exp_K_shift(u, i) - Complex{1.0, 1.0}) < 1e-15);

    PhaseShift empty = exact_shift(+1, {});
    CHECK(exp_K_shift(empty, i) == Complex{1.0, 0.0});

    PhaseShift two = exact_shift(+1, {{0.0, 1.0}, {2.0, 3.0}});
    Complex expect = ((1.0 - i) / (0.0 - i)) * ((3.0 - i) / (2.0 - i));
    CHECK(std::abs(exp_K_shift(two, i) - expect) < 1e-15);

    // reciprocal for negative sign
    PhaseShift neg = exact_shift(-1, {{0.0, 1.0}});
    CHECK(std::abs(exp_K_shift(neg, i) * exp_K_shift(u, i) - 1.0) < 1e-15);
}

TEST_CASE("pair extraction by exact residues") {
    SUBCASE("single interval, unit coupling") {
        PhaseShift u = exact_shift(+1, {{0.0, 1.0}});
        MeasurePair pr = pair_from_shift(u, 1.0);
        REQUIRE(pr.mu.atoms.size() == 1);
        CHECK(pr.mu.atoms[0].x == 0.0);
        CHECK(pr.mu.atoms[0].w == 1.0);
        CHECK(pr.nu.atoms[0].x == 1.0);
        CHECK(pr.nu.atoms[0].w == 1.0);
    }
    SUBCASE("general spans scale the masses by the length") {
        for (auto [x, y] : {std::pair{0.25, 0.75}, std::pair{-1.0, 3.0}}) {
            MeasurePair pr = pair_from_shift(exact_shift(+1, {{x, y}}), 1.0);
            CHECK(pr.mu.atoms[0].x == x);
            CHECK(pr.nu.atoms[0].x == y);
            CHECK(pr.mu.atoms[0].w == y - x);
            CHECK(pr.nu.atoms[0].w == y - x);
        }
    }
    SUBCASE("empty shift gives empty measures") {
        MeasurePair pr = pair_from_shift(exact_shift(+1, {}), 2.0);
        CHECK(pr.mu.atoms.empty());
        CHECK(pr.nu.atoms.empty());
    }
    SUBCASE("sign and coupling must match") {
        PhaseShift u = exact_shift(+1, {{0.0, 1.0}});
        CHECK_THROWS_AS(pair_from_shift(u, -1.0), std::invalid_argument);
        CHECK_THROWS_AS(pair_from_shift(u, 0.0), std::invalid_argument);
    }
    SUBCASE("negative coupling swaps endpoint roles") {
        // delta_0 perturbed by -1 sits at -1: shift is -pi on (-1, 0)
        PhaseShift u = exact_shift(-1, {{-1.0, 0.0}});
        MeasurePair pr = pair_from_shift(u, -1.0);
        REQUIRE(pr.mu.atoms.size() == 1);
        CHECK(pr.mu.atoms[0].x == 0.0);
        CHECK(pr.mu.atoms[0].w == doctest::Approx(1.0));
        CHECK(pr.nu.atoms[0].x == -1.0);
        CHECK(pr.nu.atoms[0].w == doctest::Approx(1.0));
        AtomicMeasure oracle =
            perturb_spectrum(measure_to_model(pr.mu), {-1.0});
        CHECK(oracle.atoms[0].x == doctest::Approx(-1.0));
    }
}

TEST_CASE("boundary argument sweep recovers the indicator shape") {
    AtomicMeasure d0 = make_measure({{0.0, 1.0}});
    std::vector<double> grid{-0.5, -0.1, 0.1, 0.3, 0.5, 0.7, 0.9, 1.1, 1.5, 0.0};
    auto sampling = shift_from_pair(d0, 1.0, grid);
    REQUIRE(sampling.skipped.size() == 1);  // the grid point at the atom
    CHECK(sampling.skipped[0] == 0.0);
    for (const auto& [x, v] : sampling.shift.samples) {
        if (x > 0.0 && x < 1.0)
            CHECK(v == doctest::Approx(kPi).epsilon(1e-9));
        else
            CHECK(std::abs(v) < 1e-9);
    }
}

TEST_CASE("negative couplings sample into [-pi, 0]") {
    AtomicMeasure d0 = make_measure({{0.0, 1.0}});
    std::vector<double> grid{-1.5, -0.75, -0.25, 0.25, 0.75};
    auto sampling = shift_from_pair(d0, -1.0, grid);
    CHECK(sampling.shift.sign == -1);
    for (const auto& [x, v] : sampling.shift.samples) {
        CHECK(v <= 1e-12);
        CHECK(v >= -kPi - 1e-12);
        if (x > -1.0 && x < 0.0)
            CHECK(v == doctest::Approx(-kPi).epsilon(1e-9));
        else
            CHECK(std::abs(v) < 1e-9);
    }
}

TEST_CASE("exact shift from a measure pairs atoms with resolvent roots") {
    AtomicMeasure d0 = make_measure({{0.0, 1.0}});
    PhaseShift u = exact_shift_from_measure(d0, 1.0);
    REQUIRE(u.intervals.size() == 1);
    CHECK(u.intervals[0].left == 0.0);
    CHECK(u.intervals[0].right == doctest::Approx(1.0).epsilon(1e-13));

    PhaseShift v = exact_shift_from_measure(d0, -1.0);
    REQUIRE(v.intervals.size() == 1);
    CHECK(v.sign == -1);
    CHECK(v.intervals[0].left == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(v.intervals[0].right == 0.0);
}

TEST_CASE("point-mass criteria on the indicator shift") {
    PhaseShift u = exact_shift(+1, {{0.0, 1.0}});
    auto m0 = atom_criterion_mu(u, 0.0);
    CHECK(m0.verdict == AtomVerdict::atom);
    CHECK(m0.value == doctest::Approx(0.0));  // integrand vanishes identically
    CHECK(atom_criterion_mu(u, 0.5).verdict == AtomVerdict::no_atom);
    CHECK(atom_criterion_mu(u, 1.0).verdict == AtomVerdict::no_atom);
    CHECK(atom_criterion_nu(u, 1.0).verdict == AtomVerdict::atom);
    CHECK(atom_criterion_nu(u, 0.0).verdict == AtomVerdict::no_atom);
    PhaseShift empty = exact_shift(+1, {});
    CHECK(atom_criterion_nu(empty, 0.3).verdict == AtomVerdict::no_atom);
    CHECK(atom_criterion_mu(empty, 0.3).verdict == AtomVerdict::no_atom);
}

TEST_CASE("singular support sides") {
    PhaseShift u = exact_shift(+1, {{0.0, 1.0}});
    CHECK(singular_support_test(u, 0.0).side == SingularSide::mu_side);
    CHECK(singular_support_test(u, 1.0).side == SingularSide::nu_side);
    auto far = singular_support_test(u, 5.0);
    CHECK(far.side == SingularSide::neither);
    CHECK(far.finite_value == doctest::Approx(kPi * std::log(4.0 / 5.0)));
}

TEST_CASE("region singularity") {
    PhaseShift u = exact_shift(+1, {{0.0, 1.0}});
    IntervalSet K{{{-1.0, 2.0}}};
    CHECK(singularity_region_test(u, K).singular);

    PhaseShift bad = sampled_shift(+1, {{0.1, kPi}, {0.2, kPi / 2}, {0.3, 0.0}});
    auto r = singularity_region_test(bad, K);
    CHECK(!r.singular);
    CHECK(r.off_fraction == doctest::Approx(1.0 / 3.0));

    // boundary arguments of a rational transform take values {0, pi} off the
    // poles, so a sampled sweep over a gap is singular within tolerance
    AtomicMeasure m = make_measure({{0.0, 0.5}, {1.0, 0.5}});
    std::vector<double> grid;
    for (int i = 1; i < 40; ++i) grid.push_back(2.0 + i * 0.01);
    auto sampling = shift_from_pair(m, 1.0, grid);
    IntervalSet gap{{{2.0, 2.4}}};
    CHECK(singularity_region_test(sampling.shift, gap, 1e-6).singular);
}

TEST_CASE("comparison of two shifts at a point") {
    PhaseShift u1 = exact_shift(+1, {{0.0, 1.0}});
    SUBCASE("identity") {
        auto c = compare_shifts(u1, u1, 0.0);
        // difference is empty: every point is a Lebesgue point, f = 0
        CHECK(c.kind == ShiftComparison::Kind::comparable);
        CHECK(c.f == 0.0);
        CHECK(c.mu_density == 1.0);
    }
    SUBCASE("nested intervals give the exact mass ratio at the shared atom") {
        PhaseShift u2 = exact_shift(+1, {{0.0, 2.0}});
        auto c = compare_shifts(u1, u2, 0.0);
        REQUIRE(c.kind == ShiftComparison::Kind::comparable);
        CHECK(c.f == doctest::Approx(-kPi * std::log(2.0)).epsilon(1e-14));
        CHECK(c.mu_density == doctest::Approx(0.5).epsilon(1e-14));
        MeasurePair p1 = pair_from_shift(u1, 1.0);
        MeasurePair p2 = pair_from_shift(u2, 1.0);
        CHECK(p1.mu.atoms[0].w / p2.mu.atoms[0].w ==
              doctest::Approx(c.mu_density).epsilon(1e-14));
    }
    SUBCASE("shared right endpoint gives the nu-side ratio") {
        PhaseShift u3 = exact_shift(+1, {{-0.5, 1.0}});
        auto c = compare_shifts(u1, u3, 1.0);
        REQUIRE(c.kind == ShiftComparison::Kind::comparable);
        CHECK(c.f == doctest::Approx(kPi * std::log(1.5)).epsilon(1e-14));
        MeasurePair p1 = pair_from_shift(u1, 1.0);
        MeasurePair p3 = pair_from_shift(u3, 1.0);
        CHECK(p1.nu.atoms[0].w / p3.nu.atoms[0].w ==
              doctest::Approx(c.nu_density).epsilon(1e-14));
    }
    SUBCASE("jump point of the difference is not a Lebesgue point") {
        PhaseShift u2 = exact_shift(+1, {{2.0, 3.0}});
        auto c = compare_shifts(u1, u2, 0.0);
        CHECK(c.kind == ShiftComparison::Kind::undecided);
        // the second shift has no atom at 0
        CHECK(atom_criterion_mu(u2, 0.0).verdict == AtomVerdict::no_atom);
    }
}

TEST_CASE("roundtrip: shift -> pair -> boundary argument") {
    std::mt19937_64 rng(41);
    for (double lambda : {0.5, 1.0, 2.0}) {
        for (int t = 0; t < 8; ++t) {
            PhaseShift u = testsupport::random_exact_shift(rng, 15, 1e-3);
            MeasurePair pr = pair_from_shift(u, lambda);
            // grid of interior points of constancy intervals
            std::vector<double> grid;
            for (const auto& iv : u.intervals)
                grid.push_back(0.5 * (iv.left + iv.right));
            for (size_t i = 0; i + 1 < u.intervals.size(); ++i)
                grid.push_back(0.5 * (u.intervals[i].right + u.intervals[i + 1].left));
            grid.push_back(u.support_left() - 0.25);
            grid.push_back(u.support_right() + 0.25);
            auto sampling = shift_from_pair(pr.mu, lambda, grid);
            CHECK(sampling.skipped.empty());
            for (const auto& [x, v] : sampling.shift.samples)
                CHECK(std::abs(v - u.value_at(x)) < 1e-6);
        }
    }
}

TEST_CASE("defining identity holds on a half-plane grid") {
    std::mt19937_64 rng(43);
    std::vector<Complex> grid{{0.3, 0.4}, {-0.8, 1.1}, {0.9, 0.05}, {2.0, 2.0}};
    for (double lambda : {0.5, 1.0, 2.0}) {
        for (int t = 0; t < 6; ++t) {
            PhaseShift u = testsupport::random_exact_shift(rng, 12);
            MeasurePair pr = pair_from_shift(u, lambda);
            CHECK(pair_identity_residual(u, pr, grid) < 1e-10);
        }
    }
}

TEST_CASE("atom bookkeeping matches the interval endpoints exactly") {
    std::mt19937_64 rng(47);
    for (int t = 0; t < 10; ++t) {
        PhaseShift u = testsupport::random_exact_shift(rng, 10);
        MeasurePair pr = pair_from_shift(u, 1.0);
        REQUIRE(pr.mu.atoms.size() == u.intervals.size());
        for (size_t i = 0; i < u.intervals.size(); ++i) {
            CHECK(pr.mu.atoms[i].x == u.intervals[i].left);
            CHECK(pr.nu.atoms[i].x == u.intervals[i].right);
            CHECK(pr.mu.atoms[i].w > 0.0);
            CHECK(pr.nu.atoms[i].w > 0.0);
            CHECK(atom_criterion_mu(u, u.intervals[i].left).verdict ==
                  AtomVerdict::atom);
            CHECK(atom_criterion_nu(u, u.intervals[i].right).verdict ==
                  AtomVerdict::atom);
            CHECK(atom_criterion_mu(u, u.intervals[i].right).verdict ==
                  AtomVerdict::no_atom);
            CHECK(atom_criterion_nu(u, u.intervals[i].left).verdict ==
                  AtomVerdict::no_atom);
        }
        // interlacing of the two atom families
        for (size_t i = 0; i + 1 < pr.mu.atoms.size(); ++i) {
            CHECK(pr.mu.atoms[i].x < pr.nu.atoms[i].x);
            CHECK(pr.nu.atoms[i].x < pr.mu.atoms[i + 1].x);
        }
    }
}

TEST_CASE("mass identity at z = i") {
    std::mt19937_64 rng(53);
    for (int t = 0; t < 10; ++t) {
        PhaseShift u = testsupport::random_exact_shift(rng, 10);
        MeasurePair pr = pair_from_shift(u, 1.0);
        double lhs = exp_K_shift(u, Complex{0.0, 1.0}).imag();
        double rhs = kPi * poisson(pr.mu, {0.0, 1.0});
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}
