#include <doctest.h>

#include <cmath>
#include <numbers>

#include "specshift/matrix_oracle.hpp"
#include "specshift/rank_one.hpp"
#include "specshift/transforms.hpp"
#include "test_support.hpp"

using namespace specshift;
namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("coupling <-> circle parameter maps") {
    auto id = coupling_to_circle({0.0});
    CHECK(id.alpha == Complex{1.0, 0.0});
    CHECK(id.scale_c == 1.0);

    auto quarter = coupling_to_circle({1.0 / kPi});
    CHECK(std::abs(quarter.alpha - Complex{0.0, 1.0}) < 1e-15);
    CHECK(quarter.scale_c == doctest::Approx(0.5));

    auto rt = circle_to_coupling(coupling_to_circle({0.37}).alpha);
    CHECK(rt.lambda == doctest::Approx(0.37).epsilon(1e-12));

    CHECK_THROWS_AS(circle_to_coupling(Complex{-1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(circle_to_coupling(Complex{0.5, 0.0}), std::invalid_argument);
}

TEST_CASE("perturbed transform via the resolvent relation") {
    AtomicMeasure d0 = make_measure({{0.0, 1.0}});
    UpperHalfPlanePoint i{0.0, 1.0};
    CHECK(std::abs(perturbed_cauchy(d0, {0.0}, i) - cauchy(d0, i)) < 1e-15);

    Complex v = perturbed_cauchy(d0, {1.0}, i);
    Complex expect = Complex{1.0, 1.0} / (2.0 * kPi);
    CHECK(std::abs(v - expect) < 1e-15);

    // Herglotz preservation on a grid, all couplings
    std::mt19937_64 rng(61);
    for (int t = 0; t < 10; ++t) {
        AtomicMeasure m = testsupport::random_measure(rng);
        for (double lam : {-2.0, -0.5, 0.5, 1.0, 2.0})
            for (double x : {-0.3, 0.4, 1.2})
                for (double y : {0.01, 0.5, 2.0})
                    CHECK(perturbed_cauchy(m, {lam}, {x, y}).imag() > 0.0);
    }
}

TEST_CASE("pole extraction agrees with the oracle") {
    AtomicMeasure m = make_measure({{0.0, 0.5}, {1.0, 0.5}});
    AtomicMeasure via_formula = perturbed_measure_resolvent(m, {1.0});
    AtomicMeasure via_oracle = perturb_spectrum(measure_to_model(m), {1.0});
    REQUIRE(via_formula.atoms.size() == 2);
    for (size_t i = 0; i < 2; ++i) {
        CHECK(via_formula.atoms[i].x ==
              doctest::Approx(via_oracle.atoms[i].x).epsilon(1e-12));
        CHECK(via_formula.atoms[i].w ==
              doctest::Approx(via_oracle.atoms[i].w).epsilon(1e-12));
    }
}

TEST_CASE("characteristic function evaluation") {
    AtomicMeasure d0 = make_measure({{0.0, 1.0}});
    CharFunction cf{d0};
    Complex phi = char_function_eval(cf, {0.0, 1.0});
    CHECK(phi.real() == doctest::Approx((1.0 - kPi) / (1.0 + kPi)).epsilon(1e-14));
    CHECK(std::abs(phi.imag()) < 1e-15);

    std::mt19937_64 rng(67);
    for (int t = 0; t < 10; ++t) {
        AtomicMeasure m = testsupport::random_measure(rng);
        CharFunction c{m};
        for (double x : {-1.0, 0.2, 0.8, 3.0})
            for (double y : {0.05, 0.7, 5.0})
                CHECK(std::abs(char_function_eval(c, {x, y})) < 1.0);
    }
}

TEST_CASE("member Poisson integral") {
    AtomicMeasure d0 = make_measure({{0.0, 1.0}});
    CharFunction cf{d0};
    // phi vanishes at z = i/pi; every member's Poisson integral is 1 there
    UpperHalfPlanePoint z0{0.0, 1.0 / kPi};
    CHECK(std::abs(char_function_eval(cf, z0)) < 1e-14);
    for (double lam : {0.0, 0.3, -1.2}) {
        auto cp = coupling_to_circle({lam});
        CHECK(clark_member_poisson(cf, cp.alpha, z0) == doctest::Approx(1.0));
    }

    // alpha = 1 member is the base measure itself
    CHECK(clark_member_poisson(cf, Complex{1.0, 0.0}, {0.0, 1.0}) ==
          doctest::Approx(poisson(d0, {0.0, 1.0})).epsilon(1e-13));

    std::mt19937_64 rng(71);
    for (int t = 0; t < 10; ++t) {
        AtomicMeasure m = testsupport::random_measure(rng);
        CharFunction c{m};
        auto cp = coupling_to_circle({0.8});
        for (double x : {-0.5, 0.5, 1.5})
            for (double y : {0.1, 1.0})
                CHECK(clark_member_poisson(c, cp.alpha, {x, y}) >= 0.0);
    }
}

TEST_CASE("scaling identity between the perturbed measure and the member") {
    std::mt19937_64 rng(73);
    for (int t = 0; t < 8; ++t) {
        AtomicMeasure m = testsupport::random_measure(rng, 8);
        CharFunction cf{m};
        for (double lam : {0.5, 1.0, -0.7}) {
            auto cp = coupling_to_circle({lam});
            AtomicMeasure pert = perturbed_measure_resolvent(m, {lam});
            for (double x : {-0.4, 0.3, 1.1})
                for (double y : {0.07, 0.9}) {
                    double lhs = poisson(pert, {x, y});
                    double rhs =
                        cp.scale_c * clark_member_poisson(cf, cp.alpha, {x, y});
                    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
                }
        }
    }
}

TEST_CASE("atom test at oracle eigenvalues") {
    AtomicMeasure m = make_measure({{0.0, 0.5}, {1.0, 0.5}});
    CharFunction cf{m};
    auto cp = coupling_to_circle({1.0});
    AtomicMeasure pert = perturb_spectrum(measure_to_model(m), {1.0});
    for (const auto& atom : pert.atoms) {
        auto v = atom_test_nontangential(cf, cp.alpha, atom.x);
        REQUIRE(v.kind == SpectralVerdict::Kind::atom);
        // member mass scales to the perturbed mass through c
        CHECK(v.mass * cp.scale_c == doctest::Approx(atom.w).epsilon(1e-7));
    }
    auto off = atom_test_nontangential(cf, cp.alpha, 0.5);
    CHECK(off.kind == SpectralVerdict::Kind::no_atom);

    // lambda = 0: the base measure is recovered
    auto base = atom_test_nontangential(cf, Complex{1.0, 0.0}, 0.0);
    REQUIRE(base.kind == SpectralVerdict::Kind::atom);
    CHECK(base.mass == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("perturbations at distinct couplings have disjoint atom sets") {
    std::mt19937_64 rng(79);
    for (int t = 0; t < 10; ++t) {
        AtomicMeasure m = testsupport::random_measure(rng, 8);
        AtomicMeasure p1 = perturbed_measure_resolvent(m, {0.6});
        AtomicMeasure p2 = perturbed_measure_resolvent(m, {1.4});
        for (const auto& a : p1.atoms)
            for (const auto& b : p2.atoms)
                CHECK(std::abs(a.x - b.x) > 1e-12);
        // same statement through the eigensolver
        AtomicMeasure o1 = perturb_spectrum(measure_to_model(m), {0.6});
        AtomicMeasure o2 = perturb_spectrum(measure_to_model(m), {1.4});
        for (const auto& a : o1.atoms)
            for (const auto& b : o2.atoms)
                CHECK(std::abs(a.x - b.x) > 1e-12);
    }
}

TEST_CASE("atom test works for negative couplings") {
    AtomicMeasure m = make_measure({{0.0, 0.5}, {1.0, 0.5}});
    CharFunction cf{m};
    auto cp = coupling_to_circle({-1.0});
    AtomicMeasure pert = perturb_spectrum(measure_to_model(m), {-1.0});
    for (const auto& atom : pert.atoms) {
        auto v = atom_test_nontangential(cf, cp.alpha, atom.x);
        REQUIRE(v.kind == SpectralVerdict::Kind::atom);
        CHECK(v.mass * cp.scale_c == doctest::Approx(atom.w).epsilon(1e-7));
    }
}

TEST_CASE("family membership is stable under re-basing") {
    // the family built from the perturbed measure contains the same members,
    // up to the coupling shift
    std::mt19937_64 rng(83);
    AtomicMeasure m0 = testsupport::random_measure(rng, 4);
    const double lam_star = 0.7;
    AtomicMeasure nu = perturbed_measure_resolvent(m0, {lam_star});
    for (double lam : {0.3, 1.2}) {
        AtomicMeasure via_m0 = perturbed_measure_resolvent(m0, {lam});
        AtomicMeasure via_nu = perturbed_measure_resolvent(nu, {lam - lam_star});
        REQUIRE(via_m0.atoms.size() == via_nu.atoms.size());
        for (size_t i = 0; i < via_m0.atoms.size(); ++i)
            CHECK(via_m0.atoms[i].x ==
                  doctest::Approx(via_nu.atoms[i].x).epsilon(1e-9));
        // verdict-level agreement of the two characteristic functions
        CharFunction phi0{m0}, phi1{nu};
        double x = via_m0.atoms[0].x;
        auto v0 = atom_test_nontangential(phi0, coupling_to_circle({lam}).alpha, x);
        auto v1 = atom_test_nontangential(
            phi1, coupling_to_circle({lam - lam_star}).alpha, x);
        CHECK(v0.kind == SpectralVerdict::Kind::atom);
        CHECK(v1.kind == SpectralVerdict::Kind::atom);
    }
}
