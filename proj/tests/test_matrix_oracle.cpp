#include <doctest.h>

#include <cmath>

#include "specshift/matrix_oracle.hpp"
#include "test_support.hpp"

using namespace specshift;

TEST_CASE("model construction and roundtrip") {
    AtomicMeasure m = make_measure({{0.0, 0.5}, {1.0, 0.5}});
    OracleModel model = measure_to_model(m);
    REQUIRE(model.diag.size() == 2);
    CHECK(model.diag[0] == 0.0);
    CHECK(model.vec[0] == doctest::Approx(std::sqrt(0.5)));
    AtomicMeasure back = model_to_measure(model);
    CHECK(back.atoms[0].w == doctest::Approx(0.5));
    CHECK(back.atoms[1].x == 1.0);

    AtomicMeasure with_inf = make_measure({{0.0, 1.0}}, 0.5);
    CHECK_THROWS_AS(measure_to_model(with_inf), std::invalid_argument);
}

TEST_CASE("two-level closed form") {
    AtomicMeasure m = make_measure({{0.0, 0.5}, {1.0, 0.5}});
    AtomicMeasure p = perturb_spectrum(measure_to_model(m), {1.0});
    REQUIRE(p.atoms.size() == 2);
    CHECK(p.atoms[0].x == doctest::Approx(1.0 - 1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(p.atoms[1].x == doctest::Approx(1.0 + 1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(p.atoms[0].w > 0.0);
    CHECK(p.atoms[1].w > 0.0);
    CHECK(p.atoms[0].w + p.atoms[1].w == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("degenerate couplings") {
    AtomicMeasure m = make_measure({{0.0, 0.3}, {0.4, 0.7}});
    AtomicMeasure same = perturb_spectrum(measure_to_model(m), {0.0});
    CHECK(same.atoms[0].x == doctest::Approx(0.0));
    CHECK(same.atoms[1].w == doctest::Approx(0.7).epsilon(1e-13));

    AtomicMeasure d0 = make_measure({{0.0, 1.0}});
    AtomicMeasure shifted = perturb_spectrum(measure_to_model(d0), {1.0});
    REQUIRE(shifted.atoms.size() == 1);
    CHECK(shifted.atoms[0].x == doctest::Approx(1.0));
    CHECK(shifted.atoms[0].w == doctest::Approx(1.0));
}

TEST_CASE("size cap") {
    std::mt19937_64 rng(5);
    AtomicMeasure m = testsupport::random_measure(rng, 12);
    CHECK_THROWS_AS(perturb_spectrum(measure_to_model(m), {1.0}, 2),
                    std::invalid_argument);
}

TEST_CASE("mass conservation and strict interlacing") {
    std::mt19937_64 rng(89);
    for (int t = 0; t < 20; ++t) {
        AtomicMeasure m = testsupport::random_measure(rng, 12);
        for (double lam : {-2.0, -0.5, 0.5, 1.0, 2.0}) {
            AtomicMeasure p = perturb_spectrum(measure_to_model(m), {lam});
            CHECK(total_mass(p) == doctest::Approx(total_mass(m)).epsilon(1e-11));
            REQUIRE(p.atoms.size() == m.atoms.size());
            for (size_t i = 0; i < m.atoms.size(); ++i) {
                if (lam > 0.0) {
                    CHECK(m.atoms[i].x < p.atoms[i].x);
                    if (i + 1 < m.atoms.size()) CHECK(p.atoms[i].x < m.atoms[i + 1].x);
                } else {
                    CHECK(p.atoms[i].x < m.atoms[i].x);
                    if (i + 1 < m.atoms.size()) CHECK(m.atoms[i].x < p.atoms[i + 1].x);
                }
            }
        }
    }
}

TEST_CASE("eigenvalues increase strictly with the coupling") {
    std::mt19937_64 rng(97);
    AtomicMeasure m = testsupport::random_measure(rng, 8);
    AtomicMeasure lo = perturb_spectrum(measure_to_model(m), {0.5});
    AtomicMeasure hi = perturb_spectrum(measure_to_model(m), {0.9});
    for (size_t i = 0; i < lo.atoms.size(); ++i)
        CHECK(lo.atoms[i].x < hi.atoms[i].x);
}

TEST_CASE("three perturbation routes agree") {
    std::mt19937_64 rng(101);
    for (int t = 0; t < 10; ++t) {
        AtomicMeasure m = testsupport::random_measure(rng, 8);
        for (double lam : {-1.0, 1.0}) {
            auto rep = compare_with_formula(m, {lam});
            CHECK(rep.counts_match);
            CHECK(rep.interlaced);
            CHECK(rep.max_location_error < 1e-9);
            CHECK(rep.max_mass_error < 1e-9);
            CHECK(rep.base_reconstruction_error < 1e-9);
            CHECK(rep.mass_conservation_error < 1e-10);
        }
    }
}

TEST_CASE("tiny projections are reported, never dropped silently") {
    // at huge coupling all mass concentrates on the rank-one direction and
    // the remaining projections fall below the reporting threshold
    AtomicMeasure m = make_measure({{0.0, 0.5}, {1.0, 0.5}});
    auto full = perturb_spectrum_full(measure_to_model(m), {1e9});
    CHECK(!full.tiny.empty());
    for (const auto& [loc, mass] : full.tiny) {
        CHECK(mass < 1e-14);
        if (mass > 0.0) CHECK(mass_at(full.measure, loc, 0.0) == mass);
    }
}
