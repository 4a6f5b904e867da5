#include <doctest.h>

#include "specshift/io.hpp"
#include "test_support.hpp"

using namespace specshift;

TEST_CASE("measure JSON roundtrip") {
    AtomicMeasure m = make_measure({{-0.5, 0.25}, {1.0, 2.0}}, 0.125);
    AtomicMeasure back = measure_from_json(measure_to_json(m));
    REQUIRE(back.atoms.size() == 2);
    CHECK(back.atoms[0].x == m.atoms[0].x);
    CHECK(back.atoms[1].w == m.atoms[1].w);
    CHECK(back.infinity_mass == 0.125);

    CHECK_THROWS(measure_from_json("{not json"));
    CHECK_THROWS_AS(measure_from_json(R"({"atoms":[{"x":0,"w":-1}]})"),
                    std::invalid_argument);
}

TEST_CASE("shift JSON roundtrip") {
    PhaseShift u = exact_shift(-1, {{-1.0, 0.0}, {0.5, 1.5}});
    PhaseShift back = shift_from_json(shift_to_json(u));
    CHECK(back.sign == -1);
    REQUIRE(back.intervals.size() == 2);
    CHECK(back.intervals[1].right == 1.5);

    PhaseShift s = sampled_shift(+1, {{0.0, 0.0}, {0.5, 3.0}});
    PhaseShift sb = shift_from_json(shift_to_json(s));
    CHECK(sb.form == PhaseShift::Form::sampled);
    CHECK(sb.samples[1].second == 3.0);

    CHECK_THROWS_AS(shift_from_json(R"({"sign":1,"intervals":[[0,1],[1,2]]})"),
                    std::invalid_argument);
}

TEST_CASE("interval set JSON with generation tags") {
    IntervalSet s{{{0.0, 1.0}, {2.0, 3.0}}};
    std::vector<int> tags{1, 2}, back_tags;
    IntervalSet back = interval_set_from_json(interval_set_to_json(s, tags),
                                              &back_tags);
    CHECK(back.intervals.size() == 2);
    CHECK(back_tags == tags);
}

TEST_CASE("set tree JSON is a nested interval structure") {
    CantorTree tree = cantor_build(default_cantor_spec(3));
    std::string text = cantor_tree_to_json(tree);
    CHECK(text.find("\"interval\"") != std::string::npos);
    CHECK(text.find("\"children\"") != std::string::npos);
    // root interval is the unit interval
    CHECK(text.find("[\n    0.0,\n    1.0\n  ]") != std::string::npos);

    CantorSpec spec = cantor_spec_from_json(R"({"depth":4})");
    CHECK(spec.depth == 4);
    CHECK(spec.ratios.size() == 4);
    CHECK(spec.ratios[0] == 0.5);

    CantorSpec user = cantor_spec_from_json(R"({"depth":2,"ratios":[0.4,0.3]})");
    CHECK(user.ratios[1] == 0.3);
}

TEST_CASE("CSV formats") {
    std::string sweep = sweep_csv({{1.0, 0.5, -0.25, 0.75}});
    CHECK(sweep.rfind("x,y,re,im\n", 0) == 0);
    CHECK(sweep.find("1,0.5,-0.25,0.75") != std::string::npos);

    std::string boundary = boundary_csv({{0.5, 3.14}});
    CHECK(boundary.rfind("x,value\n", 0) == 0);
    CHECK(boundary.find("0.5,3.14") != std::string::npos);
}
