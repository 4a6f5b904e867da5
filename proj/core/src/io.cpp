#include "specshift/io.hpp"

#include <array>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace specshift {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw std::invalid_argument("malformed JSON");
    return j;
}

std::string dump(const json& j) { return j.dump(2); }

}  // namespace

std::string measure_to_json(const AtomicMeasure& m) {
    json atoms = json::array();
    for (const auto& a : m.atoms) atoms.push_back({{"x", a.x}, {"w", a.w}});
    return dump(json{{"atoms", atoms}, {"inf", m.infinity_mass}});
}

AtomicMeasure measure_from_json(const std::string& text) {
    json j = parse(text);
    AtomicMeasure m;
    if (j.contains("inf")) m.infinity_mass = j.at("inf").get<double>();
    for (const auto& a : j.value("atoms", json::array()))
        m.atoms.push_back({a.at("x").get<double>(), a.at("w").get<double>()});
    if (auto err = validate(m))
        throw std::invalid_argument("measure_from_json: " + *err);
    return m;
}

std::string shift_to_json(const PhaseShift& u) {
    if (u.form == PhaseShift::Form::exact) {
        json ivs = json::array();
        for (const auto& iv : u.intervals)
            ivs.push_back(json::array({iv.left, iv.right}));
        return dump(json{{"sign", u.sign}, {"intervals", ivs}});
    }
    json rows = json::array();
    for (const auto& s : u.samples) rows.push_back(json::array({s.first, s.second}));
    return dump(json{{"sign", u.sign}, {"samples", rows}});
}

PhaseShift shift_from_json(const std::string& text) {
    json j = parse(text);
    int sign = j.value("sign", 1);
    if (j.contains("samples")) {
        std::vector<std::pair<double, double>> samples;
        for (const auto& row : j.at("samples"))
            samples.emplace_back(row.at(0).get<double>(), row.at(1).get<double>());
        return sampled_shift(sign, std::move(samples));
    }
    std::vector<Interval> ivs;
    for (const auto& row : j.value("intervals", json::array()))
        ivs.push_back({row.at(0).get<double>(), row.at(1).get<double>()});
    return exact_shift(sign, std::move(ivs));
}

std::string interval_set_to_json(const IntervalSet& s,
                                 const std::vector<int>& generations) {
    json ivs = json::array();
    for (const auto& iv : s.intervals) ivs.push_back(json::array({iv.left, iv.right}));
    json j{{"intervals", ivs}};
    if (!generations.empty()) j["generations"] = generations;
    return dump(j);
}

IntervalSet interval_set_from_json(const std::string& text,
                                   std::vector<int>* generations) {
    json j = parse(text);
    IntervalSet s;
    for (const auto& row : j.value("intervals", json::array()))
        s.intervals.push_back({row.at(0).get<double>(), row.at(1).get<double>()});
    if (generations) {
        generations->clear();
        for (const auto& g : j.value("generations", json::array()))
            generations->push_back(g.get<int>());
    }
    if (auto err = validate(s))
        throw std::invalid_argument("interval_set_from_json: " + *err);
    return s;
}

namespace {

json tree_node(const CantorTree& tree, int level, size_t index) {
    const Interval& iv = tree.levels[level][index];
    json node{{"interval", json::array({iv.left, iv.right})}};
    json children = json::array();
    if (level < tree.spec.depth) {
        children.push_back(tree_node(tree, level + 1, 2 * index));
        children.push_back(tree_node(tree, level + 1, 2 * index + 1));
    }
    node["children"] = children;
    return node;
}

}  // namespace

std::string cantor_tree_to_json(const CantorTree& tree) {
    json j = tree_node(tree, 0, 0);
    j["depth"] = tree.spec.depth;
    j["ratios"] = tree.spec.ratios;
    j["level_measure"] = tree.level_measure;
    return dump(j);
}

std::string cantor_spec_to_json(const CantorSpec& spec) {
    return dump(json{{"depth", spec.depth}, {"ratios", spec.ratios}});
}

CantorSpec cantor_spec_from_json(const std::string& text) {
    json j = parse(text);
    int depth = j.at("depth").get<int>();
    if (!j.contains("ratios") || j.at("ratios").empty())
        return default_cantor_spec(depth);
    CantorSpec spec;
    spec.depth = depth;
    for (const auto& r : j.at("ratios")) spec.ratios.push_back(r.get<double>());
    return spec;
}

std::string sweep_csv(const std::vector<std::array<double, 4>>& rows) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "x,y,re,im\n";
    for (const auto& r : rows)
        os << r[0] << "," << r[1] << "," << r[2] << "," << r[3] << "\n";
    return os.str();
}

std::string boundary_csv(const std::vector<std::pair<double, double>>& rows) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "x,value\n";
    for (const auto& r : rows) os << r.first << "," << r.second << "\n";
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

}  // namespace specshift
