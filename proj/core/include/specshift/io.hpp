#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "specshift/constructions.hpp"
#include "specshift/measures.hpp"
#include "specshift/phase_shift.hpp"

namespace specshift {

// JSON measure interchange: {"atoms":[{"x":..,"w":..},...],"inf":..},
// atoms sorted ascending by x.
std::string measure_to_json(const AtomicMeasure& m);
AtomicMeasure measure_from_json(const std::string& text);

// JSON shift interchange: {"sign":1,"intervals":[[a,b],...]}.
std::string shift_to_json(const PhaseShift& u);
PhaseShift shift_from_json(const std::string& text);

// Interval sets: {"intervals":[[l,r],...]} with optional "generations":[...].
std::string interval_set_to_json(const IntervalSet& s,
                                 const std::vector<int>& generations = {});
IntervalSet interval_set_from_json(const std::string& text,
                                   std::vector<int>* generations = nullptr);

// Nested Cantor tree: {"interval":[l,r],"children":[...]}.
std::string cantor_tree_to_json(const CantorTree& tree);

// Cantor spec: {"depth":D,"ratios":[...]} or {"depth":D} for the default.
std::string cantor_spec_to_json(const CantorSpec& spec);
CantorSpec cantor_spec_from_json(const std::string& text);

// CSV rows for transform sweeps (x,y,re,im) and boundary functions (x,value).
std::string sweep_csv(const std::vector<std::array<double, 4>>& rows);
std::string boundary_csv(const std::vector<std::pair<double, double>>& rows);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace specshift
