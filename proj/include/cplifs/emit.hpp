#pragma once
#include <string>
#include <vector>

#include "cplifs/lab.hpp"
#include "cplifs/markov.hpp"
#include "cplifs/orbit.hpp"
#include "cplifs/pressure.hpp"

namespace cplifs {

// All emission goes through these so numbers format identically everywhere
// (12 significant digits) and byte-identical reruns stay byte-identical.

std::string csv_pressure_curve(const PressureCurve& c);
std::string csv_dimension(const DimensionResult& r);

std::string dot_diagram(const MarkovDiagram& D);
std::string csv_diagram_edges(const MarkovDiagram& D);

std::string dot_orbit_graph(const OrbitGraph& G);
std::string csv_orbit_edges(const OrbitGraph& G);

std::string csv_overlap_report(const OverlapReport& rep);
std::string csv_esc(const OverlapReport& rep);

std::string csv_sweep(const std::vector<SweepRow>& rows);
std::string csv_semicontinuity(const SemicontinuityReport& rep);
std::string csv_example51(const Example51Report& rep);
std::string csv_lebesgue(const LebesgueReport& rep, double delta);

// 1-based word rendering, letters joined by '.', e.g. "1.2"
std::string word_str(const std::vector<int>& word);

}  // namespace cplifs
