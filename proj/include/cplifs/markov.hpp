#pragma once
#include <utility>
#include <vector>

#include "cplifs/pressure.hpp"
#include "cplifs/spectral.hpp"
#include "cplifs/system.hpp"

namespace cplifs {

// Critical points of the expanding multi-valued map on script-I = union f_k(I):
// images of I's endpoints, images of breakpoints, and crossing points where two
// inverse branches agree. (The defining endpoint images are read as f_k(u),
// f_k(v) for I = [u, v].)
struct CriticalPoint {
    double x = 0.0;
    bool endpoint_image = false;
    bool breakpoint_image = false;
    bool crossing = false;
    bool inner = false;  // interior to script-I
};

struct CriticalSet {
    std::vector<CriticalPoint> points;  // sorted, deduplicated at tau_eq
    std::vector<double> inner_values() const;
};

// Inverse branch of one linearity piece, restricted to the dynamics on I:
// domain = f_k(closure(J_kj) intersect I); inverse(y) = (y - intercept)/slope.
struct Branch {
    int k = 0, j = 0;  // 0-based map and branch indices
    double slope = 0.0, intercept = 0.0;
    Interval domain;  // empty pieces are marked inactive
    bool active = false;

    double inverse(double y) const { return (y - intercept) / slope; }
};

struct Partition {
    Interval I;
    std::vector<Interval> components;  // connected components of script-I
    std::vector<Interval> cells;       // closed cells cut at critical points
    std::vector<Branch> branches;      // all branches, inactive ones flagged
    CriticalSet critical;

    bool in_components(double x, double tol) const;
};

CriticalSet critical_points(const Cplifs& F);
CriticalSet critical_points(const Cplifs& F, const Interval& I);

Partition monotonicity_partition(const Cplifs& F, const std::vector<double>& refinement = {});
Partition monotonicity_partition(const Cplifs& F, const Interval& I,
                                 const std::vector<double>& refinement);

// Non-degenerate pieces cell `intersect` branch-preimage of C, with branch labels.
struct Successor {
    Interval interval;
    int k, j;
    int cell;  // index of the partition cell that was intersected
};
std::vector<Successor> successors(const Interval& C, const Partition& Z);

struct DiagramNode {
    Interval iv;
    int level = 0;
    int parent = -1;       // node whose successor this is; -1 at level 0
    int via_k = -1, via_j = -1;
};

struct DiagramEdge {
    int from, to;
    int k, j;
    double abs_slope;
};

struct MarkovDiagram {
    std::vector<DiagramNode> nodes;
    std::vector<DiagramEdge> edges;
    Partition base;
    bool closed = false;       // one full sweep added no node
    bool cap_reached = false;  // stopped by max_nodes / max_level
    int max_level = 0;
};

inline constexpr int default_max_level = 40;
inline constexpr int default_max_nodes = 10000;

MarkovDiagram grow_diagram(const Cplifs& F, const Partition& Z,
                           int max_level = default_max_level,
                           int max_nodes = default_max_nodes);

WeightedGraphMatrix associated_matrix(const MarkovDiagram& D);

// log spectral_radius of the level-r diagram matrix at s. Exact natural
// pressure when the diagram closed (limit-irreducible systems); otherwise a
// lower approximant.
double pressure_via_diagram(const Cplifs& F, const Partition& Z, double s, int r);
double diagram_pressure(const WeightedGraphMatrix& M, double s);

DimensionResult natural_dimension_markov(const Cplifs& F, const Partition& Z, int r, double tol);
DimensionResult natural_dimension_markov(const MarkovDiagram& D, double tol);

struct SccInfo {
    std::vector<std::vector<int>> components;
    std::vector<bool> closed;  // no edges leaving the component
};
SccInfo diagram_sccs(const MarkovDiagram& D);

// Heuristic partition refinement: inverse-branch orbit points of crossing
// points down to the given depth, added as extra cut points.
std::vector<double> crossing_orbit_refinement(const Cplifs& F, int depth = 3);

}  // namespace cplifs
