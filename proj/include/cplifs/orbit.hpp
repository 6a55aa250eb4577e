#pragma once
#include <limits>
#include <vector>

#include "cplifs/markov.hpp"
#include "cplifs/spectral.hpp"
#include "cplifs/system.hpp"

namespace cplifs {

// Points of the doubled line: values that lie in the forward orbit W of the
// partition endpoints carry one-sided copies (minus/plus); everything else
// stays plain. Side tags are assigned lazily, only for orbit-visited values.
enum class Side { minus, plus, plain };

struct DoubledPoint {
    double value = 0.0;
    Side side = Side::plain;
};

struct OrbitNode {
    double value = 0.0;
    Side side = Side::plain;
    int depth = 0;  // inverse-branch word length at first discovery
};

struct OrbitEdge {
    int from, to;
    int k, j;
    double abs_slope;
};

struct OrbitGraph {
    std::vector<OrbitNode> nodes;
    std::vector<OrbitEdge> edges;
    int depth = 0;
    bool cap_reached = false;
};

inline constexpr int default_orbit_depth = 12;
inline constexpr int default_orbit_node_cap = 50000;

// Inverse-branch orbits of the partition cell endpoints on the doubled line,
// truncated at word length `depth`. An edge a ->(k,j) b is recorded when the
// branch inverse of a equals b's value (either side, per the zeta-tolerant
// edge rule).
OrbitGraph build_orbit_graph(const Cplifs& F, const Partition& Z,
                             int depth = default_orbit_depth,
                             int node_cap = default_orbit_node_cap);

WeightedGraphMatrix orbit_matrix(const OrbitGraph& G);

// The generated self-similar system together with its exact mirror when the
// source parameters were rational.
struct SimilaritySystem {
    std::vector<SimilarityMap> maps;
    std::shared_ptr<const ExactSystem> exact;  // branch order matches maps
    bool exact_mode() const { return exact != nullptr; }
};

SimilaritySystem similarity_system(const Cplifs& F);

enum class OverlapVerdict { exact, suspected };

struct OverlapPair {
    int depth;
    std::vector<int> word_i, word_j;  // 0-based branch letters, word_i lexicographically first
    double slope_product;
    double translation_gap;
    OverlapVerdict verdict;
};

struct OverlapReport {
    std::vector<OverlapPair> pairs;          // capped at max_pairs, lexicographic representatives
    std::vector<long long> pair_counts;      // per depth 1..n_max
    std::vector<double> esc_min_distances;   // per depth, +inf when all slope groups are singletons
    std::vector<double> c_estimates;         // dist^(1/n) where finite
    bool exact_mode = false;

    bool any_overlap() const;
    int first_overlap_depth() const;  // -1 when none
};

inline constexpr double inf_distance = std::numeric_limits<double>::infinity();

// Group depth-n compositions by slope product (relative tolerance 1e-12, exact
// in rational mode) and report pairs whose translations differ by at most
// tau_eq. Rational mode settles each candidate pair exactly.
OverlapReport exact_overlap_search(const SimilaritySystem& S, int n_max,
                                   const Budget& budget = {}, int max_pairs = 1000);

// Min over distinct depth-n words of dist(S_i, S_j): |t_i - t_j| when the slope
// products coincide, +inf otherwise. Exactly 0 only for genuine overlaps in
// rational mode.
double esc_min_distance(const SimilaritySystem& S, int n, const Budget& budget = {});

// Inner critical points where two branches of one map meet and whose orbit
// returns to them within `depth` steps starting along one of those branches
// (the discontinuity-risk condition).
struct PeriodicFlag {
    double value;
    int k, j_left, j_right;  // 0-based
    int cycle_length;
};
std::vector<PeriodicFlag> periodic_critical_orbit_check(const Cplifs& F, int depth);
std::vector<PeriodicFlag> periodic_critical_orbit_check(const Cplifs& F, const Partition& Z,
                                                        const OrbitGraph& G);

}  // namespace cplifs
