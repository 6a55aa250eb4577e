#pragma once
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "cplifs/interval.hpp"
#include "cplifs/numbers.hpp"
#include "cplifs/plmap.hpp"

namespace cplifs {

struct ExactSystem;  // rational mirror of the parameters, see exact.hpp

// One linearity branch of one map, extended to an affine map of the whole line.
struct SimilarityMap {
    double slope = 0.0;
    double translation = 0.0;
    int map_index = 0;     // 0-based
    int branch_index = 0;  // 0-based

    double operator()(double x) const { return slope * x + translation; }
};

struct Violation {
    enum Code {
        TooFewMaps,
        NonIncreasingBreakpoints,
        SlopeOutOfRange,
        EqualAdjacentSlopes,
        InconsistentArity,
    };
    Code code;
    int map_index;   // 0-based, -1 when system-wide
    int item_index;  // offending breakpoint/slope index, -1 when n/a
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string str() const;
};

// An ordered family of m >= 2 piecewise linear contractions together with its
// supporting interval (smallest compact interval mapped into itself by every map).
struct Cplifs {
    std::vector<PLMap> maps;
    Interval support;                          // computed at construction, tol 1e-12
    std::shared_ptr<const ExactSystem> exact;  // set when all inputs were rational

    int map_count() const { return static_cast<int>(maps.size()); }
    std::vector<int> type_vector() const;
    double rho_max() const;  // max |slope| over all branches
    bool has_exact() const { return exact != nullptr; }
};

ValidationReport validate(const std::vector<PLMap>& raw);

// Validates, derives intercepts and the supporting interval. Throws
// std::invalid_argument carrying the validation report when invalid.
Cplifs make_cplifs(std::vector<PLMap> maps,
                   std::shared_ptr<const ExactSystem> exact = nullptr);

inline constexpr double default_support_tol = 1e-12;

Interval supporting_interval(const Cplifs& F, double tol = default_support_tol);

std::vector<SimilarityMap> generated_self_similar(const Cplifs& F);

// Image of I under the composition f_{w0} o f_{w1} o ... o f_{w_{n-1}},
// applied right to left. Empty word returns I. Letters are 0-based.
Interval cylinder(const Cplifs& F, std::span<const int> word, Interval I);

// All m^n level-n cylinder intervals in lexicographic word order.
std::vector<Interval> attractor_cover(const Cplifs& F, int n, const Budget& budget = {});

// Closeness report between two systems of the same arity (throws TypeMismatch
// otherwise). Clause values follow the epsilon-closeness definition:
//   (a) max displacement of matched monotonicity-partition cell endpoints;
//       when the cell counts differ (the partition structure jumped) the
//       Hausdorff distance between the endpoint sets is reported instead,
//   (b) equal breakpoint counts per map,
//   (c) max |log|slope| - log|slope'|| over matched branches,
//   (d) sup norm of f_k - f'_k over the hull of the two supporting intervals.
struct ClosenessReport {
    double partition_gap = 0.0;
    bool partition_cells_match = true;
    bool breakpoint_counts_equal = true;
    double log_slope_gap = 0.0;  // inf when (b) fails
    double sup_norm_gap = 0.0;
    double infimal_epsilon = 0.0;  // max of the clause values, inf if (b) fails
};

ClosenessReport cplifs_distance(const Cplifs& F, const Cplifs& G);

}  // namespace cplifs
