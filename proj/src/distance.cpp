#include <algorithm>
#include <cmath>
#include <limits>

#include "cplifs/errors.hpp"
#include "cplifs/markov.hpp"
#include "cplifs/system.hpp"

namespace cplifs {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// sup |f - g| over H, exact: the difference is piecewise linear with kinks at
// the breakpoints of either map.
double sup_norm_gap(const PLMap& f, const PLMap& g, const Interval& H) {
    std::vector<double> probes{H.lo, H.hi};
    for (double b : f.breakpoints)
        if (b > H.lo && b < H.hi) probes.push_back(b);
    for (double b : g.breakpoints)
        if (b > H.lo && b < H.hi) probes.push_back(b);
    double best = 0.0;
    for (double x : probes) best = std::max(best, std::fabs(f.eval(x) - g.eval(x)));
    return best;
}

}  // namespace

ClosenessReport cplifs_distance(const Cplifs& F, const Cplifs& G) {
    if (F.map_count() != G.map_count())
        throw TypeMismatch("cplifs_distance: systems have " + std::to_string(F.map_count()) +
                           " and " + std::to_string(G.map_count()) + " maps");
    ClosenessReport rep;

    for (int k = 0; k < F.map_count(); ++k)
        if (F.maps[k].breakpoints.size() != G.maps[k].breakpoints.size())
            rep.breakpoint_counts_equal = false;

    if (rep.breakpoint_counts_equal) {
        // matched by (k, i): clause (b) guarantees the branch lists line up
        for (int k = 0; k < F.map_count(); ++k)
            for (int i = 0; i < F.maps[k].branch_count(); ++i)
                rep.log_slope_gap =
                    std::max(rep.log_slope_gap, std::fabs(std::log(std::fabs(F.maps[k].slopes[i])) -
                                                          std::log(std::fabs(G.maps[k].slopes[i]))));
    } else {
        rep.log_slope_gap = inf;
    }

    Partition ZF = monotonicity_partition(F);
    Partition ZG = monotonicity_partition(G);
    if (ZF.cells.size() != ZG.cells.size()) {
        // structural jump: no cell-wise matching exists, report the Hausdorff
        // distance between the endpoint sets instead
        rep.partition_cells_match = false;
        auto endpoints = [](const Partition& Z) {
            std::vector<double> e;
            for (const Interval& c : Z.cells) {
                e.push_back(c.lo);
                e.push_back(c.hi);
            }
            return e;
        };
        auto one_sided = [](const std::vector<double>& A, const std::vector<double>& B) {
            double worst = 0.0;
            for (double a : A) {
                double best = inf;
                for (double b : B) best = std::min(best, std::fabs(a - b));
                worst = std::max(worst, best);
            }
            return worst;
        };
        std::vector<double> ea = endpoints(ZF), eb = endpoints(ZG);
        rep.partition_gap = std::max(one_sided(ea, eb), one_sided(eb, ea));
    } else {
        for (size_t i = 0; i < ZF.cells.size(); ++i) {
            rep.partition_gap = std::max(rep.partition_gap,
                                         std::fabs(ZF.cells[i].lo - ZG.cells[i].lo));
            rep.partition_gap = std::max(rep.partition_gap,
                                         std::fabs(ZF.cells[i].hi - ZG.cells[i].hi));
        }
    }

    Interval H = F.support.hull(G.support);
    for (int k = 0; k < F.map_count(); ++k)
        rep.sup_norm_gap = std::max(rep.sup_norm_gap, sup_norm_gap(F.maps[k], G.maps[k], H));

    rep.infimal_epsilon = rep.breakpoint_counts_equal
                              ? std::max({rep.partition_gap, rep.log_slope_gap, rep.sup_norm_gap})
                              : inf;
    return rep;
}

}  // namespace cplifs
