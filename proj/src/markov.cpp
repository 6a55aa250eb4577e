#include "cplifs/markov.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "cplifs/errors.hpp"

namespace cplifs {

namespace {

std::vector<Branch> build_branches(const Cplifs& F, const Interval& I) {
    std::vector<Branch> out;
    for (int k = 0; k < F.map_count(); ++k) {
        const PLMap& f = F.maps[k];
        int n = f.branch_count();
        for (int j = 0; j < n; ++j) {
            Branch b;
            b.k = k;
            b.j = j;
            b.slope = f.slopes[j];
            b.intercept = f.intercepts[j];
            double lo = (j == 0) ? I.lo : std::max(f.breakpoints[j - 1], I.lo);
            double hi = (j == n - 1) ? I.hi : std::min(f.breakpoints[j], I.hi);
            if (hi - lo > tau_eq) {
                b.domain = sorted_interval(b.slope * lo + b.intercept, b.slope * hi + b.intercept);
                b.active = true;
            }
            out.push_back(b);
        }
    }
    return out;
}

std::vector<Interval> merge_components(const Cplifs& F, const Interval& I) {
    std::vector<Interval> images;
    for (const auto& f : F.maps) images.push_back(f.image(I));
    std::sort(images.begin(), images.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> comps;
    for (const Interval& J : images) {
        if (!comps.empty() && J.lo <= comps.back().hi + tau_eq)
            comps.back().hi = std::max(comps.back().hi, J.hi);
        else
            comps.push_back(J);
    }
    return comps;
}

void insert_point(std::vector<CriticalPoint>& pts, double x, bool ep, bool bp, bool cr) {
    for (auto& p : pts)
        if (approx_eq(p.x, x)) {
            p.endpoint_image |= ep;
            p.breakpoint_image |= bp;
            p.crossing |= cr;
            return;
        }
    pts.push_back({x, ep, bp, cr, false});
}

}  // namespace

std::vector<double> CriticalSet::inner_values() const {
    std::vector<double> v;
    for (const auto& p : points)
        if (p.inner) v.push_back(p.x);
    return v;
}

bool Partition::in_components(double x, double tol) const {
    for (const Interval& c : components)
        if (c.contains(x, tol)) return true;
    return false;
}

CriticalSet critical_points(const Cplifs& F) { return critical_points(F, F.support); }

CriticalSet critical_points(const Cplifs& F, const Interval& I) {
    std::vector<Interval> comps = merge_components(F, I);
    auto in_comps = [&](double x) {
        for (const Interval& c : comps)
            if (c.contains(x, tau_eq)) return true;
        return false;
    };

    std::vector<CriticalPoint> pts;
    for (const auto& f : F.maps) {
        insert_point(pts, f.eval(I.lo), true, false, false);
        insert_point(pts, f.eval(I.hi), true, false, false);
        for (double b : f.breakpoints) {
            double y = f.eval(b);
            if (in_comps(y)) insert_point(pts, y, false, true, false);
        }
    }

    // crossing points: x with g1(x) = g2(x) for two distinct branches, both
    // defined at x; for affine inverses this is one linear equation per pair
    std::vector<Branch> branches = build_branches(F, I);
    for (size_t a = 0; a < branches.size(); ++a) {
        if (!branches[a].active) continue;
        for (size_t b = a + 1; b < branches.size(); ++b) {
            if (!branches[b].active) continue;
            const Branch &p = branches[a], &q = branches[b];
            // (x - tp)/rp = (x - tq)/rq  =>  x (rq - rp) = rq tp - rp tq
            double denom = q.slope - p.slope;
            if (denom == 0.0) continue;  // parallel inverses never cross
            double x = (q.slope * p.intercept - p.slope * q.intercept) / denom;
            if (p.domain.contains(x, tau_eq) && q.domain.contains(x, tau_eq) && in_comps(x))
                insert_point(pts, x, false, false, true);
        }
    }

    std::sort(pts.begin(), pts.end(),
              [](const CriticalPoint& a, const CriticalPoint& b) { return a.x < b.x; });
    for (auto& p : pts)
        for (const Interval& c : comps)
            if (p.x > c.lo + tau_eq && p.x < c.hi - tau_eq) p.inner = true;
    return {std::move(pts)};
}

Partition monotonicity_partition(const Cplifs& F, const std::vector<double>& refinement) {
    return monotonicity_partition(F, F.support, refinement);
}

Partition monotonicity_partition(const Cplifs& F, const Interval& I,
                                 const std::vector<double>& refinement) {
    Partition Z;
    Z.I = I;
    Z.components = merge_components(F, I);
    Z.branches = build_branches(F, I);
    Z.critical = critical_points(F, I);

    for (const Interval& comp : Z.components) {
        std::vector<double> cuts{comp.lo, comp.hi};
        for (const auto& p : Z.critical.points)
            if (p.x > comp.lo + tau_eq && p.x < comp.hi - tau_eq) cuts.push_back(p.x);
        for (double r : refinement)
            if (r > comp.lo + tau_eq && r < comp.hi - tau_eq) cuts.push_back(r);
        std::sort(cuts.begin(), cuts.end());
        for (size_t i = 0; i + 1 < cuts.size(); ++i)
            if (cuts[i + 1] - cuts[i] > tau_eq) Z.cells.push_back({cuts[i], cuts[i + 1]});
    }
    return Z;
}

std::vector<Successor> successors(const Interval& C, const Partition& Z) {
    std::vector<Successor> out;
    for (const Branch& b : Z.branches) {
        if (!b.active) continue;
        auto clipped = C.intersect(b.domain);
        if (!clipped || clipped->degenerate(tau_eq)) continue;
        Interval pre = sorted_interval(b.inverse(clipped->lo), b.inverse(clipped->hi));
        for (size_t ci = 0; ci < Z.cells.size(); ++ci) {
            auto piece = pre.intersect(Z.cells[ci]);
            if (piece && !piece->degenerate(tau_eq))
                out.push_back({*piece, b.k, b.j, static_cast<int>(ci)});
        }
    }
    return out;
}

namespace {

// interval identity at tau_eq via an ordered map keyed by lo
struct NodeIndex {
    std::multimap<double, int> by_lo;
    const std::vector<DiagramNode>* nodes;

    int find(const Interval& iv) const {
        auto lo = by_lo.lower_bound(iv.lo - tau_eq);
        auto hi = by_lo.upper_bound(iv.lo + tau_eq);
        for (auto it = lo; it != hi; ++it)
            if (approx_eq((*nodes)[it->second].iv.hi, iv.hi)) return it->second;
        return -1;
    }
    void add(const Interval& iv, int id) { by_lo.insert({iv.lo, id}); }
};

}  // namespace

MarkovDiagram grow_diagram(const Cplifs& F, const Partition& Z, int max_level, int max_nodes) {
    if (max_level < 0 || max_nodes < 1) throw Error("grow_diagram: caps must be positive");
    MarkovDiagram D;
    D.base = Z;
    NodeIndex index;
    index.nodes = &D.nodes;
    for (const Interval& cell : Z.cells) {
        index.add(cell, static_cast<int>(D.nodes.size()));
        D.nodes.push_back({cell, 0, -1, -1, -1});
    }

    size_t head = 0;
    while (head < D.nodes.size()) {
        int from = static_cast<int>(head++);
        Interval C = D.nodes[from].iv;
        int level = D.nodes[from].level;
        for (const Successor& s : successors(C, Z)) {
            int to = index.find(s.interval);
            if (to < 0) {
                if (level >= max_level) {
                    D.cap_reached = true;  // node would sit beyond the level cap
                    continue;
                }
                if (static_cast<int>(D.nodes.size()) >= max_nodes) {
                    D.cap_reached = true;
                    continue;
                }
                to = static_cast<int>(D.nodes.size());
                index.add(s.interval, to);
                D.nodes.push_back({s.interval, level + 1, from, s.k, s.j});
                D.max_level = std::max(D.max_level, level + 1);
            }
            D.edges.push_back({from, to, s.k, s.j, std::fabs(F.maps[s.k].slopes[s.j])});
        }
    }
    D.closed = !D.cap_reached;
    return D;
}

WeightedGraphMatrix associated_matrix(const MarkovDiagram& D) {
    std::vector<std::tuple<int, int, double>> edges;
    edges.reserve(D.edges.size());
    for (const auto& e : D.edges) edges.push_back({e.from, e.to, e.abs_slope});
    return WeightedGraphMatrix::from_edges(static_cast<int>(D.nodes.size()), edges);
}

double diagram_pressure(const WeightedGraphMatrix& M, double s) {
    return std::log(spectral_radius(M.materialize(s)));
}

double pressure_via_diagram(const Cplifs& F, const Partition& Z, double s, int r) {
    MarkovDiagram D = grow_diagram(F, Z, r);
    return diagram_pressure(associated_matrix(D), s);
}

DimensionResult natural_dimension_markov(const MarkovDiagram& D, double tol) {
    WeightedGraphMatrix M = associated_matrix(D);
    if (M.edge_count() == 0)
        return {0.0, DimMethod::markov, {0.0, 0.0}, D.max_level,
                D.closed ? ResultTag::exact_root : ResultTag::lower_bound};
    double rho_max = 0.0;
    for (const auto& e : M.entries)
        for (double w : e.weights) rho_max = std::max(rho_max, w);
    // bracket top log m / (-log rho_max) + 1, same bound as the direct method
    int maps = 0;
    for (const auto& b : D.base.branches) maps = std::max(maps, b.k + 1);
    double top = std::log(static_cast<double>(std::max(maps, 2))) / (-std::log(rho_max)) + 1.0;
    auto f = [&](double s) { return diagram_pressure(M, s); };
    if (!(f(top) < 0.0))
        throw BracketFailure("natural_dimension_markov: pressure non-negative at s_hi=" +
                             fmt_num(top));
    double a = 0.0, b = top;
    for (int it = 0; it < 200 && b - a > tol; ++it) {
        double mid = 0.5 * (a + b);
        (f(mid) > 0.0 ? a : b) = mid;
    }
    return {0.5 * (a + b), DimMethod::markov, {a, b}, D.max_level,
            D.closed ? ResultTag::exact_root : ResultTag::lower_bound};
}

DimensionResult natural_dimension_markov(const Cplifs& F, const Partition& Z, int r, double tol) {
    MarkovDiagram D = grow_diagram(F, Z, r);
    return natural_dimension_markov(D, tol);
}

SccInfo diagram_sccs(const MarkovDiagram& D) {
    std::vector<std::vector<int>> adj(D.nodes.size());
    for (const auto& e : D.edges) adj[e.from].push_back(e.to);
    SccInfo info;
    info.components = scc_decompose(adj);
    std::vector<int> comp_of(D.nodes.size(), -1);
    for (size_t c = 0; c < info.components.size(); ++c)
        for (int v : info.components[c]) comp_of[v] = static_cast<int>(c);
    info.closed.assign(info.components.size(), true);
    for (const auto& e : D.edges)
        if (comp_of[e.from] != comp_of[e.to]) info.closed[comp_of[e.from]] = false;
    return info;
}

std::vector<double> crossing_orbit_refinement(const Cplifs& F, int depth) {
    Interval I = F.support;
    std::vector<Branch> branches = build_branches(F, I);
    CriticalSet K = critical_points(F, I);
    std::vector<double> frontier;
    for (const auto& p : K.points)
        if (p.crossing) frontier.push_back(p.x);
    std::vector<double> out = frontier;
    for (int d = 0; d < depth; ++d) {
        std::vector<double> next;
        for (double x : frontier)
            for (const Branch& b : branches)
                if (b.active && b.domain.contains(x, tau_eq)) next.push_back(b.inverse(x));
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end(),
                               [](double a, double b) { return approx_eq(a, b); }),
                   next.end());
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(),
                          [](double a, double b) { return approx_eq(a, b); }),
              out.end());
    return out;
}

}  // namespace cplifs
