#include "cplifs/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "cplifs/errors.hpp"
#include "cplifs/exact.hpp"

namespace cplifs {

namespace {

// Forward orbit of the cell endpoints (minus the supporting-interval ends)
// under the contractions: the doubled set W, truncated in depth and size.
std::vector<double> forward_orbit_set(const Cplifs& F, const Partition& Z, int depth,
                                      size_t cap) {
    const double u = Z.I.lo, v = Z.I.hi;
    std::set<double> W;
    auto seen = [&](double x) {
        auto it = W.lower_bound(x - tau_eq);
        return it != W.end() && *it <= x + tau_eq;
    };
    std::vector<double> frontier;
    for (const Interval& cell : Z.cells)
        for (double e : {cell.lo, cell.hi}) {
            if (approx_eq(e, u) || approx_eq(e, v) || seen(e)) continue;
            W.insert(e);
            frontier.push_back(e);
        }
    for (int d = 0; d < depth && !frontier.empty() && W.size() < cap; ++d) {
        std::vector<double> next;
        for (double x : frontier)
            for (const auto& f : F.maps) {
                double y = f.eval(x);
                if (approx_eq(y, u) || approx_eq(y, v) || seen(y)) continue;
                W.insert(y);
                next.push_back(y);
                if (W.size() >= cap) break;
            }
        std::sort(next.begin(), next.end());
        frontier = std::move(next);
    }
    return {W.begin(), W.end()};
}

bool in_sorted(const std::vector<double>& xs, double x) {
    auto it = std::lower_bound(xs.begin(), xs.end(), x - tau_eq);
    return it != xs.end() && *it <= x + tau_eq;
}

// Whether a branch applies to a one-sided point: minus side needs the domain to
// extend strictly left of the value, plus side strictly right.
bool side_applicable(double v, Side side, const Interval& dom) {
    switch (side) {
        case Side::plain: return dom.contains(v, tau_eq);
        case Side::minus: return v > dom.lo + tau_eq && v <= dom.hi + tau_eq;
        case Side::plus: return v >= dom.lo - tau_eq && v < dom.hi - tau_eq;
    }
    return false;
}

struct OrbitNodeIndex {
    std::multimap<double, int> by_value;
    const std::vector<OrbitNode>* nodes;

    int find(double v, Side s) const {
        auto lo = by_value.lower_bound(v - tau_eq);
        auto hi = by_value.upper_bound(v + tau_eq);
        for (auto it = lo; it != hi; ++it)
            if ((*nodes)[it->second].side == s) return it->second;
        return -1;
    }
    void add(double v, int id) { by_value.insert({v, id}); }
};

}  // namespace

OrbitGraph build_orbit_graph(const Cplifs& F, const Partition& Z, int depth, int node_cap) {
    if (depth < 1) throw Error("build_orbit_graph: depth must be >= 1");
    OrbitGraph G;
    G.depth = depth;
    std::vector<double> W = forward_orbit_set(F, Z, std::min(depth, 8), 100000);
    const double u = Z.I.lo, v = Z.I.hi;
    auto doubled = [&](double x) {
        return !approx_eq(x, u) && !approx_eq(x, v) && in_sorted(W, x);
    };

    OrbitNodeIndex index;
    index.nodes = &G.nodes;
    auto add_node = [&](double value, Side side, int d) {
        int id = static_cast<int>(G.nodes.size());
        index.add(value, id);
        G.nodes.push_back({value, side, d});
        return id;
    };

    std::set<double> endpoint_set;
    for (const Interval& cell : Z.cells) {
        endpoint_set.insert(cell.lo);
        endpoint_set.insert(cell.hi);
    }
    std::vector<double> endpoints;
    for (double e : endpoint_set) {
        if (!endpoints.empty() && approx_eq(endpoints.back(), e)) continue;
        endpoints.push_back(e);
    }
    for (double e : endpoints) {
        if (doubled(e)) {
            add_node(e, Side::minus, 0);
            add_node(e, Side::plus, 0);
        } else {
            add_node(e, Side::plain, 0);
        }
    }

    size_t head = 0;
    while (head < G.nodes.size()) {
        int from = static_cast<int>(head++);
        double value = G.nodes[from].value;
        Side side = G.nodes[from].side;
        int d = G.nodes[from].depth;
        for (const Branch& b : Z.branches) {
            if (!b.active || !side_applicable(value, side, b.domain)) continue;
            double q = b.inverse(value);
            if (!Z.in_components(q, tau_eq)) continue;
            // zeta-tolerant rule: a doubled target receives the edge on both sides
            Side targets[2];
            int tcount;
            if (doubled(q)) {
                targets[0] = Side::minus;
                targets[1] = Side::plus;
                tcount = 2;
            } else {
                targets[0] = Side::plain;
                tcount = 1;
            }
            for (int t = 0; t < tcount; ++t) {
                int to = index.find(q, targets[t]);
                if (to < 0) {
                    if (d >= depth || static_cast<int>(G.nodes.size()) >= node_cap) {
                        G.cap_reached = G.cap_reached || static_cast<int>(G.nodes.size()) >= node_cap;
                        continue;
                    }
                    to = add_node(q, targets[t], d + 1);
                }
                G.edges.push_back({from, to, b.k, b.j, std::fabs(b.slope)});
            }
        }
    }
    return G;
}

WeightedGraphMatrix orbit_matrix(const OrbitGraph& G) {
    std::vector<std::tuple<int, int, double>> edges;
    edges.reserve(G.edges.size());
    for (const auto& e : G.edges) edges.push_back({e.from, e.to, e.abs_slope});
    return WeightedGraphMatrix::from_edges(static_cast<int>(G.nodes.size()), edges);
}

SimilaritySystem similarity_system(const Cplifs& F) {
    return {generated_self_similar(F), F.exact};
}

namespace {

struct Comp {
    double rho, t;
    long long word;  // lexicographic rank within [B]^n
};

std::vector<int> decode_word(long long rank, int n, int base) {
    std::vector<int> w(n);
    for (int i = n - 1; i >= 0; --i) {
        w[i] = static_cast<int>(rank % base);
        rank /= base;
    }
    return w;
}

ExactSimilarity exact_compose(const std::vector<ExactSimilarity>& S, const std::vector<int>& w) {
    ExactSimilarity acc{Rational(1), Rational(0)};
    // left-to-right: acc = acc o S[w_i]
    for (int letter : w) {
        acc.translation = acc.translation + acc.slope * S[letter].translation;
        acc.slope = acc.slope * S[letter].slope;
    }
    return acc;
}

bool same_slope(double a, double b) {
    return std::fabs(a - b) <= 1e-12 * std::max(std::fabs(a), std::fabs(b));
}

}  // namespace

bool OverlapReport::any_overlap() const { return first_overlap_depth() >= 0; }

int OverlapReport::first_overlap_depth() const {
    for (size_t i = 0; i < pair_counts.size(); ++i)
        if (pair_counts[i] > 0) return static_cast<int>(i) + 1;
    return -1;
}

OverlapReport exact_overlap_search(const SimilaritySystem& S, int n_max, const Budget& budget,
                                   int max_pairs) {
    if (n_max < 1) throw Error("exact_overlap_search: depth must be >= 1");
    const int B = static_cast<int>(S.maps.size());
    double total = 0.0, layer = 1.0;
    for (int d = 1; d <= n_max; ++d) {
        layer *= B;
        total += layer;
    }
    budget.check(total, "exact_overlap_search");

    std::vector<ExactSimilarity> exact_maps;
    if (S.exact_mode()) exact_maps = generated_self_similar_exact(*S.exact);

    OverlapReport rep;
    rep.exact_mode = S.exact_mode();

    std::vector<Comp> cur{{1.0, 0.0, 0}};  // empty word
    for (int depth = 1; depth <= n_max; ++depth) {
        std::vector<Comp> next;
        next.reserve(cur.size() * B);
        for (const Comp& c : cur)
            for (int b = 0; b < B; ++b)
                next.push_back({c.rho * S.maps[b].slope, c.t + c.rho * S.maps[b].translation,
                                c.word * B + b});
        cur = std::move(next);

        // group by slope product, then by translation
        std::vector<const Comp*> order;
        order.reserve(cur.size());
        for (const Comp& c : cur) order.push_back(&c);
        std::sort(order.begin(), order.end(), [](const Comp* a, const Comp* b) {
            if (a->rho != b->rho) return a->rho < b->rho;
            if (a->t != b->t) return a->t < b->t;
            return a->word < b->word;
        });

        long long count = 0;
        double min_dist = inf_distance;
        size_t i = 0;
        while (i < order.size()) {
            size_t j = i + 1;
            while (j < order.size() && same_slope(order[j]->rho, order[i]->rho)) ++j;
            for (size_t p = i; p + 1 < j; ++p) {
                double gap = order[p + 1]->t - order[p]->t;
                min_dist = std::min(min_dist, gap);
                if (gap <= tau_eq) {
                    ++count;
                    if (static_cast<int>(rep.pairs.size()) < max_pairs) {
                        const Comp *a = order[p], *b = order[p + 1];
                        if (a->word > b->word) std::swap(a, b);
                        OverlapVerdict verdict = OverlapVerdict::suspected;
                        double exact_gap = gap;
                        if (S.exact_mode()) {
                            auto wa = decode_word(a->word, depth, B);
                            auto wb = decode_word(b->word, depth, B);
                            ExactSimilarity ca = exact_compose(exact_maps, wa);
                            ExactSimilarity cb = exact_compose(exact_maps, wb);
                            if (ca.slope == cb.slope && ca.translation == cb.translation) {
                                verdict = OverlapVerdict::exact;
                                exact_gap = 0.0;
                            }
                        }
                        rep.pairs.push_back({depth, decode_word(a->word, depth, B),
                                             decode_word(b->word, depth, B), a->rho, exact_gap,
                                             verdict});
                    }
                }
            }
            i = j;
        }
        rep.pair_counts.push_back(count);
        rep.esc_min_distances.push_back(min_dist);
        rep.c_estimates.push_back(std::isfinite(min_dist) && min_dist > 0
                                      ? std::pow(min_dist, 1.0 / depth)
                                      : (min_dist == 0.0 ? 0.0 : inf_distance));
    }
    return rep;
}

double esc_min_distance(const SimilaritySystem& S, int n, const Budget& budget) {
    OverlapReport rep = exact_overlap_search(S, n, budget, 16);
    double d = rep.esc_min_distances[n - 1];
    if (S.exact_mode() && d <= tau_eq) {
        // settle exactly: 0 only for true overlaps
        bool exact_zero = false;
        for (const auto& p : rep.pairs)
            if (p.depth == n && p.verdict == OverlapVerdict::exact) exact_zero = true;
        if (exact_zero) return 0.0;
    }
    return d;
}

std::vector<PeriodicFlag> periodic_critical_orbit_check(const Cplifs& F, int depth) {
    Partition Z = monotonicity_partition(F);
    OrbitGraph G = build_orbit_graph(F, Z, depth);
    return periodic_critical_orbit_check(F, Z, G);
}

std::vector<PeriodicFlag> periodic_critical_orbit_check(const Cplifs& F, const Partition& Z,
                                                        const OrbitGraph& G) {
    std::vector<PeriodicFlag> flags;
    const int n = static_cast<int>(G.nodes.size());
    std::vector<std::vector<int>> edges_from(n);
    for (size_t e = 0; e < G.edges.size(); ++e) edges_from[G.edges[e].from].push_back(static_cast<int>(e));

    for (double x : Z.critical.inner_values()) {
        // branch pairs of one map meeting at x
        for (int k = 0; k < F.map_count(); ++k) {
            std::vector<const Branch*> here;
            for (const Branch& b : Z.branches)
                if (b.active && b.k == k && b.domain.contains(x, tau_eq)) here.push_back(&b);
            for (size_t a = 0; a < here.size(); ++a)
                for (size_t b = a + 1; b < here.size(); ++b) {
                    if (!approx_eq(here[a]->inverse(x), here[b]->inverse(x))) continue;
                    // BFS from x along a first edge labeled with either branch
                    int best = -1;
                    std::vector<int> dist(n, -1);
                    std::vector<int> queue;
                    for (int v = 0; v < n; ++v) {
                        if (!approx_eq(G.nodes[v].value, x)) continue;
                        for (int ei : edges_from[v]) {
                            const OrbitEdge& e = G.edges[ei];
                            bool starts = e.k == k && (e.j == here[a]->j || e.j == here[b]->j);
                            if (!starts) continue;
                            if (approx_eq(G.nodes[e.to].value, x)) best = best < 0 ? 1 : std::min(best, 1);
                            if (dist[e.to] < 0) {
                                dist[e.to] = 1;
                                queue.push_back(e.to);
                            }
                        }
                    }
                    for (size_t h = 0; h < queue.size() && best < 0; ++h) {
                        int v = queue[h];
                        if (dist[v] >= G.depth) continue;
                        for (int ei : edges_from[v]) {
                            const OrbitEdge& e = G.edges[ei];
                            if (approx_eq(G.nodes[e.to].value, x)) {
                                best = dist[v] + 1;
                                break;
                            }
                            if (dist[e.to] < 0) {
                                dist[e.to] = dist[v] + 1;
                                queue.push_back(e.to);
                            }
                        }
                    }
                    if (best >= 0) flags.push_back({x, k, here[a]->j, here[b]->j, best});
                }
        }
    }
    return flags;
}

}  // namespace cplifs
