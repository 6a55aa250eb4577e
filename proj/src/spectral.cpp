#include "cplifs/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cplifs/errors.hpp"
#include "cplifs/numbers.hpp"

namespace cplifs {

void SparseMatrix::mul(const std::vector<double>& x, std::vector<double>& y) const {
    y.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int p = row_ptr[i]; p < row_ptr[i + 1]; ++p) acc += val[p] * x[col_idx[p]];
        y[i] = acc;
    }
}

double SparseMatrix::max_row_sum() const {
    double best = 0.0;
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int p = row_ptr[i]; p < row_ptr[i + 1]; ++p) acc += val[p];
        best = std::max(best, acc);
    }
    return best;
}

WeightedGraphMatrix WeightedGraphMatrix::from_edges(
    int n, const std::vector<std::tuple<int, int, double>>& edges) {
    WeightedGraphMatrix M;
    M.n = n;
    auto sorted = edges;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
    });
    for (const auto& [r, c, w] : sorted) {
        if (!M.entries.empty() && M.entries.back().row == r && M.entries.back().col == c)
            M.entries.back().weights.push_back(w);
        else
            M.entries.push_back({r, c, {w}});
    }
    return M;
}

SparseMatrix WeightedGraphMatrix::materialize(double s) const {
    SparseMatrix M;
    M.n = n;
    M.row_ptr.assign(n + 1, 0);
    for (const auto& e : entries) ++M.row_ptr[e.row + 1];
    for (int i = 0; i < n; ++i) M.row_ptr[i + 1] += M.row_ptr[i];
    M.col_idx.resize(entries.size());
    M.val.resize(entries.size());
    std::vector<int> cursor(M.row_ptr.begin(), M.row_ptr.end() - 1);
    for (const auto& e : entries) {
        double v = 0.0;
        for (double w : e.weights) v += std::pow(w, s);
        int p = cursor[e.row]++;
        M.col_idx[p] = e.col;
        M.val[p] = v;
    }
    return M;
}

long long WeightedGraphMatrix::edge_count() const {
    long long c = 0;
    for (const auto& e : entries) c += static_cast<long long>(e.weights.size());
    return c;
}

std::vector<std::vector<int>> scc_decompose(const std::vector<std::vector<int>>& adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> index(n, -1), low(n, 0), on_stack(n, 0), stack;
    std::vector<std::vector<int>> comps;
    int counter = 0;

    // explicit DFS stack: (node, next child position)
    std::vector<std::pair<int, size_t>> call;
    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        call.push_back({root, 0});
        while (!call.empty()) {
            auto& [v, pos] = call.back();
            if (pos == 0) {
                index[v] = low[v] = counter++;
                stack.push_back(v);
                on_stack[v] = 1;
            }
            if (pos < adj[v].size()) {
                int w = adj[v][pos++];
                if (index[w] == -1)
                    call.push_back({w, 0});
                else if (on_stack[w])
                    low[v] = std::min(low[v], index[w]);
            } else {
                if (low[v] == index[v]) {
                    std::vector<int> comp;
                    int w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        comp.push_back(w);
                    } while (w != v);
                    std::sort(comp.begin(), comp.end());
                    comps.push_back(std::move(comp));
                }
                int done = v;
                call.pop_back();
                if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
            }
        }
    }
    return comps;
}

namespace {

// Collatz-Wielandt power iteration on an irreducible component. Returns the
// radius or NaN when the bounds fail to close within the cap.
double cw_iterate(const SparseMatrix& M, double tol, int iter_cap) {
    std::vector<double> x(M.n, 1.0), y;
    for (int it = 0; it < iter_cap; ++it) {
        M.mul(x, y);
        double hi = 0.0, lo = std::numeric_limits<double>::infinity(), norm = 0.0;
        for (int i = 0; i < M.n; ++i) {
            double r = y[i] / x[i];
            hi = std::max(hi, r);
            lo = std::min(lo, r);
            norm = std::max(norm, y[i]);
        }
        if (hi - lo <= tol * hi) return 0.5 * (hi + lo);
        if (norm == 0.0) return 0.0;
        for (int i = 0; i < M.n; ++i) x[i] = y[i] / norm;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double component_radius(const SparseMatrix& M, double tol, int iter_cap) {
    double r = cw_iterate(M, tol, iter_cap);
    if (!std::isnan(r)) return r;
    // periodic component: shift by c*Id and subtract c afterwards
    double c = M.max_row_sum() * 1e-3;
    // add c to the diagonal, inserting entries where missing
    SparseMatrix out;
    out.n = M.n;
    out.row_ptr.assign(M.n + 1, 0);
    for (int i = 0; i < M.n; ++i) {
        bool has_diag = false;
        for (int p = M.row_ptr[i]; p < M.row_ptr[i + 1]; ++p)
            if (M.col_idx[p] == i) has_diag = true;
        out.row_ptr[i + 1] = out.row_ptr[i] + (M.row_ptr[i + 1] - M.row_ptr[i]) + (has_diag ? 0 : 1);
    }
    out.col_idx.resize(out.row_ptr.back());
    out.val.resize(out.row_ptr.back());
    for (int i = 0; i < M.n; ++i) {
        int q = out.row_ptr[i];
        bool placed = false;
        for (int p = M.row_ptr[i]; p < M.row_ptr[i + 1]; ++p) {
            double v = M.val[p];
            if (M.col_idx[p] == i) {
                v += c;
                placed = true;
            }
            out.col_idx[q] = M.col_idx[p];
            out.val[q++] = v;
        }
        if (!placed) {
            out.col_idx[q] = i;
            out.val[q++] = c;
        }
    }
    r = cw_iterate(out, tol, iter_cap);
    if (std::isnan(r))
        throw NoConvergence("spectral_radius: power iteration failed even after shift");
    return r - c;
}

}  // namespace

double spectral_radius(const SparseMatrix& M, double tol, int iter_cap) {
    if (M.n == 0) return 0.0;
    std::vector<std::vector<int>> adj(M.n);
    for (int i = 0; i < M.n; ++i)
        for (int p = M.row_ptr[i]; p < M.row_ptr[i + 1]; ++p)
            if (M.val[p] != 0.0) adj[i].push_back(M.col_idx[p]);

    double best = 0.0;
    for (const auto& comp : scc_decompose(adj)) {
        if (comp.size() == 1) {
            int v = comp[0];
            for (int p = M.row_ptr[v]; p < M.row_ptr[v + 1]; ++p)
                if (M.col_idx[p] == v) best = std::max(best, M.val[p]);
            continue;
        }
        // restrict to the component
        std::vector<int> pos(M.n, -1);
        for (size_t i = 0; i < comp.size(); ++i) pos[comp[i]] = static_cast<int>(i);
        SparseMatrix sub;
        sub.n = static_cast<int>(comp.size());
        sub.row_ptr.assign(sub.n + 1, 0);
        std::vector<std::pair<int, double>> tmp;
        for (int i = 0; i < sub.n; ++i) {
            int v = comp[i];
            for (int p = M.row_ptr[v]; p < M.row_ptr[v + 1]; ++p) {
                int w = pos[M.col_idx[p]];
                if (w >= 0 && M.val[p] != 0.0) {
                    sub.col_idx.push_back(w);
                    sub.val.push_back(M.val[p]);
                }
            }
            sub.row_ptr[i + 1] = static_cast<int>(sub.col_idx.size());
        }
        best = std::max(best, component_radius(sub, tol, iter_cap));
    }
    return best;
}

}  // namespace cplifs
