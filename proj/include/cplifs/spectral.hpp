#pragma once
#include <tuple>
#include <vector>

namespace cplifs {

struct SparseMatrix {
    int n = 0;
    std::vector<int> row_ptr;  // size n+1
    std::vector<int> col_idx;
    std::vector<double> val;   // nonnegative

    // y = M x
    void mul(const std::vector<double>& x, std::vector<double>& y) const;
    double max_row_sum() const;
};

// Nonnegative matrix whose entries are sums of |slope|^s terms over parallel
// labeled edges; the exponent is applied at materialization.
struct WeightedGraphMatrix {
    struct Ent {
        int row, col;
        std::vector<double> weights;  // |slope| per parallel edge
    };
    int n = 0;
    std::vector<Ent> entries;  // sorted by (row, col)

    static WeightedGraphMatrix from_edges(int n,
                                          const std::vector<std::tuple<int, int, double>>& edges);
    SparseMatrix materialize(double s) const;
    long long edge_count() const;
};

// Tarjan, iterative; components returned in reverse topological order.
std::vector<std::vector<int>> scc_decompose(const std::vector<std::vector<int>>& adj);

// Spectral radius of a nonnegative matrix to relative tolerance tol: power
// iteration with Collatz-Wielandt bounds run per strongly connected component,
// answer is the max over components. Edgeless graphs give 0. Components on
// which plain iteration stalls (periodic structure) are retried with a
// diagonal shift, which makes them primitive.
double spectral_radius(const SparseMatrix& M, double tol = 1e-12, int iter_cap = 20000);

}  // namespace cplifs
