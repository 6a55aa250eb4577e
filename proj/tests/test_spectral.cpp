#include <doctest.h>

#include <cmath>
#include <vector>

#include "cplifs/rng.hpp"
#include "cplifs/spectral.hpp"

using namespace cplifs;

namespace {

SparseMatrix dense_to_sparse(const std::vector<std::vector<double>>& A) {
    SparseMatrix M;
    M.n = static_cast<int>(A.size());
    M.row_ptr.assign(M.n + 1, 0);
    for (int i = 0; i < M.n; ++i) {
        for (int j = 0; j < M.n; ++j)
            if (A[i][j] != 0.0) {
                M.col_idx.push_back(j);
                M.val.push_back(A[i][j]);
            }
        M.row_ptr[i + 1] = static_cast<int>(M.col_idx.size());
    }
    return M;
}

// brute-force oracle: normalized repeated squaring up to M^64, radius
// extrapolated as (|M^64| / |M^32|)^(1/32) in the infinity norm
double brute_force_radius(const std::vector<std::vector<double>>& A) {
    int n = static_cast<int>(A.size());
    auto mul = [&](const std::vector<std::vector<double>>& X,
                   const std::vector<std::vector<double>>& Y) {
        std::vector<std::vector<double>> Z(n, std::vector<double>(n, 0.0));
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                if (X[i][k] == 0.0) continue;
                for (int j = 0; j < n; ++j) Z[i][j] += X[i][k] * Y[k][j];
            }
        return Z;
    };
    auto inf_norm = [&](const std::vector<std::vector<double>>& X) {
        double best = 0.0;
        for (int i = 0; i < n; ++i) {
            double row = 0.0;
            for (int j = 0; j < n; ++j) row += std::fabs(X[i][j]);
            best = std::max(best, row);
        }
        return best;
    };
    // track log norms while squaring M -> M^2 -> ... -> M^64
    std::vector<std::vector<double>> P = A;
    double log_scale = 0.0, log32 = 0.0, log64 = 0.0;
    for (int step = 1; step <= 6; ++step) {  // 2^6 = 64
        double nrm = inf_norm(P);
        if (nrm == 0.0) return 0.0;
        for (auto& row : P)
            for (double& v : row) v /= nrm;
        log_scale = 2.0 * (log_scale + std::log(nrm));
        P = mul(P, P);
        double cur = log_scale + std::log(inf_norm(P));
        if (step == 5) log32 = cur;
        if (step == 6) log64 = cur;
    }
    return std::exp((log64 - log32) / 32.0);
}

}  // namespace

TEST_CASE("spectral radius basics") {
    CHECK(spectral_radius(dense_to_sparse({{0, 0}, {0, 0}})) == 0.0);
    CHECK(spectral_radius(dense_to_sparse({{0.7, 0}, {0, 0.7}})) == doctest::Approx(0.7));
    // rank-one structure with equal row sums
    double s = 0.5, w = std::pow(3.0, -s);
    CHECK(spectral_radius(dense_to_sparse({{w, w}, {w, w}})) == doctest::Approx(2 * w).epsilon(1e-12));
    // pure 2-cycle is periodic: needs the shift path
    CHECK(spectral_radius(dense_to_sparse({{0, 2}, {0.5, 0}})) == doctest::Approx(1.0).epsilon(1e-9));
    // nilpotent
    CHECK(spectral_radius(dense_to_sparse({{0, 1}, {0, 0}})) == 0.0);
}

TEST_CASE("scc decomposition") {
    // edgeless
    CHECK(scc_decompose({{}, {}, {}}).size() == 3);
    // a -> b: two components, b closed
    auto comps = scc_decompose({{1}, {}});
    CHECK(comps.size() == 2);
    // 2-cycle: one component
    CHECK(scc_decompose({{1}, {0}}).size() == 1);
}

TEST_CASE("power iteration matches brute force on random matrices") {
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Rng rng(777, seed);
        std::vector<std::vector<double>> A(8, std::vector<double>(8, 0.0));
        bool reducible = seed % 3 == 0;
        if (!reducible) {
            for (auto& row : A)
                for (double& v : row) v = rng.uniform01() < 0.25 ? 0.0 : rng.uniform01();
        } else {
            // block upper triangular, second block damped to keep the
            // extrapolation oracle's own error well under the tolerance
            double damp = rng.uniform(0.2, 0.5);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    A[i][j] = rng.uniform01();
                    A[i + 4][j + 4] = damp * rng.uniform01();
                    A[i][j + 4] = rng.uniform01() < 0.5 ? rng.uniform01() : 0.0;
                }
        }
        double oracle = brute_force_radius(A);
        double got = spectral_radius(dense_to_sparse(A));
        CHECK(std::fabs(got - oracle) <= 1e-6 * std::max(1.0, oracle));
        ++checked;
    }
    CHECK(checked == 40);
}

TEST_CASE("weighted matrix materialization sums parallel edges") {
    WeightedGraphMatrix M = WeightedGraphMatrix::from_edges(
        2, {{0, 1, 0.5}, {0, 1, 0.25}, {1, 0, 0.5}});
    SparseMatrix S1 = M.materialize(1.0);
    CHECK(S1.val[0] == doctest::Approx(0.75));
    SparseMatrix S0 = M.materialize(0.0);
    CHECK(S0.val[0] == doctest::Approx(2.0));  // edge count at s = 0
    CHECK(M.edge_count() == 3);
}
