#include "cplifs/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "cplifs/errors.hpp"

namespace cplifs {

const char* dim_method_name(DimMethod m) {
    switch (m) {
        case DimMethod::direct: return "direct";
        case DimMethod::markov: return "markov";
        case DimMethod::moran: return "moran";
        case DimMethod::boxcount: return "boxcount";
    }
    return "?";
}

namespace {

// Level-n cylinder lengths as (length, multiplicity) runs, sorted descending.
// Systems with structurally repeated lengths compress enormously, which keeps
// the bisection in natural_dimension_direct cheap.
std::vector<std::pair<double, long long>> cylinder_length_runs(const Cplifs& F, int n,
                                                               const Budget& budget) {
    const int m = F.map_count();
    budget.check(static_cast<double>(std::max(n, 1)) * std::pow(m, n), "cylinder enumeration");
    std::vector<double> lengths;
    lengths.reserve(static_cast<size_t>(std::pow(m, n)));
    // depth-first over suffixes: prepending map k to a suffix word applies f_k
    // to the suffix image, so each node costs one interval image
    std::function<void(const Interval&, int)> go = [&](const Interval& J, int depth) {
        if (depth == n) {
            lengths.push_back(J.length());
            return;
        }
        for (int k = 0; k < m; ++k) go(F.maps[k].image(J), depth + 1);
    };
    go(F.support, 0);
    std::sort(lengths.begin(), lengths.end(), std::greater<>());
    std::vector<std::pair<double, long long>> runs;
    for (double l : lengths) {
        if (!runs.empty() && runs.back().first == l)
            ++runs.back().second;
        else
            runs.push_back({l, 1});
    }
    return runs;
}

double pressure_from_runs(const std::vector<std::pair<double, long long>>& runs, double s,
                          double scale, int n) {
    double sum = 0.0;
    for (const auto& [len, cnt] : runs) {
        if (len <= 0.0) continue;  // degenerate cylinders carry no mass for s > 0
        sum += static_cast<double>(cnt) * std::pow(len / scale, s);
    }
    return std::log(sum) / n;
}

}  // namespace

double direct_pressure(const Cplifs& F, double s, int n, const Budget& budget) {
    if (n < 1) throw Error("direct_pressure: depth must be >= 1");
    if (s < 0.0) throw Error("direct_pressure: s must be >= 0");
    if (s == 0.0) return std::log(static_cast<double>(F.map_count()));
    auto runs = cylinder_length_runs(F, n, budget);
    return pressure_from_runs(runs, s, 1.0, n);
}

PressureCurve pressure_curve(const Cplifs& F, const std::vector<double>& s_grid, int n,
                             const Budget& budget) {
    PressureCurve c;
    c.depth = n;
    c.s_grid = s_grid;
    auto runs = cylinder_length_runs(F, n, budget);
    for (double s : s_grid)
        c.phi_values.push_back(s == 0.0 ? std::log(static_cast<double>(F.map_count()))
                                        : pressure_from_runs(runs, s, 1.0, n));
    return c;
}

DimensionResult natural_dimension_direct(const Cplifs& F, int n, double tol,
                                         const Budget& budget) {
    if (n < 1) throw Error("natural_dimension_direct: depth must be >= 1");
    const double m = F.map_count();
    const double rho = F.rho_max();
    const double s_hi = std::log(m) / (-std::log(rho)) + 1.0;
    auto runs = cylinder_length_runs(F, n, budget);
    const double scale = F.support.length();
    auto phi = [&](double s) {
        return s == 0.0 ? std::log(m) : pressure_from_runs(runs, s, scale, n);
    };
    if (!(phi(s_hi) < 0.0))
        throw BracketFailure("natural_dimension_direct: pressure non-negative at s_hi=" +
                             fmt_num(s_hi));
    double a = 0.0, b = s_hi;
    for (int it = 0; it < 200 && b - a > tol; ++it) {
        double mid = 0.5 * (a + b);
        (phi(mid) > 0.0 ? a : b) = mid;
    }
    return {0.5 * (a + b), DimMethod::direct, {a, b}, n, ResultTag::exact_root};
}

double moran_dimension(std::vector<double> ratios) {
    if (ratios.empty()) throw EmptyList("moran_dimension: empty ratio list");
    for (double r : ratios)
        if (!(r > 0.0 && r < 1.0)) throw Error("moran_dimension: ratio not in (0,1)");
    auto psi = [&](double s) {
        double sum = 0.0;
        for (double r : ratios) sum += std::pow(r, s);
        return sum;
    };
    double hi = 1.0;
    int guard = 0;
    while (psi(hi) > 1.0) {
        hi *= 2.0;
        if (++guard > 64) throw NoConvergence("moran_dimension: bracket growth failed");
    }
    double a = 0.0, b = hi;
    for (int it = 0; it < 200 && b - a > 1e-12; ++it) {
        double mid = 0.5 * (a + b);
        (psi(mid) > 1.0 ? a : b) = mid;
    }
    return 0.5 * (a + b);
}

double box_counting_estimate(const std::vector<Interval>& cover,
                             const std::vector<double>& deltas) {
    if (cover.empty()) throw Error("box_counting_estimate: empty cover");
    if (deltas.size() < 3) throw Error("box_counting_estimate: need >= 3 scales");
    std::vector<double> logN, logInv;
    long long first_count = -1;
    bool all_equal = true;
    for (double d : deltas) {
        if (!(d > 0.0)) throw Error("box_counting_estimate: scale must be positive");
        std::vector<std::pair<long long, long long>> ranges;
        ranges.reserve(cover.size());
        for (const Interval& J : cover)
            ranges.push_back({static_cast<long long>(std::floor(J.lo / d)),
                              static_cast<long long>(std::floor(J.hi / d))});
        std::sort(ranges.begin(), ranges.end());
        long long count = 0, cur_lo = 0, cur_hi = -1;
        bool open = false;
        for (auto [a, b] : ranges) {
            if (open && a <= cur_hi + 1) {
                cur_hi = std::max(cur_hi, b);
            } else {
                if (open) count += cur_hi - cur_lo + 1;
                cur_lo = a;
                cur_hi = b;
                open = true;
            }
        }
        if (open) count += cur_hi - cur_lo + 1;
        if (first_count < 0) first_count = count;
        all_equal = all_equal && count == first_count;
        logN.push_back(std::log(static_cast<double>(count)));
        logInv.push_back(std::log(1.0 / d));
    }
    if (all_equal) {
        if (first_count == 1) return 0.0;  // a point set needs one box at every scale
        throw DegenerateFit("box_counting_estimate: identical counts at all scales");
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(deltas.size());
    for (size_t i = 0; i < deltas.size(); ++i) {
        sx += logInv[i];
        sy += logN[i];
        sxx += logInv[i] * logInv[i];
        sxy += logInv[i] * logN[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double lebesgue_upper_estimate(const Cplifs& F, int n, const Budget& budget) {
    std::vector<Interval> cover = attractor_cover(F, n, budget);
    std::sort(cover.begin(), cover.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    double total = 0.0, cur_lo = 0.0, cur_hi = 0.0;
    bool open = false;
    for (const Interval& J : cover) {
        if (open && J.lo <= cur_hi) {
            cur_hi = std::max(cur_hi, J.hi);
        } else {
            if (open) total += cur_hi - cur_lo;
            cur_lo = J.lo;
            cur_hi = J.hi;
            open = true;
        }
    }
    if (open) total += cur_hi - cur_lo;
    return total;
}

}  // namespace cplifs
