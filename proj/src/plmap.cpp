#include "cplifs/plmap.hpp"

#include <algorithm>
#include <limits>

#include "cplifs/errors.hpp"
#include "cplifs/numbers.hpp"

namespace cplifs {

int PLMap::branch_of(double x) const {
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
    return static_cast<int>(it - breakpoints.begin());
}

double PLMap::eval(double x) const {
    int i = branch_of(x);
    return slopes[i] * x + intercepts[i];
}

Interval PLMap::image(const Interval& J) const {
    double a = eval(J.lo), b = eval(J.hi);
    double lo = std::min(a, b), hi = std::max(a, b);
    for (double bp : breakpoints) {
        if (bp <= J.lo) continue;
        if (bp >= J.hi) break;
        double v = eval(bp);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {lo, hi};
}

double PLMap::fixed_point() const {
    // f(x) - x is continuous and strictly decreasing (every slope < 1), so
    // exactly one branch's extended line crosses the diagonal inside its piece.
    int n = branch_count();
    for (int i = 0; i < n; ++i) {
        double x = intercepts[i] / (1.0 - slopes[i]);
        double lo = (i == 0) ? -std::numeric_limits<double>::infinity() : breakpoints[i - 1];
        double hi = (i == n - 1) ? std::numeric_limits<double>::infinity() : breakpoints[i];
        if (x >= lo - tau_eq && x <= hi + tau_eq) return x;
    }
    throw NoConvergence("PLMap::fixed_point: no branch contains its fixed point");
}

void PLMap::finalize() {
    int n = branch_count();
    intercepts.assign(n, 0.0);
    int i0 = branch_of(0.0);
    intercepts[i0] = offset;  // f(0) = slopes[i0]*0 + c
    // continuity at breakpoint b between branches i and i+1:
    // slopes[i]*b + c_i = slopes[i+1]*b + c_{i+1}
    for (int i = i0; i + 1 < n; ++i)
        intercepts[i + 1] = intercepts[i] + (slopes[i] - slopes[i + 1]) * breakpoints[i];
    for (int i = i0; i > 0; --i)
        intercepts[i - 1] = intercepts[i] + (slopes[i] - slopes[i - 1]) * breakpoints[i - 1];
}

}  // namespace cplifs
