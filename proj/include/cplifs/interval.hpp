#pragma once
#include <algorithm>
#include <cmath>
#include <optional>

namespace cplifs {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }

    bool contains(double x, double tol = 0.0) const {
        return x >= lo - tol && x <= hi + tol;
    }
    bool degenerate(double tol) const { return length() <= tol; }

    Interval hull(const Interval& o) const {
        return {std::min(lo, o.lo), std::max(hi, o.hi)};
    }
    Interval hull(double x) const {
        return {std::min(lo, x), std::max(hi, x)};
    }

    std::optional<Interval> intersect(const Interval& o) const {
        double a = std::max(lo, o.lo), b = std::min(hi, o.hi);
        if (a > b) return std::nullopt;
        return Interval{a, b};
    }

    bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }
};

inline Interval sorted_interval(double a, double b) {
    return a <= b ? Interval{a, b} : Interval{b, a};
}

}  // namespace cplifs
