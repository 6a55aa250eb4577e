#pragma once
#include <cmath>
#include <cstdio>
#include <string>

#include "cplifs/errors.hpp"

namespace cplifs {

// Equality tolerance for point coincidence (crossing points, node dedup, ...).
inline constexpr double tau_eq = 1e-9;

inline bool approx_eq(double a, double b, double tol = tau_eq) {
    return std::fabs(a - b) <= tol;
}

// 12 significant digits, locale-independent; used for all emitted numbers.
inline std::string fmt_num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct Budget {
    double max_terms = 1e8;
    void check(double terms, const char* what) const {
        if (terms > max_terms)
            throw BudgetExceeded(std::string(what) + ": " + fmt_num(terms) +
                                 " terms exceed budget " + fmt_num(max_terms));
    }
};

}  // namespace cplifs
