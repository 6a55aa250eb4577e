#include "cplifs/system.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cplifs/errors.hpp"

namespace cplifs {

std::string ValidationReport::str() const {
    std::ostringstream os;
    for (const auto& v : violations) os << v.message << "\n";
    return os.str();
}

std::vector<int> Cplifs::type_vector() const {
    std::vector<int> t;
    t.reserve(maps.size());
    for (const auto& f : maps) t.push_back(static_cast<int>(f.breakpoints.size()));
    return t;
}

double Cplifs::rho_max() const {
    double r = 0.0;
    for (const auto& f : maps)
        for (double s : f.slopes) r = std::max(r, std::fabs(s));
    return r;
}

namespace {

void add(ValidationReport& rep, Violation::Code c, int k, int i, std::string msg) {
    rep.violations.push_back({c, k, i, std::move(msg)});
}

std::string at(int k, int i) {
    std::string s = "map " + std::to_string(k + 1);
    if (i >= 0) s += ", index " + std::to_string(i + 1);
    return s;
}

}  // namespace

ValidationReport validate(const std::vector<PLMap>& raw) {
    ValidationReport rep;
    if (raw.size() < 2)
        add(rep, Violation::TooFewMaps, -1, -1,
            "TooFewMaps: need at least 2 maps, got " + std::to_string(raw.size()));
    for (int k = 0; k < static_cast<int>(raw.size()); ++k) {
        const PLMap& f = raw[k];
        if (f.slopes.size() != f.breakpoints.size() + 1) {
            add(rep, Violation::InconsistentArity, k, -1,
                "InconsistentArity: " + at(k, -1) + " has " + std::to_string(f.slopes.size()) +
                    " slopes for " + std::to_string(f.breakpoints.size()) + " breakpoints");
            continue;
        }
        for (size_t i = 0; i + 1 < f.breakpoints.size(); ++i)
            if (!(f.breakpoints[i] < f.breakpoints[i + 1]))
                add(rep, Violation::NonIncreasingBreakpoints, k, static_cast<int>(i),
                    "NonIncreasingBreakpoints: " + at(k, static_cast<int>(i)) + ": " +
                        fmt_num(f.breakpoints[i]) + " >= " + fmt_num(f.breakpoints[i + 1]));
        for (size_t i = 0; i < f.slopes.size(); ++i) {
            double s = f.slopes[i];
            if (!(std::fabs(s) < 1.0) || s == 0.0)
                add(rep, Violation::SlopeOutOfRange, k, static_cast<int>(i),
                    "SlopeOutOfRange: " + at(k, static_cast<int>(i)) + ": slope " + fmt_num(s) +
                        " not in (-1,1)\\{0}");
        }
        for (size_t i = 0; i + 1 < f.slopes.size(); ++i)
            if (f.slopes[i] == f.slopes[i + 1])
                add(rep, Violation::EqualAdjacentSlopes, k, static_cast<int>(i),
                    "EqualAdjacentSlopes: " + at(k, static_cast<int>(i)) +
                        ": adjacent slopes both " + fmt_num(f.slopes[i]));
    }
    return rep;
}

Cplifs make_cplifs(std::vector<PLMap> maps, std::shared_ptr<const ExactSystem> exact) {
    ValidationReport rep = validate(maps);
    if (!rep.ok()) throw std::invalid_argument("invalid CPLIFS:\n" + rep.str());
    Cplifs F;
    F.maps = std::move(maps);
    for (auto& f : F.maps) f.finalize();
    F.exact = std::move(exact);
    F.support = supporting_interval(F);
    return F;
}

Interval supporting_interval(const Cplifs& F, double tol) {
    if (!(tol > 0.0)) throw NoConvergence("supporting_interval: tol must be positive");
    double x0 = F.maps[0].fixed_point();
    Interval J{x0, x0};
    const int cap = 1'000'000;
    int it = 0;
    for (; it < cap; ++it) {
        Interval next = J;
        for (const auto& f : F.maps) next = next.hull(f.image(J));
        if (std::fabs(next.lo - J.lo) < tol && std::fabs(next.hi - J.hi) < tol) {
            J = next;
            break;
        }
        J = next;
    }
    if (it == cap) throw NoConvergence("supporting_interval: iteration cap exceeded");

    // Degenerate attractor: a single common fixed point phi gets the
    // conventional interval [phi - 1/2, phi + 1/2].
    if (J.length() < 10.0 * tol) {
        double phi = J.mid();
        bool common = true;
        for (const auto& f : F.maps)
            if (std::fabs(f.eval(phi) - phi) > 10.0 * tol) common = false;
        if (common) return {phi - 0.5, phi + 0.5};
    }
    return {J.lo - tol, J.hi + tol};
}

std::vector<SimilarityMap> generated_self_similar(const Cplifs& F) {
    std::vector<SimilarityMap> out;
    for (int k = 0; k < F.map_count(); ++k) {
        const PLMap& f = F.maps[k];
        for (int j = 0; j < f.branch_count(); ++j)
            out.push_back({f.slopes[j], f.intercepts[j], k, j});
    }
    return out;
}

Interval cylinder(const Cplifs& F, std::span<const int> word, Interval I) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) I = F.maps[*it].image(I);
    return I;
}

std::vector<Interval> attractor_cover(const Cplifs& F, int n, const Budget& budget) {
    const int m = F.map_count();
    budget.check(static_cast<double>(std::max(n, 1)) * std::pow(m, n), "attractor_cover");
    std::vector<Interval> cur{F.support};
    for (int depth = 0; depth < n; ++depth) {
        std::vector<Interval> next;
        next.reserve(cur.size() * m);
        for (int k = 0; k < m; ++k)
            for (const Interval& J : cur) next.push_back(F.maps[k].image(J));
        cur = std::move(next);
    }
    return cur;
}

}  // namespace cplifs
