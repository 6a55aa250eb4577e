#include "cplifs/exact.hpp"

#include <algorithm>
#include <cctype>

namespace cplifs {

void ExactPLMap::finalize() {
    size_t n = slopes.size();
    intercepts.assign(n, Rational(0));
    int i0 = branch_of(Rational(0));
    intercepts[i0] = offset;
    for (int i = i0; i + 1 < static_cast<int>(n); ++i)
        intercepts[i + 1] = intercepts[i] + (slopes[i] - slopes[i + 1]) * breakpoints[i];
    for (int i = i0; i > 0; --i)
        intercepts[i - 1] = intercepts[i] + (slopes[i] - slopes[i - 1]) * breakpoints[i - 1];
}

int ExactPLMap::branch_of(const Rational& x) const {
    int i = 0;
    while (i < static_cast<int>(breakpoints.size()) && breakpoints[i] <= x) ++i;
    return i;
}

Rational ExactPLMap::eval(const Rational& x) const {
    int i = branch_of(x);
    return slopes[i] * x + intercepts[i];
}

std::optional<Rational> parse_rational(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (s.empty()) return std::nullopt;
    auto slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            boost::multiprecision::cpp_int num(s.substr(0, slash));
            boost::multiprecision::cpp_int den(s.substr(slash + 1));
            if (den == 0) return std::nullopt;
            return Rational(num, den);
        }
        // decimal literal, optionally with exponent
        auto epos = s.find_first_of("eE");
        long long exp10 = 0;
        std::string mant = s;
        if (epos != std::string::npos) {
            exp10 = std::stoll(s.substr(epos + 1));
            mant = s.substr(0, epos);
        }
        auto dot = mant.find('.');
        std::string digits = mant;
        long long frac = 0;
        if (dot != std::string::npos) {
            frac = static_cast<long long>(mant.size() - dot - 1);
            digits = mant.substr(0, dot) + mant.substr(dot + 1);
        }
        if (digits.empty() || digits == "-" || digits == "+") return std::nullopt;
        boost::multiprecision::cpp_int num(digits);
        Rational r(num, 1);
        long long shift = exp10 - frac;
        boost::multiprecision::cpp_int p10 = 1;
        for (long long i = 0; i < std::llabs(shift); ++i) p10 *= 10;
        if (shift >= 0)
            r *= Rational(p10, 1);
        else
            r /= Rational(p10, 1);
        return r;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

double to_double(const Rational& r) { return static_cast<double>(r); }

std::string rational_str(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

std::vector<ExactSimilarity> generated_self_similar_exact(const ExactSystem& S) {
    std::vector<ExactSimilarity> out;
    for (const auto& f : S.maps)
        for (size_t j = 0; j < f.slopes.size(); ++j)
            out.push_back({f.slopes[j], f.intercepts[j]});
    return out;
}

ExactInterval exact_image(const ExactPLMap& f, const ExactInterval& J) {
    Rational a = f.eval(J.lo), b = f.eval(J.hi);
    Rational lo = std::min(a, b), hi = std::max(a, b);
    for (const Rational& bp : f.breakpoints) {
        if (bp <= J.lo || bp >= J.hi) continue;
        Rational v = f.eval(bp);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {lo, hi};
}

ExactInterval exact_cylinder(const ExactSystem& S, std::span<const int> word, ExactInterval I) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) I = exact_image(S.maps[*it], I);
    return I;
}

}  // namespace cplifs
