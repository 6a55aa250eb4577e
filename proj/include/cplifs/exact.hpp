#pragma once
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cplifs/system.hpp"

namespace cplifs {

using Rational = boost::multiprecision::cpp_rational;

// Rational mirror of one map's parameters, kept alongside the double form so
// overlap detection can decide identity instead of near-coincidence.
struct ExactPLMap {
    std::vector<Rational> breakpoints;
    std::vector<Rational> slopes;
    Rational offset;
    std::vector<Rational> intercepts;

    void finalize();
    Rational eval(const Rational& x) const;
    int branch_of(const Rational& x) const;
};

struct ExactSystem {
    std::vector<ExactPLMap> maps;
};

struct ExactSimilarity {
    Rational slope;
    Rational translation;
};

struct ExactInterval {
    Rational lo, hi;
    Rational length() const { return hi - lo; }
};

// "p/q" or a decimal string -> exact rational. Returns nullopt on syntax error.
std::optional<Rational> parse_rational(const std::string& text);

double to_double(const Rational& r);
std::string rational_str(const Rational& r);

std::vector<ExactSimilarity> generated_self_similar_exact(const ExactSystem& S);

ExactInterval exact_image(const ExactPLMap& f, const ExactInterval& J);

// Composition applied right to left, exact arithmetic; word letters are 0-based
// map indices of the system.
ExactInterval exact_cylinder(const ExactSystem& S, std::span<const int> word, ExactInterval I);

}  // namespace cplifs
