#include <doctest.h>

#include <cmath>

#include "cplifs/errors.hpp"
#include "cplifs/lab.hpp"
#include "cplifs/pressure.hpp"
#include "ref_systems.hpp"

using namespace cplifs;

namespace {
const double log2_log3 = std::log(2.0) / std::log(3.0);
}

TEST_CASE("direct pressure anchors") {
    Cplifs full = refsys::full_interval();
    for (int n : {1, 4, 9}) CHECK(direct_pressure(full, 1.0, n) == doctest::Approx(0.0).epsilon(1e-11));

    Cplifs cantor = refsys::cantor();
    for (int n : {2, 6}) CHECK(direct_pressure(cantor, log2_log3, n) == doctest::Approx(0.0).epsilon(1e-10));

    // Example 5.1 at s=1, n=1: log(3/10 + 1/3)
    CHECK(direct_pressure(example51_base(), 1.0, 1) ==
          doctest::Approx(std::log(19.0 / 30)).epsilon(1e-12));

    // s = 0 counts words exactly
    for (const Cplifs& F : {cantor, example51_base()})
        CHECK(direct_pressure(F, 0.0, 7) == std::log(static_cast<double>(F.map_count())));

    CHECK_THROWS_AS(direct_pressure(cantor, 0.5, 60, Budget{1e5}), BudgetExceeded);
}

TEST_CASE("direct pressure is monotone in s") {
    for (const Cplifs& F : {refsys::cantor(), refsys::twobranch(), example51_base()}) {
        double prev = direct_pressure(F, 0.0, 8);
        for (double s : {0.2, 0.4, 0.7, 1.0, 1.3}) {
            double cur = direct_pressure(F, s, 8);
            CHECK(cur < prev);
            prev = cur;
        }
    }
}

TEST_CASE("moran dimension") {
    CHECK(moran_dimension({1.0 / 3, 1.0 / 3}) == doctest::Approx(log2_log3).epsilon(1e-11));
    CHECK(moran_dimension({0.5, 0.5}) == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(moran_dimension({1.0 / 3, 0.2}) == doctest::Approx(0.518370274122).epsilon(1e-9));
    CHECK_THROWS_AS(moran_dimension({}), EmptyList);
}

TEST_CASE("natural dimension, direct method") {
    CHECK(natural_dimension_direct(refsys::cantor(), 10, 1e-6).value ==
          doctest::Approx(log2_log3).epsilon(2e-6));
    CHECK(natural_dimension_direct(refsys::full_interval(), 10, 1e-6).value ==
          doctest::Approx(1.0).epsilon(2e-6));

    // oracle agreement on strongly separated systems, bisection-tolerance tight
    double tol = 1e-9;
    Cplifs sep = refsys::separated();
    CHECK(std::fabs(natural_dimension_direct(sep, 12, tol).value -
                    moran_dimension({1.0 / 3, 0.2})) < 2 * tol);
    for (std::uint64_t seed : {11u, 12u, 13u}) {
        Cplifs F = refsys::random_separated(seed);
        std::vector<double> ratios{std::fabs(F.maps[0].slopes[0]), std::fabs(F.maps[1].slopes[0])};
        CHECK(std::fabs(natural_dimension_direct(F, 12, tol).value - moran_dimension(ratios)) <
              2 * tol);
    }

    // the perturbed Example 5.1 system at n = 14 reproduces the Moran root
    DimensionResult r = natural_dimension_direct(example51_perturbed(0.01), 14, 1e-9);
    CHECK(r.value == doctest::Approx(0.5185).epsilon(0.004));
    CHECK(std::fabs(r.value - moran_dimension({1.0 / 3, 0.2})) < 2e-3);
    CHECK(r.bracket.lo <= r.value);
    CHECK(r.bracket.hi >= r.value);
    CHECK(r.bracket.length() <= 1e-9);
}

TEST_CASE("box counting") {
    CHECK(box_counting_estimate({{0.0, 1.0}}, {1.0 / 4, 1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64}) ==
          doctest::Approx(1.0).epsilon(0.05));

    auto cover = attractor_cover(refsys::cantor(), 10);
    std::vector<double> deltas;
    for (int k = 2; k <= 8; ++k) deltas.push_back(std::pow(3.0, -k));
    CHECK(box_counting_estimate(cover, deltas) == doctest::Approx(log2_log3).epsilon(0.08));

    CHECK(box_counting_estimate({{0.0, 0.0}}, {0.1, 0.01, 0.001}) == 0.0);

    // same positive count at every scale carries no scaling signal
    CHECK_THROWS_AS(box_counting_estimate({{0.0, 0.0}, {10.0, 10.0}}, {0.1, 0.01, 0.001}),
                    DegenerateFit);

    // separated reference systems sit within 0.05 of min(1, s)
    CHECK(box_counting_estimate(attractor_cover(refsys::full_interval(), 10), deltas) ==
          doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("lebesgue upper estimate") {
    Cplifs full = refsys::full_interval();
    for (int n : {0, 4, 10})
        CHECK(lebesgue_upper_estimate(full, n) == doctest::Approx(1.0).epsilon(1e-9));

    Cplifs cantor = refsys::cantor();
    CHECK(lebesgue_upper_estimate(cantor, 0) ==
          doctest::Approx(cantor.support.length()).epsilon(1e-12));
    double prev = 2.0;
    for (int n : {1, 2, 5, 8}) {
        double est = lebesgue_upper_estimate(cantor, n);
        CHECK(est == doctest::Approx(std::pow(2.0 / 3, n)).epsilon(1e-9));
        CHECK(est <= prev + 1e-12);
        prev = est;
    }

    // Example 5.1, n=1: |[-1/5,1/10] union [-1/6,1/6]| = 11/30
    CHECK(lebesgue_upper_estimate(example51_base(), 1) ==
          doctest::Approx(11.0 / 30).epsilon(1e-12));
}

TEST_CASE("pressure curve emission values") {
    PressureCurve c = pressure_curve(refsys::cantor(), {0.0, 0.5, 1.0}, 6);
    REQUIRE(c.phi_values.size() == 3);
    CHECK(c.phi_values[0] == doctest::Approx(std::log(2.0)));
    CHECK(c.phi_values[1] > 0.0);
    CHECK(c.phi_values[2] < 0.0);
}
