#include <doctest.h>

#include <cmath>

#include "cplifs/errors.hpp"
#include "cplifs/lab.hpp"
#include "ref_systems.hpp"

using namespace cplifs;

TEST_CASE("perturb determinism and closeness guarantee") {
    Cplifs F = refsys::cantor();
    PerturbationSpec spec{1e-3, perturb_translations, 42, 1};
    Cplifs A = perturb(F, spec, 0);
    Cplifs B = perturb(F, spec, 0);
    for (int k = 0; k < 2; ++k) CHECK(A.maps[k].offset == B.maps[k].offset);
    CHECK(A.maps[1].offset != F.maps[1].offset);

    // delta = 0 is the identity
    PerturbationSpec zero{0.0, perturb_translations, 42, 1};
    Cplifs Z = perturb(F, zero, 0);
    CHECK(Z.maps[1].offset == F.maps[1].offset);

    // closeness bound over all modes and many draws
    Cplifs tb = refsys::twobranch();
    for (unsigned modes : {unsigned(perturb_translations), unsigned(perturb_breakpoints),
                           unsigned(perturb_slopes),
                           perturb_translations | perturb_breakpoints | perturb_slopes}) {
        for (int trial = 0; trial < 25; ++trial) {
            PerturbationSpec s{1e-3, modes, 7, 1};
            Cplifs G = perturb(tb, s, trial);
            CHECK(cplifs_distance(tb, G).infimal_epsilon <= 1e-3 + 1e-15);
        }
    }

    // breakpoint mode never changes breakpoint counts
    PerturbationSpec bp{1e-4, perturb_breakpoints, 9, 1};
    Cplifs G = perturb(tb, bp, 3);
    CHECK(G.maps[0].breakpoints.size() == tb.maps[0].breakpoints.size());
}

TEST_CASE("dimension_auto picks the diagram when it closes") {
    DimensionResult r = dimension_auto(refsys::cantor(), 10, 12, 1e-9);
    CHECK(r.method == DimMethod::markov);
    r = dimension_auto(refsys::open7(), 6, 10, 1e-6);
    CHECK(r.method == DimMethod::direct);
    CHECK(r.value == doctest::Approx(std::log(2.0) / std::log(10.0 / 7)).epsilon(0.02));
}

TEST_CASE("semicontinuity check") {
    Cplifs F = refsys::cantor();
    std::vector<double> grid{0.3, 0.5, 0.63, 0.8};

    // identical systems satisfy both inequalities with the band to spare
    SemicontinuityReport self = semicontinuity_check(F, F, grid, 10, 10);
    CHECK(self.all_ok());

    // small translation perturbation of a separated pair
    PerturbationSpec spec{1e-4, perturb_translations, 5, 1};
    SemicontinuityReport rep = semicontinuity_check(F, perturb(F, spec, 0), grid, 10, 10);
    CHECK(rep.all_ok());

    // Example 5.1 against its paper perturbation: the one-sided upper bound
    // holds because the orbit-graph radius captures the 0-orbit
    SemicontinuityReport ex = semicontinuity_check(example51_base(), example51_perturbed(1e-3),
                                                   {0.55, 0.6, 0.65, 0.69}, 10, 12);
    for (const auto& row : ex.rows) CHECK(row.upper_ok);
}

TEST_CASE("continuity sweep on a separated base") {
    Cplifs F = refsys::cantor();
    PerturbationSpec spec{0.0, perturb_translations, 11, 4};
    SweepResult res = continuity_sweep(F, {1e-3, 1e-5}, spec);
    REQUIRE(res.rows.size() == 8);
    CHECK_FALSE(res.truncated);
    for (const auto& row : res.rows) {
        CHECK(row.gap < 0.05);
        CHECK_FALSE(row.overlap_flag);
        CHECK_FALSE(row.periodic_flag);
        CHECK(row.method_base == DimMethod::markov);
    }

    // delta = 0 rows have zero gap
    SweepResult zero = continuity_sweep(F, {0.0}, spec);
    for (const auto& row : zero.rows) CHECK(row.gap == 0.0);

    // deterministic across thread counts
    SweepOptions par;
    par.threads = 4;
    SweepResult res4 = continuity_sweep(F, {1e-3, 1e-5}, spec, par);
    REQUIRE(res4.rows.size() == res.rows.size());
    for (size_t i = 0; i < res.rows.size(); ++i) {
        CHECK(res4.rows[i].s_hat == res.rows[i].s_hat);
        CHECK(res4.rows[i].trial == res.rows[i].trial);
    }
}

TEST_CASE("example 5.1 sweep shows the persistent gap with its flags") {
    Cplifs F = example51_base();
    PerturbationSpec spec{0.0, perturb_translations, 3, 2};
    spec.forced_map = 1;  // the deterministic +delta family on the affine map
    SweepOptions opt;
    opt.direct_depth = 14;
    SweepResult res = continuity_sweep(F, {1e-2, 1e-3}, spec, opt);
    REQUIRE(res.rows.size() == 4);
    for (const auto& row : res.rows) {
        CHECK(row.overlap_flag);
        CHECK(row.periodic_flag);
        CHECK(row.gap >= 0.05);
    }
}

TEST_CASE("example 5.1 report") {
    Example51Report rep = example_5_1(1e-3, 10);
    CHECK(rep.exact_formula_ok);
    for (const auto& row : rep.formula_rows) {
        CHECK(row.max_rel_err <= 1e-12);
        CHECK(row.words_checked == (1LL << row.n));
    }
    CHECK(rep.s_hat_moran == doctest::Approx(0.518370274122).epsilon(1e-9));
    CHECK(std::fabs(rep.s_hat_direct - rep.s_hat_moran) <= 2e-3);
    CHECK(rep.s_base_markov == doctest::Approx(0.689982629247).epsilon(1e-7));
    CHECK(rep.gap_persists);
    CHECK(rep.gap_spread <= 2e-3);
    for (const auto& g : rep.gap_grid) CHECK(g.gap > 0.15);
    CHECK(rep.summary().find("GAP-PERSISTS") != std::string::npos);

    CHECK_THROWS_AS(example_5_1(0.5, 5), Error);
}

TEST_CASE("lebesgue experiment") {
    // dimension above one, attractor the whole interval: estimates stay at 1
    Cplifs o7 = refsys::open7();
    PerturbationSpec spec{1e-4, perturb_translations, 13, 2};
    LebesgueReport rep = lebesgue_positivity_experiment(o7, spec, 8);
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.rows[0].s_hat == doctest::Approx(1.9434).epsilon(1e-2));
    CHECK(rep.rows[0].est[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep.rows[0].verdict == LebesgueVerdict::plateau);

    // Cantor decays geometrically: (2/3)^n on the nose
    LebesgueReport c = lebesgue_positivity_experiment(refsys::cantor(), {0.0, 1, 1, 0}, 6);
    CHECK(c.rows[0].est[0] == doctest::Approx(std::pow(2.0 / 3, 6)).epsilon(1e-10));
    CHECK(c.rows[0].est[2] == doctest::Approx(std::pow(2.0 / 3, 10)).epsilon(1e-10));
    CHECK(c.rows[0].verdict == LebesgueVerdict::decay);

    // Example 5.1: singleton attractor, estimates collapse to zero
    LebesgueReport ex = lebesgue_positivity_experiment(example51_base(), {0.0, 1, 5, 0}, 10);
    CHECK(ex.rows[0].est[2] < 1e-3);
    CHECK(ex.rows[0].verdict == LebesgueVerdict::decay);
}
