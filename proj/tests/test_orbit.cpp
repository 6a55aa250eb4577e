#include <doctest.h>

#include <cmath>

#include "cplifs/lab.hpp"
#include "cplifs/orbit.hpp"
#include "ref_systems.hpp"

using namespace cplifs;

namespace {

bool has_value_edge(const OrbitGraph& G, double from, double to, int k, int j) {
    for (const auto& e : G.edges)
        if (approx_eq(G.nodes[e.from].value, from) && approx_eq(G.nodes[e.to].value, to) &&
            e.k == k && e.j == j)
            return true;
    return false;
}

}  // namespace

TEST_CASE("orbit graph of the Cantor system") {
    Cplifs F = refsys::cantor();
    OrbitGraph G = build_orbit_graph(F, monotonicity_partition(F), 3);
    CHECK(has_value_edge(G, 0.0, 0.0, 0, 0));            // self-loop at 0 via branch (1,1)
    CHECK(has_value_edge(G, 1.0, 1.0, 1, 0));            // self-loop at 1 via (2,1)
    CHECK(has_value_edge(G, 1.0 / 3, 1.0, 0, 0));        // 1/3 -> 1
    CHECK(has_value_edge(G, 2.0 / 3, 0.0, 1, 0));        // 2/3 -> 0
    // the supporting-interval ends stay plain; the inner cell endpoints are
    // themselves in the doubled set, so each carries two one-sided copies
    CHECK(G.nodes.size() == 6);
    for (const auto& n : G.nodes) {
        if (approx_eq(n.value, 0.0) || approx_eq(n.value, 1.0))
            CHECK(n.side == Side::plain);
        else
            CHECK(n.side != Side::plain);
    }
}

TEST_CASE("orbit graph of the full-interval system") {
    Cplifs F = refsys::full_interval();
    OrbitGraph G = build_orbit_graph(F, monotonicity_partition(F), 2);
    CHECK(has_value_edge(G, 0.5, 1.0, 0, 0));
    CHECK(has_value_edge(G, 0.5, 0.0, 1, 0));
    CHECK(has_value_edge(G, 0.0, 0.0, 0, 0));
    CHECK(has_value_edge(G, 1.0, 1.0, 1, 0));
    // 1/2 is a cell endpoint, hence doubled; each side carries one branch
    int sided = 0;
    for (const auto& n : G.nodes)
        if (approx_eq(n.value, 0.5)) {
            CHECK(n.side != Side::plain);
            ++sided;
        }
    CHECK(sided == 2);
}

TEST_CASE("orbit matrix radii") {
    Cplifs cantor = refsys::cantor();
    OrbitGraph G = build_orbit_graph(cantor, monotonicity_partition(cantor), 6);
    for (double s : {0.3, 0.7}) {
        double rho = spectral_radius(orbit_matrix(G).materialize(s));
        CHECK(rho == doctest::Approx(std::pow(3.0, -s)).epsilon(1e-9));
    }

    Cplifs full = refsys::full_interval();
    OrbitGraph Gf = build_orbit_graph(full, monotonicity_partition(full), 6);
    CHECK(spectral_radius(orbit_matrix(Gf).materialize(1.0)) ==
          doctest::Approx(0.5).epsilon(1e-9));

    // domination: orbit radius stays below the diagram radius on no-overlap systems
    for (const Cplifs& F : {refsys::cantor(), refsys::full_interval(), refsys::flip(),
                            refsys::twobranch()}) {
        Partition Z = monotonicity_partition(F);
        WeightedGraphMatrix MD = associated_matrix(grow_diagram(F, Z, 12));
        WeightedGraphMatrix MG = orbit_matrix(build_orbit_graph(F, Z, 12));
        for (double s : {0.25, 0.5, 0.75, 1.0})
            CHECK(spectral_radius(MG.materialize(s)) <=
                  spectral_radius(MD.materialize(s)) + 1e-9);
    }
}

TEST_CASE("exact overlap search") {
    // {x/2, x/2+1/2, x/2+1/4}: words (1,2) and (3,1) coincide at depth 2
    Cplifs T = make_cplifs({refsys::affine(0.5, 0.0), refsys::affine(0.5, 0.5),
                            refsys::affine(0.5, 0.25)},
                           [] {
                               auto ex = std::make_shared<ExactSystem>();
                               for (int k = 0; k < 3; ++k) {
                                   ExactPLMap e;
                                   e.slopes = {Rational(1, 2)};
                                   e.offset = Rational(k == 0 ? 0 : 1, k == 0 ? 1 : (k == 1 ? 2 : 4));
                                   e.finalize();
                                   ex->maps.push_back(e);
                               }
                               return ex;
                           }());
    OverlapReport rep = exact_overlap_search(similarity_system(T), 2);
    CHECK(rep.exact_mode);
    CHECK(rep.pair_counts[0] == 0);
    CHECK(rep.pair_counts[1] > 0);
    bool found = false;
    for (const auto& p : rep.pairs)
        if (p.depth == 2 && p.word_i == std::vector<int>{0, 1} &&
            p.word_j == std::vector<int>{2, 0}) {
            found = true;
            CHECK(p.verdict == OverlapVerdict::exact);
            CHECK(p.translation_gap == 0.0);
        }
    CHECK(found);

    // Example 5.1's generated system overlaps at depth 2: branches commute at 0
    OverlapReport ex = exact_overlap_search(similarity_system(example51_base()), 2);
    CHECK(ex.first_overlap_depth() == 2);
    for (const auto& p : ex.pairs) CHECK(p.verdict == OverlapVerdict::exact);

    // Cantor stays overlap-free to depth 6 but reports finite separations
    OverlapReport c = exact_overlap_search(similarity_system(refsys::cantor()), 6);
    CHECK_FALSE(c.any_overlap());
    CHECK(c.esc_min_distances[1] == doctest::Approx(2.0 / 9).epsilon(1e-12));
}

TEST_CASE("overlap propagation to longer words") {
    SimilaritySystem S = similarity_system(example51_base());
    OverlapReport rep = exact_overlap_search(S, 3, {}, 100000);
    // every depth-2 overlap pair extends by one letter to a depth-3 one
    for (const auto& p : rep.pairs) {
        if (p.depth != 2) continue;
        for (int w = 0; w < 3; ++w) {
            std::vector<int> wi = p.word_i, wj = p.word_j;
            wi.push_back(w);
            wj.push_back(w);
            auto compose = [&](const std::vector<int>& word) {
                double rho = 1.0, t = 0.0;
                for (int letter : word) {
                    t += rho * S.maps[letter].translation;
                    rho *= S.maps[letter].slope;
                }
                return std::pair(rho, t);
            };
            auto near = [](std::pair<double, double> a, std::pair<double, double> b) {
                return std::fabs(a.first - b.first) <= 1e-12 &&
                       std::fabs(a.second - b.second) <= 1e-12;
            };
            auto target = compose(wi);
            bool found = false;
            for (const auto& q : rep.pairs)
                if (q.depth == 3 && near(compose(q.word_i), target) &&
                    near(compose(q.word_j), target))
                    found = true;
            CHECK(found);
        }
    }
}

TEST_CASE("esc distances") {
    CHECK(esc_min_distance(similarity_system(refsys::cantor()), 2) ==
          doctest::Approx(2.0 / 9).epsilon(1e-12));
    CHECK(esc_min_distance(similarity_system(example51_base()), 2) == 0.0);

    // all slope products distinct at depth 1 -> infinite distance
    Cplifs distinct = make_cplifs({refsys::affine(0.3, 0.0), refsys::affine(0.4, 0.5)});
    CHECK(std::isinf(esc_min_distance(similarity_system(distinct), 1)));

    // iff-coupling with the overlap search in exact mode
    for (int n : {1, 2, 3}) {
        OverlapReport rep = exact_overlap_search(similarity_system(refsys::cantor()), n);
        CHECK((esc_min_distance(similarity_system(refsys::cantor()), n) == 0.0) ==
              (rep.pair_counts[n - 1] > 0));
    }
}

TEST_CASE("edge correctness re-verification") {
    for (const Cplifs& F : {refsys::cantor(), refsys::full_interval(), example51_base()}) {
        Partition Z = monotonicity_partition(F);
        OrbitGraph G = build_orbit_graph(F, Z, 8);
        for (const auto& e : G.edges) {
            const Branch* branch = nullptr;
            for (const Branch& b : Z.branches)
                if (b.k == e.k && b.j == e.j) branch = &b;
            REQUIRE(branch != nullptr);
            CHECK(approx_eq(branch->inverse(G.nodes[e.from].value), G.nodes[e.to].value));
        }
    }
}

TEST_CASE("commuting systems always overlap at depth 2") {
    // distinct slopes sharing the fixed point 0: compositions commute
    Cplifs F = make_cplifs({refsys::affine(0.5, 0.0), refsys::affine(0.25, 0.0)});
    OverlapReport rep = exact_overlap_search(similarity_system(F), 2);
    CHECK(rep.first_overlap_depth() == 2);
}

TEST_CASE("periodic critical orbit flags") {
    // Example 5.1: 0 is a crossing of the two branches of map 1 with a self-loop
    auto flags = periodic_critical_orbit_check(example51_base(), 6);
    REQUIRE(!flags.empty());
    CHECK(approx_eq(flags[0].value, 0.0));
    CHECK(flags[0].k == 0);
    CHECK(flags[0].cycle_length == 1);

    // no inner critical points at all
    CHECK(periodic_critical_orbit_check(refsys::cantor(), 6).empty());

    // 1/2 is inner but not a same-map branch meeting point
    CHECK(periodic_critical_orbit_check(refsys::full_interval(), 6).empty());
}
