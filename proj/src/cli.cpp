#include "cplifs/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cplifs/config.hpp"
#include "cplifs/emit.hpp"
#include "cplifs/errors.hpp"
#include "cplifs/exact.hpp"
#include "cplifs/lab.hpp"
#include "cplifs/markov.hpp"
#include "cplifs/orbit.hpp"
#include "cplifs/pressure.hpp"

namespace cplifs {

namespace {

constexpr const char* version_string = "cplifs 1.0.0 (config-v1, csv-v1, dot-v1)";

struct Out {
    std::string path;  // empty -> stdout

    void write(const std::string& content, bool truncated = false) const {
        std::string body = content;
        if (truncated) body += "#truncated\n";
        if (path.empty()) {
            std::cout << body;
        } else {
            std::ofstream f(path, std::ios::binary);
            if (!f) throw Error("cannot open output file " + path);
            f << body;
        }
    }
};

std::vector<double> parse_grid(const std::string& text) {
    // "a:b:steps" -> inclusive linear grid
    double a, b;
    int steps;
    char c1, c2;
    std::istringstream is(text);
    if (!(is >> a >> c1 >> b >> c2 >> steps) || c1 != ':' || c2 != ':' || steps < 1)
        throw std::invalid_argument("bad grid \"" + text + "\", expected a:b:steps");
    std::vector<double> g;
    for (int i = 0; i < steps; ++i)
        g.push_back(steps == 1 ? a : a + (b - a) * i / (steps - 1));
    return g;
}

unsigned parse_modes(const std::string& text) {
    unsigned m = 0;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok == "translations") m |= perturb_translations;
        else if (tok == "breakpoints") m |= perturb_breakpoints;
        else if (tok == "slopes") m |= perturb_slopes;
        else throw std::invalid_argument("unknown perturbation mode \"" + tok + "\"");
    }
    if (m == 0) throw std::invalid_argument("empty perturbation mode set");
    return m;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (std::getline(is, tok, ',')) out.push_back(tok);
    return out;
}

// Re-ingests a diagram edge CSV and re-derives every edge from the successor
// relation; returns the number of rows that no branch/cell pair reproduces.
int verify_diagram_csv(const Cplifs& F, const std::string& csv_path) {
    std::ifstream in(csv_path);
    if (!in) throw std::invalid_argument("cannot open " + csv_path);
    Partition Z = monotonicity_partition(F);
    std::string line;
    std::getline(in, line);  // header
    int violations = 0, rows = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto f = split_csv_line(line);
        if (f.size() != 7) {
            ++violations;
            continue;
        }
        ++rows;
        Interval from{std::stod(f[0]), std::stod(f[1])};
        Interval to{std::stod(f[2]), std::stod(f[3])};
        int k = std::stoi(f[4]) - 1, j = std::stoi(f[5]) - 1;
        bool ok = false;
        for (const Successor& s : successors(from, Z))
            if (s.k == k && s.j == j && approx_eq(s.interval.lo, to.lo) &&
                approx_eq(s.interval.hi, to.hi))
                ok = true;
        if (!ok) ++violations;
    }
    std::cerr << "verified " << rows << " edges, " << violations << " violations\n";
    return violations;
}

int dispatch(int argc, const char* const* argv) {
    CLI::App app{"natural dimension of continuous piecewise linear IFS"};
    app.set_version_flag("--version", version_string);
    app.require_subcommand(1);

    std::string config, out_path, out_format = "text";
    double budget_terms = 1e8;

    auto add_common = [&](CLI::App* sub, bool needs_config = true) {
        if (needs_config) sub->add_option("config", config, "CPLIFS config (JSON)")->required();
        sub->add_option("-o,--output", out_path, "write data to file instead of stdout");
        sub->add_option("--budget", budget_terms, "enumeration budget in terms");
    };

    // validate
    auto* c_validate = app.add_subcommand("validate", "check a config against the constraints");
    add_common(c_validate);

    // dim
    std::string method = "markov";
    int depth = 12, level = 20;
    double tol = 1e-6;
    auto* c_dim = app.add_subcommand("dim", "natural dimension");
    add_common(c_dim);
    c_dim->add_option("--method", method)->check(CLI::IsMember({"direct", "markov", "moran", "boxcount"}));
    c_dim->add_option("-n,--depth", depth, "cylinder depth for direct/boxcount");
    c_dim->add_option("-r,--max-level", level, "diagram level cap for markov");
    c_dim->add_option("--tol", tol, "bisection tolerance");
    c_dim->add_option("--format", out_format)->check(CLI::IsMember({"text", "csv"}));

    // pressure
    std::string s_grid_text = "0.1:1.5:15";
    auto* c_pressure = app.add_subcommand("pressure", "finite-depth pressure curve");
    add_common(c_pressure);
    c_pressure->add_option("--s-grid", s_grid_text, "a:b:steps");
    c_pressure->add_option("-n,--depth", depth);

    // diagram
    std::string export_format = "dot", verify_path;
    int max_nodes = default_max_nodes;
    auto* c_diagram = app.add_subcommand("diagram", "Markov diagram export");
    add_common(c_diagram);
    c_diagram->add_option("--export", export_format)->check(CLI::IsMember({"dot", "csv"}));
    c_diagram->add_option("-r,--max-level", level);
    c_diagram->add_option("--max-nodes", max_nodes);
    c_diagram->add_option("--verify", verify_path, "re-check an exported edge CSV");

    // orbit
    int orbit_depth = default_orbit_depth;
    auto* c_orbit = app.add_subcommand("orbit", "orbit graph of critical points");
    add_common(c_orbit);
    c_orbit->add_option("-d,--depth", orbit_depth);
    c_orbit->add_option("--export", export_format)->check(CLI::IsMember({"dot", "csv"}));

    // overlap
    int overlap_depth = 6, max_pairs = 1000;
    bool require_exact = false;
    auto* c_overlap = app.add_subcommand("overlap", "exact-overlap search on the generated system");
    add_common(c_overlap);
    c_overlap->add_option("-n,--depth", overlap_depth);
    c_overlap->add_option("--max-pairs", max_pairs);
    c_overlap->add_flag("--exact-rational", require_exact, "fail unless rational mode is available");

    // esc
    auto* c_esc = app.add_subcommand("esc", "exponential-separation distances");
    add_common(c_esc);
    c_esc->add_option("-n,--depth", overlap_depth);

    // sweep
    std::string deltas_text = "1e-3,1e-5", modes_text = "translations";
    std::uint64_t seed = 1;
    int trials = 10, threads = 1;
    auto* c_sweep = app.add_subcommand("sweep", "perturbation sweep of the dimension");
    add_common(c_sweep);
    c_sweep->add_option("--deltas", deltas_text, "comma-separated delta list");
    c_sweep->add_option("--trials", trials);
    c_sweep->add_option("--seed", seed);
    c_sweep->add_option("--modes", modes_text);
    c_sweep->add_option("-n,--depth", depth);
    c_sweep->add_option("-r,--max-level", level);
    c_sweep->add_option("--threads", threads, "parallel trials, deterministic merge");

    // example51
    double eps = 1e-3;
    int nmax = 12;
    auto* c_ex51 = app.add_subcommand("example51", "discontinuity example reproduction");
    add_common(c_ex51, false);
    c_ex51->add_option("--eps", eps);
    c_ex51->add_option("--nmax", nmax);

    // lebesgue
    double leb_delta = 1e-3;
    auto* c_lebesgue = app.add_subcommand("lebesgue", "attractor measure experiment");
    add_common(c_lebesgue);
    c_lebesgue->add_option("-n,--depth", depth);
    c_lebesgue->add_option("--delta", leb_delta);
    c_lebesgue->add_option("--trials", trials);
    c_lebesgue->add_option("--seed", seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help / --version
            std::cout << e.what() << "\n";
            return 0;
        }
        std::cerr << e.what() << "\n";
        return 2;
    }

    Out out{out_path};
    Budget budget{budget_terms};

    if (*c_validate) {
        Cplifs F = load_system(config);  // throws std::invalid_argument on violations
        std::cout << "valid: " << F.map_count() << " maps, supporting interval ["
                  << fmt_num(F.support.lo) << "," << fmt_num(F.support.hi) << "]"
                  << (F.has_exact() ? ", exact-rational mode available" : "") << "\n";
        for (int k = 0; k < F.map_count(); ++k) {
            std::cout << "map " << k + 1 << ": slopes";
            for (int j = 0; j < F.maps[k].branch_count(); ++j)
                std::cout << " " << (F.has_exact() ? rational_str(F.exact->maps[k].slopes[j])
                                                   : fmt_num(F.maps[k].slopes[j]));
            std::cout << ", offset "
                      << (F.has_exact() ? rational_str(F.exact->maps[k].offset)
                                        : fmt_num(F.maps[k].offset));
            if (!F.maps[k].breakpoints.empty()) {
                std::cout << ", breakpoints";
                for (size_t i = 0; i < F.maps[k].breakpoints.size(); ++i)
                    std::cout << " "
                              << (F.has_exact() ? rational_str(F.exact->maps[k].breakpoints[i])
                                                : fmt_num(F.maps[k].breakpoints[i]));
            }
            std::cout << "\n";
        }
        return 0;
    }
    if (*c_dim) {
        Cplifs F = load_system(config);
        DimensionResult r;
        if (method == "direct") {
            r = natural_dimension_direct(F, depth, tol, budget);
        } else if (method == "markov") {
            r = natural_dimension_markov(F, monotonicity_partition(F), level, tol);
        } else if (method == "moran") {
            std::vector<double> ratios;
            for (const auto& s : generated_self_similar(F)) ratios.push_back(std::fabs(s.slope));
            r = {moran_dimension(ratios), DimMethod::moran, {0, 0}, 0, ResultTag::exact_root};
        } else {  // boxcount
            auto cover = attractor_cover(F, depth, budget);
            std::vector<double> deltas;
            for (int j = 2; j <= 8; ++j)
                deltas.push_back(F.support.length() * std::pow(2.0, -j));
            r = {box_counting_estimate(cover, deltas), DimMethod::boxcount, {0, 0}, depth,
                 ResultTag::exact_root};
        }
        if (out_format == "csv")
            out.write(csv_dimension(r));
        else
            out.write(fmt_num(r.value) + "\n");
        if (r.tag == ResultTag::lower_bound) {
            std::cerr << "diagram did not close within caps; value is a lower bound\n";
            return 3;
        }
        return 0;
    }
    if (*c_pressure) {
        Cplifs F = load_system(config);
        try {
            out.write(csv_pressure_curve(pressure_curve(F, parse_grid(s_grid_text), depth, budget)));
            return 0;
        } catch (const BudgetExceeded& e) {
            std::cerr << e.what() << "\n";
            out.write("s,phi_n,n\n", true);
            return 3;
        }
    }
    if (*c_diagram) {
        Cplifs F = load_system(config);
        if (!verify_path.empty()) return verify_diagram_csv(F, verify_path) == 0 ? 0 : 4;
        MarkovDiagram D = grow_diagram(F, monotonicity_partition(F), level, max_nodes);
        std::string text = export_format == "dot" ? dot_diagram(D) : csv_diagram_edges(D);
        out.write(text, D.cap_reached);
        std::cerr << "diagram: " << D.nodes.size() << " nodes, " << D.edges.size() << " edges, "
                  << (D.closed ? "closed" : "truncated") << ", max level " << D.max_level << "\n";
        return D.cap_reached ? 3 : 0;
    }
    if (*c_orbit) {
        Cplifs F = load_system(config);
        OrbitGraph G = build_orbit_graph(F, monotonicity_partition(F), orbit_depth);
        std::string text = export_format == "dot" ? dot_orbit_graph(G) : csv_orbit_edges(G);
        out.write(text, G.cap_reached);
        std::cerr << "orbit graph: " << G.nodes.size() << " nodes, " << G.edges.size()
                  << " edges, depth " << G.depth << "\n";
        return G.cap_reached ? 3 : 0;
    }
    if (*c_overlap) {
        Cplifs F = load_system(config);
        SimilaritySystem S = similarity_system(F);
        if (require_exact && !S.exact_mode())
            throw std::invalid_argument("--exact-rational: config has non-rational inputs");
        try {
            OverlapReport rep = exact_overlap_search(S, overlap_depth, budget, max_pairs);
            out.write(csv_overlap_report(rep));
            std::cerr << (rep.any_overlap()
                              ? "overlaps found, first at depth " +
                                    std::to_string(rep.first_overlap_depth())
                              : "no overlaps to depth " + std::to_string(overlap_depth))
                      << (rep.exact_mode ? " (exact-rational mode)" : "") << "\n";
            return 0;
        } catch (const BudgetExceeded& e) {
            std::cerr << e.what() << "\n";
            out.write("depth,word_i,word_j,slope_product,translation_gap,verdict\n", true);
            return 3;
        }
    }
    if (*c_esc) {
        Cplifs F = load_system(config);
        try {
            OverlapReport rep = exact_overlap_search(similarity_system(F), overlap_depth, budget);
            out.write(csv_esc(rep));
            return 0;
        } catch (const BudgetExceeded& e) {
            std::cerr << e.what() << "\n";
            out.write("depth,min_distance,c_estimate,colliding_pairs\n", true);
            return 3;
        }
    }
    if (*c_sweep) {
        Cplifs F = load_system(config);
        std::vector<double> deltas;
        for (const std::string& tok : split_csv_line(deltas_text)) deltas.push_back(std::stod(tok));
        PerturbationSpec spec{0.0, parse_modes(modes_text), seed, trials};
        SweepOptions opt;
        opt.diagram_level = level;
        opt.direct_depth = depth;
        opt.threads = threads;
        opt.budget = budget;
        SweepResult res = continuity_sweep(F, deltas, spec, opt);
        out.write(csv_sweep(res.rows), res.truncated);
        return res.truncated ? 3 : 0;
    }
    if (*c_ex51) {
        Example51Report rep = example_5_1(eps, nmax);
        std::cout << rep.summary();
        if (!out_path.empty()) out.write(csv_example51(rep));
        return 0;
    }
    if (*c_lebesgue) {
        Cplifs F = load_system(config);
        PerturbationSpec spec{leb_delta, perturb_translations, seed, trials};
        LebesgueReport rep = lebesgue_positivity_experiment(F, spec, depth, budget);
        out.write(csv_lebesgue(rep, leb_delta), rep.truncated);
        return rep.truncated ? 3 : 0;
    }
    return 2;
}

}  // namespace

int cli_run(int argc, const char* const* argv) {
    try {
        return dispatch(argc, argv);
    } catch (const BudgetExceeded& e) {
        std::cerr << e.what() << "\n";
        std::cout << "#truncated\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}

}  // namespace cplifs
