#include "cplifs/emit.hpp"

#include <sstream>

namespace cplifs {

namespace {

const char* side_suffix(Side s) {
    switch (s) {
        case Side::minus: return "-";
        case Side::plus: return "+";
        case Side::plain: return "";
    }
    return "";
}

}  // namespace

std::string word_str(const std::vector<int>& word) {
    std::string s;
    for (size_t i = 0; i < word.size(); ++i) {
        if (i) s += '.';
        s += std::to_string(word[i] + 1);
    }
    return s;
}

std::string csv_pressure_curve(const PressureCurve& c) {
    std::ostringstream os;
    os << "s,phi_n,n\n";
    for (size_t i = 0; i < c.s_grid.size(); ++i)
        os << fmt_num(c.s_grid[i]) << "," << fmt_num(c.phi_values[i]) << "," << c.depth << "\n";
    return os.str();
}

std::string csv_dimension(const DimensionResult& r) {
    std::ostringstream os;
    os << "method,value,bracket_lo,bracket_hi,depth\n";
    os << dim_method_name(r.method) << "," << fmt_num(r.value) << "," << fmt_num(r.bracket.lo)
       << "," << fmt_num(r.bracket.hi) << "," << r.depth << "\n";
    return os.str();
}

std::string dot_diagram(const MarkovDiagram& D) {
    std::ostringstream os;
    os << "digraph markov {\n";
    for (size_t i = 0; i < D.nodes.size(); ++i)
        os << "  n" << i << " [label=\"[" << fmt_num(D.nodes[i].iv.lo) << ","
           << fmt_num(D.nodes[i].iv.hi) << "]@" << D.nodes[i].level << "\"];\n";
    for (const auto& e : D.edges)
        os << "  n" << e.from << " -> n" << e.to << " [label=\"" << e.k + 1 << "." << e.j + 1
           << ":" << fmt_num(e.abs_slope) << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string csv_diagram_edges(const MarkovDiagram& D) {
    std::ostringstream os;
    os << "from_lo,from_hi,to_lo,to_hi,k,j,abs_slope\n";
    for (const auto& e : D.edges) {
        const Interval &a = D.nodes[e.from].iv, &b = D.nodes[e.to].iv;
        os << fmt_num(a.lo) << "," << fmt_num(a.hi) << "," << fmt_num(b.lo) << ","
           << fmt_num(b.hi) << "," << e.k + 1 << "," << e.j + 1 << "," << fmt_num(e.abs_slope)
           << "\n";
    }
    return os.str();
}

std::string dot_orbit_graph(const OrbitGraph& G) {
    std::ostringstream os;
    os << "digraph orbit {\n";
    for (size_t i = 0; i < G.nodes.size(); ++i)
        os << "  n" << i << " [label=\"" << fmt_num(G.nodes[i].value)
           << side_suffix(G.nodes[i].side) << "\"];\n";
    for (const auto& e : G.edges)
        os << "  n" << e.from << " -> n" << e.to << " [label=\"" << e.k + 1 << "." << e.j + 1
           << ":" << fmt_num(e.abs_slope) << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string csv_orbit_edges(const OrbitGraph& G) {
    std::ostringstream os;
    os << "from,from_side,to,to_side,k,j,abs_slope\n";
    for (const auto& e : G.edges) {
        const OrbitNode &a = G.nodes[e.from], &b = G.nodes[e.to];
        os << fmt_num(a.value) << "," << side_suffix(a.side) << "," << fmt_num(b.value) << ","
           << side_suffix(b.side) << "," << e.k + 1 << "," << e.j + 1 << ","
           << fmt_num(e.abs_slope) << "\n";
    }
    return os.str();
}

std::string csv_overlap_report(const OverlapReport& rep) {
    std::ostringstream os;
    os << "depth,word_i,word_j,slope_product,translation_gap,verdict\n";
    for (const auto& p : rep.pairs)
        os << p.depth << "," << word_str(p.word_i) << "," << word_str(p.word_j) << ","
           << fmt_num(p.slope_product) << "," << fmt_num(p.translation_gap) << ","
           << (p.verdict == OverlapVerdict::exact ? "exact" : "suspected") << "\n";
    return os.str();
}

std::string csv_esc(const OverlapReport& rep) {
    std::ostringstream os;
    os << "depth,min_distance,c_estimate,colliding_pairs\n";
    for (size_t i = 0; i < rep.esc_min_distances.size(); ++i)
        os << i + 1 << "," << fmt_num(rep.esc_min_distances[i]) << ","
           << fmt_num(rep.c_estimates[i]) << "," << rep.pair_counts[i] << "\n";
    return os.str();
}

std::string csv_sweep(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "delta,trial,s_base,s_hat,gap,overlap_flag,periodic_flag,method_base,method_hat\n";
    for (const auto& r : rows)
        os << fmt_num(r.delta) << "," << r.trial << "," << fmt_num(r.s_base) << ","
           << fmt_num(r.s_hat) << "," << fmt_num(r.gap) << "," << (r.overlap_flag ? 1 : 0) << ","
           << (r.periodic_flag ? 1 : 0) << "," << dim_method_name(r.method_base) << ","
           << dim_method_name(r.method_hat) << "\n";
    return os.str();
}

std::string csv_semicontinuity(const SemicontinuityReport& rep) {
    std::ostringstream os;
    os << "s,phi_base,phi_hat,log_rho_orbit,lower_ok,upper_ok\n";
    for (const auto& r : rep.rows)
        os << fmt_num(r.s) << "," << fmt_num(r.phi_base) << "," << fmt_num(r.phi_hat) << ","
           << fmt_num(r.log_rho_orbit) << "," << (r.lower_ok ? 1 : 0) << ","
           << (r.upper_ok ? 1 : 0) << "\n";
    return os.str();
}

std::string csv_example51(const Example51Report& rep) {
    std::ostringstream os;
    os << "n,word_count_checked,max_rel_err\n";
    for (const auto& r : rep.formula_rows)
        os << r.n << "," << r.words_checked << "," << fmt_num(r.max_rel_err) << "\n";
    return os.str();
}

std::string csv_lebesgue(const LebesgueReport& rep, double delta) {
    std::ostringstream os;
    os << "trial,delta,s_hat,est_n,est_n2,est_n4,verdict\n";
    for (const auto& r : rep.rows)
        os << r.trial << "," << fmt_num(r.trial < 0 ? 0.0 : delta) << "," << fmt_num(r.s_hat)
           << "," << fmt_num(r.est[0]) << "," << fmt_num(r.est[1]) << "," << fmt_num(r.est[2])
           << "," << lebesgue_verdict_name(r.verdict) << "\n";
    return os.str();
}

}  // namespace cplifs
