#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "cplifs/orbit.hpp"
#include "cplifs/pressure.hpp"
#include "cplifs/system.hpp"

namespace cplifs {

enum PerturbMode : unsigned {
    perturb_translations = 1u,
    perturb_breakpoints = 2u,
    perturb_slopes = 4u,
};

struct PerturbationSpec {
    double delta = 0.0;
    unsigned modes = perturb_translations;
    std::uint64_t seed = 0;
    int trials = 10;
    // >= 0: no randomness, shift that map's offset by +delta (the deterministic
    // one-parameter family used by the discontinuity example)
    int forced_map = -1;
};

// Random system delta-close to F (per cplifs_distance), deterministic in
// (spec.seed, trial). Draw amplitudes shrink until the closeness clauses hold;
// the partition clause is enforced only while the perturbed partition keeps the
// base's cell count, since at a structural discontinuity no perturbation
// satisfies it. Throws InfeasiblePerturbation after 100 attempts.
Cplifs perturb(const Cplifs& F, const PerturbationSpec& spec, int trial = 0);

// Deterministic offset shift on selected maps (no RNG).
Cplifs shift_offsets(const Cplifs& F, const std::vector<double>& per_map_shift);

// Dimension via the Markov diagram when it closes within the caps, otherwise
// the direct (cylinder) method at depth n.
DimensionResult dimension_auto(const Cplifs& F, int r, int n, double tol,
                               const Budget& budget = {});

struct SemicontinuityRow {
    double s;
    double phi_base, phi_hat;
    double log_rho_orbit;  // log spectral radius of the base orbit-graph matrix
    bool lower_ok;         // phi_hat > phi_base - band
    bool upper_ok;         // phi_hat < max(phi_base, log_rho_orbit) + band
};

struct SemicontinuityReport {
    std::vector<SemicontinuityRow> rows;
    double band = 0.05;
    bool all_ok() const;
};

SemicontinuityReport semicontinuity_check(const Cplifs& F, const Cplifs& Fhat,
                                          const std::vector<double>& s_grid, int r, int n);

struct SweepRow {
    double delta;
    int trial;
    double s_base, s_hat, gap;
    bool overlap_flag;   // base system: exact overlap found at the probe depth
    bool periodic_flag;  // base system: flagged periodic inner critical orbit
    DimMethod method_base, method_hat;
};

struct SweepOptions {
    int diagram_level = 20;
    int direct_depth = 12;
    int overlap_depth = 6;
    int orbit_depth = 12;
    double tol = 1e-9;
    int threads = 1;
    Budget budget;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    bool truncated = false;  // a budget cap stopped the run; rows hold what completed
};

SweepResult continuity_sweep(const Cplifs& F, const std::vector<double>& deltas,
                             const PerturbationSpec& spec, const SweepOptions& opt = {});

// The paper's discontinuity example: f1 broken at 0 with slopes 2/5, 1/5 and
// f2 = x/3, against the translated f2 + eps.
Cplifs example51_base();
Cplifs example51_perturbed(double eps);

struct Example51Report {
    double eps;
    int n_max;
    struct FormulaRow {
        int n;
        long long words_checked;
        double max_rel_err;
    };
    std::vector<FormulaRow> formula_rows;  // float-path enumeration vs closed form
    bool exact_formula_ok;                 // rational-path enumeration agrees exactly
    double s_hat_moran;                    // root of (1/3)^s + (1/5)^s = 1
    double s_hat_direct;                   // direct dimension of the perturbed system
    double s_base_markov;                  // dimension of the base via its (closed) diagram
    double s_base_direct;
    struct GapRow {
        double eps;
        double s_hat;
        double gap;  // s_base_markov - s_hat
    };
    std::vector<GapRow> gap_grid;  // eps in {1e-2, 1e-3, 1e-4}
    double gap_spread;             // max - min over the grid
    bool gap_persists;             // every gap >= 0.05 and spread <= 2e-3

    std::string summary() const;
};

// Verifies the closed-form cylinder-length formula (with the occurrence count
// taken over the broken map, the convention enumeration confirms), checks the
// perturbed dimension against the Moran root, and measures the dimension gap
// across a grid of eps values. Throws FormulaMismatch when enumeration and
// closed form disagree beyond 1e-12 relative error.
Example51Report example_5_1(double eps, int n_max);

enum class LebesgueVerdict { plateau, decay, inconclusive };

const char* lebesgue_verdict_name(LebesgueVerdict v);

struct LebesgueRow {
    int trial;  // -1 for the unperturbed base row
    double s_hat;
    double est[3];  // union-length estimates at n, n+2, n+4
    LebesgueVerdict verdict;
};

struct LebesgueReport {
    int depth;
    std::vector<LebesgueRow> rows;
    bool truncated = false;
};

// Perturbation experiment behind the "dimension above one forces positive
// Lebesgue measure" theorem: plateauing union-length estimates are evidence of
// positive measure, geometric decay of a null attractor.
LebesgueReport lebesgue_positivity_experiment(const Cplifs& F, const PerturbationSpec& spec,
                                              int n, const Budget& budget = {});

}  // namespace cplifs
