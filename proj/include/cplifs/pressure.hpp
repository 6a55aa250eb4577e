#pragma once
#include <vector>

#include "cplifs/system.hpp"

namespace cplifs {

enum class DimMethod { direct, markov, moran, boxcount };

const char* dim_method_name(DimMethod m);

enum class ResultTag { exact_root, lower_bound };

struct DimensionResult {
    double value = 0.0;
    DimMethod method = DimMethod::direct;
    Interval bracket;  // final bisection bracket, width <= tol
    int depth = 0;     // enumeration depth n or diagram level r
    ResultTag tag = ResultTag::exact_root;
};

struct PressureCurve {
    std::vector<double> s_grid;
    std::vector<double> phi_values;  // nats
    int depth = 0;
};

// Finite-n natural pressure (1/n) log sum |I_w|^s over level-n cylinders.
// Zero-length cylinders contribute 0 for s > 0 and 1 for s = 0.
double direct_pressure(const Cplifs& F, double s, int n, const Budget& budget = {});

PressureCurve pressure_curve(const Cplifs& F, const std::vector<double>& s_grid, int n,
                             const Budget& budget = {});

// Root of the scale-normalized finite-n pressure (cylinder lengths measured
// relative to |I|). Same n -> infinity limit as direct_pressure's root, but the
// root is exact at every depth for self-similar separated systems instead of
// carrying an s/n * log|I| bias.
DimensionResult natural_dimension_direct(const Cplifs& F, int n, double tol,
                                         const Budget& budget = {});

// Unique s >= 0 with sum ratios[i]^s = 1, bisected to 1e-12.
double moran_dimension(std::vector<double> ratios);

// Least-squares slope of log N(delta) against log(1/delta), where N counts
// grid boxes of side delta meeting the cover.
double box_counting_estimate(const std::vector<Interval>& cover,
                             const std::vector<double>& deltas);

// Total length of the merged union of level-n cylinders; an upper bound for
// the Lebesgue measure of the attractor, non-increasing in n.
double lebesgue_upper_estimate(const Cplifs& F, int n, const Budget& budget = {});

}  // namespace cplifs
