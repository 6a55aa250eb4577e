#pragma once
#include <vector>

#include "cplifs/interval.hpp"

namespace cplifs {

// One continuous piecewise linear contraction of the line.
// Branch i (0-based) is the affine piece slopes[i]*x + intercepts[i] on the
// interval between breakpoints[i-1] and breakpoints[i] (half-lines at the ends).
// Only the offset f(0) is stored as input; intercepts follow from continuity.
struct PLMap {
    std::vector<double> breakpoints;  // strictly increasing, may be empty
    std::vector<double> slopes;       // breakpoints.size() + 1 entries, in (-1,1)\{0}
    double offset = 0.0;              // f(0)

    std::vector<double> intercepts;   // derived; see finalize()

    int branch_count() const { return static_cast<int>(slopes.size()); }

    // Index of the branch whose half-open piece contains x; at a breakpoint the
    // two adjacent branches agree, so the choice is immaterial for eval().
    int branch_of(double x) const;

    double eval(double x) const;

    // Exact image of a closed interval: hull of the endpoint images and the
    // images of interior breakpoints.
    Interval image(const Interval& J) const;

    // Fixed point of the map as a global contraction.
    double fixed_point() const;

    void finalize();  // compute intercepts from offset + continuity
};

}  // namespace cplifs
