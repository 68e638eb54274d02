#pragma once

#include "gdr/density.hpp"

namespace gdr {

/// Numerical guards around the unit-mass gravitation step.
///
/// Defaults reproduce the plain algorithm: no cap, unit step scale.
struct StepGuards {
    double r_min = 1e-6;       ///< pairs closer than this exert no pull
    bool per_pair_cap = false; ///< never move a point past its attractor
    double step_scale = 1.0;   ///< multiplies each point's accumulated move

    void validate() const;
};

/// Guards for the stabilized mode of a class with n points:
/// per-pair cap on and step scale 1/(n-1).
StepGuards stabilized_guards(Eigen::Index n, double r_min = 1e-6);

/// Euclidean distance between two points.
double pair_distance(const Eigen::Ref<const Vector>& xi, const Eigen::Ref<const Vector>& xj);

/// Pull of x_i on x_j: (x_i - x_j) / r_ij, a unit vector, or zero below r_min.
Vector pair_move(const Eigen::Ref<const Vector>& xi, const Eigen::Ref<const Vector>& xj,
                 const StepGuards& guards);

/// One pass over the columns, last to first. Each point accumulates the
/// pull of every other point at its current position and then moves, so
/// points moved earlier in the pass already act from their new place.
void newtonian_pass(Matrix& points, const StepGuards& guards);

ClassBundle newtonian_pass(ClassBundle bundle, const StepGuards& guards);

} // namespace gdr
