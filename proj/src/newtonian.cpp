#include "gdr/newtonian.hpp"

#include <cassert>
#include <cmath>

#include "gdr/error.hpp"

namespace gdr {

void StepGuards::validate() const {
    if (!(r_min > 0.0)) throw InvalidArgument("guards: r_min must be positive");
    if (!(step_scale > 0.0)) throw InvalidArgument("guards: step_scale must be positive");
}

StepGuards stabilized_guards(Eigen::Index n, double r_min) {
    StepGuards g;
    g.r_min = r_min;
    g.per_pair_cap = true;
    g.step_scale = n > 1 ? 1.0 / static_cast<double>(n - 1) : 1.0;
    return g;
}

double pair_distance(const Eigen::Ref<const Vector>& xi, const Eigen::Ref<const Vector>& xj) {
    if (xi.size() != xj.size()) throw InvalidArgument("pair_distance: dimension mismatch");
    return (xi - xj).norm();
}

Vector pair_move(const Eigen::Ref<const Vector>& xi, const Eigen::Ref<const Vector>& xj,
                 const StepGuards& guards) {
    const double r = pair_distance(xi, xj);
    if (r < guards.r_min) return Vector::Zero(xi.size());
    Vector v = (xi - xj) / r;
    assert(std::abs(v.norm() - 1.0) < 1e-9);
    if (guards.per_pair_cap && 1.0 > r) v *= r;
    return v;
}

void newtonian_pass(Matrix& points, const StepGuards& guards) {
    guards.validate();
    const Eigen::Index n = points.cols();
    Vector delta(points.rows());
    for (Eigen::Index j = n - 1; j >= 0; --j) {
        delta.setZero();
        for (Eigen::Index i = 0; i < n; ++i) {
            if (i == j) continue;
            delta += pair_move(points.col(i), points.col(j), guards);
        }
        points.col(j) += guards.step_scale * delta;
    }
}

ClassBundle newtonian_pass(ClassBundle bundle, const StepGuards& guards) {
    newtonian_pass(bundle.points, guards);
    return bundle;
}

} // namespace gdr
