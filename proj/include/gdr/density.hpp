#pragma once

#include <vector>

#include "gdr/dataset.hpp"

namespace gdr {

/// One class's points in processing order, densest first.
struct ClassBundle {
    Matrix points;                         ///< columns in sorted order
    std::vector<Eigen::Index> permutation; ///< sorted position -> original column
    int class_id = 0;
};

struct Neighborhood {
    double k_distance = 0.0;
    std::vector<Eigen::Index> indices; ///< ascending; includes distance ties
};

/// k-distance neighborhood of column j among the other columns.
Neighborhood k_neighborhood(const Matrix& points, Eigen::Index j, int k);

/// max(k_distance(o), |x_p - x_o|).
double reachability_distance(const Matrix& points, Eigen::Index p, Eigen::Index o, int k);

/// Local outlier factor of every column. Larger means sparser.
///
/// Points whose mean reachability distance is zero (duplicates) get an
/// infinite local reachability density and a score one below the smallest
/// finite score, so they sort as the densest.
std::vector<double> lof_scores(const Matrix& points, int k);

/// LOF neighborhood size for a class of n points: min(requested, n - 1).
int effective_lof_k(Eigen::Index n, int requested);

/// Reorders the columns by ascending LOF (ties by original index).
///
/// Falls back to ascending mean distance to the other points when the class
/// is too small for a k-neighborhood, and to the identity for one point.
ClassBundle sort_by_density(const Matrix& points, int k, int class_id = 0);

/// Columns of bundle.points put back in their original order.
Matrix unsort(const ClassBundle& bundle);

} // namespace gdr
