#include "gdr/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gdr/error.hpp"

namespace gdr {

namespace {

Matrix pairwise_distances(const Matrix& points) {
    const Eigen::Index n = points.cols();
    Matrix dist = Matrix::Zero(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = a + 1; b < n; ++b) {
            const double d = (points.col(a) - points.col(b)).norm();
            dist(a, b) = d;
            dist(b, a) = d;
        }
    }
    return dist;
}

void check_k(Eigen::Index n, int k, const char* who) {
    if (k < 1 || k >= n) {
        throw InvalidArgument(std::string(who) + ": need 1 <= k < n (k=" +
                              std::to_string(k) + ", n=" + std::to_string(n) + ")");
    }
}

Neighborhood neighborhood_from(const Matrix& dist, Eigen::Index j, int k) {
    const Eigen::Index n = dist.rows();
    std::vector<Eigen::Index> others;
    others.reserve(static_cast<std::size_t>(n - 1));
    for (Eigen::Index i = 0; i < n; ++i) {
        if (i != j) others.push_back(i);
    }
    std::stable_sort(others.begin(), others.end(), [&](Eigen::Index a, Eigen::Index b) {
        return dist(j, a) < dist(j, b);
    });
    Neighborhood out;
    out.k_distance = dist(j, others[static_cast<std::size_t>(k - 1)]);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (i != j && dist(j, i) <= out.k_distance) out.indices.push_back(i);
    }
    return out;
}

std::vector<Eigen::Index> identity_order(Eigen::Index n) {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    return order;
}

std::vector<Eigen::Index> argsort(const std::vector<double>& scores) {
    auto order = identity_order(static_cast<Eigen::Index>(scores.size()));
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return scores[static_cast<std::size_t>(a)] < scores[static_cast<std::size_t>(b)];
    });
    return order;
}

} // namespace

Neighborhood k_neighborhood(const Matrix& points, Eigen::Index j, int k) {
    check_k(points.cols(), k, "k_neighborhood");
    if (j < 0 || j >= points.cols()) throw InvalidArgument("k_neighborhood: bad index");
    return neighborhood_from(pairwise_distances(points), j, k);
}

double reachability_distance(const Matrix& points, Eigen::Index p, Eigen::Index o, int k) {
    if (p == o) throw InvalidArgument("reachability_distance: p == o");
    const double kd = k_neighborhood(points, o, k).k_distance;
    return std::max(kd, (points.col(p) - points.col(o)).norm());
}

std::vector<double> lof_scores(const Matrix& points, int k) {
    const Eigen::Index n = points.cols();
    check_k(n, k, "lof_scores");
    const Matrix dist = pairwise_distances(points);

    std::vector<Neighborhood> hoods;
    hoods.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j) hoods.push_back(neighborhood_from(dist, j, k));

    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> lrd(static_cast<std::size_t>(n));
    for (Eigen::Index p = 0; p < n; ++p) {
        const auto& hood = hoods[static_cast<std::size_t>(p)];
        double sum = 0.0;
        for (Eigen::Index o : hood.indices) {
            sum += std::max(hoods[static_cast<std::size_t>(o)].k_distance, dist(p, o));
        }
        const double mean = sum / static_cast<double>(hood.indices.size());
        lrd[static_cast<std::size_t>(p)] = mean > 0.0 ? 1.0 / mean : inf;
    }

    std::vector<double> lof(static_cast<std::size_t>(n));
    double min_finite = inf;
    for (Eigen::Index p = 0; p < n; ++p) {
        const double own = lrd[static_cast<std::size_t>(p)];
        if (std::isinf(own)) continue;
        const auto& hood = hoods[static_cast<std::size_t>(p)];
        double sum = 0.0;
        for (Eigen::Index o : hood.indices) sum += lrd[static_cast<std::size_t>(o)] / own;
        const double score = sum / static_cast<double>(hood.indices.size());
        lof[static_cast<std::size_t>(p)] = score;
        if (std::isfinite(score)) min_finite = std::min(min_finite, score);
    }
    const double dense = std::isfinite(min_finite) ? min_finite - 1.0 : 0.0;
    for (Eigen::Index p = 0; p < n; ++p) {
        if (std::isinf(lrd[static_cast<std::size_t>(p)])) lof[static_cast<std::size_t>(p)] = dense;
    }
    return lof;
}

int effective_lof_k(Eigen::Index n, int requested) {
    if (requested < 1) throw InvalidArgument("lof k must be positive");
    return static_cast<int>(std::min<Eigen::Index>(requested, std::max<Eigen::Index>(n - 1, 0)));
}

ClassBundle sort_by_density(const Matrix& points, int k, int class_id) {
    const Eigen::Index n = points.cols();
    ClassBundle bundle;
    bundle.class_id = class_id;

    if (n <= 1) {
        bundle.permutation = identity_order(n);
    } else if (k >= 1 && n >= k + 1) {
        bundle.permutation = argsort(lof_scores(points, k));
    } else {
        const Matrix dist = pairwise_distances(points);
        std::vector<double> mean_dist(static_cast<std::size_t>(n));
        for (Eigen::Index j = 0; j < n; ++j) {
            mean_dist[static_cast<std::size_t>(j)] = dist.col(j).sum() / static_cast<double>(n - 1);
        }
        bundle.permutation = argsort(mean_dist);
    }

    bundle.points.resize(points.rows(), n);
    for (Eigen::Index s = 0; s < n; ++s) {
        bundle.points.col(s) = points.col(bundle.permutation[static_cast<std::size_t>(s)]);
    }
    return bundle;
}

Matrix unsort(const ClassBundle& bundle) {
    const Eigen::Index n = bundle.points.cols();
    if (static_cast<Eigen::Index>(bundle.permutation.size()) != n) {
        throw InvalidArgument("unsort: permutation size mismatch");
    }
    Matrix out(bundle.points.rows(), n);
    std::vector<bool> hit(static_cast<std::size_t>(n), false);
    for (Eigen::Index s = 0; s < n; ++s) {
        const Eigen::Index dst = bundle.permutation[static_cast<std::size_t>(s)];
        if (dst < 0 || dst >= n || hit[static_cast<std::size_t>(dst)]) {
            throw InvalidArgument("unsort: permutation is not a bijection");
        }
        hit[static_cast<std::size_t>(dst)] = true;
        out.col(dst) = bundle.points.col(s);
    }
    return out;
}

} // namespace gdr
