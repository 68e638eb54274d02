#include "gdr/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gdr/error.hpp"

namespace gdr {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTol = 1e-12;
constexpr double kSymmetryTol = 1e-10;

double off_diagonal_norm(const Matrix& a) {
    double sum = 0.0;
    for (Eigen::Index q = 1; q < a.cols(); ++q) {
        for (Eigen::Index p = 0; p < q; ++p) sum += a(p, q) * a(p, q);
    }
    return std::sqrt(2.0 * sum);
}

void apply_sign_convention(Matrix& vectors) {
    for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
        Eigen::Index best = 0;
        for (Eigen::Index r = 1; r < vectors.rows(); ++r) {
            if (std::abs(vectors(r, c)) > std::abs(vectors(best, c))) best = r;
        }
        if (vectors(best, c) < 0.0) vectors.col(c) *= -1.0;
    }
}

} // namespace

Matrix covariance(const Matrix& data) {
    const Eigen::Index n = data.cols();
    if (n < 2) throw InvalidArgument("covariance: need at least 2 samples");
    const Vector mean = data.rowwise().mean();
    const Matrix centered = data.colwise() - mean;
    Matrix s = (centered * centered.transpose()) / static_cast<double>(n);
    return 0.5 * (s + s.transpose());
}

EigenDecomposition eig_sym(const Matrix& s) {
    if (s.rows() != s.cols()) throw InvalidArgument("eig_sym: matrix is not square");
    const Eigen::Index m = s.rows();
    const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
    if (m > 0 && (s - s.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol * scale) {
        throw InvalidArgument("eig_sym: matrix is not symmetric");
    }

    Matrix a = s;
    Matrix v = Matrix::Identity(m, m);
    const double target = kOffDiagonalTol * std::max(1.0, s.norm());

    int sweep = 0;
    while (off_diagonal_norm(a) > target) {
        if (++sweep > kMaxSweeps) {
            throw ConvergenceError("eig_sym: no convergence after 100 sweeps");
        }
        for (Eigen::Index p = 0; p < m - 1; ++p) {
            for (Eigen::Index q = p + 1; q < m; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = t * c;

                // A <- J^T A J with J the (p, q) rotation
                for (Eigen::Index k = 0; k < m; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - sn * akq;
                    a(k, q) = sn * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < m; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - sn * aqk;
                    a(q, k) = sn * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (Eigen::Index k = 0; k < m; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - sn * vkq;
                    v(k, q) = sn * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index x, Eigen::Index y) { return a(x, x) > a(y, y); });

    EigenDecomposition out{Vector(m), Matrix(m, m)};
    for (Eigen::Index k = 0; k < m; ++k) {
        out.values(k) = a(order[k], order[k]);
        out.vectors.col(k) = v.col(order[k]);
    }
    apply_sign_convention(out.vectors);
    return out;
}

Vector PcaModel::explained_variance_ratio() const {
    if (total_variance <= 0.0) return Vector::Zero(eigenvalues.size());
    return eigenvalues / total_variance;
}

PcaModel fit_pca(const Matrix& data, Eigen::Index components) {
    if (components < 1 || components > data.rows()) {
        throw InvalidArgument("fit_pca: need 1 <= components <= " +
                              std::to_string(data.rows()));
    }
    const Matrix s = covariance(data);
    auto eig = eig_sym(s);
    PcaModel model;
    model.basis = eig.vectors.leftCols(components);
    model.eigenvalues = eig.values.head(components).cwiseMax(0.0);
    model.total_variance = s.trace();
    model.source_dim = data.rows();
    return model;
}

PcaModel fit_pca3(const LabeledDataset& data) {
    if (data.dim() < 3) {
        throw InvalidArgument("fit_pca3: need at least 3 features, got " +
                              std::to_string(data.dim()));
    }
    return fit_pca(data.points(), 3);
}

Matrix project(const PcaModel& model, const Matrix& data) {
    if (data.rows() != model.source_dim) {
        throw InvalidArgument("project: data has " + std::to_string(data.rows()) +
                              " rows, model expects " + std::to_string(model.source_dim));
    }
    return model.basis.transpose() * data;
}

Matrix reconstruct(const PcaModel& model, const Matrix& x) {
    if (x.rows() != model.components()) {
        throw InvalidArgument("reconstruct: input has " + std::to_string(x.rows()) +
                              " rows, model has " + std::to_string(model.components()) +
                              " components");
    }
    return model.basis * x;
}

} // namespace gdr
