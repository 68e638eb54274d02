#pragma once

#include "gdr/dataset.hpp"

namespace gdr {

/// Population covariance (1/n) of the columns of data, exactly symmetric.
Matrix covariance(const Matrix& data);

struct EigenDecomposition {
    Vector values;  ///< descending
    Matrix vectors; ///< orthonormal columns, one per value
};

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
///
/// Sweeps visit the superdiagonal row-major, so the result is bitwise
/// reproducible. Each eigenvector is flipped so that its entry of largest
/// magnitude (first one on ties) is positive. Throws InvalidArgument for
/// non-square or non-symmetric input and ConvergenceError after 100 sweeps.
EigenDecomposition eig_sym(const Matrix& s);

/// Orthonormal basis of a PCA subspace ("space manifold" when 3-D).
struct PcaModel {
    Matrix basis;          ///< d x m, orthonormal columns
    Vector eigenvalues;    ///< m leading eigenvalues, non-increasing, >= 0
    double total_variance; ///< trace of the covariance
    Eigen::Index source_dim;

    Eigen::Index components() const { return basis.cols(); }
    /// eigenvalues / total_variance (zeros when the data has no variance).
    Vector explained_variance_ratio() const;
};

/// Leading `components` principal directions of the columns of data.
PcaModel fit_pca(const Matrix& data, Eigen::Index components);

/// 3-D PCA subspace. Requires d >= 3 and n >= 2.
PcaModel fit_pca3(const LabeledDataset& data);

/// X = U^T D. No mean subtraction.
Matrix project(const PcaModel& model, const Matrix& data);

/// Y = U X.
Matrix reconstruct(const PcaModel& model, const Matrix& x);

} // namespace gdr
