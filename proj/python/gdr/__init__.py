"""Gravitational dimensionality reduction.

Arrays follow the (n_samples, n_features) convention; labels are
non-negative integers covering 0..n_classes-1.
"""

from ._core import (
    ConvergenceError,
    InvalidArgument,
    IoError,
    ParseError,
    PcaModel,
    __version__,
    covariance,
    density_order,
    eig_sym,
    fit_pca3,
    intra_class_variance,
    knn_loo_accuracy,
    load_csv,
    lof_scores,
    make_blobs,
    render_svg,
    run_gdr,
    write_csv,
)

__all__ = [
    "ConvergenceError",
    "InvalidArgument",
    "IoError",
    "ParseError",
    "PcaModel",
    "__version__",
    "covariance",
    "density_order",
    "eig_sym",
    "fit_pca3",
    "intra_class_variance",
    "knn_loo_accuracy",
    "load_csv",
    "lof_scores",
    "make_blobs",
    "render_svg",
    "run_gdr",
    "write_csv",
]
