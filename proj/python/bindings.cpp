#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gdr/density.hpp"
#include "gdr/engine.hpp"
#include "gdr/error.hpp"
#include "gdr/pca.hpp"
#include "gdr/plot.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

// Python side uses the usual (n_samples, n_features) layout; the library
// stores points column-wise.
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

namespace {

gdr::LabeledDataset make_dataset(const Eigen::Ref<const gdr::Matrix>& x, std::vector<int> y) {
    return gdr::LabeledDataset(x.transpose(), std::move(y));
}

py::dict report_to_dict(const gdr::IterationReport& r) {
    return py::dict("iteration"_a = r.iteration, "per_class_variance"_a = r.per_class_variance,
                    "total_variance"_a = r.total_variance, "elapsed"_a = r.elapsed.count());
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Gravitational dimensionality reduction (C++ core)";
    m.attr("__version__") = "0.1.0";

    py::register_exception<gdr::InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<gdr::IoError>(m, "IoError", PyExc_OSError);
    py::register_exception<gdr::ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<gdr::ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

    m.def(
        "make_blobs",
        [](int n_classes, int per_class, int dim, double spread, double center_scale,
           std::uint64_t seed) {
            const auto data = gdr::make_blobs({n_classes, per_class, dim, spread, center_scale, seed});
            RowMatrix x = data.points().transpose();
            return py::make_tuple(std::move(x), data.labels());
        },
        "n_classes"_a = 10, "per_class"_a = 50, "dim"_a = 64, "spread"_a = 1.0,
        "center_scale"_a = 10.0, "seed"_a = 7, "Gaussian blobs; returns (X, y).");

    m.def(
        "load_csv",
        [](const std::string& path, const std::string& label_column) {
            const auto data = gdr::load_csv(path, label_column);
            RowMatrix x = data.points().transpose();
            return py::make_tuple(std::move(x), data.labels(), data.label_names());
        },
        "path"_a, "label_column"_a = "label", "Returns (X, y, label_names).");

    m.def(
        "write_csv",
        [](const std::string& path, const Eigen::Ref<const gdr::Matrix>& x, std::vector<int> y) {
            gdr::write_csv(make_dataset(x, std::move(y)), path);
        },
        "path"_a, "X"_a, "y"_a);

    m.def("covariance", [](const Eigen::Ref<const gdr::Matrix>& x) {
        return gdr::covariance(x.transpose());
    }, "X"_a, "Population covariance of the rows of X.");

    m.def("eig_sym", [](const gdr::Matrix& s) {
        auto e = gdr::eig_sym(s);
        return py::make_tuple(std::move(e.values), std::move(e.vectors));
    }, "S"_a, "Jacobi eigendecomposition; returns (values desc, vectors as columns).");

    py::class_<gdr::PcaModel>(m, "PcaModel")
        .def_readonly("basis", &gdr::PcaModel::basis)
        .def_readonly("eigenvalues", &gdr::PcaModel::eigenvalues)
        .def_readonly("total_variance", &gdr::PcaModel::total_variance)
        .def("explained_variance_ratio", &gdr::PcaModel::explained_variance_ratio)
        .def("project", [](const gdr::PcaModel& model, const Eigen::Ref<const gdr::Matrix>& x) {
            RowMatrix out = gdr::project(model, x.transpose()).transpose();
            return out;
        }, "X"_a)
        .def("reconstruct", [](const gdr::PcaModel& model, const Eigen::Ref<const gdr::Matrix>& z) {
            RowMatrix out = gdr::reconstruct(model, z.transpose()).transpose();
            return out;
        }, "Z"_a);

    m.def("fit_pca3", [](const Eigen::Ref<const gdr::Matrix>& x) {
        if (x.cols() < 3) throw gdr::InvalidArgument("fit_pca3: need at least 3 features");
        return gdr::fit_pca(x.transpose(), 3);
    }, "X"_a);

    m.def("lof_scores", [](const Eigen::Ref<const gdr::Matrix>& x, int k) {
        return gdr::lof_scores(x.transpose(), k);
    }, "X"_a, "k"_a);

    m.def("density_order", [](const Eigen::Ref<const gdr::Matrix>& x, int k) {
        return gdr::sort_by_density(x.transpose(), k).permutation;
    }, "X"_a, "k"_a, "Row indices, densest first.");

    m.def("intra_class_variance", [](const Eigen::Ref<const gdr::Matrix>& x, std::vector<int> y) {
        auto v = gdr::intra_class_variance(make_dataset(x, std::move(y)));
        return py::make_tuple(std::move(v.per_class), v.total);
    }, "X"_a, "y"_a, "Returns (per_class, total).");

    m.def("knn_loo_accuracy", [](const Eigen::Ref<const gdr::Matrix>& x, std::vector<int> y) {
        return gdr::knn_loo_accuracy(make_dataset(x, std::move(y)));
    }, "X"_a, "y"_a);

    m.def(
        "run_gdr",
        [](const Eigen::Ref<const gdr::Matrix>& x, std::vector<int> y, const std::string& method,
           bool use_pca, std::array<double, 3> alphas, int max_iter, double tol, bool stabilized,
           int lof_k, double r_min, bool parallel_classes) {
            gdr::GdrConfig config;
            config.method = gdr::parse_method(method);
            config.use_pca = use_pca;
            config.alpha = gdr::AlphaWeights(alphas[0], alphas[1], alphas[2]);
            config.max_iter = max_iter;
            config.tol = tol;
            config.stabilized = stabilized;
            config.lof_k = lof_k;
            config.guards.r_min = r_min;
            config.parallel_classes = parallel_classes;

            const auto data = make_dataset(x, std::move(y));
            gdr::GdrResult result;
            {
                py::gil_scoped_release release;
                result = gdr::run_gdr(data, config);
            }
            RowMatrix out = result.transformed.points().transpose();
            py::list reports;
            reports.append(report_to_dict(result.initial));
            for (const auto& r : result.reports) reports.append(report_to_dict(r));
            return py::make_tuple(std::move(out), reports);
        },
        "X"_a, "y"_a, "method"_a = "newtonian", "use_pca"_a = true,
        "alphas"_a = std::array<double, 3>{0.33, 0.33, 0.34}, "max_iter"_a = 6, "tol"_a = 1e-3,
        "stabilized"_a = false, "lof_k"_a = 20, "r_min"_a = 1e-6, "parallel_classes"_a = false,
        "Run the transform. Returns (Y, reports); reports[0] is the input state.");

    m.def("render_svg", [](const Eigen::Ref<const gdr::Matrix>& x, std::vector<int> y) {
        return gdr::render_svg(make_dataset(x, std::move(y)));
    }, "X"_a, "y"_a, "2-D PCA scatter as SVG text.");
}
