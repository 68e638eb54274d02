#include "gdr/engine.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "gdr/density.hpp"
#include "gdr/error.hpp"
#include "gdr/pca.hpp"

namespace gdr {

std::string to_string(Method m) {
    switch (m) {
    case Method::Newtonian: return "newtonian";
    case Method::Schwarzschild: return "schwarzschild";
    case Method::Minkowski: return "minkowski";
    }
    return "unknown";
}

Method parse_method(const std::string& name) {
    if (name == "newtonian") return Method::Newtonian;
    if (name == "schwarzschild") return Method::Schwarzschild;
    if (name == "minkowski") return Method::Minkowski;
    throw InvalidArgument("unknown method '" + name +
                          "' (expected newtonian, schwarzschild or minkowski)");
}

void GdrConfig::validate() const {
    if (is_relativity(method) && !use_pca) {
        throw InvalidArgument(to_string(method) + " requires the 3-D PCA manifold (use_pca)");
    }
    if (max_iter < 1) throw InvalidArgument("max_iter must be at least 1");
    if (!(tol >= 0.0)) throw InvalidArgument("tol must be non-negative");
    if (lof_k < 1) throw InvalidArgument("lof_k must be positive");
    if (!(horizon_eps > 0.0)) throw InvalidArgument("horizon_eps must be positive");
    guards.validate();
}

VarianceSummary intra_class_variance(const Matrix& points, const std::vector<int>& labels,
                                     int class_count) {
    const Eigen::Index d = points.rows();
    Matrix sums = Matrix::Zero(d, class_count);
    std::vector<Eigen::Index> counts(class_count, 0);
    for (std::size_t j = 0; j < labels.size(); ++j) {
        sums.col(labels[j]) += points.col(static_cast<Eigen::Index>(j));
        ++counts[labels[j]];
    }
    for (int k = 0; k < class_count; ++k) {
        if (counts[k] > 0) sums.col(k) /= static_cast<double>(counts[k]);
    }
    VarianceSummary out;
    out.per_class.assign(class_count, 0.0);
    for (std::size_t j = 0; j < labels.size(); ++j) {
        out.per_class[labels[j]] +=
            (points.col(static_cast<Eigen::Index>(j)) - sums.col(labels[j])).squaredNorm();
    }
    const double n = static_cast<double>(labels.size());
    for (int k = 0; k < class_count; ++k) {
        if (counts[k] == 0) continue;
        out.per_class[k] /= static_cast<double>(counts[k]);
        out.total += static_cast<double>(counts[k]) / n * out.per_class[k];
    }
    return out;
}

VarianceSummary intra_class_variance(const LabeledDataset& data) {
    return intra_class_variance(data.points(), data.labels(), data.class_count());
}

double knn_loo_accuracy(const LabeledDataset& data) {
    const Eigen::Index n = data.size();
    if (n < 2) throw InvalidArgument("knn_loo_accuracy: need at least 2 samples");
    const auto& pts = data.points();
    const auto& labels = data.labels();
    Eigen::Index hits = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
        double best = std::numeric_limits<double>::infinity();
        Eigen::Index arg = -1;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (i == j) continue;
            const double d = (pts.col(i) - pts.col(j)).squaredNorm();
            if (d < best) {
                best = d;
                arg = i;
            }
        }
        if (labels[arg] == labels[j]) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(n);
}

bool has_converged(const std::vector<IterationReport>& history, double tol) {
    if (history.size() < 2) return false;
    const double prev = history[history.size() - 2].total_variance;
    const double cur = history.back().total_variance;
    return std::abs(cur - prev) / std::max(prev, 1e-300) < tol;
}

namespace {

using Clock = std::chrono::steady_clock;

struct ClassState {
    ClassBundle bundle;
    std::vector<Eigen::Index> columns; ///< global column of each original class member
};

void step_class(ClassBundle& bundle, const GdrConfig& config) {
    if (bundle.points.cols() < 2) return;
    if (config.method == Method::Newtonian) {
        const StepGuards guards = config.stabilized
                                      ? stabilized_guards(bundle.points.cols(), config.guards.r_min)
                                      : config.guards;
        newtonian_pass(bundle.points, guards);
        return;
    }
    RelativityOptions opts;
    opts.metric = config.method == Method::Schwarzschild ? Metric::Schwarzschild : Metric::Minkowski;
    opts.alpha = config.alpha;
    opts.guards = config.guards;
    opts.horizon_eps = config.horizon_eps;
    relativity_pass(bundle.points, opts);
}

Matrix assemble(const std::vector<ClassState>& classes, Eigen::Index rows, Eigen::Index n) {
    Matrix x(rows, n);
    for (const auto& c : classes) {
        const Matrix restored = unsort(c.bundle);
        for (std::size_t m = 0; m < c.columns.size(); ++m) {
            x.col(c.columns[m]) = restored.col(static_cast<Eigen::Index>(m));
        }
    }
    return x;
}

IterationReport make_report(int iteration, const Matrix& x, const LabeledDataset& data,
                            Clock::duration elapsed) {
    auto v = intra_class_variance(x, data.labels(), data.class_count());
    IterationReport r;
    r.iteration = iteration;
    r.per_class_variance = std::move(v.per_class);
    r.total_variance = v.total;
    r.elapsed = elapsed;
    return r;
}

} // namespace

GdrResult run_gdr(const LabeledDataset& data, const GdrConfig& config,
                  const IterationObserver& observer) {
    config.validate();
    if (data.empty()) throw InvalidArgument("run_gdr: empty dataset");

    std::optional<PcaModel> model;
    Matrix x;
    if (config.use_pca) {
        model = fit_pca3(data);
        x = project(*model, data.points());
    } else {
        x = data.points();
    }
    auto to_input_space = [&](Matrix m) {
        return model ? reconstruct(*model, m) : std::move(m);
    };

    std::vector<ClassState> classes(static_cast<std::size_t>(data.class_count()));
    for (int k = 0; k < data.class_count(); ++k) {
        auto& c = classes[static_cast<std::size_t>(k)];
        c.columns = data.class_indices(k);
        Matrix members(x.rows(), static_cast<Eigen::Index>(c.columns.size()));
        for (std::size_t m = 0; m < c.columns.size(); ++m) {
            members.col(static_cast<Eigen::Index>(m)) = x.col(c.columns[m]);
        }
        const int k_eff = effective_lof_k(members.cols(), config.lof_k);
        c.bundle = sort_by_density(members, k_eff, k);
    }

    GdrResult result;
    result.initial = make_report(0, x, data, Clock::duration::zero());
    if (observer) observer(result.initial, data.with_points(to_input_space(x)));

    std::vector<IterationReport> history{result.initial};
    for (int t = 1; t <= config.max_iter; ++t) {
        const auto start = Clock::now();
        if (config.parallel_classes && classes.size() > 1) {
            std::vector<std::future<void>> jobs;
            jobs.reserve(classes.size());
            for (auto& c : classes) {
                jobs.push_back(std::async(std::launch::async,
                                          [&c, &config] { step_class(c.bundle, config); }));
            }
            for (auto& j : jobs) j.get();
        } else {
            for (auto& c : classes) step_class(c.bundle, config);
        }
        x = assemble(classes, x.rows(), data.size());
        auto report = make_report(t, x, data, Clock::now() - start);
        result.reports.push_back(report);
        history.push_back(report);
        if (observer) observer(report, data.with_points(to_input_space(x)));
        if (has_converged(history, config.tol)) break;
    }

    x = assemble(classes, x.rows(), data.size());
    result.transformed = data.with_points(to_input_space(std::move(x)));
    return result;
}

} // namespace gdr
