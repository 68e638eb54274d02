#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gdr/dataset.hpp"
#include "gdr/relativity.hpp"

namespace gdr {

enum class Method { Newtonian, Schwarzschild, Minkowski };

std::string to_string(Method m);
/// "newtonian", "schwarzschild" or "minkowski"; throws InvalidArgument otherwise.
Method parse_method(const std::string& name);

inline bool is_relativity(Method m) { return m != Method::Newtonian; }

struct GdrConfig {
    Method method = Method::Newtonian;
    bool use_pca = true;
    AlphaWeights alpha = AlphaWeights::defaults();
    int max_iter = 6;
    double tol = 1e-3;
    StepGuards guards{};
    /// Newtonian only: per-pair cap and step scale 1/(n_k - 1) per class.
    /// Overrides guards.per_pair_cap and guards.step_scale.
    bool stabilized = false;
    int lof_k = 20;
    double horizon_eps = kDefaultHorizonEps;
    std::uint64_t seed = 0;
    /// Run the classes of an iteration on separate threads. Results do not
    /// depend on this flag.
    bool parallel_classes = false;

    /// Throws InvalidArgument on a violated invariant.
    void validate() const;
};

struct VarianceSummary {
    std::vector<double> per_class;
    double total = 0.0;
};

struct IterationReport {
    int iteration = 0; ///< 0 is the input state
    std::vector<double> per_class_variance;
    double total_variance = 0.0;
    std::chrono::duration<double> elapsed{0.0};
};

/// Mean squared distance to the class mean, per class and sample-weighted.
VarianceSummary intra_class_variance(const LabeledDataset& data);
VarianceSummary intra_class_variance(const Matrix& points, const std::vector<int>& labels,
                                     int class_count);

/// Leave-one-out 1-NN accuracy; distance ties go to the lower index.
double knn_loo_accuracy(const LabeledDataset& data);

/// True once the relative change of the last two totals drops below tol.
bool has_converged(const std::vector<IterationReport>& history, double tol);

struct GdrResult {
    LabeledDataset transformed;
    IterationReport initial;              ///< variance of the working input
    std::vector<IterationReport> reports; ///< one per executed iteration
};

/// Called once with the initial state and once after every iteration, with
/// the current points in input order and input space.
using IterationObserver = std::function<void(const IterationReport&, const LabeledDataset&)>;

/// Full transform: optional 3-D PCA, density sort per class, gravitation
/// passes until convergence or max_iter, unsort, reconstruction.
GdrResult run_gdr(const LabeledDataset& data, const GdrConfig& config,
                  const IterationObserver& observer = {});

} // namespace gdr
