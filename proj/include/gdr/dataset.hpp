#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gdr {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Points stored column-wise (d features x n samples) with dense class ids.
///
/// Class ids are always 0..class_count()-1 and every class owns at least one
/// sample. The original label spellings, if any, are kept in label_names so
/// that the dataset can be written back out unchanged.
class LabeledDataset {
public:
    LabeledDataset() = default;

    /// Validates all invariants; throws InvalidArgument on violation.
    /// With empty label_names the ids themselves are used as names.
    LabeledDataset(Matrix points, std::vector<int> labels,
                   std::vector<std::string> label_names = {});

    const Matrix& points() const { return points_; }
    const std::vector<int>& labels() const { return labels_; }
    const std::vector<std::string>& label_names() const { return label_names_; }

    Eigen::Index dim() const { return points_.rows(); }
    Eigen::Index size() const { return points_.cols(); }
    int class_count() const { return static_cast<int>(label_names_.size()); }
    bool empty() const { return points_.cols() == 0; }

    /// Same labels, new point values. The matrix must have the same column count.
    LabeledDataset with_points(Matrix points) const;

    /// Column indices of every sample of class k, ascending.
    std::vector<Eigen::Index> class_indices(int k) const;

private:
    Matrix points_;
    std::vector<int> labels_;
    std::vector<std::string> label_names_;
};

/// Reads a CSV with a header row. Every column except label_column is a feature.
LabeledDataset load_csv(const std::filesystem::path& path,
                        const std::string& label_column = "label");

/// Writes `f0..f{d-1},label` with 17 significant digits per value.
void write_csv(const LabeledDataset& data, const std::filesystem::path& path);

/// Same as write_csv, to a string.
std::string to_csv(const LabeledDataset& data);

/// Deterministic splitmix64 stream.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    /// Uniform in [0, 1) with 53 random bits.
    double uniform();

private:
    std::uint64_t state_;
};

struct BlobSpec {
    int n_classes = 10;
    int per_class = 50;
    int dim = 64;
    double spread = 1.0;
    double center_scale = 10.0;
    std::uint64_t seed = 7;
};

/// Gaussian blobs around uniformly drawn class centers.
///
/// Centers are drawn first (class-major, coordinate-minor), then the samples
/// in class order. Normal deviates come from Box-Muller pairs, both outputs
/// of a pair are consumed before drawing again.
LabeledDataset make_blobs(const BlobSpec& spec);

} // namespace gdr
