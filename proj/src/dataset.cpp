#include "gdr/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "gdr/error.hpp"

namespace gdr {

LabeledDataset::LabeledDataset(Matrix points, std::vector<int> labels,
                               std::vector<std::string> label_names)
    : points_(std::move(points)), labels_(std::move(labels)),
      label_names_(std::move(label_names)) {
    if (static_cast<std::size_t>(points_.cols()) != labels_.size()) {
        throw InvalidArgument("dataset: " + std::to_string(points_.cols()) +
                              " columns but " + std::to_string(labels_.size()) +
                              " labels");
    }
    if (!points_.allFinite()) {
        throw InvalidArgument("dataset: non-finite point coordinate");
    }
    int max_label = -1;
    for (int l : labels_) {
        if (l < 0) throw InvalidArgument("dataset: negative label");
        max_label = std::max(max_label, l);
    }
    const int count = label_names_.empty() ? max_label + 1
                                           : static_cast<int>(label_names_.size());
    if (max_label >= count) {
        throw InvalidArgument("dataset: label " + std::to_string(max_label) +
                              " has no name");
    }
    std::vector<bool> seen(count, false);
    for (int l : labels_) seen[l] = true;
    for (int k = 0; k < count; ++k) {
        if (!seen[k]) {
            throw InvalidArgument("dataset: class " + std::to_string(k) +
                                  " has no samples");
        }
    }
    if (label_names_.empty()) {
        label_names_.reserve(count);
        for (int k = 0; k < count; ++k) label_names_.push_back(std::to_string(k));
    }
}

LabeledDataset LabeledDataset::with_points(Matrix points) const {
    return LabeledDataset(std::move(points), labels_, label_names_);
}

std::vector<Eigen::Index> LabeledDataset::class_indices(int k) const {
    std::vector<Eigen::Index> out;
    for (std::size_t j = 0; j < labels_.size(); ++j) {
        if (labels_[j] == k) out.push_back(static_cast<Eigen::Index>(j));
    }
    return out;
}

namespace {

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

} // namespace

LabeledDataset load_csv(const std::filesystem::path& path,
                        const std::string& label_column) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw ParseError(path.string() + ": empty file");
    auto header = split_row(line);
    for (auto& h : header) h = trim(h);

    std::size_t label_pos = header.size();
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] == label_column) {
            label_pos = c;
            break;
        }
    }
    if (label_pos == header.size()) {
        throw ParseError(path.string() + ": label column '" + label_column +
                         "' not found");
    }
    const std::size_t d = header.size() - 1;

    std::vector<double> values;
    std::vector<int> labels;
    std::vector<std::string> names;
    std::unordered_map<std::string, int> ids;

    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto cells = split_row(line);
        if (cells.size() != header.size()) {
            throw ParseError(path.string() + ": row " + std::to_string(row) + " has " +
                             std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(header.size()));
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const std::string cell = trim(cells[c]);
            if (c == label_pos) {
                auto [it, inserted] = ids.try_emplace(cell, static_cast<int>(names.size()));
                if (inserted) names.push_back(cell);
                labels.push_back(it->second);
                continue;
            }
            double v = 0.0;
            const char* first = cell.data();
            const char* last = first + cell.size();
            if (!cell.empty() && *first == '+') ++first;
            auto [ptr, ec] = std::from_chars(first, last, v);
            if (cell.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
                throw ParseError(path.string() + ": row " + std::to_string(row) +
                                 ", column '" + header[c] + "': not a finite number: '" +
                                 cell + "'");
            }
            values.push_back(v);
        }
    }
    if (labels.empty()) throw ParseError(path.string() + ": no data rows");
    if (d == 0) throw ParseError(path.string() + ": no feature columns");

    const auto n = static_cast<Eigen::Index>(labels.size());
    // values is row-major n x d, i.e. column-major d x n
    Matrix points = Eigen::Map<const Matrix>(values.data(), static_cast<Eigen::Index>(d), n);
    return LabeledDataset(std::move(points), std::move(labels), std::move(names));
}

std::string to_csv(const LabeledDataset& data) {
    if (data.empty()) throw InvalidArgument("write_csv: empty dataset");
    std::string out;
    for (Eigen::Index r = 0; r < data.dim(); ++r) {
        out += 'f';
        out += std::to_string(r);
        out += ',';
    }
    out += "label\n";
    char buf[64];
    const auto& pts = data.points();
    for (Eigen::Index j = 0; j < data.size(); ++j) {
        for (Eigen::Index r = 0; r < data.dim(); ++r) {
            auto res = std::to_chars(buf, buf + sizeof(buf), pts(r, j),
                                     std::chars_format::general, 17);
            out.append(buf, res.ptr);
            out += ',';
        }
        out += data.label_names()[data.labels()[j]];
        out += '\n';
    }
    return out;
}

void write_csv(const LabeledDataset& data, const std::filesystem::path& path) {
    const std::string text = to_csv(data);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("write failed: " + path.string());
}

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

LabeledDataset make_blobs(const BlobSpec& spec) {
    if (spec.n_classes < 1 || spec.per_class < 1 || spec.dim < 1) {
        throw InvalidArgument("make_blobs: counts must be positive");
    }
    if (!(spec.spread >= 0.0) || !(spec.center_scale > 0.0)) {
        throw InvalidArgument("make_blobs: need spread >= 0 and center_scale > 0");
    }
    SplitMix64 rng(spec.seed);

    Matrix centers(spec.dim, spec.n_classes);
    for (int k = 0; k < spec.n_classes; ++k) {
        for (int r = 0; r < spec.dim; ++r) {
            centers(r, k) = spec.center_scale * (2.0 * rng.uniform() - 1.0);
        }
    }

    bool have_spare = false;
    double spare = 0.0;
    auto normal = [&]() {
        if (have_spare) {
            have_spare = false;
            return spare;
        }
        const double u1 = 1.0 - rng.uniform(); // (0, 1]
        const double u2 = rng.uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        // volatile keeps sin and cos as separate libm calls; the fused
        // sincos is not correctly rounded on every argument
        const volatile double angle = 2.0 * std::numbers::pi * u2;
        spare = radius * std::sin(angle);
        have_spare = true;
        return radius * std::cos(angle);
    };

    const Eigen::Index n = static_cast<Eigen::Index>(spec.n_classes) * spec.per_class;
    Matrix points(spec.dim, n);
    std::vector<int> labels(static_cast<std::size_t>(n));
    Eigen::Index j = 0;
    for (int k = 0; k < spec.n_classes; ++k) {
        for (int s = 0; s < spec.per_class; ++s, ++j) {
            for (int r = 0; r < spec.dim; ++r) {
                points(r, j) = centers(r, k) + spec.spread * normal();
            }
            labels[static_cast<std::size_t>(j)] = k;
        }
    }
    return LabeledDataset(std::move(points), std::move(labels));
}

} // namespace gdr
