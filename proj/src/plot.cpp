#include "gdr/plot.hpp"

#include <array>
#include <cstdio>
#include <fstream>

#include "gdr/error.hpp"
#include "gdr/pca.hpp"

namespace gdr {

namespace {

constexpr int kCanvas = 800;
constexpr double kMargin = 0.05;
constexpr double kRadius = 3.0;

constexpr std::array<const char*, 10> kPalette{
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

// 2 x n view coordinates, centered.
Matrix view_coordinates(const Matrix& points) {
    const Eigen::Index n = points.cols();
    Matrix view = Matrix::Zero(2, n);
    if (n < 2) return view;
    const Matrix centered = points.colwise() - points.rowwise().mean();
    if (points.rows() == 1) {
        view.row(0) = centered.row(0);
        return view;
    }
    const PcaModel model = fit_pca(points, 2);
    return model.basis.transpose() * centered;
}

struct Axis {
    double lo;
    double hi;
};

Axis padded_bounds(const Eigen::Ref<const Vector>& values) {
    double lo = values.minCoeff();
    double hi = values.maxCoeff();
    double span = hi - lo;
    if (span <= 0.0) {
        span = 1.0;
        lo -= 0.5;
        hi += 0.5;
    }
    return {lo - kMargin * span, hi + kMargin * span};
}

} // namespace

std::string render_svg(const LabeledDataset& data) {
    if (data.empty()) throw InvalidArgument("emit_svg: empty dataset");
    const Matrix view = view_coordinates(data.points());
    const Axis ax = padded_bounds(view.row(0).transpose());
    const Axis ay = padded_bounds(view.row(1).transpose());

    std::string out;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
                  "width=\"%d\" height=\"%d\" viewBox=\"0 0 %d %d\">\n",
                  kCanvas, kCanvas, kCanvas, kCanvas);
    out += buf;
    out += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"800\" fill=\"#ffffff\"/>\n";

    // axes through the view origin when visible, otherwise along the frame
    auto sx = [&](double v) { return (v - ax.lo) / (ax.hi - ax.lo) * kCanvas; };
    auto sy = [&](double v) { return kCanvas - (v - ay.lo) / (ay.hi - ay.lo) * kCanvas; };
    const double x0 = (ax.lo <= 0.0 && 0.0 <= ax.hi) ? sx(0.0) : 0.0;
    const double y0 = (ay.lo <= 0.0 && 0.0 <= ay.hi) ? sy(0.0) : kCanvas;
    std::snprintf(buf, sizeof(buf),
                  "<g stroke=\"#999999\" stroke-width=\"1\">\n"
                  "<line x1=\"0\" y1=\"%.2f\" x2=\"800\" y2=\"%.2f\"/>\n"
                  "<line x1=\"%.2f\" y1=\"0\" x2=\"%.2f\" y2=\"800\"/>\n</g>\n",
                  y0, y0, x0, x0);
    out += buf;

    out += "<g stroke=\"none\">\n";
    for (Eigen::Index j = 0; j < data.size(); ++j) {
        const int label = data.labels()[static_cast<std::size_t>(j)];
        std::snprintf(buf, sizeof(buf), "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%g\" fill=\"%s\"/>\n",
                      sx(view(0, j)), sy(view(1, j)), kRadius, kPalette[label % 10]);
        out += buf;
    }
    out += "</g>\n</svg>\n";
    return out;
}

void emit_svg(const LabeledDataset& data, const std::filesystem::path& path) {
    const std::string text = render_svg(data);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("write failed: " + path.string());
}

} // namespace gdr
