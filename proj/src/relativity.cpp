#include "gdr/relativity.hpp"

#include <cassert>
#include <cmath>
#include <numbers>

#include "gdr/error.hpp"

namespace gdr {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSchwarzschildRadius = 2.0;

double wrap_two_pi(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    if (a >= kTwoPi) a = 0.0;
    return a;
}
} // namespace

AlphaWeights::AlphaWeights(double a1, double a2, double a3) : w_{a1, a2, a3} {
    for (double a : w_) {
        if (!(a >= 0.0 && a <= 1.0)) {
            throw InvalidArgument("alpha weights must lie in [0, 1]");
        }
    }
    if (std::abs(a1 + a2 + a3 - 1.0) > 1e-12) {
        throw InvalidArgument("alpha weights must sum to 1");
    }
}

SphericalPoint cartesian_to_spherical(const Vec3& v) {
    SphericalPoint s;
    s.r = v.norm();
    if (s.r == 0.0) return s;
    s.theta = std::atan2(std::hypot(v.x(), v.y()), v.z());
    s.phi = wrap_two_pi(std::atan2(v.y(), v.x()));
    return s;
}

Vec3 spherical_to_cartesian(const SphericalPoint& s) {
    const double st = std::sin(s.theta);
    return {s.r * st * std::cos(s.phi), s.r * st * std::sin(s.phi), s.r * std::cos(s.theta)};
}

double folded_polar_angle(const Vec3& c) {
    if (c.isZero(0.0)) throw InvalidArgument("folded_polar_angle: zero vector");
    const double rho = std::hypot(c.x(), c.y());
    double theta = c.z() == 0.0 ? kPi / 2.0 : std::atan(rho / std::abs(c.z()));
    if (c.y() < 0.0) theta = kPi - theta;
    return theta;
}

MetricDiag schwarzschild_g(double r, double theta, double eps) {
    const double r_eff = std::max(r, kSchwarzschildRadius + eps);
    const double sin2 = std::max(std::pow(std::sin(theta), 2), eps * eps);
    const double r2 = r_eff * r_eff;
    return {1.0 / (1.0 - kSchwarzschildRadius / r_eff), r2, r2 * sin2};
}

MetricDiag minkowski_g() { return {1.0, 1.0, 1.0}; }

Vec3 movement_components(double delta, const AlphaWeights& alpha, const MetricDiag& g) {
    const std::array<double, 3> gs{g.g11, g.g22, g.g33};
    Vec3 out;
    for (std::size_t k = 0; k < 3; ++k) {
        const double radicand = alpha[k] * delta / gs[k];
        assert(radicand >= 0.0);
        out[static_cast<Eigen::Index>(k)] = alpha[k] == 0.0 ? 0.0 : -std::sqrt(radicand);
    }
    return out;
}

SphericalPoint normalize_angles(SphericalPoint s) {
    double theta = wrap_two_pi(s.theta);
    if (theta > kPi) {
        theta = kTwoPi - theta;
        s.phi += kPi;
    }
    s.theta = theta;
    s.phi = wrap_two_pi(s.phi);
    return s;
}

Vec3 relativity_pair_step(const Vec3& xj, const Vec3& xi, const RelativityOptions& opts) {
    const double r = (xi - xj).norm();
    if (r < opts.guards.r_min) return xj;
    const double delta = 1.0 / r;

    if (opts.metric == Metric::Minkowski) {
        return xj + movement_components(delta, opts.alpha, minkowski_g());
    }

    const Vec3 centered = xj - xi;
    const double theta = folded_polar_angle(centered);
    const MetricDiag g = schwarzschild_g(r, theta, opts.horizon_eps);
    const Vec3 step = movement_components(delta, opts.alpha, g);

    SphericalPoint s = cartesian_to_spherical(centered);
    s.r = std::max(s.r + step[0], opts.guards.r_min);
    s.theta += step[1];
    s.phi += step[2];
    return spherical_to_cartesian(normalize_angles(s)) + xi;
}

void relativity_pass(Matrix& points, const RelativityOptions& opts) {
    if (points.rows() != 3) {
        throw InvalidArgument("relativity_pass: points must be 3-dimensional, got " +
                              std::to_string(points.rows()));
    }
    opts.guards.validate();
    const Eigen::Index n = points.cols();
    for (Eigen::Index j = n - 1; j >= 0; --j) {
        Vec3 xj = points.col(j);
        for (Eigen::Index i = 0; i < n; ++i) {
            if (i == j) continue;
            xj = relativity_pair_step(xj, points.col(i), opts);
        }
        points.col(j) = xj;
    }
}

ClassBundle relativity_pass(ClassBundle bundle, const RelativityOptions& opts) {
    relativity_pass(bundle.points, opts);
    return bundle;
}

} // namespace gdr
