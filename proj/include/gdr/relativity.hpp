#pragma once

#include <array>

#include <Eigen/Dense>

#include "gdr/newtonian.hpp"

namespace gdr {

using Vec3 = Eigen::Vector3d;

/// (r, theta, phi) with theta in [0, pi] from +z and phi in [0, 2 pi).
struct SphericalPoint {
    double r = 0.0;
    double theta = 0.0;
    double phi = 0.0;
};

/// Weights of the movement along the three coordinates; they sum to one.
class AlphaWeights {
public:
    /// Throws InvalidArgument unless each weight is in [0, 1] and the sum is
    /// 1 within 1e-12.
    AlphaWeights(double a1, double a2, double a3);

    double operator[](std::size_t k) const { return w_[k]; }
    const std::array<double, 3>& values() const { return w_; }

    /// (0.33, 0.33, 0.34)
    static AlphaWeights defaults() { return {0.33, 0.33, 0.34}; }

private:
    std::array<double, 3> w_;
};

/// Positive spatial diagonal of a metric tensor, signs dropped.
struct MetricDiag {
    double g11 = 1.0;
    double g22 = 1.0;
    double g33 = 1.0;
};

enum class Metric { Schwarzschild, Minkowski };

inline constexpr double kDefaultHorizonEps = 1e-3;

SphericalPoint cartesian_to_spherical(const Vec3& v);
Vec3 spherical_to_cartesian(const SphericalPoint& s);

/// Polar angle of a centered point as used for the metric:
/// atan(sqrt(x1^2 + x2^2) / |x3|), replaced by pi minus itself when x2 < 0.
double folded_polar_angle(const Vec3& centered);

/// Schwarzschild spatial diagonal with G = M = c = 1 (Schwarzschild radius 2).
/// r is clamped to at least 2 + eps and sin^2(theta) to at least eps^2.
MetricDiag schwarzschild_g(double r, double theta, double eps = kDefaultHorizonEps);

MetricDiag minkowski_g();

/// (-sqrt(a1 d / g11), -sqrt(a2 d / g22), -sqrt(a3 d / g33)).
Vec3 movement_components(double delta, const AlphaWeights& alpha, const MetricDiag& g);

/// Brings theta into [0, pi] by reflection through the pole (turning phi by
/// pi) and wraps phi into [0, 2 pi).
SphericalPoint normalize_angles(SphericalPoint s);

struct RelativityOptions {
    Metric metric = Metric::Schwarzschild;
    AlphaWeights alpha = AlphaWeights::defaults();
    StepGuards guards{};
    double horizon_eps = kDefaultHorizonEps;
};

/// New position of x_j after the pull of x_i alone. Returns x_j unchanged
/// when the pair is closer than guards.r_min.
Vec3 relativity_pair_step(const Vec3& xj, const Vec3& xi, const RelativityOptions& opts);

/// One pass over a 3-row matrix, j from last to first and i from first to
/// last, each pair's move applied immediately.
void relativity_pass(Matrix& points, const RelativityOptions& opts);

ClassBundle relativity_pass(ClassBundle bundle, const RelativityOptions& opts);

} // namespace gdr
