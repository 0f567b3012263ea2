#pragma once

#include <functional>
#include <string>

namespace maxgraph {

/// A point on the base surface in polar coordinates around the basepoint.
/// Grids built over a Cartesian chart convert to polar before calling model
/// functions.
struct BasePoint {
  double rho = 0.0;
  double theta = 0.0;
};

enum class MetricKind { Flat, Sphere, Hyperbolic, Custom };

/// Declared sign of the Gaussian curvature over the working range.  The
/// comparison estimates downstream are only valid under NonNegative, so the
/// claim is verified numerically when a model is put to work.
enum class CurvatureSign { NonNegative, Negative, Mixed };

/// Complete rotationally symmetric surface described by its warping profile:
///
///   g = d(rho)^2 + f(rho)^2 d(theta)^2,   f(0) = 0, f'(0) = 1, f > 0 on (0, rho_max).
///
/// Gaussian curvature K = -f''/f, distance to the basepoint r = rho, and the
/// distance Laplacian is f'/f.  Named profiles: flat f = rho, sphere f = sin,
/// hyperbolic f = sinh.
class MetricModel {
public:
  static MetricModel flat();
  static MetricModel sphere();
  static MetricModel hyperbolic();
  /// Custom warping profile with analytic first and second derivatives.
  /// pole_curvature is the limit of -f''/f at rho = 0 (equals -f'''(0)).
  static MetricModel rotationally_symmetric(std::string name,
                                            std::function<double(double)> f,
                                            std::function<double(double)> df,
                                            std::function<double(double)> ddf,
                                            double rho_max,
                                            CurvatureSign claim,
                                            double pole_curvature);

  MetricKind kind = MetricKind::Flat;
  std::string name = "flat";
  double rho_max = 0.0;  // profile validity range (exclusive upper bound)
  CurvatureSign curvature_claim = CurvatureSign::NonNegative;

  double f(double rho) const { return f_(rho); }
  double df(double rho) const { return df_(rho); }
  double ddf(double rho) const { return ddf_(rho); }

  /// K(rho) = -f''(rho)/f(rho); continuous limit value at the pole.
  double gaussian_curvature(double rho) const;

  /// r(p): geodesic distance from p to the basepoint.
  double distance_to_basepoint(const BasePoint& p) const;

  /// Laplacian of the distance function, f'(rho)/f(rho).  Throws at the pole,
  /// where the distance function is not smooth.
  double distance_laplacian(double rho) const;

  /// Whether exact geodesic distance between arbitrary points is available
  /// (flat, sphere, hyperbolic).
  bool pairwise_distance_available() const;

  /// Exact geodesic distance between two points; throws if unavailable.
  double distance(const BasePoint& p, const BasePoint& q) const;

  /// Samples K over [rho_lo, rho_hi] and throws if the declared curvature
  /// sign is violated beyond curvature_tolerance.
  void verify_curvature_claim(double rho_lo, double rho_hi,
                              int samples = 256) const;

  /// Slack allowed when checking the declared curvature sign.
  static constexpr double curvature_tolerance = 1e-10;

private:
  std::function<double(double)> f_, df_, ddf_;
  double pole_curvature_ = 0.0;
};

}  // namespace maxgraph
