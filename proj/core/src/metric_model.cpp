#include "maxgraph/metric_model.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "maxgraph/errors.hpp"

namespace maxgraph {

namespace {
constexpr double kPoleEps = 1e-9;  // below this rho, use the pole limit of K
}

MetricModel MetricModel::flat() {
  MetricModel m;
  m.kind = MetricKind::Flat;
  m.name = "flat";
  m.rho_max = std::numeric_limits<double>::infinity();
  m.curvature_claim = CurvatureSign::NonNegative;
  m.f_ = [](double r) { return r; };
  m.df_ = [](double) { return 1.0; };
  m.ddf_ = [](double) { return 0.0; };
  m.pole_curvature_ = 0.0;
  return m;
}

MetricModel MetricModel::sphere() {
  MetricModel m;
  m.kind = MetricKind::Sphere;
  m.name = "sphere";
  m.rho_max = M_PI;
  m.curvature_claim = CurvatureSign::NonNegative;
  m.f_ = [](double r) { return std::sin(r); };
  m.df_ = [](double r) { return std::cos(r); };
  m.ddf_ = [](double r) { return -std::sin(r); };
  m.pole_curvature_ = 1.0;
  return m;
}

MetricModel MetricModel::hyperbolic() {
  MetricModel m;
  m.kind = MetricKind::Hyperbolic;
  m.name = "hyperbolic";
  m.rho_max = std::numeric_limits<double>::infinity();
  m.curvature_claim = CurvatureSign::Negative;
  m.f_ = [](double r) { return std::sinh(r); };
  m.df_ = [](double r) { return std::cosh(r); };
  m.ddf_ = [](double r) { return std::sinh(r); };
  m.pole_curvature_ = -1.0;
  return m;
}

MetricModel MetricModel::rotationally_symmetric(
    std::string name, std::function<double(double)> f,
    std::function<double(double)> df, std::function<double(double)> ddf,
    double rho_max, CurvatureSign claim, double pole_curvature) {
  if (!(rho_max > 0)) throw Error("rotationally_symmetric: rho_max must be positive");
  MetricModel m;
  m.kind = MetricKind::Custom;
  m.name = std::move(name);
  m.rho_max = rho_max;
  m.curvature_claim = claim;
  m.f_ = std::move(f);
  m.df_ = std::move(df);
  m.ddf_ = std::move(ddf);
  m.pole_curvature_ = pole_curvature;
  return m;
}

double MetricModel::gaussian_curvature(double rho) const {
  if (rho < 0) throw Error("gaussian_curvature: negative radius");
  if (rho < kPoleEps) return pole_curvature_;
  const double fr = f_(rho);
  if (fr <= 0) {
    std::ostringstream os;
    os << name << ": profile not positive at rho = " << rho;
    throw Error(os.str());
  }
  return -ddf_(rho) / fr;
}

double MetricModel::distance_to_basepoint(const BasePoint& p) const {
  if (p.rho < 0) throw Error("distance_to_basepoint: negative radius");
  return p.rho;
}

double MetricModel::distance_laplacian(double rho) const {
  if (rho <= 0)
    throw Error("distance_laplacian: undefined at the basepoint (rho <= 0)");
  if (rho >= rho_max)
    throw Error("distance_laplacian: rho outside the profile range");
  const double fr = f_(rho);
  if (fr <= 0) throw Error("distance_laplacian: profile not positive here");
  return df_(rho) / fr;
}

bool MetricModel::pairwise_distance_available() const {
  return kind == MetricKind::Flat || kind == MetricKind::Sphere ||
         kind == MetricKind::Hyperbolic;
}

double MetricModel::distance(const BasePoint& p, const BasePoint& q) const {
  const double dth = p.theta - q.theta;
  switch (kind) {
    case MetricKind::Flat: {
      // Law of cosines in the plane.
      const double d2 = p.rho * p.rho + q.rho * q.rho -
                        2.0 * p.rho * q.rho * std::cos(dth);
      return std::sqrt(std::max(0.0, d2));
    }
    case MetricKind::Sphere: {
      const double c = std::cos(p.rho) * std::cos(q.rho) +
                       std::sin(p.rho) * std::sin(q.rho) * std::cos(dth);
      return std::acos(std::min(1.0, std::max(-1.0, c)));
    }
    case MetricKind::Hyperbolic: {
      const double c = std::cosh(p.rho) * std::cosh(q.rho) -
                       std::sinh(p.rho) * std::sinh(q.rho) * std::cos(dth);
      return std::acosh(std::max(1.0, c));
    }
    default:
      throw Error("distance: exact pairwise distance only available for "
                  "flat, sphere and hyperbolic models");
  }
}

void MetricModel::verify_curvature_claim(double rho_lo, double rho_hi,
                                         int samples) const {
  if (curvature_claim == CurvatureSign::Mixed) return;
  if (samples < 2) samples = 2;
  for (int k = 0; k <= samples; ++k) {
    const double rho = rho_lo + (rho_hi - rho_lo) * k / samples;
    const double K = gaussian_curvature(rho);
    const bool bad = (curvature_claim == CurvatureSign::NonNegative)
                         ? K < -curvature_tolerance
                         : K > curvature_tolerance;
    if (bad) {
      std::ostringstream os;
      os << name << ": declared curvature sign violated at rho = " << rho
         << " (K = " << K << ")";
      throw Error(os.str());
    }
  }
}

}  // namespace maxgraph
