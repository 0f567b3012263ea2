#include <maxgraph/identities.hpp>

#include <cmath>

#include <maxgraph/errors.hpp>

namespace maxgraph {
namespace {

std::vector<double> curvature_at_nodes(const Grid& g) {
  std::vector<double> k(g.node_count());
  for (int id = 0; id < g.node_count(); ++id)
    k[id] = g.model.gaussian_curvature(g.r_hat[id]);
  return k;
}

}  // namespace

std::vector<double> residual_height_laplacian(const Grid& grid,
                                              const SurfaceFields& f,
                                              const DiscreteOperator& op) {
  std::vector<double> res = op.apply(f.height);
  for (int id = 0; id < grid.node_count(); ++id)
    res[id] += 2.0 * f.mean_curvature[id] * f.tilt[id];
  return res;
}

std::vector<double> residual_height_sq(const Grid& grid,
                                       const SurfaceFields& f,
                                       const DiscreteOperator& op) {
  std::vector<double> h2(grid.node_count());
  for (int id = 0; id < grid.node_count(); ++id)
    h2[id] = f.height[id] * f.height[id];
  std::vector<double> res = op.apply(h2);
  for (int id = 0; id < grid.node_count(); ++id) {
    const double t = f.tilt[id];
    res[id] -= 2.0 * (t * t - 1.0) -
               4.0 * f.height[id] * f.mean_curvature[id] * t;
  }
  return res;
}

std::vector<double> residual_lifted_laplacian(const Grid& grid,
                                              const SurfaceFields& f,
                                              const DiscreteOperator& op,
                                              const TestFunction& psi) {
  if (!psi.value || !psi.polar_gradient || !psi.polar_hessian)
    throw Error(
        "lifted-laplacian residual: the test function needs analytic value, "
        "gradient and Hessian callbacks");

  std::vector<double> vals(grid.node_count());
  for (int id = 0; id < grid.node_count(); ++id) {
    const BasePoint p = grid.point(id);
    vals[id] = psi.value(p.rho, p.theta);
  }
  std::vector<double> res = op.apply(vals);

  const bool rotate = grid.chart == Chart::Cartesian;
  for (int id = 0; id < grid.node_count(); ++id) {
    const BasePoint p = grid.point(id);
    auto grad = psi.polar_gradient(p.rho, p.theta);
    auto hess = psi.polar_hessian(p.rho, p.theta);
    if (rotate) {
      const double c = std::cos(p.theta), s = std::sin(p.theta);
      const double gr = grad[0], gt = grad[1];
      grad = {c * gr - s * gt, s * gr + c * gt};
      const double a = hess[0], b = hess[1], d = hess[2];
      hess = {c * c * a - 2.0 * c * s * b + s * s * d,
              c * s * (a - d) + (c * c - s * s) * b,
              s * s * a + 2.0 * c * s * b + c * c * d};
    }
    const double n1 = f.nstar1[id], n2 = f.nstar2[id];
    const double trace = hess[0] + hess[2];
    const double rhs =
        trace + 2.0 * f.mean_curvature[id] * (n1 * grad[0] + n2 * grad[1]) +
        hess[0] * n1 * n1 + 2.0 * hess[1] * n1 * n2 + hess[2] * n2 * n2;
    res[id] -= rhs;
  }
  return res;
}

std::vector<double> residual_radius_sq(const Grid& grid,
                                       const SurfaceFields& f,
                                       const DiscreteOperator& op) {
  std::vector<double> r2(grid.node_count());
  for (int id = 0; id < grid.node_count(); ++id)
    r2[id] = f.radius[id] * f.radius[id];
  std::vector<double> res = op.apply(r2);
  for (int id = 0; id < grid.node_count(); ++id) {
    // r * (Delta-hat r) = r f'(r)/f(r); finite at the pole (limit 1).
    const double r = f.radius[id];
    const double rdr = id == grid.pole_id
                           ? 1.0
                           : r * grid.model.distance_laplacian(r);
    const double n1 = f.nstar1[id], n2 = f.nstar2[id];
    res[id] = 0.5 * res[id] -
              (rdr * (1.0 + n2 * n2) + 1.0 + n1 * n1);
  }
  return res;
}

std::vector<double> residual_phi_laplacian(const Grid& grid,
                                           const SurfaceFields& f,
                                           const DiscreteOperator& op) {
  std::vector<double> res = op.apply(f.phi);
  for (int id = 0; id < grid.node_count(); ++id) {
    const double r = f.radius[id];
    const double rdr = id == grid.pole_id
                           ? 1.0
                           : r * grid.model.distance_laplacian(r);
    const double n1 = f.nstar1[id], n2 = f.nstar2[id];
    const double t = f.tilt[id];
    const double rhs = rdr * (1.0 + n2 * n2) + 1.0 + n1 * n1 -
                       (t * t - 1.0) +
                       2.0 * f.height[id] * f.mean_curvature[id] * t;
    res[id] = 0.5 * res[id] - rhs;
  }
  return res;
}

std::vector<double> residual_tilt_laplacian(const Grid& grid,
                                            const SurfaceFields& f,
                                            const DiscreteOperator& op) {
  const auto k = curvature_at_nodes(grid);
  std::vector<double> res = op.apply(f.tilt);
  for (int id = 0; id < grid.node_count(); ++id) {
    const double t = f.tilt[id];
    res[id] -= t * (k[id] * (t * t - 1.0) + f.shape_norm2[id]);
  }
  return res;
}

std::vector<double> residual_tilt_gradient(const Grid& grid,
                                           const SurfaceFields& f,
                                           const DiscreteOperator& op) {
  std::vector<double> res = op.gradient_norm2(f.tilt);
  for (int id = 0; id < grid.node_count(); ++id) {
    const double t = f.tilt[id];
    res[id] -= 0.5 * f.shape_norm2[id] * (t * t - 1.0);
  }
  return res;
}

std::vector<double> residual_inverse_tilt(const Grid& grid,
                                          const SurfaceFields& f,
                                          const DiscreteOperator& op) {
  const auto k = curvature_at_nodes(grid);
  std::vector<double> inv(grid.node_count());
  for (int id = 0; id < grid.node_count(); ++id) inv[id] = 1.0 / f.tilt[id];
  std::vector<double> res = op.apply(inv);
  for (int id = 0; id < grid.node_count(); ++id) {
    const double t = f.tilt[id];
    res[id] += inv[id] * (k[id] * (t * t - 1.0) + f.shape_norm2[id] / (t * t));
  }
  return res;
}

}  // namespace maxgraph
