#include <maxgraph/surface_fields.hpp>

#include <cmath>

#include <Eigen/Dense>

namespace maxgraph {
namespace {

// Axis second difference with the same fallback ladder as chart_partial:
// central, one-sided (exact through quadratics), shifted central, then a
// second difference borrowed from the adjacent lattice line.
double second_partial(const Grid& g, const std::vector<double>& u, int id,
                      int dir) {
  const int i = g.gi[id], j = g.gj[id];
  const double h2 = (dir == 1 ? g.h1 : g.h2) * (dir == 1 ? g.h1 : g.h2);
  auto node = [&](int di, int dj) { return g.at(i + di, j + dj); };
  auto on_axis = [&](int k) { return dir == 1 ? node(k, 0) : node(0, k); };

  const int p = on_axis(+1), m = on_axis(-1);
  if (p >= 0 && m >= 0) return (u[p] - 2.0 * u[id] + u[m]) / h2;
  for (int sgn : {+1, -1}) {
    const int a = on_axis(sgn);
    if (a < 0) continue;
    const int b = on_axis(2 * sgn), c = on_axis(3 * sgn);
    if (b >= 0 && c >= 0)
      return (2.0 * u[id] - 5.0 * u[a] + 4.0 * u[b] - u[c]) / h2;
    if (b >= 0) return (u[id] - 2.0 * u[a] + u[b]) / h2;
    return 0.0;
  }
  for (int sgn : {+1, -1}) {
    const int a = dir == 1 ? node(-1, sgn) : node(sgn, -1);
    const int b = dir == 1 ? node(0, sgn) : node(sgn, 0);
    const int c = dir == 1 ? node(+1, sgn) : node(sgn, +1);
    if (a >= 0 && b >= 0 && c >= 0) return (u[a] - 2.0 * u[b] + u[c]) / h2;
  }
  return 0.0;
}

// Radial derivative of a chart field next to the pole.  The theta-derivative
// field is multivalued at the pole (its limit depends on the approach
// direction, and the pole slot stores a Cartesian component instead), so the
// stencil steps outward rather than across the pole.
double radial_field_partial(const Grid& g, const std::vector<double>& v,
                            int id) {
  if (g.has_pole && g.gi[id] == 1) {
    const int a = g.at(2, g.gj[id]), b = g.at(3, g.gj[id]);
    if (a >= 0 && b >= 0)
      return (-3.0 * v[id] + 4.0 * v[a] - v[b]) / (2.0 * g.h1);
    if (a >= 0) return (v[a] - v[id]) / g.h1;
    return 0.0;
  }
  return chart_partial(g, v, id, 1);
}

// Quadratic least-squares fit over the first two rings, giving the pole's
// Hessian in the Cartesian frame.
void pole_hessian(const Grid& g, const std::vector<double>& u, double* h11,
                  double* h12, double* h22) {
  Eigen::Matrix<double, 5, 5> ata = Eigen::Matrix<double, 5, 5>::Zero();
  Eigen::Matrix<double, 5, 1> atb = Eigen::Matrix<double, 5, 1>::Zero();
  for (int i = 1; i <= 2 && i < g.n1; ++i) {
    for (int j = 0; j < g.n2; ++j) {
      const int id = g.at(i, j);
      if (id < 0) continue;
      const double x = g.r_hat[id] * std::cos(g.c2[id]);
      const double y = g.r_hat[id] * std::sin(g.c2[id]);
      Eigen::Matrix<double, 5, 1> row;
      row << x, y, 0.5 * x * x, x * y, 0.5 * y * y;
      ata += row * row.transpose();
      atb += row * (u[id] - u[g.pole_id]);
    }
  }
  const Eigen::Matrix<double, 5, 1> sol = ata.ldlt().solve(atb);
  *h11 = sol[2];
  *h12 = sol[3];
  *h22 = sol[4];
}

}  // namespace

SurfaceFields surface_fields(const Grid& g, const GraphFunction& u) {
  const int n = g.node_count();
  SurfaceFields f;
  f.height = u.value;
  f.radius = g.r_hat;
  f.tilt = u.tilt;
  f.w = u.w;
  f.hess11.resize(n);
  f.hess12.resize(n);
  f.hess22.resize(n);
  f.mean_curvature.resize(n);
  f.shape_norm2.resize(n);
  f.phi.resize(n);
  f.nstar1.resize(n);
  f.nstar2.resize(n);

  for (int id = 0; id < n; ++id) {
    f.phi[id] = g.r_hat[id] * g.r_hat[id] - u.value[id] * u.value[id];
    f.nstar1[id] = u.q1[id] / u.w[id];
    f.nstar2[id] = u.q2[id] / u.w[id];
    if (id == g.pole_id) continue;

    const double a = g.scale1[id], da = g.dscale1[id];
    const double fa = g.scale2[id], dfa = g.dscale2[id];
    const double u11 = second_partial(g, u.value, id, 1);
    const double u22 = second_partial(g, u.value, id, 2);
    const double u12 = 0.5 * (chart_partial(g, u.d1, id, 2) +
                              radial_field_partial(g, u.d2, id));
    f.hess11[id] = (u11 - (da / a) * u.d1[id]) / (a * a);
    f.hess12[id] = (u12 - (dfa / fa) * u.d2[id]) / (a * fa);
    f.hess22[id] = (u22 + (fa * dfa / (a * a)) * u.d1[id]) / (fa * fa);
  }

  if (g.has_pole)
    pole_hessian(g, u.value, &f.hess11[g.pole_id], &f.hess12[g.pole_id],
                 &f.hess22[g.pole_id]);

  for (int id = 0; id < n; ++id) {
    // g^{-1} = id + nstar (x) nstar in the frame; M = g^{-1} Hess.
    const double n1 = f.nstar1[id], n2 = f.nstar2[id];
    const double g11 = 1.0 + n1 * n1, g12 = n1 * n2, g22 = 1.0 + n2 * n2;
    const double m11 = g11 * f.hess11[id] + g12 * f.hess12[id];
    const double m12 = g11 * f.hess12[id] + g12 * f.hess22[id];
    const double m21 = g12 * f.hess11[id] + g22 * f.hess12[id];
    const double m22 = g12 * f.hess12[id] + g22 * f.hess22[id];
    f.mean_curvature[id] = (m11 + m22) / (2.0 * u.w[id]);
    f.shape_norm2[id] =
        (m11 * m11 + 2.0 * m12 * m21 + m22 * m22) / u.margin[id];
  }

  // Flux balance of div(grad u / w) over the pole cell replaces the
  // pointwise formula there; exact for radial quadratics on a flat base.
  if (g.has_pole) {
    const int p = g.pole_id;
    double flux = 0.0;
    for (int j = 0; j < g.n2; ++j) {
      const int id = g.at(1, j);
      if (id < 0) continue;
      const double cond =
          0.5 * (g.scale2[id] / g.scale1[id]) * g.h2 / g.h1;
      flux += cond * (u.value[id] - u.value[p]) * 2.0 /
              (u.w[p] + u.w[id]);
    }
    f.mean_curvature[p] = flux / (2.0 * g.area[p]);
  }
  return f;
}

}  // namespace maxgraph
