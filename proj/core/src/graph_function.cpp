#include <maxgraph/graph_function.hpp>

#include <cmath>
#include <limits>
#include <utility>

#include <maxgraph/errors.hpp>

namespace maxgraph {

double chart_partial(const Grid& g, const std::vector<double>& u, int id,
                     int dir) {
  const int i = g.gi[id], j = g.gj[id];
  const double h = dir == 1 ? g.h1 : g.h2;
  auto node = [&](int di, int dj) { return g.at(i + di, j + dj); };
  auto on_axis = [&](int k) { return dir == 1 ? node(k, 0) : node(0, k); };

  const int p = on_axis(+1), m = on_axis(-1);
  if (p >= 0 && m >= 0) return (u[p] - u[m]) / (2.0 * h);
  for (int sgn : {+1, -1}) {
    const int a = on_axis(sgn);
    if (a < 0) continue;
    const int b = on_axis(2 * sgn);
    if (b >= 0) return sgn * (-3.0 * u[id] + 4.0 * u[a] - u[b]) / (2.0 * h);
    return sgn * (u[a] - u[id]) / h;
  }
  for (int sgn : {+1, -1}) {
    const int pp = dir == 1 ? node(+1, sgn) : node(sgn, +1);
    const int mm = dir == 1 ? node(-1, sgn) : node(sgn, -1);
    if (pp >= 0 && mm >= 0) return (u[pp] - u[mm]) / (2.0 * h);
  }
  return 0.0;
}

namespace {

// Cartesian gradient at the pole from a least-squares fit of
// u - u(pole) ~ r1 (a cos(theta) + b sin(theta)) over the first ring.  For a
// full ring this reduces to the discrete Fourier projection.
std::pair<double, double> pole_gradient(const Grid& g,
                                        const std::vector<double>& u) {
  double scc = 0, scs = 0, sss = 0, rc = 0, rs = 0, r1 = 0;
  for (int j = 0; j < g.n2; ++j) {
    const int id = g.at(1, j);
    if (id < 0) continue;
    const double c = std::cos(g.c2[id]), s = std::sin(g.c2[id]);
    const double d = u[id] - u[g.pole_id];
    r1 = g.r_hat[id];
    scc += c * c;
    scs += c * s;
    sss += s * s;
    rc += d * c;
    rs += d * s;
  }
  const double det = scc * sss - scs * scs;
  if (!(r1 > 0) || !(det > 1e-9 * (scc + sss) * (scc + sss)))
    throw Error("pole gradient: first-ring directions are degenerate");
  return {(sss * rc - scs * rs) / (det * r1),
          (scc * rs - scs * rc) / (det * r1)};
}

}  // namespace

std::vector<double> sample_chart(
    const Grid& grid, const std::function<double(double, double)>& f) {
  std::vector<double> v(grid.node_count());
  for (int id = 0; id < grid.node_count(); ++id)
    v[id] = f(grid.c1[id], grid.c2[id]);
  return v;
}

std::vector<double> sample_polar(
    const Grid& grid, const std::function<double(double, double)>& f) {
  std::vector<double> v(grid.node_count());
  for (int id = 0; id < grid.node_count(); ++id) {
    const BasePoint p = grid.point(id);
    v[id] = f(p.rho, p.theta);
  }
  return v;
}

GraphFunction make_graph(const Grid& grid, std::vector<double> values,
                         bool require_spacelike) {
  if (static_cast<int>(values.size()) != grid.node_count())
    throw Error("make_graph: value count does not match the grid");

  const int n = grid.node_count();
  GraphFunction f;
  f.value = std::move(values);
  f.d1.resize(n);
  f.d2.resize(n);
  f.q1.resize(n);
  f.q2.resize(n);
  f.grad_norm2.resize(n);
  f.margin.resize(n);
  f.w.resize(n);
  f.tilt.resize(n);

  for (int id = 0; id < n; ++id) {
    if (id == grid.pole_id) {
      const auto [a, b] = pole_gradient(grid, f.value);
      f.d1[id] = f.q1[id] = a;
      f.d2[id] = f.q2[id] = b;
    } else {
      f.d1[id] = chart_partial(grid, f.value, id, 1);
      f.d2[id] = chart_partial(grid, f.value, id, 2);
      f.q1[id] = f.d1[id] / grid.scale1[id];
      f.q2[id] = f.d2[id] / grid.scale2[id];
    }
    f.grad_norm2[id] = f.q1[id] * f.q1[id] + f.q2[id] * f.q2[id];
    f.margin[id] = 1.0 - f.grad_norm2[id];
    if (f.margin[id] > 0) {
      f.w[id] = std::sqrt(f.margin[id]);
      f.tilt[id] = -1.0 / f.w[id];
    } else {
      f.w[id] = std::numeric_limits<double>::quiet_NaN();
      f.tilt[id] = std::numeric_limits<double>::quiet_NaN();
    }
  }

  if (require_spacelike) {
    int worst = 0;
    for (int id = 1; id < n; ++id)
      if (f.margin[id] < f.margin[worst]) worst = id;
    if (!(f.margin[worst] > 0))
      throw NotSpacelikeError(
          "graph data is not spacelike: the time gradient reaches the light "
          "cone",
          worst, f.grad_norm2[worst]);
  }
  return f;
}

}  // namespace maxgraph
