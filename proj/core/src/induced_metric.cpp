#include <maxgraph/induced_metric.hpp>

#include <maxgraph/errors.hpp>

namespace maxgraph {
namespace {

MetricField zeroed(int n) {
  MetricField m;
  m.g11.assign(n, 0.0);
  m.g12.assign(n, 0.0);
  m.g22.assign(n, 0.0);
  m.inv11.assign(n, 0.0);
  m.inv12.assign(n, 0.0);
  m.inv22.assign(n, 0.0);
  m.sqrt_det.assign(n, 0.0);
  m.volume.assign(n, 0.0);
  return m;
}

}  // namespace

MetricField base_metric_field(const Grid& grid) {
  const int n = grid.node_count();
  MetricField m = zeroed(n);
  for (int id = 0; id < n; ++id) {
    m.volume[id] = grid.area[id];
    if (id == grid.pole_id) continue;
    const double a = grid.scale1[id], f = grid.scale2[id];
    m.g11[id] = a * a;
    m.g22[id] = f * f;
    m.inv11[id] = 1.0 / (a * a);
    m.inv22[id] = 1.0 / (f * f);
    m.sqrt_det[id] = a * f;
  }
  return m;
}

MetricField induced_metric_field(const Grid& grid, const GraphFunction& u) {
  const int n = grid.node_count();
  MetricField m = zeroed(n);
  for (int id = 0; id < n; ++id) {
    if (!(u.margin[id] > 0))
      throw NotSpacelikeError(
          "induced metric: graph is not spacelike at a node", id,
          u.grad_norm2[id]);
    m.volume[id] = grid.area[id] * u.w[id];
    if (id == grid.pole_id) continue;
    const double a = grid.scale1[id], f = grid.scale2[id];
    m.g11[id] = a * a - u.d1[id] * u.d1[id];
    m.g12[id] = -u.d1[id] * u.d2[id];
    m.g22[id] = f * f - u.d2[id] * u.d2[id];
    const double det = m.g11[id] * m.g22[id] - m.g12[id] * m.g12[id];
    m.inv11[id] = m.g22[id] / det;
    m.inv12[id] = -m.g12[id] / det;
    m.inv22[id] = m.g11[id] / det;
    m.sqrt_det[id] = a * f * u.w[id];
  }
  return m;
}

}  // namespace maxgraph
