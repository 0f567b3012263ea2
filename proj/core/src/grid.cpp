#include "maxgraph/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "maxgraph/errors.hpp"
#include "maxgraph/numerics.hpp"

namespace maxgraph {

int Grid::at(int i, int j) const {
  if (i < 0 || i >= n1) return -1;
  if (periodic2) {
    j %= n2;
    if (j < 0) j += n2;
  } else if (j < 0 || j >= n2) {
    return -1;
  }
  return index_map[static_cast<std::size_t>(i) * n2 + j];
}

int Grid::neighbor(int id, int di, int dj) const {
  if (id == pole_id) return -1;
  return at(gi[id] + di, gj[id] + dj);
}

std::vector<int> Grid::row(int i) const {
  std::vector<int> ids;
  if (i < 0 || i >= n1) return ids;
  if (has_pole && i == 0) {
    ids.push_back(pole_id);
    return ids;
  }
  ids.reserve(n2);
  for (int j = 0; j < n2; ++j) {
    const int id = at(i, j);
    if (id >= 0 && (ids.empty() || ids.back() != id)) ids.push_back(id);
  }
  return ids;
}

std::vector<int> Grid::report_mask(int collar) const {
  std::vector<int> ids;
  for (int id = 0; id < node_count(); ++id) {
    if (boundary[id] != 0) continue;
    if (has_pole && gi[id] <= collar) continue;  // pole neighbourhood
    bool ok = true;
    for (int di = -collar; di <= collar && ok; ++di) {
      for (int dj = -collar; dj <= collar && ok; ++dj) {
        const int nb = at(gi[id] + di, gj[id] + dj);
        if (nb < 0 || boundary[nb] != 0) ok = false;
      }
    }
    if (ok) ids.push_back(id);
  }
  return ids;
}

double Grid::spacing() const {
  double s = 0.0;
  for (int id = 0; id < node_count(); ++id) s = std::max(s, scale1[id]);
  return h1 * s;
}

double Grid::angular_spacing() const {
  double s = 0.0;
  for (int id = 0; id < node_count(); ++id) s = std::max(s, scale2[id]);
  return h2 * s;
}

BasePoint Grid::point(int id) const {
  if (chart == Chart::Polar) return {r_hat[id], id == pole_id ? 0.0 : c2[id]};
  return {r_hat[id], std::atan2(c2[id], c1[id])};
}

double Grid::total_area() const {
  double s = 0.0;
  for (double a : area) s += a;
  return s;
}

namespace {

Grid build_polar(const MetricModel& model, const Domain& domain, int n1,
                 int n2, RadialSpacing spacing) {
  if (spacing == RadialSpacing::Logarithmic &&
      domain.shape != DomainShape::GeodesicAnnulus)
    throw Error("build_grid: logarithmic spacing needs an annulus");

  Grid g;
  g.chart = Chart::Polar;
  g.radial_spacing = spacing;
  g.model = model;
  g.domain = domain;
  g.n1 = n1;
  g.n2 = n2;
  g.periodic2 = domain.full_turn();
  g.has_pole = domain.contains_pole();

  const bool logmap = spacing == RadialSpacing::Logarithmic;
  const double s0 = logmap ? std::log(domain.inner) : domain.inner;
  const double s1 = logmap ? std::log(domain.outer) : domain.outer;
  g.h1 = (s1 - s0) / (n1 - 1);
  const double th0 = domain.theta_min;
  g.h2 = g.periodic2 ? 2.0 * M_PI / n2
                     : (domain.theta_max - domain.theta_min) / (n2 - 1);
  const double full_span =
      g.periodic2 ? 2.0 * M_PI : domain.theta_max - domain.theta_min;

  auto rho_of = [&](double s) { return logmap ? std::exp(s) : s; };
  auto drho_of = [&](double s) { return logmap ? std::exp(s) : 1.0; };
  auto d2rho_of = [&](double s) { return logmap ? std::exp(s) : 0.0; };

  g.index_map.assign(static_cast<std::size_t>(n1) * n2, -1);

  auto push_node = [&](int i, int j, double s, double theta) {
    const int id = g.node_count();
    const double rho = (g.has_pole && i == 0) ? 0.0 : rho_of(s);
    g.c1.push_back(s);
    g.c2.push_back(theta);
    g.r_hat.push_back(rho);
    g.scale1.push_back(drho_of(s));
    g.dscale1.push_back(d2rho_of(s));
    g.scale2.push_back(model.f(rho));
    g.dscale2.push_back(model.df(rho) * drho_of(s));
    g.gi.push_back(i);
    g.gj.push_back(j);
    g.area.push_back(0.0);
    std::uint8_t b = 0;
    if (i == n1 - 1) b = 1;
    else if (i == 0 && !g.has_pole) b = 2;
    else if (!g.periodic2 && (j == 0 || j == n2 - 1)) b = 3;
    g.boundary.push_back(b);
    return id;
  };

  int i_start = 0;
  if (g.has_pole) {
    g.pole_id = push_node(0, 0, s0, 0.0);
    for (int j = 0; j < n2; ++j) g.index_map[j] = g.pole_id;
    i_start = 1;
  }
  for (int i = i_start; i < n1; ++i) {
    const double s = s0 + i * g.h1;
    for (int j = 0; j < n2; ++j) {
      const int id = push_node(i, j, s, th0 + j * g.h2);
      g.index_map[static_cast<std::size_t>(i) * n2 + j] = id;
    }
  }

  // Area weights: midpoint rule over each node's chart cell.  Half-width
  // bands at the radial rims; the pole owns the full innermost half-disc.
  auto band_weight = [&](int i) {
    const double s = s0 + i * g.h1;
    if (i == n1 - 1) {  // outer rim: half band
      const double m = s - 0.25 * g.h1;
      return model.f(rho_of(m)) * drho_of(m) * 0.5 * g.h1;
    }
    if (i == 0 && !g.has_pole) {  // inner rim of an annulus: half band
      const double m = s + 0.25 * g.h1;
      return model.f(rho_of(m)) * drho_of(m) * 0.5 * g.h1;
    }
    return model.f(rho_of(s)) * drho_of(s) * g.h1;
  };
  for (int id = (g.has_pole ? 1 : 0); id < g.node_count(); ++id) {
    const int i = g.gi[id], j = g.gj[id];
    double thw = g.h2;
    if (!g.periodic2 && (j == 0 || j == n2 - 1)) thw = 0.5 * g.h2;
    g.area[id] = band_weight(i) * thw;
  }
  if (g.has_pole) {
    const double rho_half = rho_of(s0 + 0.5 * g.h1);
    g.area[g.pole_id] =
        full_span * integrate([&](double r) { return model.f(r); }, 0.0,
                              rho_half, 1e-13);
  }
  return g;
}

Grid build_cartesian(const MetricModel& model, const Domain& domain, int n) {
  if (model.kind != MetricKind::Flat)
    throw Error("build_grid: Cartesian charts are defined for the flat model");
  if (domain.shape != DomainShape::GeodesicDisc)
    throw Error("build_grid: Cartesian charts cover geodesic discs only");
  if (n % 2 == 0)
    throw Error("build_grid: Cartesian grids need an odd node count per axis "
                "so the basepoint lands on a node");

  Grid g;
  g.chart = Chart::Cartesian;
  g.model = model;
  g.domain = domain;
  g.n1 = n;
  g.n2 = n;
  const double R = domain.outer;
  g.h1 = g.h2 = 2.0 * R / (n - 1);
  g.periodic2 = false;
  g.index_map.assign(static_cast<std::size_t>(n) * n, -1);

  const double R2 = R * R * (1.0 + 1e-14);
  auto coord = [&](int i) { return -R + i * g.h1; };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x = coord(i), y = coord(j);
      if (x * x + y * y > R2) continue;
      const int id = g.node_count();
      g.index_map[static_cast<std::size_t>(i) * n + j] = id;
      g.c1.push_back(x);
      g.c2.push_back(y);
      g.r_hat.push_back(std::hypot(x, y));
      g.scale1.push_back(1.0);
      g.scale2.push_back(1.0);
      g.dscale1.push_back(0.0);
      g.dscale2.push_back(0.0);
      g.gi.push_back(i);
      g.gj.push_back(j);
      g.area.push_back(0.0);
      g.boundary.push_back(0);
    }
  }

  // Boundary ring: nodes missing one of the four lattice neighbours.
  for (int id = 0; id < g.node_count(); ++id) {
    const int i = g.gi[id], j = g.gj[id];
    if (g.at(i + 1, j) < 0 || g.at(i - 1, j) < 0 || g.at(i, j + 1) < 0 ||
        g.at(i, j - 1) < 0)
      g.boundary[id] = 1;
  }

  // Cell areas: h^2 inside, exact circle overlap for cells that straddle the
  // boundary (chord length integrated adaptively).  Rim cells whose lattice
  // point fell outside the circle still cover slivers of the disc; those are
  // folded into the retained neighbour one step toward the axis of largest
  // offset, so the cell areas partition the disc exactly.
  const double h = g.h1;
  auto chord = [&](double x, double y0, double y1) {
    const double s2 = R * R - x * x;
    if (s2 <= 0) return 0.0;
    const double s = std::sqrt(s2);
    return std::max(0.0, std::min(y1, s) - std::max(y0, -s));
  };
  auto overlap = [&](int i, int j) {
    const double x0 = coord(i) - 0.5 * h, x1 = coord(i) + 0.5 * h;
    const double y0 = coord(j) - 0.5 * h, y1 = coord(j) + 0.5 * h;
    const double worst2 =
        std::max(x0 * x0, x1 * x1) + std::max(y0 * y0, y1 * y1);
    if (worst2 <= R * R) return h * h;
    const double nx = x0 > 0 ? x0 : (x1 < 0 ? x1 : 0.0);
    const double ny = y0 > 0 ? y0 : (y1 < 0 ? y1 : 0.0);
    if (nx * nx + ny * ny >= R * R) return 0.0;
    return integrate([&](double x) { return chord(x, y0, y1); },
                     std::max(x0, -R), std::min(x1, R), 1e-12);
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int id = g.index_map[static_cast<std::size_t>(i) * n + j];
      const double a = overlap(i, j);
      if (id >= 0) {
        g.area[id] += a;
        continue;
      }
      if (a <= 0.0) continue;
      int ii = i, jj = j;
      while (g.at(ii, jj) < 0) {
        // Each step strictly shrinks the radius, so the walk reaches a
        // retained node in a few iterations.
        if (std::abs(coord(ii)) >= std::abs(coord(jj)))
          ii -= coord(ii) > 0 ? 1 : -1;
        else
          jj -= coord(jj) > 0 ? 1 : -1;
      }
      g.area[g.at(ii, jj)] += a;
    }
  }
  return g;
}

}  // namespace

Grid build_grid(const MetricModel& model, const Domain& domain, int n_radial,
                int n_angular, Chart chart, RadialSpacing spacing) {
  if (n_radial < 8)
    throw Error("build_grid: need at least 8 nodes per direction (radial)");
  if (chart == Chart::Polar && n_angular < 8)
    throw Error("build_grid: need at least 8 nodes per direction (angular)");
  if (!(domain.outer < model.rho_max))
    throw Error("build_grid: domain exceeds the profile's validity range");
  if (domain.inner > 0 && !(model.f(domain.inner) > 0))
    throw Error("build_grid: profile not positive at the inner radius");
  if (!(model.f(domain.outer) > 0))
    throw Error("build_grid: profile not positive at the outer radius");
  model.verify_curvature_claim(std::max(domain.inner, 1e-6), domain.outer);

  if (chart == Chart::Cartesian) {
    if (spacing != RadialSpacing::Uniform)
      throw Error("build_grid: Cartesian charts use uniform spacing");
    return build_cartesian(model, domain, n_radial);
  }
  return build_polar(model, domain, n_radial, n_angular, spacing);
}

}  // namespace maxgraph
