#include <maxgraph/wedge.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <maxgraph/errors.hpp>
#include <maxgraph/numerics.hpp>

namespace maxgraph {

namespace {

void validate_slope(double a) {
  if (!(a >= 0.0) || !(a < 1.0))
    throw Error("wedge slope must lie in [0, 1); the cone flattens onto the "
                "light cone at a = 1");
}

// Index of the basepoint node, or -1 when the grid does not contain it
// (annuli, pole-free rectangles).
int basepoint_node(const Grid& grid) {
  if (grid.has_pole) return grid.pole_id;
  if (grid.chart == Chart::Cartesian)
    for (int id = 0; id < grid.node_count(); ++id)
      if (grid.c1[id] == 0.0 && grid.c2[id] == 0.0) return id;
  return -1;
}

}  // namespace

bool wedge_membership(const WedgeSpec& w, const BasePoint& x, double t) {
  validate_slope(w.a);
  return std::abs(t) <= w.a * x.rho;
}

double phi_sublevel_bound(const WedgeSpec& w, double b) {
  validate_slope(w.a);
  if (!(b > 0.0)) throw Error("sublevel height b must be positive");
  return std::sqrt(b / (1.0 - w.a * w.a));
}

double dist_plus_to_wedge_boundary(const MetricModel& model,
                                   const BasePoint& x, double t) {
  if (x.rho < 0.0 || x.rho >= model.rho_max)
    throw Error("point is outside the profile's validity range");
  const double gap = x.rho - std::abs(t);
  if (gap < 0.0)
    throw Error("point lies outside the unit-slope wedge (|t| > r)");
  return gap / std::numbers::sqrt2;
}

HeightBoundReport graph_height_bound_check(const Grid& grid,
                                           const GraphFunction& u) {
  HeightBoundReport rep;
  rep.certificate = starlike_hull_check(grid.model, grid.domain);
  if (!rep.certificate.certified())
    throw Error("height bound needs a starlike domain: " +
                rep.certificate.note);

  const int base = basepoint_node(grid);
  double shift = 0.0;
  if (base >= 0 && u.value[base] != 0.0) {
    shift = u.value[base];
    rep.normalized = true;
  }

  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (int id = 0; id < grid.node_count(); ++id) {
    if (id == base) continue;
    const double margin = grid.r_hat[id] - std::abs(u.value[id] - shift);
    if (margin < rep.worst_margin) {
      rep.worst_margin = margin;
      rep.worst_node = id;
    }
  }
  rep.pass = rep.worst_margin > 0.0;
  return rep;
}

double properness_bound(double epsilon, double b) {
  if (!(epsilon > 0.0))
    throw Error("properness bound needs a positive cone clearance");
  if (!(b > 0.0)) throw Error("sublevel height b must be positive");
  return (2.0 * epsilon * epsilon + b) /
         (2.0 * std::numbers::sqrt2 * epsilon);
}

PropernessCertificate properness_certificate(const Grid& grid,
                                             const GraphFunction& u, double b,
                                             double delta) {
  if (grid.chart != Chart::Polar)
    throw Error("properness certificate needs a polar grid");
  PropernessCertificate cert;
  cert.delta = delta;
  cert.b = b;

  // Ring closest to radius delta; the anchor circle must be on the grid.
  int ring = -1;
  double best = std::numeric_limits<double>::infinity();
  for (int i = grid.has_pole ? 1 : 0; i < grid.n1; ++i) {
    const auto ids = grid.row(i);
    if (ids.empty()) continue;
    const double miss = std::abs(grid.r_hat[ids.front()] - delta);
    if (miss < best) {
      best = miss;
      ring = i;
    }
  }
  if (ring < 0 || best > grid.spacing())
    throw Error("no grid ring near the requested anchor radius");

  cert.epsilon = std::numeric_limits<double>::infinity();
  double steepest = 0.0;
  for (int id : grid.row(ring)) {
    cert.epsilon = std::min(
        cert.epsilon, (grid.r_hat[id] - std::abs(u.value[id])) /
                          std::numbers::sqrt2);
    steepest = std::max(steepest, std::sqrt(u.grad_norm2[id]));
  }
  if (!(cert.epsilon > 0.0))
    throw Error("graph touches the cone on the anchor circle; no properness "
                "certificate");
  // The sampled minimum can overshoot the true circle minimum by at most the
  // integrand's Lipschitz bound times half the node spacing along the circle.
  const double ring_radius = grid.r_hat[grid.row(ring).front()];
  cert.sampling_gap = 0.5 * grid.h2 * grid.model.f(ring_radius) *
                      (1.0 + steepest) / std::numbers::sqrt2;

  cert.bound = properness_bound(cert.epsilon, b);
  for (int id = 0; id < grid.node_count(); ++id) {
    if (grid.r_hat[id] <= ring_radius) continue;
    const double phi =
        grid.r_hat[id] * grid.r_hat[id] - u.value[id] * u.value[id];
    if (phi <= b && grid.r_hat[id] > cert.bound) ++cert.violations;
  }
  return cert;
}

EventualPositivityReport eventual_positivity_report(
    const MetricModel& model,
    const std::function<double(double, double)>& height,
    const std::vector<double>& outer_radii, double b,
    const ExhaustionOptions& opts) {
  if (outer_radii.size() < 2)
    throw Error("exhaustion needs at least two nested annuli");
  if (!(b > 0.0)) throw Error("sublevel height b must be positive");
  for (std::size_t k = 0; k < outer_radii.size(); ++k) {
    const double lo = k == 0 ? opts.inner_radius : outer_radii[k - 1];
    if (!(outer_radii[k] > lo))
      throw Error("exhaustion radii must be strictly increasing and larger "
                  "than the inner radius");
  }

  EventualPositivityReport rep;
  rep.b = b;
  rep.sublevels_bounded = true;
  for (double R : outer_radii) {
    const Grid grid =
        build_grid(model, Domain::annulus(opts.inner_radius, R), opts.n_radial,
                   opts.n_angular, Chart::Polar, RadialSpacing::Logarithmic);
    const GraphFunction u = make_graph(grid, sample_polar(grid, height));

    ExhaustionLevel level;
    level.outer_radius = R;
    level.core_radius = std::max(opts.core_fraction * R, opts.inner_radius);
    level.min_phi_outside_core = std::numeric_limits<double>::infinity();
    int outside = 0;
    for (int id = 0; id < grid.node_count(); ++id) {
      const double r = grid.r_hat[id];
      const double phi = r * r - u.value[id] * u.value[id];
      if (r > level.core_radius) {
        level.min_phi_outside_core = std::min(level.min_phi_outside_core, phi);
        ++outside;
      }
      if (phi <= b) level.sublevel_radius = std::max(level.sublevel_radius, r);
    }
    if (outside == 0)
      throw Error("exhaustion level has no nodes outside its core");
    level.positive_outside_core = level.min_phi_outside_core > 0.0;
    level.sublevel_bounded = level.sublevel_radius < 0.9 * R;
    rep.sublevels_bounded = rep.sublevels_bounded && level.sublevel_bounded;
    rep.levels.push_back(level);
  }
  rep.eventually_positive = rep.levels.back().positive_outside_core;
  return rep;
}

double wedge_entry_radius(const std::function<double(double)>& profile,
                          double a, double rho_lo, double rho_hi) {
  validate_slope(a);
  if (!(rho_lo >= 0.0) || !(rho_hi > rho_lo))
    throw Error("wedge entry: need 0 <= rho_lo < rho_hi");

  const auto clearance = [&](double rho) {
    return a * rho - std::abs(profile(rho));
  };
  constexpr int kSamples = 4096;
  const double step = (rho_hi - rho_lo) / kSamples;
  int last_violation = -1;
  for (int k = 0; k <= kSamples; ++k)
    if (clearance(rho_lo + k * step) < 0.0) last_violation = k;
  if (last_violation == kSamples)
    throw Error("profile is still outside the wedge at the probe's end");
  if (last_violation < 0) return rho_lo;
  return bisect(clearance, rho_lo + last_violation * step,
                rho_lo + (last_violation + 1) * step);
}

}  // namespace maxgraph
