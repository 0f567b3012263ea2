#include <maxgraph/parabolicity.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include <maxgraph/errors.hpp>
#include <maxgraph/graph_function.hpp>
#include <maxgraph/induced_metric.hpp>
#include <maxgraph/numerics.hpp>
#include <maxgraph/solver.hpp>

namespace maxgraph {

std::string to_string(CapacityVerdict v) {
  switch (v) {
    case CapacityVerdict::DecayConsistentWithParabolic:
      return "decay consistent with parabolic";
    case CapacityVerdict::PlateauConsistentWithNonParabolic:
      return "plateau consistent with non-parabolic";
    case CapacityVerdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

namespace {

// Laplacian of nodal data at one node straight from the weight matrix; used
// when the data is only defined on part of the grid (log phi), where a
// whole-vector apply() would drag NaNs through zero weights.
double laplacian_at(const DiscreteOperator& op, const std::vector<double>& v,
                    int id) {
  double acc = 0.0;
  for (Eigen::SparseMatrix<double>::InnerIterator it(op.weights(), id); it;
       ++it) {
    const int j = static_cast<int>(it.row());
    if (j == id || it.value() == 0.0) continue;
    acc += it.value() * (v[j] - v[id]);
  }
  return acc / op.volumes()[id];
}

// r <grad r, N*> in the ambient sense, from the frame components of N*.
double radial_alignment(const Grid& grid, const SurfaceFields& f, int id) {
  if (grid.chart == Chart::Polar && !grid.is_pole(id))
    return f.radius[id] * f.nstar1[id];
  // Cartesian frame: grad r = (x, y)/r, so r <grad r, N*> = x q1/w + y q2/w.
  return grid.c1[id] * f.nstar1[id] + grid.c2[id] * f.nstar2[id];
}

}  // namespace

SuperharmonicityReport superharmonicity_report(const Grid& grid,
                                               const SurfaceFields& fields,
                                               const DiscreteOperator& op,
                                               double phi_min) {
  if (!(phi_min > 0.0))
    throw Error("superharmonicity: the phi cutoff must be positive");
  const int n = grid.node_count();
  std::vector<double> log_phi(n, std::numeric_limits<double>::quiet_NaN());
  for (int id = 0; id < n; ++id)
    if (fields.phi[id] > 0.0) log_phi[id] = std::log(fields.phi[id]);

  SuperharmonicityReport rep;
  rep.tolerance = 10.0 * grid.spacing() * grid.spacing();
  rep.max_log_phi_laplacian = -std::numeric_limits<double>::infinity();

  for (int id : grid.report_mask()) {
    if (fields.phi[id] < phi_min) continue;
    bool neighbors_ok = true;
    for (Eigen::SparseMatrix<double>::InnerIterator it(op.weights(), id); it;
         ++it) {
      const int j = static_cast<int>(it.row());
      if (j == id || it.value() == 0.0) continue;
      if (!(fields.phi[j] > 0.0)) {
        neighbors_ok = false;
        break;
      }
    }
    if (!neighbors_ok) continue;
    rep.max_log_phi_laplacian =
        std::max(rep.max_log_phi_laplacian, laplacian_at(op, log_phi, id));
    ++rep.region_size;
  }
  if (rep.region_size == 0)
    throw Error("superharmonicity: no reportable nodes above the phi cutoff");

  double min_curvature = std::numeric_limits<double>::infinity();
  for (int id = 0; id < n; ++id)
    min_curvature =
        std::min(min_curvature, grid.model.gaussian_curvature(grid.r_hat[id]));
  rep.curvature_hypothesis_ok = min_curvature >= -1e-12;
  rep.pass = rep.max_log_phi_laplacian <= rep.tolerance;
  return rep;
}

PhiChainReport check_phi_inequalities(const Grid& grid,
                                      const SurfaceFields& fields,
                                      const DiscreteOperator& op) {
  const auto lap_phi = op.apply(fields.phi);
  const auto grad2_phi = op.gradient_norm2(fields.phi);

  PhiChainReport rep;
  const double d = grid.spacing();
  rep.chain_tolerance = 10.0 * d * d;
  rep.decomposition_tolerance = 25.0 * d * d;
  rep.max_half_laplacian_excess = -std::numeric_limits<double>::infinity();
  rep.max_gradient_deficit = -std::numeric_limits<double>::infinity();
  rep.max_decomposition_residual = 0.0;

  for (int id : grid.report_mask()) {
    rep.max_half_laplacian_excess =
        std::max(rep.max_half_laplacian_excess, 0.5 * lap_phi[id] - 2.0);
    rep.max_gradient_deficit = std::max(
        rep.max_gradient_deficit, 4.0 * fields.phi[id] - grad2_phi[id]);
    const double s =
        radial_alignment(grid, fields, id) + fields.height[id] * fields.tilt[id];
    rep.max_decomposition_residual = std::max(
        rep.max_decomposition_residual,
        std::abs(grad2_phi[id] - 4.0 * fields.phi[id] - 4.0 * s * s));
  }
  rep.pass = rep.max_half_laplacian_excess <= rep.chain_tolerance &&
             rep.max_gradient_deficit <= rep.chain_tolerance &&
             rep.max_decomposition_residual <= rep.decomposition_tolerance;
  return rep;
}

double annulus_capacity(const DiscreteOperator& op, const Grid& grid,
                        int inner_marker, int outer_marker) {
  int n_inner = 0, n_outer = 0;
  std::vector<double> data(grid.node_count(), 0.0);
  for (int id = 0; id < grid.node_count(); ++id) {
    if (grid.boundary[id] == inner_marker) {
      data[id] = 1.0;
      ++n_inner;
    } else if (grid.boundary[id] == outer_marker) {
      ++n_outer;
    }
  }
  if (n_inner == 0 || n_outer == 0)
    throw Error("capacity: grid lacks a marked inner or outer boundary");
  const auto potential = op.harmonic_extension(data);
  return op.dirichlet_energy(potential);
}

CapacityCurve capacity_trend(const MetricModel& model,
                             const std::function<double(double, double)>& height,
                             const std::vector<double>& radii,
                             const TrendOptions& opts) {
  if (radii.size() < 4)
    throw Error("capacity trend: need at least four outer radii");
  if (!(opts.inner_radius > 0.0))
    throw Error("capacity trend: inner radius must be positive");
  for (std::size_t k = 0; k < radii.size(); ++k) {
    const double lo = k == 0 ? opts.inner_radius : radii[k - 1];
    if (!(radii[k] > lo))
      throw Error("capacity trend: radii must be strictly increasing and "
                  "larger than the inner radius");
  }

  CapacityCurve curve;
  curve.radii = radii;
  for (double R : radii) {
    const Grid grid =
        build_grid(model, Domain::annulus(opts.inner_radius, R), opts.n_radial,
                   opts.n_angular, Chart::Polar, RadialSpacing::Logarithmic);
    const GraphFunction u = make_graph(grid, sample_polar(grid, height));
    const DiscreteOperator op =
        DiscreteOperator::assemble(grid, induced_metric_field(grid, u));
    curve.capacities.push_back(annulus_capacity(op, grid));
  }

  // Decay reading: fit the single constant c in cap ~ c / log(R / R_inner)
  // and accept when every sample sits within the relative band.
  double c_fit = 0.0;
  for (std::size_t k = 0; k < radii.size(); ++k)
    c_fit += curve.capacities[k] * std::log(radii[k] / opts.inner_radius);
  c_fit /= static_cast<double>(radii.size());
  double worst_fit = 0.0;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    const double predicted = c_fit / std::log(radii[k] / opts.inner_radius);
    worst_fit = std::max(worst_fit,
                         std::abs(predicted - curve.capacities[k]) /
                             std::abs(curve.capacities[k]));
  }
  if (worst_fit < opts.decay_fit_band) {
    curve.verdict = CapacityVerdict::DecayConsistentWithParabolic;
    curve.fitted_decay_constant = c_fit;
    return curve;
  }

  // Plateau reading: the last three capacities agree to within the band and
  // stay away from zero.
  const std::size_t m = curve.capacities.size();
  const double a = curve.capacities[m - 3], b = curve.capacities[m - 2],
               c = curve.capacities[m - 1];
  const double mean = (a + b + c) / 3.0;
  const double spread = std::max({a, b, c}) - std::min({a, b, c});
  if (mean > 0.0 && spread < opts.plateau_band * mean) {
    curve.verdict = CapacityVerdict::PlateauConsistentWithNonParabolic;
    curve.plateau_level = mean;
  }
  return curve;
}

WalkStats random_walk_escape(const DiscreteOperator& op, const Grid& grid,
                             int start, int inner_marker, int outer_marker,
                             long n_walks, std::uint64_t seed) {
  if (n_walks <= 0) throw Error("random walk: need a positive walker count");
  if (start < 0 || start >= grid.node_count())
    throw Error("random walk: start node out of range");
  if (grid.boundary[start] == outer_marker)
    throw Error("random walk: start node already sits on the escape boundary");
  WalkStats stats;
  stats.n_walks = n_walks;
  stats.seed = seed;
  if (grid.boundary[start] == inner_marker) return stats;  // absorbed at once
  if (grid.boundary[start] != 0)
    throw Error("random walk: start node sits on an absorbing side boundary");
  if (!op.all_edges_nonnegative())
    throw Error("random walk: operator has negative transition weights");

  // Transition table: for each interior node the cumulative conductance
  // distribution over its incident edges.  The weight matrix is symmetric,
  // so a column scan reads the row.
  const int n = grid.node_count();
  std::vector<int> offset(n + 1, 0);
  std::vector<int> target;
  std::vector<double> cumulative;
  for (int id = 0; id < n; ++id) {
    offset[id] = static_cast<int>(target.size());
    if (grid.boundary[id] != 0) continue;
    double total = 0.0;
    for (Eigen::SparseMatrix<double>::InnerIterator it(op.weights(), id); it;
         ++it) {
      const int j = static_cast<int>(it.row());
      if (j == id) continue;
      const double w = std::max(it.value(), 0.0);  // nonneg up to roundoff
      if (w == 0.0) continue;
      total += w;
      target.push_back(j);
      cumulative.push_back(total);
    }
    if (total <= 0.0)
      throw Error("random walk: interior node " + std::to_string(id) +
                  " has no outgoing weight");
    for (int k = offset[id]; k < static_cast<int>(cumulative.size()); ++k)
      cumulative[k] /= total;
  }
  offset[n] = static_cast<int>(target.size());

  constexpr long kStepBudget = 1000000;
  long escapes = 0;
  for (long walker = 0; walker < n_walks; ++walker) {
    CounterRng rng(seed, static_cast<std::uint64_t>(walker));
    int cur = start;
    long steps = 0;
    while (grid.boundary[cur] == 0) {
      if (++steps > kStepBudget)
        throw Error("random walk: walker exceeded the step budget");
      const double r = rng.next_double();
      const auto first = cumulative.begin() + offset[cur];
      const auto last = cumulative.begin() + offset[cur + 1];
      const auto pick = std::upper_bound(first, last, r);
      cur = target[std::min<std::ptrdiff_t>(pick - cumulative.begin(),
                                            offset[cur + 1] - 1)];
    }
    if (grid.boundary[cur] == outer_marker) ++escapes;
  }
  stats.escape_probability =
      static_cast<double>(escapes) / static_cast<double>(n_walks);
  stats.confidence = std::sqrt(stats.escape_probability *
                               (1.0 - stats.escape_probability) /
                               static_cast<double>(n_walks));
  return stats;
}

CounterexampleReport counterexample_slice(double t0) {
  const MetricModel model = MetricModel::hyperbolic();
  CounterexampleReport rep;
  rep.t0 = t0;
  rep.positivity_radius = std::abs(t0);

  const std::vector<double> radii = {4.0, 8.0, 16.0, 32.0};
  rep.curve = capacity_trend(
      model, [t0](double, double) { return t0; }, radii);

  // Geometry checks on the widest annulus in the family.
  const Grid grid = build_grid(model, Domain::annulus(1.0, radii.back()), 65,
                               32, Chart::Polar, RadialSpacing::Logarithmic);
  const GraphFunction u =
      make_graph(grid, std::vector<double>(grid.node_count(), t0));
  const SurfaceFields fields = surface_fields(grid, u);
  rep.max_interior_mean_curvature = max_interior_residual(grid, fields);

  const double pad = grid.spacing();
  rep.eventually_positive = true;
  for (int id = 0; id < grid.node_count(); ++id)
    if (grid.r_hat[id] > rep.positivity_radius + pad &&
        !(fields.phi[id] > 0.0))
      rep.eventually_positive = false;

  // phi = r^2 - t0^2, so { phi <= a } should stay inside r <= sqrt(a + t0^2).
  const double level = t0 * t0 + 1.0;
  double worst_radius = 0.0;
  for (int id = 0; id < grid.node_count(); ++id)
    if (fields.phi[id] <= level)
      worst_radius = std::max(worst_radius, grid.r_hat[id]);
  rep.sublevels_bounded = worst_radius <= std::sqrt(level + t0 * t0) + pad;
  return rep;
}

}  // namespace maxgraph
