#include <maxgraph/rigidity.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include <maxgraph/errors.hpp>
#include <maxgraph/graph_function.hpp>
#include <maxgraph/induced_metric.hpp>

namespace maxgraph {

TiltIdentityReport theta_identities_check(const Grid& grid,
                                          const SurfaceFields& fields,
                                          const DiscreteOperator& op,
                                          double rho_lo, double rho_hi) {
  const auto lap_tilt = op.apply(fields.tilt);
  const auto grad2_tilt = op.gradient_norm2(fields.tilt);

  TiltIdentityReport rep;
  for (int id : grid.report_mask()) {
    if (grid.r_hat[id] < rho_lo || grid.r_hat[id] > rho_hi) continue;
    const double theta = fields.tilt[id];
    const double excess = theta * theta - 1.0;
    const double curvature = grid.model.gaussian_curvature(grid.r_hat[id]);

    const double lap_rhs =
        theta * (curvature * excess + fields.shape_norm2[id]);
    rep.max_laplacian_residual = std::max(rep.max_laplacian_residual,
                                          std::abs(lap_tilt[id] - lap_rhs));

    const double grad_rhs = 0.5 * fields.shape_norm2[id] * excess;
    rep.max_gradient_residual = std::max(rep.max_gradient_residual,
                                         std::abs(grad2_tilt[id] - grad_rhs));

    rep.max_interior_mean_curvature =
        std::max(rep.max_interior_mean_curvature,
                 std::abs(fields.mean_curvature[id]));
    ++rep.region_size;
  }
  if (rep.region_size == 0)
    throw Error("tilt identities: the requested band contains no "
                "reportable nodes");
  return rep;
}

InverseTiltReport inverse_theta_subharmonic(const Grid& grid,
                                            const SurfaceFields& fields,
                                            const DiscreteOperator& op) {
  const int n = grid.node_count();
  std::vector<double> inverse(n);
  InverseTiltReport rep;
  rep.range_ok = true;
  for (int id = 0; id < n; ++id) {
    inverse[id] = 1.0 / fields.tilt[id];
    if (!(inverse[id] >= -1.0) || !(inverse[id] < 0.0)) rep.range_ok = false;
  }

  const auto lap = op.apply(inverse);
  rep.min_laplacian = std::numeric_limits<double>::infinity();
  for (int id : grid.report_mask())
    rep.min_laplacian = std::min(rep.min_laplacian, lap[id]);

  rep.tolerance = 10.0 * grid.spacing() * grid.spacing();
  double min_curvature = std::numeric_limits<double>::infinity();
  for (int id = 0; id < n; ++id)
    min_curvature =
        std::min(min_curvature, grid.model.gaussian_curvature(grid.r_hat[id]));
  rep.curvature_hypothesis_ok = min_curvature >= -1e-12;
  rep.pass = rep.min_laplacian >= -rep.tolerance;
  return rep;
}

FlatnessTrend bernstein_flatness_test(
    const MetricModel& model,
    const std::function<double(double, double)>& boundary,
    const std::vector<double>& radii, const FlatnessOptions& opts) {
  if (radii.empty()) throw Error("flatness test: empty radius list");
  for (std::size_t k = 0; k < radii.size(); ++k) {
    const double lo = k == 0 ? opts.probe_radius : radii[k - 1];
    if (!(radii[k] > lo))
      throw Error("flatness test: radii must be strictly increasing and "
                  "larger than the probe radius");
  }

  FlatnessTrend trend;
  trend.probe_radius = opts.probe_radius;
  trend.monotone_decreasing = true;
  for (double R : radii) {
    // Scale the radial node count so every disc shares the base spacing.
    const int n_radial =
        1 + static_cast<int>(
                std::lround((opts.n_radial - 1) * R / radii.front()));
    const Grid grid = build_grid(model, Domain::disc(R), n_radial,
                                 opts.n_angular, opts.chart);

    SolveReport solve_report;
    const GraphFunction u = solve_dirichlet(
        grid, sample_polar(grid, boundary), opts.solver, &solve_report);
    const SurfaceFields fields = surface_fields(grid, u);

    FlatnessLevel level;
    level.radius = R;
    level.solver_residual = solve_report.final_residual;
    level.iterations = static_cast<int>(solve_report.history.size());
    int probed = 0;
    for (int id : grid.report_mask()) {
      if (grid.r_hat[id] > opts.probe_radius) continue;
      level.sup_shape_norm2 =
          std::max(level.sup_shape_norm2, fields.shape_norm2[id]);
      level.sup_tilt_excess =
          std::max(level.sup_tilt_excess, std::abs(fields.tilt[id] + 1.0));
      ++probed;
    }
    if (probed == 0)
      throw Error("flatness test: probe disc misses the report region");

    if (!trend.levels.empty() &&
        level.sup_shape_norm2 >
            trend.levels.back().sup_shape_norm2 * (1.0 + 1e-9) + 1e-15)
      trend.monotone_decreasing = false;
    trend.levels.push_back(level);
  }
  trend.final_sup_shape_norm2 = trend.levels.back().sup_shape_norm2;
  return trend;
}

}  // namespace maxgraph
