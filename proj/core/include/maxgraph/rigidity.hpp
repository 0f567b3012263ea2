#pragma once

#include <functional>
#include <limits>
#include <vector>

#include <maxgraph/discrete_operator.hpp>
#include <maxgraph/grid.hpp>
#include <maxgraph/metric_model.hpp>
#include <maxgraph/solver.hpp>
#include <maxgraph/surface_fields.hpp>

namespace maxgraph {

// Residuals of the two tilt identities satisfied by maximal graphs,
//
//   Lap(Theta)       = Theta (K (Theta^2 - 1) + |A|^2),
//   |grad Theta|^2   = (1/2) |A|^2 (Theta^2 - 1),
//
// with the left sides discrete and the right sides pointwise (K evaluated at
// the node's base projection).  The optional radial band pins the reported
// region: refinement studies need a fixed band because the full-mask maximum
// migrates toward the rim as grids refine, which understates the order.
struct TiltIdentityReport {
  double max_laplacian_residual = 0.0;
  double max_gradient_residual = 0.0;
  double max_interior_mean_curvature = 0.0;  // maximality of the input
  int region_size = 0;
};

TiltIdentityReport theta_identities_check(
    const Grid& grid, const SurfaceFields& fields, const DiscreteOperator& op,
    double rho_lo = 0.0,
    double rho_hi = std::numeric_limits<double>::infinity());

// Discrete minimum of Lap(1/Theta), which is nonnegative on maximal graphs
// over nonnegatively curved bases, plus the pointwise range -1 <= 1/Theta < 0.
struct InverseTiltReport {
  double min_laplacian = 0.0;
  double tolerance = 0.0;  // 10 * spacing^2
  bool pass = false;       // min >= -tolerance
  bool curvature_hypothesis_ok = false;  // min base curvature >= 0
  bool range_ok = false;
};

InverseTiltReport inverse_theta_subharmonic(const Grid& grid,
                                            const SurfaceFields& fields,
                                            const DiscreteOperator& op);

// Dirichlet solves over a growing family of geodesic discs with the same
// angular boundary data, watching the second fundamental form on a fixed
// probe disc.  Entire maximal graphs are totally geodesic, so the
// rigidity-consistent expectation is a flattening trend; the trend is
// reported as evidence, not asserted as a theorem.
struct FlatnessLevel {
  double radius = 0.0;
  double sup_shape_norm2 = 0.0;  // over the probe disc
  double sup_tilt_excess = 0.0;  // sup |Theta + 1| over the probe disc
  double solver_residual = 0.0;
  int iterations = 0;
};

struct FlatnessTrend {
  double probe_radius = 0.0;
  std::vector<FlatnessLevel> levels;
  bool monotone_decreasing = false;  // sup |A|^2 non-increasing in R
  double final_sup_shape_norm2 = 0.0;
};

struct FlatnessOptions {
  double probe_radius = 1.0;
  // Radial resolution of the smallest disc; larger discs scale the node
  // count to keep the spacing fixed, so levels are comparable.
  int n_radial = 33;
  int n_angular = 32;
  // Affine data is exact on the Cartesian chart only; polar stencils see
  // trigonometric angular profiles and leave an O(h^2) floor.
  Chart chart = Chart::Polar;
  SolverOptions solver;
};

FlatnessTrend bernstein_flatness_test(
    const MetricModel& model,
    const std::function<double(double, double)>& boundary,
    const std::vector<double>& radii, const FlatnessOptions& opts = {});

}  // namespace maxgraph
