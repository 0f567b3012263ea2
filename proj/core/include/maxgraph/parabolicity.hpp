#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <maxgraph/discrete_operator.hpp>
#include <maxgraph/grid.hpp>
#include <maxgraph/metric_model.hpp>
#include <maxgraph/surface_fields.hpp>

namespace maxgraph {

enum class CapacityVerdict {
  DecayConsistentWithParabolic,
  PlateauConsistentWithNonParabolic,
  Inconclusive,
};

std::string to_string(CapacityVerdict v);

// Capacities of a growing annulus family with a fixed inner edge.  A
// c / log R fit within the decay band reads as parabolic behaviour; a
// positive level with small variation across the last three radii reads as
// non-parabolic.  Finite radii cannot prove either, hence the wording.
struct CapacityCurve {
  std::vector<double> radii;
  std::vector<double> capacities;
  CapacityVerdict verdict = CapacityVerdict::Inconclusive;
  double fitted_decay_constant = 0.0;  // c in cap ~ c / log R, decay verdict
  double plateau_level = 0.0;          // mean of the last three, plateau verdict
};

struct TrendOptions {
  double inner_radius = 1.0;
  int n_radial = 65;
  int n_angular = 32;
  double decay_fit_band = 0.10;  // max relative residual of the c/log R fit
  double plateau_band = 0.05;    // relative variation across the last three
};

struct WalkStats {
  long n_walks = 0;
  std::uint64_t seed = 0;
  double escape_probability = 0.0;
  double confidence = 0.0;  // binomial standard error
};

// Sign check of the discrete Laplacian of log phi over the region
// { phi >= phi_min } away from boundaries; nonpositive up to the quadratic
// consistency envelope when the base curvature is nonnegative.
struct SuperharmonicityReport {
  double max_log_phi_laplacian = 0.0;
  double tolerance = 0.0;  // 10 * spacing^2
  bool pass = false;
  bool curvature_hypothesis_ok = false;  // min base curvature >= 0 on the grid
  int region_size = 0;
};

// The inequality chain for phi = r^2 - h^2 on a maximal graph:
// (1/2) Laplacian(phi) <= 2,  |grad phi|^2 >= 4 phi, and the exact
// decomposition |grad phi|^2 = 4 phi + 4 (r <grad r, N> + h Theta)^2.
struct PhiChainReport {
  double max_half_laplacian_excess = 0.0;   // max of (1/2) Lap(phi) - 2
  double max_gradient_deficit = 0.0;        // max of 4 phi - |grad phi|^2
  double max_decomposition_residual = 0.0;  // sup-norm of the exact identity
  double chain_tolerance = 0.0;             // 10 * spacing^2
  double decomposition_tolerance = 0.0;     // 25 * spacing^2
  bool pass = false;
};

// Slice over the hyperbolic base: maximal, phi eventually positive and
// proper, yet the capacities plateau — the curvature hypothesis is sharp.
struct CounterexampleReport {
  double t0 = 0.0;
  double max_interior_mean_curvature = 0.0;
  double positivity_radius = 0.0;  // phi > 0 wherever r exceeds this
  bool eventually_positive = false;
  bool sublevels_bounded = false;  // { phi <= a } inside a bounded disc
  CapacityCurve curve;
};

SuperharmonicityReport superharmonicity_report(const Grid& grid,
                                               const SurfaceFields& fields,
                                               const DiscreteOperator& op,
                                               double phi_min);

PhiChainReport check_phi_inequalities(const Grid& grid,
                                      const SurfaceFields& fields,
                                      const DiscreteOperator& op);

// Energy of the harmonic function with value 1 on the `inner_marker`
// boundary and 0 on the `outer_marker` boundary (markers are the grid's
// boundary codes).  Throws when either marker set is empty or the system
// does not factor.
double annulus_capacity(const DiscreteOperator& op, const Grid& grid,
                        int inner_marker = 2, int outer_marker = 1);

// Capacity of the graph of `height` over annuli [inner_radius, R] for each
// R in `radii` (at least four, strictly increasing), on logarithmically
// spaced polar grids, with the verdict applied per CapacityCurve.
CapacityCurve capacity_trend(const MetricModel& model,
                             const std::function<double(double, double)>& height,
                             const std::vector<double>& radii,
                             const TrendOptions& opts = {});

// Conductance-weighted random walk from `start`, absorbed on the marked
// boundaries; estimates the probability of reaching `outer_marker` first.
// Walkers draw from independent counter-based streams (seed, walker id),
// so the estimate is reproducible for a fixed seed.  Aborts if any
// transition weight is negative.
WalkStats random_walk_escape(const DiscreteOperator& op, const Grid& grid,
                             int start, int inner_marker, int outer_marker,
                             long n_walks, std::uint64_t seed);

CounterexampleReport counterexample_slice(double t0);

}  // namespace maxgraph
