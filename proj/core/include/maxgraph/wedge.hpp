#pragma once

#include <functional>
#include <vector>

#include <maxgraph/domain.hpp>
#include <maxgraph/graph_function.hpp>
#include <maxgraph/grid.hpp>
#include <maxgraph/metric_model.hpp>

namespace maxgraph {

// The cone |t| <= a r(x) around the basepoint's time axis.  Spacelike graphs
// anchored at the basepoint eventually live in one of these, which turns
// sublevel sets of phi = r^2 - h^2 into bounded sets.  a = 0 degenerates to
// the time-zero slice; a = 1 (the light cone of the product) is reserved for
// distance queries and is not a valid spec.
struct WedgeSpec {
  double a = 0.5;
};

bool wedge_membership(const WedgeSpec& w, const BasePoint& x, double t);

// Radius bound sqrt(b / (1 - a^2)): inside the wedge, phi <= b confines the
// base radius to this value (and |t| to a times it).
double phi_sublevel_bound(const WedgeSpec& w, double b);

// Distance from (x, t) to the light-cone boundary |t| = r(x) measured in the
// Riemannian product metric, (r(x) - |t|) / sqrt(2).  The point must satisfy
// |t| <= r(x).
double dist_plus_to_wedge_boundary(const MetricModel& model,
                                   const BasePoint& x, double t);

// |u| < r away from the basepoint, for spacelike data on a starlike domain
// (annuli borrow the radial-hull certificate).  Data is shifted to vanish at
// the basepoint when the grid contains it.
struct HeightBoundReport {
  bool pass = false;
  double worst_margin = 0.0;  // min over probed nodes of r - |u|
  int worst_node = -1;
  bool normalized = false;  // data was shifted to vanish at the basepoint
  StarlikeCertificate certificate;
};

HeightBoundReport graph_height_bound_check(const Grid& grid,
                                           const GraphFunction& u);

// (2 eps^2 + b) / (2 sqrt(2) eps): radius bound for { phi <= b } when the
// graph keeps product-distance eps from the light cone on the core circle.
double properness_bound(double epsilon, double b);

struct PropernessCertificate {
  double delta = 0.0;         // radius of the anchoring circle
  double b = 0.0;             // sublevel height the bound covers
  double epsilon = 0.0;       // min cone distance sampled on the circle
  double sampling_gap = 0.0;  // worst-case epsilon error from finite sampling
  double bound = 0.0;         // the radius bound
  int violations = 0;         // sampled sublevel nodes beyond the bound
};

// Certifies { phi <= b } subset of { r <= bound } for the graph of u, with
// epsilon measured on the grid ring closest to radius delta.  Throws when the
// graph touches the cone on that ring (epsilon <= 0) or when no grid ring
// lies near delta.
PropernessCertificate properness_certificate(const Grid& grid,
                                             const GraphFunction& u, double b,
                                             double delta);

// Behaviour of phi = r^2 - h^2 across a nested family of annuli
// [inner_radius, R].  Each level examines phi outside a core that grows with
// the level (core_fraction * R), so transient negativity near the inner edge
// does not mask eventual positivity.
struct ExhaustionLevel {
  double outer_radius = 0.0;
  double core_radius = 0.0;
  double min_phi_outside_core = 0.0;
  bool positive_outside_core = false;
  double sublevel_radius = 0.0;  // largest r with phi <= b (0 if none)
  bool sublevel_bounded = false;  // sublevel set keeps clear of the rim
};

struct EventualPositivityReport {
  double b = 0.0;
  std::vector<ExhaustionLevel> levels;
  bool eventually_positive = false;  // verdict of the widest level
  bool sublevels_bounded = false;    // every level's sublevel set bounded
};

struct ExhaustionOptions {
  double inner_radius = 1.0;
  double core_fraction = 0.25;
  int n_radial = 65;
  int n_angular = 32;
};

EventualPositivityReport eventual_positivity_report(
    const MetricModel& model,
    const std::function<double(double, double)>& height,
    const std::vector<double>& outer_radii, double b,
    const ExhaustionOptions& opts = {});

// Smallest radius past which the rotationally symmetric profile stays inside
// the wedge of slope a, located by scan plus bisection over [rho_lo, rho_hi].
// Returns rho_lo when the profile never leaves the wedge; throws when it is
// still outside at rho_hi.
double wedge_entry_radius(const std::function<double(double)>& profile,
                          double a, double rho_lo, double rho_hi);

}  // namespace maxgraph
