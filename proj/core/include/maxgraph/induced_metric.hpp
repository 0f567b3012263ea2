#pragma once

#include <vector>

#include <maxgraph/graph_function.hpp>
#include <maxgraph/grid.hpp>

namespace maxgraph {

// Per-node metric data in chart coordinates: covariant components, their
// inverse, the chart volume density sqrt(det g), and the integrated cell
// measure used as the finite-volume weight.  At a polar pole the chart
// degenerates; tensor entries there are stored as zero (their radial limit)
// and consumers read first-ring data instead, while the volume keeps the
// exact cell measure.
struct MetricField {
  std::vector<double> g11, g12, g22;
  std::vector<double> inv11, inv12, inv22;
  std::vector<double> sqrt_det;
  std::vector<double> volume;

  int node_count() const { return static_cast<int>(volume.size()); }
};

// The base manifold's own metric in the grid's chart.
MetricField base_metric_field(const Grid& grid);

// Metric induced on the spacelike graph of u: g = sigma - du (x) du, with
// cell measures scaled by the Lorentz factor sqrt(1 - |grad u|^2).  Throws
// NotSpacelikeError if any node's margin is non-positive.
MetricField induced_metric_field(const Grid& grid, const GraphFunction& u);

}  // namespace maxgraph
