#pragma once

#include <cstdint>
#include <vector>

#include "maxgraph/domain.hpp"
#include "maxgraph/metric_model.hpp"

namespace maxgraph {

enum class Chart { Polar, Cartesian };
enum class RadialSpacing { Uniform, Logarithmic };

/// Structured chart grid over a domain of the base surface.
///
/// Polar grids put nodes on a tensor lattice in (s, theta), where s is either
/// rho itself or log(rho); the chart metric stays diagonal either way, and
/// each node carries the scale factors of the orthonormal frame
/// e1 = (1/scale1) d/ds, e2 = (1/scale2) d/theta.  A disc's innermost row
/// collapses to a single shared pole node.  Cartesian grids (flat model only)
/// are lattice points of spacing h inside the disc; nodes missing a lattice
/// neighbour form the boundary ring.
///
/// Angular derivative stencils lose an order of accuracy within a fixed
/// number of rings of the pole (the frame scale 1/rho grows there), so
/// residual reports exclude a pole neighbourhood along with the 2-cell
/// boundary collar; see report_mask().
struct Grid {
  Chart chart = Chart::Polar;
  RadialSpacing radial_spacing = RadialSpacing::Uniform;
  MetricModel model;
  Domain domain;

  int n1 = 0;          // structured extent, radial (or x) direction
  int n2 = 0;          // structured extent, angular (or y) direction
  double h1 = 0.0;     // chart spacing, direction 1
  double h2 = 0.0;     // chart spacing, direction 2
  bool periodic2 = false;
  bool has_pole = false;
  int pole_id = -1;

  // Per-node data, indexed by node id.
  std::vector<double> c1, c2;          // chart coordinates
  std::vector<double> r_hat;           // distance to the basepoint
  std::vector<double> area;            // base-metric area weight
  std::vector<double> scale1, scale2;  // orthonormal frame scale factors
  std::vector<double> dscale1, dscale2;  // d(scale)/d(c1); both vanish for Cartesian
  std::vector<std::uint8_t> boundary;  // 0 interior, 1 outer, 2 inner, 3 side
  std::vector<std::int32_t> gi, gj;    // structured indices

  std::vector<std::int32_t> index_map;  // (i, j) -> node id, -1 where masked

  int node_count() const { return static_cast<int>(c1.size()); }

  /// Node id at structured position (i, j); wraps j when periodic; -1 when
  /// outside the grid or masked away.
  int at(int i, int j) const;

  /// Structured neighbour of a node; -1 when absent.  Undefined for the pole
  /// node itself (returns -1); ring-1 nodes see the pole as their i-1
  /// neighbour.
  int neighbor(int id, int di, int dj) const;

  bool is_interior(int id) const { return boundary[id] == 0; }
  bool is_pole(int id) const { return id == pole_id; }

  /// Ids on radial row i (the pole row yields the single pole id).
  std::vector<int> row(int i) const;

  /// Node ids included in interior residual reports: drops boundary nodes,
  /// a `collar`-cell band next to them, and (for pole grids) the pole with
  /// `collar` rings around it.
  std::vector<int> report_mask(int collar = 2) const;

  /// Characteristic resolution: the largest physical node spacing in the
  /// radial (or x) direction.
  double spacing() const;

  /// Largest physical node spacing in the angular direction (diagnostic).
  double angular_spacing() const;

  /// Polar coordinates of a node around the basepoint.
  BasePoint point(int id) const;

  /// Total base-metric area of the grid's cells.
  double total_area() const;
};

/// Builds a structured grid.  n_radial and n_angular count nodes per
/// direction (for Cartesian grids n_radial counts nodes per axis and must be
/// odd so the basepoint lands on a node; n_angular is ignored).  Logarithmic
/// spacing needs an annulus.  Cartesian grids need the flat model and a disc.
Grid build_grid(const MetricModel& model, const Domain& domain, int n_radial,
                int n_angular, Chart chart = Chart::Polar,
                RadialSpacing spacing = RadialSpacing::Uniform);

}  // namespace maxgraph
