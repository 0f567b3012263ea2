#pragma once

#include <functional>
#include <vector>

#include <maxgraph/grid.hpp>

namespace maxgraph {

// Nodal data for a time function over the base manifold, together with the
// first-derivative reconstructions everything downstream consumes.
//
// Gradients are reported in the orthonormal frame attached to the chart
// (radial/angular directions on polar charts, the coordinate axes on
// Cartesian ones).  At a polar pole the chart frame degenerates, so q1/q2
// hold the Cartesian components obtained from a least-squares fit over the
// first ring; their norm is frame-independent, which is all the margin and
// tilt computations need.
struct GraphFunction {
  std::vector<double> value;
  std::vector<double> d1, d2;      // chart-coordinate partials
  std::vector<double> q1, q2;      // orthonormal-frame gradient
  std::vector<double> grad_norm2;  // |q|^2
  std::vector<double> margin;      // 1 - |q|^2; positive iff spacelike
  std::vector<double> w;           // sqrt(margin); NaN where margin <= 0
  std::vector<double> tilt;        // -1/w, the future-directed normal's
                                   // projection onto the time axis
};

// Evaluate f(c1, c2) in chart coordinates at every node.  On polar charts
// these are the (possibly log-mapped) radial coordinate and the angle; on
// Cartesian charts the plane coordinates.  Exact sampling of affine data on
// Cartesian grids relies on this overload.
std::vector<double> sample_chart(const Grid& grid,
                                 const std::function<double(double, double)>& f);

// Finite-difference partial of nodal data along chart direction dir (1 or
// 2).  Central where possible, second-order one-sided at rims, and, for the
// few clipped Cartesian nodes with no neighbour at all on the axis, a
// central difference borrowed from the adjacent lattice line.  Exact for
// quadratic data wherever a non-borrowed stencil exists.
double chart_partial(const Grid& grid, const std::vector<double>& values,
                     int id, int dir);

// Evaluate f(rho, theta) in geodesic polar coordinates at every node
// (Cartesian nodes are converted; the pole passes theta = 0).
std::vector<double> sample_polar(const Grid& grid,
                                 const std::function<double(double, double)>& f);

// Build the derivative package for nodal values.  With require_spacelike the
// call throws NotSpacelikeError naming the worst node as soon as the
// reconstructed gradient reaches the light cone; pass false when probing
// candidate iterates whose margins the caller wants to inspect.
GraphFunction make_graph(const Grid& grid, std::vector<double> values,
                         bool require_spacelike = true);

}  // namespace maxgraph
