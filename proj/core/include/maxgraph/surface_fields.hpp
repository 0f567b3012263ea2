#pragma once

#include <vector>

#include <maxgraph/graph_function.hpp>
#include <maxgraph/grid.hpp>

namespace maxgraph {

// Pointwise geometry of the spacelike graph of u over the base surface.
//
// Frame quantities (Hessian, Gauss-map components) are expressed in the
// chart's orthonormal frame: radial/angular on polar charts, the coordinate
// axes on Cartesian ones.  Mean curvature follows the convention in which
// the graph of 0.5 c (x^2 + y^2) over the flat base has H = +c at the
// origin, so the height satisfies  Delta h = -2 H tilt.
//
// At a polar pole the mean curvature comes from a finite-volume flux
// balance of div(grad u / w) over the pole cell, and the Hessian from a
// least-squares quadratic fit over the first two rings (Cartesian frame);
// report masks exclude the pole neighbourhood either way.
struct SurfaceFields {
  std::vector<double> height;                  // u
  std::vector<double> radius;                  // base distance to the pole
  std::vector<double> tilt, w;                 // copied from the graph data
  std::vector<double> hess11, hess12, hess22;  // frame Hessian of u
  std::vector<double> mean_curvature;          // H
  std::vector<double> shape_norm2;             // |A|^2 of the second form
  std::vector<double> phi;                     // radius^2 - height^2
  std::vector<double> nstar1, nstar2;          // grad u / w, frame components
};

SurfaceFields surface_fields(const Grid& grid, const GraphFunction& u);

}  // namespace maxgraph
