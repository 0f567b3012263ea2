#pragma once

#include <vector>

#include <maxgraph/graph_function.hpp>
#include <maxgraph/grid.hpp>
#include <maxgraph/metric_model.hpp>
#include <maxgraph/surface_fields.hpp>

namespace maxgraph {

struct SolverOptions {
  double tolerance = 1e-8;     // stop once max |H| over free nodes drops below
  int max_iterations = 50;     // Newton step cap
  double margin_floor = 1e-3;  // every iterate keeps 1 - |grad u|^2 >= this
};

// One accepted Newton step; row 0 records the initial iterate.
struct IterationRecord {
  int iteration = 0;
  double residual = 0.0;  // max |H| over free nodes
  double energy = 0.0;    // graph area, sum of cell_area * w
  double margin = 0.0;    // min spacelike margin over all nodes
  double step = 0.0;      // accepted fraction of the Newton direction
};

struct SolveReport {
  std::vector<IterationRecord> history;
  bool converged = false;
  double final_residual = 0.0;
};

// Zero-mean-curvature graph with Dirichlet data, by damped Newton iteration
// on the pointwise mean-curvature residual at the free (interior) nodes.
//
// `boundary_values` is a full node vector; only boundary entries are read.
// The initial iterate extends the data harmonically in the base metric;
// identically constant data short-circuit to the slice, which is maximal
// over any base.  The Jacobian is assembled by finite differences under a
// node colouring that keeps same-coloured nodes out of each other's
// residual stencils; periodic grids need n_angular divisible by 4 so the
// colour classes survive the angular wrap.
// A backtracking line search keeps every iterate spacelike with margin at
// least `margin_floor` while forcing the sup-norm of the residual down.
//
// Throws Error when the iteration stalls or the step cap is hit, and
// NotSpacelikeError when no safely spacelike starting iterate exists for
// the given data.  On throw, `report` (when supplied) still holds the
// history up to the failure.
GraphFunction solve_dirichlet(const Grid& grid,
                              const std::vector<double>& boundary_values,
                              const SolverOptions& opts = {},
                              SolveReport* report = nullptr);

// Radial maximal graph from the first integral of the rotationally
// symmetric equation,
//
//   f(rho) u' / sqrt(1 - u'^2) = C,   i.e.   u'(rho) = C / sqrt(f^2 + C^2),
//
// integrated from the innermost ring outward with u = anchor there.  For
// C = 0 this is the constant slice; otherwise the grid must be a polar
// annulus, since |u'| -> 1 where the warp factor f vanishes.
GraphFunction solve_rotsym_ode(const MetricModel& model, double C,
                               const Grid& grid, double anchor = 0.0);

// Largest |H| over non-boundary nodes: the solver's convergence measure.
double max_interior_residual(const Grid& grid, const SurfaceFields& fields);

}  // namespace maxgraph
