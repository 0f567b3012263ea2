#pragma once

#include <array>
#include <functional>
#include <vector>

#include <maxgraph/discrete_operator.hpp>
#include <maxgraph/grid.hpp>
#include <maxgraph/surface_fields.hpp>

namespace maxgraph {

// A base-surface function with analytic derivatives for lifted-Laplacian
// comparisons.  Everything is expressed in geodesic polar data: value(rho,
// theta), the gradient in the orthonormal polar frame (radial, angular), and
// the frame Hessian (11, 12, 22).  The residual routines rotate these into
// the grid's chart frame, so any chart can consume the same test function.
struct TestFunction {
  std::function<double(double, double)> value;
  std::function<std::array<double, 2>(double, double)> polar_gradient;
  std::function<std::array<double, 3>(double, double)> polar_hessian;
};

// Each residual is LHS - RHS of an exact pointwise relation, evaluated with
// the discrete graph-metric operator `op` (assembled from the induced
// metric).  Boundary and pole-collar nodes carry truncated stencils; report
// masks are the intended consumers.

// Delta h = -2 H tilt   (heights of any spacelike graph)
std::vector<double> residual_height_laplacian(const Grid& grid,
                                              const SurfaceFields& f,
                                              const DiscreteOperator& op);

// Delta h^2 = 2 (tilt^2 - 1) - 4 h H tilt
std::vector<double> residual_height_sq(const Grid& grid,
                                       const SurfaceFields& f,
                                       const DiscreteOperator& op);

// Lifting a base function psi through the projection:
// Delta (psi o pi) = Delta-hat psi + 2 H <N*, grad-hat psi>
//                    + Hess-hat psi(N*, N*)
std::vector<double> residual_lifted_laplacian(const Grid& grid,
                                              const SurfaceFields& f,
                                              const DiscreteOperator& op,
                                              const TestFunction& psi);

// (1/2) Delta r^2 = r Delta-hat r (1 + <N*, tau>^2) + 1 + <N*, grad-hat r>^2
// with tau the angular unit vector; the lifted lemma specialised to the
// squared base distance.
std::vector<double> residual_radius_sq(const Grid& grid,
                                       const SurfaceFields& f,
                                       const DiscreteOperator& op);

// (1/2) Delta phi for phi = r^2 - h^2, combining the two relations above.
// On a flat base this right-hand side collapses to 2 + 2 h H tilt, so
// maximal graphs satisfy (1/2) Delta phi = 2 exactly.
std::vector<double> residual_phi_laplacian(const Grid& grid,
                                           const SurfaceFields& f,
                                           const DiscreteOperator& op);

// Tilt relations along a maximal graph (mean curvature zero; the residuals
// are only meaningful as diagnostics in that regime):
//   Delta tilt  = tilt (K (tilt^2 - 1) + |A|^2)
//   |grad tilt|^2 = (1/2) |A|^2 (tilt^2 - 1)
//   Delta (1/tilt) = -(1/tilt) (K (tilt^2 - 1) + |A|^2 / tilt^2)
std::vector<double> residual_tilt_laplacian(const Grid& grid,
                                            const SurfaceFields& f,
                                            const DiscreteOperator& op);
std::vector<double> residual_tilt_gradient(const Grid& grid,
                                           const SurfaceFields& f,
                                           const DiscreteOperator& op);
std::vector<double> residual_inverse_tilt(const Grid& grid,
                                          const SurfaceFields& f,
                                          const DiscreteOperator& op);

}  // namespace maxgraph
