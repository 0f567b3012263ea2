#include <doctest.h>

#include <cmath>
#include <vector>

#include <maxgraph/domain.hpp>
#include <maxgraph/errors.hpp>
#include <maxgraph/graph_function.hpp>
#include <maxgraph/grid.hpp>
#include <maxgraph/metric_model.hpp>
#include <maxgraph/numerics.hpp>
#include <maxgraph/solver.hpp>
#include <maxgraph/surface_fields.hpp>

using namespace maxgraph;

namespace {

std::vector<double> catenoid_trace(const Grid& grid) {
  // Dirichlet data: the radial maximal profile sampled on the rims.
  std::vector<double> data(grid.node_count(), 0.0);
  for (int id = 0; id < grid.node_count(); ++id)
    if (!grid.is_interior(id)) data[id] = std::asinh(grid.r_hat[id]);
  return data;
}

}  // namespace

TEST_CASE("affine data solve reproduces the plane") {
  const auto grid = build_grid(MetricModel::flat(), Domain::disc(1.0), 33, 33,
                               Chart::Cartesian);
  std::vector<double> data(grid.node_count(), 0.0);
  for (int id = 0; id < grid.node_count(); ++id)
    data[id] = 0.6 * grid.c1[id];

  SolveReport rep;
  const auto u = solve_dirichlet(grid, data, {}, &rep);
  CHECK(rep.converged);
  CHECK(rep.final_residual <= 1e-10);

  const auto f = surface_fields(grid, u);
  double worst_val = 0.0, worst_shape = 0.0;
  for (int id = 0; id < grid.node_count(); ++id) {
    worst_val = std::max(worst_val,
                         std::abs(u.value[id] - 0.6 * grid.c1[id]));
    if (grid.is_interior(id))
      worst_shape = std::max(worst_shape, f.shape_norm2[id]);
  }
  CHECK(worst_val < 1e-11);
  CHECK(worst_shape <= 1e-10);
  CHECK(max_interior_residual(grid, f) == rep.final_residual);
}

TEST_CASE("constant data short-circuits to the slice") {
  const auto grid =
      build_grid(MetricModel::sphere(), Domain::disc(1.2), 17, 16);
  const std::vector<double> data(grid.node_count(), 0.7);
  SolveReport rep;
  const auto u = solve_dirichlet(grid, data, {}, &rep);
  CHECK(rep.converged);
  CHECK(rep.history.size() == 1);
  for (int id = 0; id < grid.node_count(); ++id)
    CHECK(u.value[id] == 0.7);
}

TEST_CASE("catenoid data solve matches the first-integral profile") {
  const auto model = MetricModel::flat();
  const auto dom = Domain::annulus(1.0, 4.0);
  std::vector<double> hs, errs;
  for (int n : {49, 97, 193}) {
    const auto grid = build_grid(model, dom, n, 16);
    SolverOptions opts;
    opts.tolerance = 1e-10;
    SolveReport rep;
    const auto u = solve_dirichlet(grid, catenoid_trace(grid), opts, &rep);
    REQUIRE(rep.converged);

    double err = 0.0;
    for (int id = 0; id < grid.node_count(); ++id)
      err = std::max(err,
                     std::abs(u.value[id] - std::asinh(grid.r_hat[id])));
    hs.push_back(grid.spacing());
    errs.push_back(err);

    // Acceptance of a Newton step requires a residual drop and a safely
    // spacelike iterate; the graph area may never decrease along the way.
    for (std::size_t k = 0; k + 1 < rep.history.size(); ++k) {
      CHECK(rep.history[k + 1].energy >=
            rep.history[k].energy - 1e-10 * (1.0 + rep.history[k].energy));
      CHECK(rep.history[k + 1].residual < rep.history[k].residual);
      CHECK(rep.history[k + 1].margin >= 1e-3);
    }
  }
  CHECK(fit_order(hs, errs) > 1.7);
  CHECK(errs.back() < 2e-3);
}

TEST_CASE("dipole data on a pole grid solves through the axis") {
  const auto grid = build_grid(MetricModel::flat(), Domain::disc(1.0), 33, 32);
  std::vector<double> data(grid.node_count(), 0.0);
  for (int id = 0; id < grid.node_count(); ++id)
    if (!grid.is_interior(id))
      data[id] = 0.4 * std::cos(grid.c2[id]);

  SolveReport rep;
  const auto u = solve_dirichlet(grid, data, {}, &rep);
  CHECK(rep.converged);
  CHECK(rep.final_residual <= 1e-8);
  // Odd symmetry pins the axis value.
  CHECK(std::abs(u.value[grid.pole_id]) < 1e-9);
}

TEST_CASE("radial profile oracle matches closed forms") {
  const auto grid =
      build_grid(MetricModel::flat(), Domain::annulus(1.0, 4.0), 49, 16);

  const auto cat = solve_rotsym_ode(MetricModel::flat(), 1.0, grid,
                                    std::asinh(1.0));
  for (int id = 0; id < grid.node_count(); ++id)
    CHECK(cat.value[id] ==
          doctest::Approx(std::asinh(grid.r_hat[id])).epsilon(1e-10));

  // General C: u = anchor + C (asinh(rho/|C|) - asinh(rho0/|C|)).
  const auto two = solve_rotsym_ode(MetricModel::flat(), -2.0, grid, 0.25);
  for (int id = 0; id < grid.node_count(); ++id) {
    const double want = 0.25 - 2.0 * (std::asinh(grid.r_hat[id] / 2.0) -
                                      std::asinh(0.5));
    CHECK(two.value[id] == doctest::Approx(want).epsilon(1e-10));
  }

  // Hyperbolic base: the integrand 1/cosh integrates to the gudermannian,
  // so the full graph stays bounded even as rho grows.
  const auto hgrid =
      build_grid(MetricModel::hyperbolic(), Domain::annulus(0.5, 3.0), 49, 16);
  const auto gd = [](double r) { return 2.0 * std::atan(std::tanh(0.5 * r)); };
  const auto hyp = solve_rotsym_ode(MetricModel::hyperbolic(), 1.0, hgrid);
  for (int id = 0; id < hgrid.node_count(); ++id)
    CHECK(hyp.value[id] ==
          doctest::Approx(gd(hgrid.r_hat[id]) - gd(0.5)).epsilon(1e-10));

  const auto zero = solve_rotsym_ode(MetricModel::flat(), 0.0, grid, 0.3);
  for (int id = 0; id < grid.node_count(); ++id)
    CHECK(zero.value[id] == 0.3);
}

TEST_CASE("solver and oracle reject bad setups") {
  const auto disc = build_grid(MetricModel::flat(), Domain::disc(1.0), 17, 16);
  CHECK_THROWS_AS(solve_rotsym_ode(MetricModel::flat(), 1.0, disc), Error);

  const auto cart = build_grid(MetricModel::flat(), Domain::disc(1.0), 17, 17,
                               Chart::Cartesian);
  CHECK_THROWS_AS(solve_rotsym_ode(MetricModel::flat(), 1.0, cart), Error);

  // Data beyond the light cone: the affine extension cannot be spacelike.
  std::vector<double> steep(cart.node_count(), 0.0);
  for (int id = 0; id < cart.node_count(); ++id)
    steep[id] = 1.2 * cart.c1[id];
  CHECK_THROWS_AS(solve_dirichlet(cart, steep), NotSpacelikeError);

  // Angular resolution not divisible by 4 blocks the Jacobian colouring.
  const auto odd =
      build_grid(MetricModel::flat(), Domain::annulus(1.0, 2.0), 17, 30);
  std::vector<double> mild(odd.node_count(), 0.0);
  for (int id = 0; id < odd.node_count(); ++id)
    if (!odd.is_interior(id)) mild[id] = 0.1 * odd.r_hat[id];
  CHECK_THROWS_AS(solve_dirichlet(odd, mild), Error);

  std::vector<double> short_data(3, 0.0);
  CHECK_THROWS_AS(solve_dirichlet(odd, short_data), Error);

  // A one-step cap cannot reach the tolerance from harmonic data.
  const auto ann =
      build_grid(MetricModel::flat(), Domain::annulus(1.0, 4.0), 33, 16);
  SolverOptions strict;
  strict.max_iterations = 1;
  strict.tolerance = 1e-14;
  SolveReport rep;
  CHECK_THROWS_AS(solve_dirichlet(ann, catenoid_trace(ann), strict, &rep),
                  Error);
  CHECK_FALSE(rep.converged);
  CHECK(rep.history.size() >= 1);
}
