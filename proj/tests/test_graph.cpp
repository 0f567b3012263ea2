#include <doctest.h>

#include <cmath>
#include <vector>

#include <maxgraph/domain.hpp>
#include <maxgraph/errors.hpp>
#include <maxgraph/graph_function.hpp>
#include <maxgraph/induced_metric.hpp>
#include <maxgraph/metric_model.hpp>
#include <maxgraph/numerics.hpp>

using namespace maxgraph;

TEST_CASE("affine data on a cartesian disc is reconstructed exactly") {
  const auto grid = build_grid(MetricModel::flat(), Domain::disc(1.0), 65, 65,
                               Chart::Cartesian);
  const auto u = make_graph(
      grid, sample_chart(grid, [](double x, double) { return 0.6 * x; }));
  for (int id = 0; id < grid.node_count(); ++id) {
    CAPTURE(id);
    CHECK(u.q1[id] == doctest::Approx(0.6).epsilon(1e-13));
    CHECK(std::abs(u.q2[id]) < 1e-13);
    CHECK(u.margin[id] == doctest::Approx(0.64).epsilon(1e-13));
    CHECK(u.tilt[id] == doctest::Approx(-1.25).epsilon(1e-13));
  }
}

TEST_CASE("steep data throws with the worst node attached") {
  const auto grid = build_grid(MetricModel::flat(), Domain::disc(1.0), 33, 33,
                               Chart::Cartesian);
  auto values = sample_chart(grid, [](double x, double) { return 1.01 * x; });
  CHECK_THROWS_AS(make_graph(grid, values), NotSpacelikeError);
  try {
    make_graph(grid, values);
  } catch (const NotSpacelikeError& e) {
    CHECK(e.worst_grad_norm2 == doctest::Approx(1.0201).epsilon(1e-9));
    CHECK(e.worst_node >= 0);
  }
  // The probing overload keeps the data and reports margins <= 0 instead.
  const auto probe = make_graph(grid, values, false);
  double worst = 1.0;
  for (double m : probe.margin) worst = std::min(worst, m);
  CHECK(worst < 0.0);
  CHECK_THROWS_AS(induced_metric_field(grid, probe), NotSpacelikeError);
}

TEST_CASE("radial quadratic on a flat polar disc") {
  const auto grid = build_grid(MetricModel::flat(), Domain::disc(0.9), 33, 32);
  const auto u = make_graph(
      grid, sample_polar(grid, [](double r, double) { return 0.5 * r * r; }));
  for (int id = 0; id < grid.node_count(); ++id) {
    CAPTURE(id);
    const double rho = grid.r_hat[id];
    // Central and one-sided second-order differences are exact here.
    CHECK(u.q1[id] == doctest::Approx(rho).epsilon(1e-12));
    CHECK(std::abs(u.q2[id]) < 1e-12);
    CHECK(u.margin[id] == doctest::Approx(1.0 - rho * rho).epsilon(1e-12));
  }
  CHECK(std::abs(u.q1[grid.pole_id]) < 1e-12);
  CHECK(std::abs(u.q2[grid.pole_id]) < 1e-12);
}

TEST_CASE("tilted plane over a polar annulus converges at second order") {
  const auto model = MetricModel::flat();
  const auto dom = Domain::annulus(0.5, 1.5);
  std::vector<double> hs, errs;
  for (int n : {17, 33, 65}) {
    const auto grid = build_grid(model, dom, n, n);
    const auto u = make_graph(
        grid, sample_polar(grid, [](double r, double th) {
          return 0.3 * r * std::cos(th) + 0.4 * r * std::sin(th);
        }));
    double err = 0.0;
    for (int id : grid.report_mask())
      err = std::max(err, std::abs(u.grad_norm2[id] - 0.25));
    hs.push_back(grid.spacing());
    errs.push_back(err);
  }
  CHECK(fit_order(hs, errs) > 1.8);
}

TEST_CASE("norms tie gradient, margin and tilt together") {
  const auto grid =
      build_grid(MetricModel::flat(), Domain::annulus(0.5, 1.5), 17, 17);
  const auto u = make_graph(
      grid, sample_polar(grid, [](double r, double th) {
        return 0.3 * r * std::cos(th) + 0.1 * std::sin(2.0 * th);
      }));
  for (int id = 0; id < grid.node_count(); ++id) {
    // |grad h|^2 on the graph equals tilt^2 - 1 as an algebraic identity.
    const double lhs = u.grad_norm2[id] / u.margin[id];
    const double rhs = u.tilt[id] * u.tilt[id] - 1.0;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("logarithmic spacing keeps radial derivatives exact for log data") {
  const auto grid =
      build_grid(MetricModel::flat(), Domain::annulus(1.0, std::exp(2.0)), 33,
                 16, Chart::Polar, RadialSpacing::Logarithmic);
  const auto u = make_graph(
      grid, sample_polar(grid, [](double r, double) { return std::log(r); }));
  for (int id = 0; id < grid.node_count(); ++id) {
    CAPTURE(id);
    CHECK(u.q1[id] == doctest::Approx(1.0 / grid.r_hat[id]).epsilon(1e-13));
    CHECK(std::abs(u.q2[id]) < 1e-13);
  }
}

TEST_CASE("constant data on curved models is exactly vertical") {
  for (const auto& setup :
       {std::pair{MetricModel::sphere(), Domain::disc(1.0)},
        std::pair{MetricModel::hyperbolic(), Domain::annulus(0.5, 2.0)}}) {
    const auto grid = build_grid(setup.first, setup.second, 17, 16);
    const auto u = make_graph(grid, std::vector<double>(
                                        grid.node_count(), 0.7));
    for (int id = 0; id < grid.node_count(); ++id) {
      // One-sided rim stencils leave ~1e-15 of roundoff on constant data.
      CHECK(u.grad_norm2[id] < 1e-28);
      CHECK(u.tilt[id] == doctest::Approx(-1.0).epsilon(1e-14));
      CHECK(u.w[id] == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("sector apex gradient comes from the arc fit") {
  const auto grid = build_grid(
      MetricModel::flat(), Domain::polar_rectangle(0.0, 0.9, 0.0, M_PI / 2),
      17, 16);
  REQUIRE(grid.has_pole);
  const auto u = make_graph(
      grid, sample_polar(grid, [](double r, double th) {
        return 0.2 * r * std::cos(th);
      }));
  CHECK(u.q1[grid.pole_id] == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(std::abs(u.q2[grid.pole_id]) < 1e-12);
}

TEST_CASE("value count mismatches are rejected") {
  const auto grid =
      build_grid(MetricModel::flat(), Domain::annulus(1.0, 2.0), 9, 9);
  CHECK_THROWS_AS(make_graph(grid, std::vector<double>(5, 0.0)), Error);
}

TEST_CASE("metric fields carry the right densities") {
  const auto grid =
      build_grid(MetricModel::flat(), Domain::annulus(0.5, 1.5), 17, 16);
  const auto base = base_metric_field(grid);
  for (int id = 0; id < grid.node_count(); ++id) {
    CHECK(base.volume[id] == grid.area[id]);
    CHECK(base.sqrt_det[id] ==
          doctest::Approx(grid.scale1[id] * grid.scale2[id]).epsilon(1e-14));
    CHECK(base.g12[id] == 0.0);
  }

  const auto u = make_graph(
      grid, sample_polar(grid, [](double r, double th) {
        return 0.3 * r * std::cos(th) + 0.4 * r * std::sin(th);
      }));
  const auto ind = induced_metric_field(grid, u);
  for (int id = 0; id < grid.node_count(); ++id) {
    CAPTURE(id);
    CHECK(ind.volume[id] ==
          doctest::Approx(grid.area[id] * u.w[id]).epsilon(1e-13));
    // det(g) = det(sigma) (1 - |grad u|^2)
    const double det = ind.g11[id] * ind.g22[id] - ind.g12[id] * ind.g12[id];
    const double sigma = grid.scale1[id] * grid.scale2[id];
    CHECK(det ==
          doctest::Approx(sigma * sigma * u.margin[id]).epsilon(1e-12));
    // inverse really inverts
    CHECK(ind.g11[id] * ind.inv11[id] + ind.g12[id] * ind.inv12[id] ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ind.g11[id] * ind.inv12[id] + ind.g12[id] * ind.inv22[id] ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  }
}
