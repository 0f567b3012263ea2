#include <doctest.h>

#include <cmath>
#include <vector>

#include <maxgraph/discrete_operator.hpp>
#include <maxgraph/domain.hpp>
#include <maxgraph/graph_function.hpp>
#include <maxgraph/induced_metric.hpp>
#include <maxgraph/metric_model.hpp>
#include <maxgraph/numerics.hpp>

using namespace maxgraph;

namespace {

double masked_max_error(const Grid& grid, const std::vector<double>& got,
                        const std::vector<double>& want) {
  double err = 0.0;
  for (int id : grid.report_mask())
    err = std::max(err, std::abs(got[id] - want[id]));
  return err;
}

}  // namespace

TEST_CASE("flat polar laplacian is exact for the squared radius") {
  const auto grid = build_grid(MetricModel::flat(), Domain::disc(1.0), 33, 32);
  const auto op = DiscreteOperator::assemble(grid, base_metric_field(grid));
  const auto lap =
      op.apply(sample_polar(grid, [](double r, double) { return r * r; }));
  for (int id = 0; id < grid.node_count(); ++id) {
    if (grid.boundary[id]) continue;
    CAPTURE(id);
    CHECK(lap[id] == doctest::Approx(4.0).epsilon(1e-11));
  }
  CHECK(lap[grid.pole_id] == doctest::Approx(4.0).epsilon(1e-11));
}

TEST_CASE("cartesian laplacian is exact for quadratics") {
  const auto grid = build_grid(MetricModel::flat(), Domain::disc(1.0), 33, 33,
                               Chart::Cartesian);
  const auto op = DiscreteOperator::assemble(grid, base_metric_field(grid));
  const auto lap_xx =
      op.apply(sample_chart(grid, [](double x, double) { return x * x; }));
  const auto lap_xy =
      op.apply(sample_chart(grid, [](double x, double y) { return x * y; }));
  for (int id = 0; id < grid.node_count(); ++id) {
    if (grid.boundary[id]) continue;
    CAPTURE(id);
    CHECK(lap_xx[id] == doctest::Approx(2.0).epsilon(1e-11));
    CHECK(std::abs(lap_xy[id]) < 1e-11);
  }
}

TEST_CASE("curved bases converge at second order") {
  std::vector<double> hs, errs;
  SUBCASE("spherical cap") {
    for (int n : {17, 33, 65}) {
      const auto grid =
          build_grid(MetricModel::sphere(), Domain::disc(1.0), n, n);
      const auto op =
          DiscreteOperator::assemble(grid, base_metric_field(grid));
      const auto v =
          sample_polar(grid, [](double r, double) { return std::cos(r); });
      const auto lap = op.apply(v);
      std::vector<double> want(grid.node_count());
      for (int id = 0; id < grid.node_count(); ++id)
        want[id] = -2.0 * std::cos(grid.r_hat[id]);
      hs.push_back(grid.spacing());
      errs.push_back(masked_max_error(grid, lap, want));
    }
    CHECK(fit_order(hs, errs) > 1.8);
  }
  SUBCASE("hyperbolic ring") {
    for (int n : {17, 33, 65}) {
      const auto grid =
          build_grid(MetricModel::hyperbolic(), Domain::annulus(0.5, 2.0), n, n);
      const auto op =
          DiscreteOperator::assemble(grid, base_metric_field(grid));
      const auto v =
          sample_polar(grid, [](double r, double) { return std::cosh(r); });
      const auto lap = op.apply(v);
      std::vector<double> want(grid.node_count());
      for (int id = 0; id < grid.node_count(); ++id)
        want[id] = 2.0 * std::cosh(grid.r_hat[id]);
      hs.push_back(grid.spacing());
      errs.push_back(masked_max_error(grid, lap, want));
    }
    CHECK(fit_order(hs, errs) > 1.8);
  }
}

TEST_CASE("weight matrix is symmetric with vanishing row sums") {
  const auto grid =
      build_grid(MetricModel::flat(), Domain::annulus(0.5, 1.5), 17, 16);
  const auto u = make_graph(
      grid, sample_polar(grid, [](double r, double th) {
        return 0.3 * r * std::cos(th) + 0.4 * r * std::sin(th);
      }));
  const auto op = DiscreteOperator::assemble(grid, induced_metric_field(grid, u));

  const auto& s = op.weights();
  Eigen::SparseMatrix<double> diff = s - Eigen::SparseMatrix<double>(s.transpose());
  double scale = 0.0;
  for (int k = 0; k < s.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(s, k); it; ++it)
      scale = std::max(scale, std::abs(it.value()));
  double asym = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(diff, k); it; ++it)
      asym = std::max(asym, std::abs(it.value()));
  CHECK(asym < 1e-14 * scale);

  const auto lap = op.apply(std::vector<double>(grid.node_count(), 3.7));
  for (int id = 0; id < grid.node_count(); ++id)
    CHECK(std::abs(lap[id]) < 1e-9);

  // Mixed-term edges are signed, so the tilted graph's operator is not a
  // plain conductance network, unlike the base one.
  CHECK_FALSE(op.all_edges_nonnegative());
  const auto base_op = DiscreteOperator::assemble(grid, base_metric_field(grid));
  CHECK(base_op.all_edges_nonnegative());
}

TEST_CASE("constant induced metric keeps bilinear data exact") {
  const auto grid = build_grid(MetricModel::flat(), Domain::disc(1.0), 65, 65,
                               Chart::Cartesian);
  const auto u = make_graph(
      grid, sample_chart(grid, [](double x, double y) {
        return 0.3 * x + 0.4 * y;
      }));
  const auto field = induced_metric_field(grid, u);
  // Frozen components of g = I - du (x) du for slopes (0.3, 0.4).
  const int probe = grid.report_mask().front();
  CHECK(field.inv11[probe] == doctest::Approx(1.12).epsilon(1e-13));
  CHECK(field.inv12[probe] == doctest::Approx(0.16).epsilon(1e-13));
  CHECK(field.inv22[probe] ==
        doctest::Approx(0.91 / 0.75).epsilon(1e-13));

  const auto op = DiscreteOperator::assemble(grid, field);
  const auto lap_xy =
      op.apply(sample_chart(grid, [](double x, double y) { return x * y; }));
  const auto lap_xx =
      op.apply(sample_chart(grid, [](double x, double) { return x * x; }));
  const auto lap_x =
      op.apply(sample_chart(grid, [](double x, double) { return x; }));
  for (int id : grid.report_mask()) {
    CAPTURE(id);
    CHECK(lap_xy[id] == doctest::Approx(2.0 * 0.16).epsilon(1e-11));
    CHECK(lap_xx[id] == doctest::Approx(2.0 * 1.12).epsilon(1e-11));
    CHECK(std::abs(lap_x[id]) < 1e-11);
  }
}

TEST_CASE("gradient norms are exact for affine data and at the pole") {
  const auto cart = build_grid(MetricModel::flat(), Domain::disc(1.0), 33, 33,
                               Chart::Cartesian);
  const auto cart_op = DiscreteOperator::assemble(cart, base_metric_field(cart));
  const auto g2 = cart_op.gradient_norm2(
      sample_chart(cart, [](double x, double y) { return 0.3 * x + 0.4 * y; }));
  for (int id = 0; id < cart.node_count(); ++id) {
    if (cart.boundary[id]) continue;
    CHECK(g2[id] == doctest::Approx(0.25).epsilon(1e-12));
  }

  const auto disc = build_grid(MetricModel::flat(), Domain::disc(1.0), 33, 32);
  const auto disc_op = DiscreteOperator::assemble(disc, base_metric_field(disc));
  const auto gp = disc_op.gradient_norm2(
      sample_polar(disc, [](double r, double th) { return r * std::cos(th); }));
  CHECK(gp[disc.pole_id] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cell energies sum to the quadratic form") {
  const auto grid =
      build_grid(MetricModel::hyperbolic(), Domain::annulus(0.5, 2.0), 17, 16);
  const auto op = DiscreteOperator::assemble(grid, base_metric_field(grid));
  CounterRng rng(20240817, 0);
  std::vector<double> v(grid.node_count());
  for (double& x : v) x = rng.next_double() - 0.5;
  const auto g2 = op.gradient_norm2(v);
  double total = 0.0;
  for (int id = 0; id < grid.node_count(); ++id)
    total += g2[id] * op.volumes()[id];
  CHECK(total == doctest::Approx(op.dirichlet_energy(v)).epsilon(1e-12));
}

TEST_CASE("harmonic extension reproduces the logarithmic potential") {
  const auto grid =
      build_grid(MetricModel::flat(), Domain::annulus(1.0, 2.0), 129, 64);
  const auto op = DiscreteOperator::assemble(grid, base_metric_field(grid));
  std::vector<double> data(grid.node_count(), 0.0);
  for (int id = 0; id < grid.node_count(); ++id)
    if (grid.boundary[id] == 2) data[id] = 1.0;
  const auto u = op.harmonic_extension(data);
  double err = 0.0;
  for (int id = 0; id < grid.node_count(); ++id)
    err = std::max(err, std::abs(u[id] - std::log(2.0 / grid.r_hat[id]) /
                                              std::log(2.0)));
  CHECK(err < 5e-4);

  // Energy of the extension approximates the ring's conformal capacity.
  CHECK(op.dirichlet_energy(u) ==
        doctest::Approx(2.0 * M_PI / std::log(2.0)).epsilon(1e-3));
}
