#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include <maxgraph/domain.hpp>
#include <maxgraph/errors.hpp>
#include <maxgraph/graph_function.hpp>
#include <maxgraph/grid.hpp>
#include <maxgraph/metric_model.hpp>
#include <maxgraph/numerics.hpp>
#include <maxgraph/wedge.hpp>

using namespace maxgraph;

TEST_CASE("membership and the sublevel bound follow the formulas") {
  const WedgeSpec half{0.5};
  CHECK(wedge_membership(half, {2.0, 0.0}, 1.0));       // boundary counts
  CHECK_FALSE(wedge_membership(half, {2.0, 0.0}, 1.01));
  CHECK(wedge_membership(half, {0.0, 0.0}, 0.0));       // apex
  CHECK(wedge_membership(half, {2.0, 1.3}, -0.99));

  CHECK(phi_sublevel_bound(WedgeSpec{0.5}, 3.0) ==
        doctest::Approx(2.0).epsilon(1e-13));
  // Degenerate slab: the bound collapses to sqrt(b).
  CHECK(phi_sublevel_bound(WedgeSpec{0.0}, 4.0) ==
        doctest::Approx(2.0).epsilon(1e-13));

  CHECK_THROWS_AS(phi_sublevel_bound(WedgeSpec{0.5}, 0.0), Error);
  CHECK_THROWS_AS(phi_sublevel_bound(WedgeSpec{1.0}, 1.0), Error);
  CHECK_THROWS_AS(phi_sublevel_bound(WedgeSpec{-0.1}, 1.0), Error);
  CHECK_THROWS_AS(wedge_membership(WedgeSpec{1.5}, {1.0, 0.0}, 0.0), Error);
}

TEST_CASE("sublevel containment has no sampled violations") {
  // Stratified wedge points: phi <= b must force r <= c and |t| <= a c.
  const double a = 0.7, b = 1.0;
  const WedgeSpec spec{a};
  const double c = phi_sublevel_bound(spec, b);
  int violations = 0;
  for (int k = 0; k < 10000; ++k) {
    CounterRng rng(424242, static_cast<std::uint64_t>(k));
    const double r = 2.0 * c * rng.next_double();
    const double t = a * r * (2.0 * rng.next_double() - 1.0);
    REQUIRE(wedge_membership(spec, {r, 0.0}, t));
    if (r * r - t * t > b) continue;
    if (r > c + 1e-12 || std::abs(t) > a * c + 1e-12) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("cone distance matches brute force over the boundary") {
  // (r - |t|) / sqrt(2) against direct minimisation of the product-metric
  // distance over sampled cone points (y, +/- r(y)).
  CHECK(dist_plus_to_wedge_boundary(MetricModel::flat(), {3.0, 0.0}, 1.0) ==
        doctest::Approx(std::numbers::sqrt2).epsilon(1e-13));
  CHECK(dist_plus_to_wedge_boundary(MetricModel::flat(), {0.0, 0.0}, 0.0) ==
        0.0);
  CHECK_THROWS_AS(
      dist_plus_to_wedge_boundary(MetricModel::flat(), {1.0, 0.0}, 1.5),
      Error);

  const MetricModel models[] = {MetricModel::flat(), MetricModel::hyperbolic(),
                                MetricModel::sphere()};
  for (const auto& model : models) {
    const double r_max = model.kind == MetricKind::Sphere ? 2.0 : 4.0;
    const double rho_cap = model.kind == MetricKind::Sphere ? 3.1 : 8.0;
    const int n_rho = 2500, n_theta = 40;
    const double d_rho = rho_cap / n_rho;
    const double d_theta = 2.0 * M_PI / n_theta;
    double f_max = 0.0;
    for (int i = 0; i <= n_rho; ++i)
      f_max = std::max(f_max, model.f(i * d_rho));
    const double resolution =
        std::numbers::sqrt2 * d_rho + f_max * d_theta;

    for (int k = 0; k < 100; ++k) {
      CounterRng rng(7100, static_cast<std::uint64_t>(k));
      const BasePoint x{r_max * rng.next_double(),
                        2.0 * M_PI * rng.next_double()};
      const double t = x.rho * (2.0 * rng.next_double() - 1.0);
      const double closed = dist_plus_to_wedge_boundary(model, x, t);

      double sampled = std::numeric_limits<double>::infinity();
      for (int i = 0; i <= n_rho; ++i) {
        const double rho = i * d_rho;
        for (int j = 0; j < n_theta; ++j) {
          const BasePoint y{rho, j * d_theta};
          const double base = model.distance(x, y);
          for (double s : {rho, -rho})
            sampled = std::min(
                sampled, std::hypot(base, t - s));
        }
      }
      CHECK(closed <= sampled + 1e-12);
      CHECK(sampled <= closed + resolution);
    }
  }
}

TEST_CASE("height bound holds on starlike domains") {
  const auto flat = MetricModel::flat();

  SUBCASE("tilted plane on a Cartesian disc") {
    const auto grid = build_grid(flat, Domain::disc(1.0), 33, 33,
                                 Chart::Cartesian);
    const auto u = make_graph(
        grid, sample_chart(grid, [](double x, double) { return 0.6 * x; }));
    const auto rep = graph_height_bound_check(grid, u);
    CHECK(rep.pass);
    CHECK(rep.worst_margin > 0.0);
    CHECK_FALSE(rep.normalized);
    CHECK(rep.certificate.kind == "radial");
  }

  SUBCASE("shifted data is normalised at the basepoint first") {
    const auto grid = build_grid(flat, Domain::disc(1.0), 33, 33,
                                 Chart::Cartesian);
    const auto u = make_graph(grid, sample_chart(grid, [](double x, double) {
                                return 0.6 * x + 0.3;
                              }));
    const auto rep = graph_height_bound_check(grid, u);
    CHECK(rep.pass);
    CHECK(rep.normalized);
  }

  SUBCASE("slice on a polar disc") {
    const auto grid = build_grid(flat, Domain::disc(2.0), 33, 32);
    const auto u =
        make_graph(grid, std::vector<double>(grid.node_count(), 0.0));
    const auto rep = graph_height_bound_check(grid, u);
    CHECK(rep.pass);
    // The worst node is as close to the basepoint as the grid gets.
    CHECK(rep.worst_margin == doctest::Approx(grid.h1).epsilon(1e-12));
  }

  SUBCASE("catenoid on an annulus borrows the hull certificate") {
    const auto grid = build_grid(flat, Domain::annulus(1.0, 4.0), 49, 32);
    const auto u = make_graph(grid, sample_polar(grid, [](double r, double) {
                                return std::asinh(r);
                              }));
    const auto rep = graph_height_bound_check(grid, u);
    CHECK(rep.pass);
    CHECK(rep.certificate.kind == "radial-hull");
    CHECK(rep.worst_margin ==
          doctest::Approx(1.0 - std::asinh(1.0)).epsilon(1e-10));
  }

  SUBCASE("a constant too tall for the annulus fails the bound") {
    const auto grid = build_grid(flat, Domain::annulus(1.0, 1.5), 17, 16);
    const auto u =
        make_graph(grid, std::vector<double>(grid.node_count(), 2.0));
    const auto rep = graph_height_bound_check(grid, u);
    CHECK_FALSE(rep.pass);
    CHECK(rep.worst_margin == doctest::Approx(-1.0).epsilon(1e-12));
  }

  SUBCASE("a sector away from the pole has no certificate") {
    const auto grid = build_grid(
        flat, Domain::polar_rectangle(1.0, 2.0, 0.0, M_PI / 2), 17, 9);
    const auto u =
        make_graph(grid, std::vector<double>(grid.node_count(), 0.0));
    CHECK_THROWS_AS(graph_height_bound_check(grid, u), Error);
  }
}

TEST_CASE("cone distance grows strictly along rays of a spacelike graph") {
  const auto flat = MetricModel::flat();
  const auto grid = build_grid(flat, Domain::annulus(1.0, 4.0), 49, 32);
  for (const auto& height : {
           std::function<double(double, double)>(
               [](double r, double) { return std::asinh(r); }),
           std::function<double(double, double)>(
               [](double r, double th) { return 0.6 * r * std::cos(th); }),
       }) {
    const auto u = make_graph(grid, sample_polar(grid, height));
    for (int j = 0; j < grid.n2; ++j) {
      double previous = -1.0;
      for (int i = 0; i < grid.n1; ++i) {
        const int id = grid.at(i, j);
        REQUIRE(id >= 0);
        const double d =
            (grid.r_hat[id] - std::abs(u.value[id])) / std::numbers::sqrt2;
        CHECK(d > previous);
        previous = d;
      }
    }
  }
}

TEST_CASE("properness certificate evaluates and certifies containment") {
  CHECK(properness_bound(1.0, 2.0) ==
        doctest::Approx(std::numbers::sqrt2).epsilon(1e-13));
  CHECK(properness_bound(1.0 / std::numbers::sqrt2, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-13));
  CHECK_THROWS_AS(properness_bound(0.0, 1.0), Error);
  CHECK_THROWS_AS(properness_bound(1.0, -2.0), Error);

  const auto flat = MetricModel::flat();
  const auto grid = build_grid(flat, Domain::annulus(1.0, 4.0), 65, 32);
  const auto u = make_graph(grid, sample_polar(grid, [](double r, double) {
                              return std::asinh(r);
                            }));

  const auto cert = properness_certificate(grid, u, 2.0, 1.0);
  CHECK(cert.epsilon ==
        doctest::Approx((1.0 - std::asinh(1.0)) / std::numbers::sqrt2)
            .epsilon(1e-10));
  CHECK(cert.bound == doctest::Approx(properness_bound(cert.epsilon, 2.0))
                          .epsilon(1e-13));
  CHECK(cert.violations == 0);
  CHECK(cert.sampling_gap > 0.0);
  CHECK(cert.sampling_gap < 0.5);

  // Shift the graph until it pokes through the cone over the anchor ring.
  auto touching = u.value;
  for (double& v : touching) v += 0.2;
  const auto bad = make_graph(grid, touching);
  CHECK_THROWS_AS(properness_certificate(grid, bad, 2.0, 1.0), Error);

  // No grid ring sits near radius 0.5 on this annulus.
  CHECK_THROWS_AS(properness_certificate(grid, u, 2.0, 0.5), Error);
}

TEST_CASE("exhaustion report reads off positivity and boundedness") {
  const auto flat = MetricModel::flat();
  const std::vector<double> radii = {4.0, 8.0, 16.0, 32.0};

  SUBCASE("flat slice: phi = r^2") {
    const auto rep = eventual_positivity_report(
        flat, [](double, double) { return 0.0; }, radii, 4.0);
    CHECK(rep.eventually_positive);
    CHECK(rep.sublevels_bounded);
    REQUIRE(rep.levels.size() == radii.size());
    for (const auto& level : rep.levels) {
      CHECK(level.positive_outside_core);
      // { r^2 <= 4 } ends at r = 2 up to one grid cell.
      CHECK(level.sublevel_radius <= 2.0 + 0.5);
      CHECK(level.sublevel_radius >= 2.0 - 0.5);
    }
  }

  SUBCASE("catenoid graph stays positive at every level") {
    const auto rep = eventual_positivity_report(
        flat, [](double r, double) { return std::asinh(r); }, radii, 2.0);
    CHECK(rep.eventually_positive);
    CHECK(rep.sublevels_bounded);
  }

  SUBCASE("a tall constant goes positive only once the core grows") {
    const auto rep = eventual_positivity_report(
        flat, [](double, double) { return 5.0; }, radii, 2.0);
    CHECK(rep.eventually_positive);           // min phi at r = 8 is 39
    CHECK_FALSE(rep.levels.front().positive_outside_core);
    CHECK(rep.levels.back().positive_outside_core);
  }

  SUBCASE("input contracts") {
    const auto zero = [](double, double) { return 0.0; };
    CHECK_THROWS_AS(eventual_positivity_report(flat, zero, {4.0}, 1.0),
                    Error);
    CHECK_THROWS_AS(
        eventual_positivity_report(flat, zero, {4.0, 3.0}, 1.0), Error);
    CHECK_THROWS_AS(
        eventual_positivity_report(flat, zero, {4.0, 8.0}, 0.0), Error);
  }
}

TEST_CASE("wedge entry radius pins the asymptotic cone membership") {
  // asinh(r) crosses 0.8 r at r = 1.478406924740411 and stays below after.
  const double entry = wedge_entry_radius(
      [](double r) { return std::asinh(r); }, 0.8, 0.1, 10.0);
  CHECK(entry == doctest::Approx(1.478406924740411).epsilon(1e-9));
  CHECK(entry < 3.0);
  for (int k = 0; k <= 100; ++k) {
    const double rho = 3.0 + 47.0 * k / 100.0;
    CHECK(std::asinh(rho) < 0.8 * rho);
  }

  // A plane of slope 0.6 never leaves the matching wedge.
  CHECK(wedge_entry_radius([](double r) { return 0.6 * r; }, 0.6, 0.5, 10.0) ==
        0.5);

  // Slope 0.9 stays outside the 0.8-wedge for good.
  CHECK_THROWS_AS(
      wedge_entry_radius([](double r) { return 0.9 * r; }, 0.8, 0.5, 10.0),
      Error);
}
