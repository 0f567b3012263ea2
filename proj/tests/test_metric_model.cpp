#include <doctest.h>

#include <cmath>

#include "maxgraph/errors.hpp"
#include "maxgraph/metric_model.hpp"

using namespace maxgraph;

TEST_CASE("gaussian curvature of the named profiles") {
  auto flat = MetricModel::flat();
  auto sph = MetricModel::sphere();
  auto hyp = MetricModel::hyperbolic();

  CHECK(flat.gaussian_curvature(0.7) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(sph.gaussian_curvature(M_PI / 4) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hyp.gaussian_curvature(1.0) == doctest::Approx(-1.0).epsilon(1e-12));

  // Pole limits are the stored values, not 0/0.
  CHECK(sph.gaussian_curvature(0.0) == 1.0);
  CHECK(hyp.gaussian_curvature(0.0) == -1.0);
}

TEST_CASE("distance to basepoint is the radial coordinate") {
  auto sph = MetricModel::sphere();
  CHECK(sph.distance_to_basepoint({1.7, 2.0}) == 1.7);
  CHECK(sph.distance_to_basepoint({0.0, 0.0}) == 0.0);
  CHECK_THROWS_AS((void)sph.distance_to_basepoint({-0.1, 0.0}), Error);
}

TEST_CASE("distance laplacian values and pole behaviour") {
  auto flat = MetricModel::flat();
  auto sph = MetricModel::sphere();
  auto hyp = MetricModel::hyperbolic();

  CHECK(flat.distance_laplacian(2.0) == doctest::Approx(0.5).epsilon(1e-14));
  // r * (f'/f) = 1 identically on the flat plane.
  for (double r : {0.1, 0.5, 1.0, 3.0, 10.0})
    CHECK(r * flat.distance_laplacian(r) == doctest::Approx(1.0).epsilon(1e-14));

  const double v = sph.distance_laplacian(M_PI / 4);
  CHECK(v == doctest::Approx(1.0).epsilon(1e-12));  // cot(pi/4)
  CHECK((M_PI / 4) * v <= 1.0);

  const double coth1 = std::cosh(1.0) / std::sinh(1.0);
  CHECK(hyp.distance_laplacian(1.0) == doctest::Approx(coth1).epsilon(1e-13));
  CHECK(hyp.distance_laplacian(1.0) * 1.0 > 1.0);

  CHECK_THROWS_AS((void)flat.distance_laplacian(0.0), Error);
  CHECK_THROWS_AS((void)sph.distance_laplacian(3.5), Error);  // beyond range
}

TEST_CASE("radial comparison bound holds where curvature is nonnegative and fails where it is negative") {
  auto flat = MetricModel::flat();
  auto sph = MetricModel::sphere();
  auto hyp = MetricModel::hyperbolic();
  for (int k = 1; k <= 200; ++k) {
    const double r = 3.0 * k / 200.0;
    CHECK(r * flat.distance_laplacian(r) <= 1.0 + 1e-12);
    if (r < 3.0) {
      const double rs = r / 3.0 * 1.4 + 1e-3;
      CHECK(rs * sph.distance_laplacian(rs) <= 1.0 + 1e-12);
    }
    CHECK(r * hyp.distance_laplacian(r) > 1.0);
  }
}

TEST_CASE("exact pairwise distances for the three named models") {
  auto flat = MetricModel::flat();
  auto sph = MetricModel::sphere();
  auto hyp = MetricModel::hyperbolic();

  CHECK(flat.distance({3.0, 0.0}, {4.0, M_PI / 2}) ==
        doctest::Approx(5.0).epsilon(1e-14));
  CHECK(flat.distance({1.0, 0.3}, {1.0, 0.3}) == doctest::Approx(0.0));

  CHECK(sph.distance({M_PI / 2, 0.0}, {M_PI / 2, M_PI / 2}) ==
        doctest::Approx(M_PI / 2).epsilon(1e-13));

  // Two hyperbolic points at radius 1 in opposite directions: the geodesic
  // runs through the basepoint, length 2.
  CHECK(hyp.distance({1.0, 0.0}, {1.0, M_PI}) ==
        doctest::Approx(2.0).epsilon(1e-13));

  auto custom = MetricModel::rotationally_symmetric(
      "gauss-bump", [](double r) { return r; }, [](double) { return 1.0; },
      [](double) { return 0.0; }, 10.0, CurvatureSign::NonNegative, 0.0);
  CHECK(!custom.pairwise_distance_available());
  CHECK_THROWS_AS((void)custom.distance({1, 0}, {2, 0}), Error);
}

TEST_CASE("curvature sign claims are verified") {
  auto sph = MetricModel::sphere();
  CHECK_NOTHROW(sph.verify_curvature_claim(0.01, 3.0));

  // sinh profile declared nonnegative: must be rejected.
  auto bad = MetricModel::rotationally_symmetric(
      "mislabeled", [](double r) { return std::sinh(r); },
      [](double r) { return std::cosh(r); },
      [](double r) { return std::sinh(r); }, 10.0,
      CurvatureSign::NonNegative, -1.0);
  CHECK_THROWS_AS(bad.verify_curvature_claim(0.1, 2.0), Error);

  auto ok = MetricModel::rotationally_symmetric(
      "relabeled", [](double r) { return std::sinh(r); },
      [](double r) { return std::cosh(r); },
      [](double r) { return std::sinh(r); }, 10.0, CurvatureSign::Negative,
      -1.0);
  CHECK_NOTHROW(ok.verify_curvature_claim(0.1, 2.0));
}
