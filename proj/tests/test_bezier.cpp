#include <doctest.h>

#include <stdexcept>

#include "bezier.hpp"

using namespace ffda;

TEST_CASE("uniform support is admissible and evenly spaced") {
  const auto support = uniform_support(4);
  REQUIRE(support.size() == 5);
  CHECK(support.front() == 0.0);
  CHECK(support.back() == 1.0);
  CHECK(support[2] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(is_admissible_support(support));
}

TEST_CASE("admissibility requires monotone support with pinned endpoints") {
  CHECK_FALSE(is_admissible_support({0.0, 0.5, 0.4, 1.0}));  // not increasing
  CHECK_FALSE(is_admissible_support({0.1, 0.5, 1.0}));       // wrong left endpoint
  CHECK_FALSE(is_admissible_support({0.0, 0.5, 0.9}));       // wrong right endpoint
  CHECK_FALSE(is_admissible_support({0.0}));                 // degree 0
  CHECK(is_admissible_support({0.0, 0.1, 0.9, 1.0}));
}

TEST_CASE("curve_point on uniform support with zero design is (t, 0)") {
  BezierCurve2D curve{uniform_support(5), std::vector<double>(6, 0.0)};
  for (double t : {0.0, 0.125, 0.5, 0.75, 1.0}) {
    const auto [x, y] = curve_point(curve, t);
    CHECK(x == doctest::Approx(t).epsilon(1e-14));
    CHECK(y == 0.0);
  }
}

TEST_CASE("curve_point interpolates the endpoints") {
  BezierCurve2D curve{{0.0, 0.2, 0.7, 1.0}, {0.25, -1.0, 2.0, 0.75}};
  const auto [x0, y0] = curve_point(curve, 0.0);
  CHECK(x0 == 0.0);
  CHECK(y0 == 0.25);
  const auto [x1, y1] = curve_point(curve, 1.0);
  CHECK(x1 == 1.0);
  CHECK(y1 == 0.75);
}

TEST_CASE("curve_point quadratic hand value") {
  BezierCurve2D curve{{0.0, 0.5, 1.0}, {0.0, 1.0, 0.0}};
  const auto [x, y] = curve_point(curve, 0.5);
  CHECK(x == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(y == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("curve_point rejects invalid curves") {
  BezierCurve2D bad{{0.0, 0.6, 0.4, 1.0}, {0.0, 1.0, 1.0, 0.0}};
  CHECK_THROWS_AS((void)curve_point(bad, 0.5), std::invalid_argument);
  BezierCurve2D mismatched{{0.0, 1.0}, {0.0, 1.0, 2.0}};
  CHECK_THROWS_AS((void)curve_point(mismatched, 0.5), std::invalid_argument);
}

TEST_CASE("support_derivative of the uniform support is one") {
  const auto support = uniform_support(6);
  for (double t : {0.0, 0.3, 0.5, 0.9, 1.0}) {
    CHECK(support_derivative(support, t) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("support_derivative is positive for admissible supports") {
  const std::vector<double> support{0.0, 0.05, 0.3, 0.35, 0.9, 1.0};
  for (double t : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) {
    CHECK(support_derivative(support, t) > 0.0);
  }
}
