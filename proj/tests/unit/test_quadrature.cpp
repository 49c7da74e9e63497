#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hardedge/quadrature.hpp"

using namespace hardedge::quadrature;

TEST_CASE("single Kronrod panel integrates constants and degree-22 polynomials") {
  CHECK(gauss_kronrod([](double) { return 1.0; }, -1.0, 1.0, 1.0, 0).value == doctest::Approx(2.0).epsilon(1e-15));
  for (int degree = 0; degree <= 22; ++degree) {
    const double exact = degree % 2 == 1 ? 0.0 : 2.0 / (degree + 1);
    const double value = gauss_kronrod([&](double x) { return std::pow(x, degree); }, -1.0, 1.0, 1.0, 0).value;
    CHECK(std::abs(value - exact) <= 1e-14);
  }
  // Degree 24 is beyond the 15-point rule's exactness.
  const double value = gauss_kronrod([](double x) { return std::pow(x, 24); }, -1.0, 1.0, 1.0, 0).value;
  CHECK(std::abs(value - 2.0 / 25.0) > 1e-12);
}

TEST_CASE("adaptive refinement") {
  CHECK(gauss_kronrod([](double x) { return std::exp(x); }, 0.0, 1.0).value ==
        doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
  CHECK(gauss_kronrod([](double x) { return std::sqrt(x); }, 0.0, 1.0).value ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-11));
  CHECK(gauss_kronrod([](double x) { return 1.0 / (1.0 + x * x); }, 1.0, 0.0).value ==
        doctest::Approx(-std::numbers::pi / 4).epsilon(1e-14));
  CHECK(gauss_kronrod([](double x) { return x; }, 2.0, 2.0).value == 0.0);
}

TEST_CASE("periodic trapezoid is spectrally accurate") {
  const double value = periodic_trapezoid([](double t) { return std::exp(std::cos(t)); }, -std::numbers::pi,
                                          2 * std::numbers::pi, 64);
  // 2 pi I_0(1).
  CHECK(value == doctest::Approx(2 * std::numbers::pi * 1.2660658777520083356).epsilon(1e-15));
}
