#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sqzcool/golden_section.hpp"

using namespace sqzcool;

TEST_CASE("bracket scan") {
  const auto parabola = [](double x) { return (x - 0.3) * (x - 0.3); };
  const auto b = bracket_scan(parabola, 0.0, 1.0, 11);
  CHECK(b.interior);
  CHECK(b.best == doctest::Approx(0.3));
  CHECK(b.lo == doctest::Approx(0.2));
  CHECK(b.hi == doctest::Approx(0.4));

  const auto edge = bracket_scan([](double x) { return x; }, 0.0, 1.0, 11);
  CHECK_FALSE(edge.interior);
  CHECK(edge.best == 0.0);
  const auto right = bracket_scan([](double x) { return -x; }, 0.0, 1.0, 11);
  CHECK_FALSE(right.interior);
  CHECK(right.best == 1.0);

  const auto flat = bracket_scan([](double) { return 1.0; }, -1.0, 1.0, 5);
  CHECK(flat.best == -1.0);
}

TEST_CASE("golden section converges to the tolerance") {
  const double x = golden_section_minimize(
      [](double t) { return std::cosh(t - 1.25); }, 0.0, 3.0, 1e-9);
  CHECK(x == doctest::Approx(1.25).epsilon(1e-7));
  const double kink = golden_section_minimize(
      [](double t) { return std::abs(t - 0.7); }, 0.0, 1.0, 1e-10);
  CHECK(std::abs(kink - 0.7) < 1e-9);
}

TEST_CASE("stationary refinement beats the golden-section floor") {
  const auto f = [](double t) { return 1.0 - std::cos(t - 0.123456789); };
  const double x = refine_stationary(f, 0.0, 0.5, 1e-4);
  CHECK(std::abs(x - 0.123456789) < 1e-12);
  CHECK(refine_stationary([](double t) { return t; }, 0.0, 1.0, 1e-3) == 0.5);
}
