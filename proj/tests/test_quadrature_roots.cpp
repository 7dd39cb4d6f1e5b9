#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lpmink/quadrature.hpp"
#include "lpmink/roots.hpp"

using namespace lpmink;

TEST_CASE("gauss rule integrates polynomials of degree 2n-1 exactly") {
  auto f = [](double x) { return 5 * x * x * x * x * x * x * x - 2 * x * x * x + x - 3; };
  // integral over [-1, 2]: closed form
  auto F = [](double x) {
    return 5.0 / 8 * std::pow(x, 8) - 0.5 * std::pow(x, 4) + 0.5 * x * x - 3 * x;
  };
  CHECK(integrate_gauss(f, -1.0, 2.0, 6) == doctest::Approx(F(2.0) - F(-1.0)).epsilon(1e-14));
}

TEST_CASE("adaptive quadrature resolves multi-scale integrands") {
  // A spike two orders narrower than the domain.
  auto f = [](double x) { return std::exp(-100.0 * x * x) + 0.001; };
  const double I = integrate_adaptive(f, -10.0, 10.0);
  const double expect = std::sqrt(std::numbers::pi / 100.0) + 0.02;
  CHECK(I == doctest::Approx(expect).epsilon(1e-9));

  CHECK(integrate_adaptive([](double x) { return std::sin(x); }, 0.0, std::numbers::pi) ==
        doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("bracketing and bisection") {
  auto f = [](double x) { return std::cos(x); };
  const double r = bisect(f, 0.0, 3.0, 1e-14);
  CHECK(r == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));

  auto g = [](double x) { return x * x - 10.0; };
  BracketResult br = expand_bracket_up(g, 1.0, 2.0, 1e6);
  REQUIRE(br.ok);
  const double root = bisect_newton(g, [](double x) { return 2 * x; }, br.lo, br.hi, 1e-15);
  CHECK(root == doctest::Approx(std::sqrt(10.0)).epsilon(1e-14));
}
