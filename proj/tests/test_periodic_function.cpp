#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lpmink/errors.hpp"
#include "lpmink/json_io.hpp"
#include "lpmink/periodic_function.hpp"

using namespace lpmink;
namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("fourier evaluation and exact derivatives") {
  PeriodicFunction one = PeriodicFunction::constant(1.0);
  CHECK(std::abs(one.eval(0.3, 2)) <= 1e-15);

  PeriodicFunction c = PeriodicFunction::fourier(0.0, {1.0}, {});
  CHECK(c.eval(0.0, 2) == doctest::Approx(-1.0));
  CHECK(c.eval(1.1, 0) == doctest::Approx(std::cos(1.1)));
  CHECK(c.eval(1.1, 1) == doctest::Approx(-std::sin(1.1)));
}

TEST_CASE("grid representation interpolates trigonometrically") {
  const int n = 64;
  std::vector<double> v(n);
  for (int j = 0; j < n; ++j) v[j] = std::cos(2.0 * (2.0 * kPi * j / n));
  PeriodicFunction g = PeriodicFunction::samples(v);

  // d/dt cos(2t) at pi/8 is -2 sin(pi/4)
  const double expected = -2.0 * std::sin(kPi / 4.0);
  CHECK(g.eval(kPi / 8.0, 1) == doctest::Approx(expected).epsilon(1e-10));
  CHECK(g.eval(0.37, 0) == doctest::Approx(std::cos(2 * 0.37)).epsilon(1e-12));
}

TEST_CASE("periodicity holds to machine precision") {
  PeriodicFunction f = PeriodicFunction::fourier(0.7, {0.3, 0.1}, {0.2});
  for (double t : {0.0, 0.4, 2.9, 5.5}) {
    CHECK(f.eval(t, 0) == doctest::Approx(f.eval(t + 2.0 * kPi, 0)).epsilon(1e-15));
    CHECK(f.eval(t, 1) == doctest::Approx(f.eval(t - 2.0 * kPi, 1)).epsilon(1e-15));
  }
}

TEST_CASE("grid size must be even and at least 16") {
  CHECK_THROWS_AS(PeriodicFunction::samples(std::vector<double>(8, 1.0)), DomainError);
  CHECK_THROWS_AS(PeriodicFunction::samples(std::vector<double>(17, 1.0)), DomainError);
  CHECK_NOTHROW(PeriodicFunction::samples(std::vector<double>(16, 1.0)));
}

TEST_CASE("centered differences agree with spectral derivatives on smooth data") {
  const int n = 128;
  std::vector<double> v(n);
  for (int j = 0; j < n; ++j) v[j] = std::exp(std::sin(2.0 * kPi * j / n));
  PeriodicFunction sp = PeriodicFunction::samples(v, GridDerivative::Spectral);
  PeriodicFunction fd = PeriodicFunction::samples(v, GridDerivative::CenteredFd4);
  for (double t : {0.0, 0.9, 3.1}) {
    CHECK(fd.eval(t, 1) == doctest::Approx(sp.eval(t, 1)).epsilon(1e-4));
    CHECK(fd.eval(t, 2) == doctest::Approx(sp.eval(t, 2)).epsilon(1e-3));
  }
}

TEST_CASE("json round trip") {
  PeriodicFunction f = PeriodicFunction::fourier(2.0, {0.0, 1.0}, {0.5});
  PeriodicFunction g = periodic_function_from_json(periodic_function_to_json(f));
  for (double t : {0.1, 1.7, 4.4}) CHECK(g.eval(t, 0) == doctest::Approx(f.eval(t, 0)).epsilon(1e-15));

  std::vector<double> v(32);
  for (int j = 0; j < 32; ++j) v[j] = 1.0 + 0.1 * std::sin(2.0 * kPi * j / 32);
  PeriodicFunction s = PeriodicFunction::samples(v);
  PeriodicFunction s2 = periodic_function_from_json(periodic_function_to_json(s));
  REQUIRE(s2.is_samples());
  CHECK(s2.grid_size() == 32);
  CHECK(s2.grid_values()[7] == v[7]);

  CHECK_THROWS_AS(periodic_function_from_json("{\"kind\":\"nope\"}"), JsonError);
}

TEST_CASE("function mini-language") {
  PeriodicFunction a = parse_function_spec("const:1.5");
  CHECK(a.eval(2.0, 0) == doctest::Approx(1.5));

  PeriodicFunction b = parse_function_spec("fourier:1;0.3,0.2;0.1");
  CHECK(b.eval(0.7, 0) ==
        doctest::Approx(1.0 + 0.3 * std::cos(0.7) + 0.2 * std::cos(1.4) + 0.1 * std::sin(0.7)));

  PeriodicFunction c = parse_function_spec("2+cos2t");
  CHECK(c.eval(0.3, 0) == doctest::Approx(2.0 + std::cos(0.6)));

  PeriodicFunction d = parse_function_spec("1+0.3cos t+0.1sin 3t");
  CHECK(d.eval(1.2, 0) == doctest::Approx(1.0 + 0.3 * std::cos(1.2) + 0.1 * std::sin(3.6)));

  CHECK_THROWS_AS(parse_function_spec("2+cosh t"), JsonError);
}
