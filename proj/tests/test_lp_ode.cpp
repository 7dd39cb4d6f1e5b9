#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lpmink/errors.hpp"
#include "lpmink/ode.hpp"

using namespace lpmink;
namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("residual on reference data") {
  ProblemSpec spec;
  spec.p = 0.7;
  CHECK(residual_max_norm(PeriodicFunction::constant(1.0), spec) <= 1e-13);

  // Constant ansatz at p = 0: u'' + u - u^{-1} = c - 1/c.
  ProblemSpec s0;
  s0.p = 0.0;
  PeriodicFunction c2 = PeriodicFunction::constant(2.0);
  CHECK(residual(c2, s0).eval(1.0, 0) == doctest::Approx(1.5).epsilon(1e-12));

  // The p = 1 translate family solves exactly.
  ProblemSpec s1;
  s1.p = 1.0;
  for (double A : {0.2, 0.5, 0.9}) {
    PeriodicFunction u = PeriodicFunction::fourier(1.0, {A}, {0.1 * A});
    CHECK(residual_max_norm(u, s1) <= 1e-12);
  }

  CHECK_THROWS_AS(residual_max_norm(PeriodicFunction::fourier(0.2, {0.5}, {}), s1),
                  NonPositiveInput);
}

TEST_CASE("newton converges to the constant solution at p = 0") {
  ProblemSpec spec;
  spec.p = 0.0;
  SolveReport rep = newton_solve(spec, PeriodicFunction::fourier(1.0, {0.2}, {}), 1e-10);
  REQUIRE(rep.status == SolveStatus::Converged);
  for (double v : rep.u_values) CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.residual_max <= 1e-10);
  REQUIRE(rep.first_integral_spread.has_value());
  CHECK(*rep.first_integral_spread <= 1e-6);
}

TEST_CASE("newton reports the singular linearization of the p = 1 family") {
  // Any member of the translate family solves the discrete system to roundoff,
  // so a tolerance below that floor forces a Newton step into the singular
  // Jacobian (its kernel contains cos and sin).
  ProblemSpec spec;
  spec.p = 1.0;
  SolveReport rep = newton_solve(spec, PeriodicFunction::fourier(1.0, {0.5}, {}), 1e-15);
  CHECK(rep.status == SolveStatus::SingularJacobian);

  SolveReport ok = newton_solve(spec, PeriodicFunction::fourier(1.0, {0.5}, {}), 1e-10);
  CHECK(ok.status == SolveStatus::Converged);
}

TEST_CASE("newton at p = -1/2 with nonconstant weight") {
  ProblemSpec spec;
  spec.p = -0.5;
  spec.f = PeriodicFunction::fourier(1.0, {0.2}, {});
  SolveReport rep = newton_solve(spec, PeriodicFunction::constant(1.0), 1e-10);
  REQUIRE(rep.status == SolveStatus::Converged);
  CHECK(rep.identity_4_10_rel <= 1e-8);

  // Quadratic tail: each residual is controlled by the square of the previous.
  const auto& h = rep.residual_history;
  REQUIRE(h.size() >= 4);
  for (size_t i = 2; i + 1 < h.size(); ++i)
    if (h[i] > 1e-13 && h[i - 1] < 1e-2) CHECK(h[i] <= 20.0 * h[i - 1] * h[i - 1]);
}

TEST_CASE("solver input validation") {
  ProblemSpec spec;
  spec.p = -0.5;
  spec.f = PeriodicFunction::fourier(0.2, {0.5}, {});  // dips negative
  CHECK_THROWS_AS(newton_solve(spec, PeriodicFunction::constant(1.0), 1e-10), NonPositiveInput);
  spec.f = PeriodicFunction::constant(1.0);
  CHECK_THROWS_AS(newton_solve(spec, PeriodicFunction::fourier(0.1, {0.5}, {}), 1e-10),
                  NonPositiveInput);
  CHECK_THROWS_AS(newton_solve(spec, PeriodicFunction::constant(1.0), 0.0), DomainError);
}

TEST_CASE("smallest singular value of the linearization") {
  ProblemSpec s0;
  s0.p = 0.0;
  // At u == 1, p = 0: phi'' + 2 phi with Fourier symbol 2 - k^2; the gap is 1.
  CHECK(linearization_smallest_singular_value(PeriodicFunction::constant(1.0), s0) ==
        doctest::Approx(1.0).epsilon(1e-9));

  ProblemSpec s1;
  s1.p = 1.0;
  CHECK(linearization_smallest_singular_value(PeriodicFunction::fourier(1.0, {0.5}, {}), s1) <=
        1e-9);

  ProblemSpec s3;
  s3.p = 3.0;
  // Symbol (2-p) - k^2 = -1 - k^2, minimized in modulus at k = 0.
  CHECK(linearization_smallest_singular_value(PeriodicFunction::constant(1.0), s3) ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("p = 1 linear path") {
  ProblemSpec spec;
  spec.p = 1.0;
  SolveReport rep = solve_linear_p1(spec);
  REQUIRE(rep.status == SolveStatus::Converged);
  CHECK(rep.affine_family_dim == 2);
  for (double v : rep.u_values) CHECK(v == doctest::Approx(1.0).epsilon(1e-9));

  spec.f = PeriodicFunction::fourier(1.0, {0.3}, {});  // first harmonic obstructs
  SolveReport bad = solve_linear_p1(spec);
  CHECK(bad.status == SolveStatus::NoConvergence);

  spec.f = PeriodicFunction::fourier(1.0, {0.0, 0.2}, {});
  SolveReport two = solve_linear_p1(spec);
  REQUIRE(two.status == SolveStatus::Converged);
  // u = 1 - (0.2/3) cos 2t solves u'' + u = 1 + 0.2 cos 2t.
  CHECK(two.solution->support().eval(0.0, 0) == doctest::Approx(1.0 - 0.2 / 3.0).epsilon(1e-9));
}

TEST_CASE("continuation reaches t = 1 in the existence range") {
  PeriodicFunction f = PeriodicFunction::fourier(1.0, {0.3, 0.0, 0.0}, {0.0, 0.0, 0.1});
  SolveReport rep = continuation_solve(-0.9, f, 64);
  REQUIRE(rep.status == SolveStatus::Converged);
  CHECK(rep.last_good_t == 1.0);
  CHECK(rep.identity_4_10_rel <= 1e-8);
  CHECK(rep.trace.size() >= 10);
  CHECK(rep.trace.front().t == 0.0);
  CHECK(rep.solution->min_u() > 0.0);
  CHECK(rep.solution->convexity_margin() > 0.0);
}

TEST_CASE("continuation hits the obstruction at p = -2") {
  PeriodicFunction f = PeriodicFunction::fourier(2.0, {0.0, 1.0}, {});
  SolveReport rep = continuation_solve(-2.0, f, 64);
  CHECK(rep.status == SolveStatus::PathFailure);
  CHECK(rep.last_good_t < 1.0);
  CHECK(rep.last_good_t > 0.5);  // the path gets most of the way before dying
}
