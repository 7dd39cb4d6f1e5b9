#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lpmink/energy.hpp"
#include "lpmink/errors.hpp"
#include "lpmink/ode.hpp"
#include "lpmink/reconstruct.hpp"

using namespace lpmink;
namespace {
constexpr double kPi = std::numbers::pi;

// Independent oracle: bisection on the raw F formula, written out separately
// from the implementation path it checks.
double oracle_conjugate(double p, double m) {
  auto F = [p](double u) {
    return (p == 0.0) ? u * u - 2.0 * std::log(u) : u * u - (2.0 / p) * std::pow(u, p);
  };
  const double target = F(m);
  double lo = 1.0, hi = 2.0;
  while (F(hi) < target) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (F(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}
}  // namespace

TEST_CASE("conjugate maximum") {
  // F(u) = u^2 + u^{-2} is invariant under u -> 1/u, so M(1/2) = 2.
  EnergyContext cm2(-2.0);
  CHECK(conjugate_max(cm2, 0.5) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(conjugate_max(cm2, 0.5) == doctest::Approx(oracle_conjugate(-2.0, 0.5)).epsilon(1e-12));

  // F(u) = u^2 - 2u is symmetric about u = 1, so M = 2 - m.
  EnergyContext c1(1.0);
  CHECK(conjugate_max(c1, 0.25) == doctest::Approx(1.75).epsilon(1e-13));

  // M(m) -> (2/p)^{1/(2-p)} as m -> 0 for p in (0,2).
  EnergyContext ch(0.5);
  // The limit is approached like F(m)/F'(M0) = O(sqrt(m)).
  CHECK(conjugate_max(ch, 1e-9) ==
        doctest::Approx(std::pow(4.0, 1.0 / 1.5)).epsilon(1e-4));

  CHECK_THROWS_AS(conjugate_max(c1, 1.2), DomainError);
  CHECK_THROWS_AS(conjugate_max(c1, 0.0), DomainError);

  for (double p : {-3.0, -0.5, 0.0, 0.5, 1.5}) {
    EnergyContext ctx(p);
    for (double m : {0.2, 0.6, 0.9})
      CHECK(conjugate_max(ctx, m) == doctest::Approx(oracle_conjugate(p, m)).epsilon(1e-11));
  }
}

TEST_CASE("H is constant on the two closed-form families") {
  EnergyContext c1(1.0), cm2(-2.0);
  for (double m : {0.1, 0.5, 0.9}) {
    CHECK(std::abs(H_integral(c1, m) - kPi) <= 1e-6);
    CHECK(std::abs(H_integral(cm2, m) - kPi / 2.0) <= 1e-6);
  }
}

TEST_CASE("H endpoint limits in closed form") {
  auto [a15, b15] = H_limits(1.5);
  CHECK(a15 == doctest::Approx(2.0 * kPi));
  CHECK(b15 == doctest::Approx(kPi / std::sqrt(0.5)));
  auto [a0, b0] = H_limits(0.0);
  CHECK(a0 == doctest::Approx(kPi / 2));
  CHECK(b0 == doctest::Approx(kPi / std::sqrt(2.0)));
  auto [a7, b7] = H_limits(-7.0);
  CHECK(a7 == doctest::Approx(kPi / 2));
  CHECK(b7 == doctest::Approx(kPi / 3.0));
}

TEST_CASE("dM/dm closed form") {
  EnergyContext cm2(-2.0);
  // (0.5 - 0.5^{-3})/(2 - 2^{-3}) = -4, the slope of M = 1/m at 1/2.
  CHECK(dM_dm(cm2, 0.5) == doctest::Approx(-4.0).epsilon(1e-12));
  EnergyContext c1(1.0);
  CHECK(dM_dm(c1, 0.25) == doctest::Approx(-1.0).epsilon(1e-12));
  // Leading-order symmetry of F about its minimum.
  for (double p : {-4.0, 0.3, 1.2}) {
    EnergyContext ctx(p);
    CHECK(dM_dm(ctx, 0.9995) == doctest::Approx(-1.0).epsilon(2e-3));
  }
  // Matches differencing of conjugate_max.
  for (double p : {-3.0, 0.5}) {
    EnergyContext ctx(p);
    for (double m : {0.3, 0.7}) {
      const double h = 1e-6;
      const double fd = (conjugate_max(ctx, m + h) - conjugate_max(ctx, m - h)) / (2 * h);
      CHECK(dM_dm(ctx, m) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("kernels vanish at u = 1 and carry the lemma signs") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pp(-8.0, 1.95);
  for (int i = 0; i < 20; ++i) {
    const double p = pp(rng);
    EnergyContext ctx(p);
    const KernelValues kv = kernels(ctx, 1.0);
    const double scale =
        std::max({1.0, std::abs(p * (p - 3.0)), std::abs(2 * (2 * p * p - 7 * p + 8))});
    CHECK(std::abs(kv.K) / scale <= 1e-9);
    CHECK(std::abs(kv.L) / scale <= 1e-9);
    CHECK(std::abs(kv.T) / scale <= 1e-9);
    CHECK(std::abs(kernel_L_prime(ctx, 1.0)) / scale <= 1e-9);
  }
  CHECK(kernels(EnergyContext(1.5), 0.5).K < 0.0);
  CHECK(kernels(EnergyContext(0.5), 0.5).K > 0.0);
}

TEST_CASE("identity: -2K/(G')^4 is the derivative of the scan ratio") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> up(0.2, 3.0);
  std::uniform_real_distribution<double> pp(-6.0, 1.9);
  for (int i = 0; i < 100; ++i) {
    const double p = pp(rng);
    EnergyContext ctx(p);
    double u = up(rng);
    if (std::abs(u - 1.0) < 0.02) u += 0.05;
    const double h = 1e-5;
    const double fd = (scan_ratio(ctx, u + h) - scan_ratio(ctx, u - h)) / (2 * h);
    const double lhs = -2.0 * kernel_over_gprime4(ctx, u);
    CHECK(std::abs(lhs - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
  }
}

TEST_CASE("series patch joins the direct evaluation smoothly") {
  for (double p : {-8.0, -2.5, 0.0, 0.5, 1.5}) {
    EnergyContext ctx(p);
    for (double eps : {9.9e-4, 1.01e-3}) {
      // values within the patch window and just outside must agree
      const double in = kernel_over_gprime4(ctx, 1.0 + eps);
      const double out = kernel_over_gprime4(ctx, 1.0 + eps * 1.05);
      CHECK(std::abs(in - out) <= 1e-4 * std::max(1.0, std::abs(in)));
    }
    // limit value at u = 1: -(p-1)(p+2) / (24(2-p)) by the G-Taylor expansion
    const double expect = -(p - 1.0) * (p + 2.0) / (24.0 * (2.0 - p));
    CHECK(kernel_over_gprime4(ctx, 1.0 + 1e-9) == doctest::Approx(expect).epsilon(1e-6));
  }
}

TEST_CASE("dH/dm: three routes agree and vanish on the closed families") {
  for (double p : {1.0, -2.0}) {
    EnergyContext ctx(p);
    for (double m : {0.2, 0.5, 0.8}) {
      CHECK(std::abs(dH_dm(ctx, m, DHdmMethod::Kernel811)) <= 1e-8);
      CHECK(std::abs(dH_dm(ctx, m, DHdmMethod::Boundary812)) <= 1e-8);
      CHECK(std::abs(dH_dm(ctx, m, DHdmMethod::FiniteDifference)) <= 1e-6);
    }
  }
  for (double p : {-3.0, -0.5, 0.5, 1.5}) {
    EnergyContext ctx(p);
    for (double m : {0.15, 0.5, 0.85}) {
      const double k = dH_dm(ctx, m, DHdmMethod::Kernel811);
      const double b = dH_dm(ctx, m, DHdmMethod::Boundary812);
      const double f = dH_dm(ctx, m, DHdmMethod::FiniteDifference);
      const double scale = std::max({std::abs(k), std::abs(b), std::abs(f)});
      CHECK(std::abs(k - b) <= 1e-4 * scale);
      CHECK(std::abs(k - f) <= 1e-4 * scale);
    }
  }
  CHECK(dH_dm(EnergyContext(1.5), 0.5, DHdmMethod::Kernel811) < 0.0);
  CHECK_THROWS_AS(dH_dm(EnergyContext(0.5), 1.0 - 1e-5, DHdmMethod::Kernel811), DomainError);
}

TEST_CASE("two-branch kernel scan") {
  CHECK(prop83_kernel_scan(EnergyContext(1.5), 0.5).sign_constant);
  CHECK(prop83_kernel_scan(EnergyContext(0.75), 0.5).sign_constant);
  const KernelScanReport r = prop83_kernel_scan(EnergyContext(-2.0), 0.5);
  CHECK(r.sign_constant);
  CHECK(std::abs(r.min_value) <= 1e-10);
  CHECK(std::abs(r.max_value) <= 1e-10);
}

TEST_CASE("energy profile rows are conjugate-consistent") {
  EnergyProfile prof = build_energy_profile(-0.5, {0.1, 0.3, 0.5, 0.7, 0.9});
  double prev = 0.0;
  for (const auto& row : prof.rows) {
    CHECK(row.m > prev);
    prev = row.m;
    CHECK(row.M > 1.0);
    EnergyContext ctx(-0.5);
    CHECK(std::abs(ctx.F(row.M) - ctx.F(row.m)) <= 1e-12 * (1.0 + std::abs(ctx.F(row.m))));
  }
}

TEST_CASE("solution counting") {
  CHECK(count_solutions(0.5, 120).count == 0);
  CHECK(count_solutions(1.5, 120).count == 0);

  const CountResult res = count_solutions(-8.0, 400);
  REQUIRE(res.count >= 1);
  CHECK(res.roots[0].kappa == 3);
  CHECK(res.roots[0].m == doctest::Approx(0.8710142).epsilon(1e-5));
  CHECK(res.roots[0].H == doctest::Approx(kPi / 3.0).epsilon(1e-10));

  // Two non-constant solutions once sqrt(2-p) passes 4.
  const CountResult wide = count_solutions(-15.0, 200);
  CHECK(wide.count == 2);
  CHECK(wide.roots[0].kappa == 3);
  CHECK(wide.roots[1].kappa == 4);
}

TEST_CASE("reconstruction matches the closed-form families") {
  // p = 1: the orbit through (1/2, 0) is 1 - cos(theta)/2 up to rotation.
  EnergyContext c1(1.0);
  const ReconstructedSolution s1 = reconstruct_symmetric_solution(c1, 0.5, 1);
  double worst = 0.0;
  for (int j = 0; j < 256; ++j) {
    const double t = 2.0 * kPi * j / 256;
    worst = std::max(worst,
                     std::abs(s1.body.support().eval(t, 0) - (1.0 - 0.5 * std::cos(t))));
  }
  CHECK(worst <= 1e-6);
  CHECK(s1.minima_count == 1);

  // p = -2: the centered ellipse with semi-axes (2, 1/2), minimum at 0.
  EnergyContext cm2(-2.0);
  const ReconstructedSolution s2 = reconstruct_symmetric_solution(cm2, 0.5, 2);
  worst = 0.0;
  for (int j = 0; j < 256; ++j) {
    const double t = 2.0 * kPi * j / 256;
    const double expect =
        std::sqrt(0.25 * std::cos(t) * std::cos(t) + 4.0 * std::sin(t) * std::sin(t));
    worst = std::max(worst, std::abs(s2.body.support().eval(t, 0) - expect));
  }
  CHECK(worst <= 1e-6);
  CHECK(s2.minima_count == 2);
  CHECK(s2.first_integral_spread <= 1e-8);

  // Root-found kappa = 3 solution for p = -8.
  EnergyContext c8(-8.0);
  const CountResult res = count_solutions(-8.0, 200);
  REQUIRE(!res.roots.empty());
  const ReconstructedSolution s3 = reconstruct_symmetric_solution(c8, res.roots[0].m, 3);
  CHECK(s3.minima_count == 3);
  CHECK(s3.first_integral_spread <= 1e-8);
  ProblemSpec spec;
  spec.p = -8.0;
  CHECK(residual_max_norm(s3.body.support(), spec) <= 1e-6);

  CHECK_THROWS_AS(reconstruct_symmetric_solution(c8, 0.5, 2), CompatibilityError);
}
