// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "lpmink/constructions.hpp"
#include "lpmink/energy.hpp"
#include "lpmink/errors.hpp"
#include "lpmink/obstruction.hpp"
#include "lpmink/ode.hpp"
#include "lpmink/reconstruct.hpp"

using namespace lpmink;

namespace {
constexpr double kPi = std::numbers::pi;
int g_failures = 0;

void report(int idx, const char* name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", idx, name, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// 1. Asymptotics of the half-period H at both ends of (0, 1).
void criterion_1() {
  bool pass = true;
  double worst = 0.0;
  std::string failing;
  for (double p : {-7.0, -2.0, -0.5, 0.0, 0.5, 1.5}) {
    EnergyContext ctx(p);
    const auto [lim0, lim1] = H_limits(p);
    const double d0 = std::abs(H_integral(ctx, 1e-4) - lim0);
    const double d1 = std::abs(H_integral(ctx, 1.0 - 1e-4) - lim1);
    worst = std::max({worst, d0, d1});
    if (d0 > 2e-2) {
      pass = false;
      failing += " p=" + fmt(p) + "@1e-4 off " + fmt(d0);
    }
    if (d1 > 2e-2) {
      pass = false;
      failing += " p=" + fmt(p) + "@1-1e-4 off " + fmt(d1);
    }
  }
  report(1, "H endpoint limits within 2e-2", pass,
         pass ? "worst " + fmt(worst) : "failing:" + failing);
}

// 2. H is exactly pi on the p = 1 line family and pi/2 on the ellipse family.
void criterion_2() {
  double worst = 0.0;
  EnergyContext c1(1.0), cm2(-2.0);
  for (int i = 1; i <= 9; ++i) {
    const double m = 0.1 * i;
    worst = std::max(worst, std::abs(H_integral(c1, m) - kPi));
    worst = std::max(worst, std::abs(H_integral(cm2, m) - kPi / 2.0));
  }
  report(2, "exact families: |H - pi/kappa| <= 1e-6", worst <= 1e-6, "worst " + fmt(worst));
}

// 3. Multiplicity at p = -8: root pairs plus reconstruction quality.
void criterion_3() {
  const CountResult res = count_solutions(-8.0);
  EnergyContext ctx(-8.0);
  double worst_resid = 0.0, worst_spread = 0.0;
  bool recon_ok = !res.roots.empty();
  for (const auto& r : res.roots) {
    const ReconstructedSolution sol = reconstruct_symmetric_solution(ctx, r.m, r.kappa);
    ProblemSpec spec;
    spec.p = -8.0;
    worst_resid = std::max(worst_resid, residual_max_norm(sol.body.support(), spec));
    worst_spread = std::max(worst_spread, sol.first_integral_spread);
  }
  recon_ok = recon_ok && worst_resid <= 1e-6 && worst_spread <= 1e-8;
  const bool pass = res.count >= 2 && recon_ok;
  report(3, "p=-8 multiplicity: >= 2 (kappa, m) pairs, residual <= 1e-6, (8.1) <= 1e-8", pass,
         "pairs " + std::to_string(res.count) + ", residual " + fmt(worst_resid) + ", spread " +
             fmt(worst_spread));
}

// 4. Uniqueness window: H strictly monotone and no roots.
void criterion_4() {
  bool pass = true;
  std::string detail;
  for (double p : {0.5, 0.75, 1.5, 1.9}) {
    EnergyContext ctx(p);
    double prev = H_integral(ctx, 0.01);
    int dir = 0;
    bool mono = true;
    for (int i = 1; i < 50; ++i) {
      const double m = 0.01 + 0.98 * i / 49.0;
      const double cur = H_integral(ctx, m);
      const int d = (cur > prev) ? 1 : -1;
      if (dir == 0) dir = d;
      if (d != dir) mono = false;
      prev = cur;
    }
    const int count = count_solutions(p).count;
    if (!mono || count != 0) {
      pass = false;
      detail += " p=" + fmt(p) + (mono ? "" : " not-monotone") +
                (count != 0 ? " count=" + std::to_string(count) : "");
    }
  }
  report(4, "uniqueness window: H strictly monotone, count = 0", pass,
         pass ? "p in {0.5, 0.75, 1.5, 1.9}" : detail);
}

// 5. Derivative cross-validation of dH/dm.
void criterion_5() {
  double worst = 0.0;
  for (double p : {-3.0, -0.5, 0.5, 1.5}) {
    EnergyContext ctx(p);
    for (int i = 1; i <= 10; ++i) {
      const double m = i / 11.0;
      const double k = dH_dm(ctx, m, DHdmMethod::Kernel811);
      const double b = dH_dm(ctx, m, DHdmMethod::Boundary812);
      const double f = dH_dm(ctx, m, DHdmMethod::FiniteDifference);
      const double scale = std::max({std::abs(k), std::abs(b), std::abs(f)});
      worst = std::max({worst, std::abs(k - b) / scale, std::abs(k - f) / scale,
                        std::abs(b - f) / scale});
    }
  }
  report(5, "dH/dm by (8.11), (8.12), differencing agree to 1e-4", worst <= 1e-4,
         "worst rel " + fmt(worst));
}

// 6. Kernel identities (8.13)-(8.15).
void criterion_6() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> up(0.2, 3.0);
  std::uniform_real_distribution<double> pp(-6.0, 1.9);
  double worst_813 = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double p = pp(rng);
    EnergyContext ctx(p);
    double u = up(rng);
    if (std::abs(u - 1.0) < 0.02) u += 0.05;
    const double h = 1e-5;
    const double fd = (scan_ratio(ctx, u + h) - scan_ratio(ctx, u - h)) / (2 * h);
    const double lhs = -2.0 * kernel_over_gprime4(ctx, u);
    worst_813 = std::max(worst_813, std::abs(lhs - fd) / std::max(1.0, std::abs(fd)));
  }
  double worst_815 = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double p = pp(rng);
    EnergyContext ctx(p);
    const KernelValues kv = kernels(ctx, 1.0);
    const double scale =
        std::max({1.0, std::abs(p * (p - 3.0)), std::abs(2 * (2 * p * p - 7 * p + 8))});
    const double lp = kernel_L_prime(ctx, 1.0);
    worst_815 = std::max({worst_815, std::abs(kv.K) / scale, std::abs(kv.L) / scale,
                          std::abs(kv.T) / scale, std::abs(lp) / scale});
  }
  report(6, "kernel identities: (8.13) to 1e-6, (8.15) to 1e-9", worst_813 <= 1e-6 && worst_815 <= 1e-9,
         "(8.13) " + fmt(worst_813) + ", (8.15) " + fmt(worst_815));
}

// 7. Sign table of dH/dm at m = 0.99.
void criterion_7() {
  bool pass = true;
  std::string detail;
  auto sign_at = [&](double p) {
    EnergyContext ctx(p);
    const double k = dH_dm(ctx, 0.99, DHdmMethod::Kernel811);
    const double f = dH_dm(ctx, 0.99, DHdmMethod::FiniteDifference);
    if (k * f <= 0.0) pass = false;  // methods must agree on the sign
    return k;
  };
  for (double p : {1.5, 1.9})
    if (!(sign_at(p) < 0.0)) { pass = false; detail += " p=" + fmt(p); }
  for (double p : {-1.5, 0.5})
    if (!(sign_at(p) > 0.0)) { pass = false; detail += " p=" + fmt(p); }
  for (double p : {-3.0, -8.0})
    if (!(sign_at(p) < 0.0)) { pass = false; detail += " p=" + fmt(p); }
  report(7, "sign of dH/dm at m = 0.99 matches (8.21)", pass, pass ? "6 exponents" : detail);
}

// 8. Non-existence obstruction for p = -2 and p = -3.
void criterion_8() {
  bool pass = true;
  std::string detail;

  PeriodicFunction f2 = PeriodicFunction::fourier(2.0, {0.0, 1.0}, {});
  const PeriodicFunction kf2 = kernel_Kf(f2, -2.0);
  double worst_k2 = 0.0;
  for (int j = 0; j < 512; ++j) {
    const double t = 2.0 * kPi * j / 512;
    worst_k2 = std::max(worst_k2,
                        std::abs(kf2.eval(t, 0) + 2.0 * std::sin(2 * t) * std::sin(2 * t)));
  }
  if (worst_k2 > 1e-10) { pass = false; detail += " K_f(-2) off by " + fmt(worst_k2); }

  const ObstructionReport rep2 = certify_nonexistence(-2.0, f2, 100);
  bool all_neg = rep2.probe_residuals.size() == 100;
  for (double v : rep2.probe_residuals) all_neg = all_neg && v < 0.0;
  if (!all_neg || !rep2.certified) { pass = false; detail += " probes not all negative"; }

  const SolveReport cont = continuation_solve(-2.0, f2, 64);
  if (cont.status == SolveStatus::Converged || cont.last_good_t >= 1.0) {
    pass = false;
    detail += " continuation did not fail";
  }

  const Counterexample c3 = construct_counterexample(-3.0);
  const PeriodicFunction kf3 = kernel_Kf(c3.f, -3.0);
  double worst_k3 = 0.0;
  for (int j = 0; j < 400; ++j) {
    const double t = 0.05 + (kPi / 2.0 - 0.1) * j / 399.0;
    worst_k3 = std::max(worst_k3, std::abs(kf3.eval(t, 0) - (-1.0 - std::cos(2 * t))));
  }
  if (worst_k3 > 1e-6) { pass = false; detail += " K_f(-3) off by " + fmt(worst_k3); }

  const PeriodicFunction phi = phi_function(-3.0);
  const double e0 = std::abs(phi.eval(0.0, 0) - 1.0);
  const double e1 = std::abs(phi.eval(kPi / 2.0, 0) + 1.0);
  if (e0 > 1e-6 || e1 > 1e-6) { pass = false; detail += " phi endpoints off"; }

  report(8, "obstruction: kernels, 100 negative probes, continuation failure", pass,
         pass ? "worst kernel errors " + fmt(worst_k2) + " / " + fmt(worst_k3) +
                   ", path dies at t = " + fmt(cont.last_good_t)
              : detail);
}

// 9. Degenerating families: exact minima, uniform f bounds, width ratio,
//    and solver round trip.
void criterion_9() {
  bool pass = true;
  std::string detail;
  for (double p : {0.5, 1.0}) {
    const double q = 2.0 / (2.0 - p);
    double f_floor = 0.0, f_cap = 0.0, worst_width = 0.0, worst_round = 0.0;
    bool min_exact = true;
    for (int j = 10; j <= 100; ++j) {
      const double eps = 1.0 / j;
      const DegeneratingFamily fam = build_family_member(p, eps);
      const auto uv = fam.u().grid_values();
      double mn = uv[0];
      for (double v : uv) mn = std::min(mn, v);
      min_exact = min_exact && (mn == std::pow(eps, q));
      const double fmin = fam.f().min_on_grid();
      if (j == 10) f_floor = fmin;
      f_cap = std::max(f_cap, fam.f().max_on_grid());
      if (fmin < 0.5 * f_floor) { pass = false; detail += " f floor broken"; }
      const Widths w = fam.body().widths();
      worst_width = std::max(worst_width, w.w_plus / w.w_minus);
      const SolveReport rep = solve_and_compare(fam);
      if (rep.status != SolveStatus::Converged) {
        pass = false;
        detail += " solve failed at p=" + fmt(p) + " j=" + std::to_string(j);
        continue;
      }
      for (size_t i = 0; i < uv.size(); ++i)
        worst_round = std::max(worst_round, std::abs(uv[i] - rep.u_values[i]));
    }
    if (!min_exact) { pass = false; detail += " min u not exact at p=" + fmt(p); }
    if (worst_width > 10.0) { pass = false; detail += " width ratio " + fmt(worst_width); }
    if (worst_round > 1e-6) { pass = false; detail += " round trip " + fmt(worst_round); }
    detail += " [p=" + fmt(p) + ": width<=" + fmt(worst_width) + ", round " + fmt(worst_round) +
              ", f in (" + fmt(0.5 * f_floor) + ", " + fmt(f_cap) + ")]";
  }
  report(9, "degeneration sweep eps = 1/j, j = 10..100", pass, detail);
}

// 10. Existence by continuation for p in (-1, 0].
void criterion_10() {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  bool pass = true;
  std::string detail;
  double worst_id = 0.0;
  int runs = 0;
  for (double p : {-0.9, -0.5, 0.0}) {
    for (int rep_i = 0; rep_i < 20; ++rep_i) {
      // Random positive weight with six harmonics and min f >= 0.3.
      std::vector<double> a(6), b(6);
      PeriodicFunction f = PeriodicFunction::constant(1.0);
      for (int attempt = 0; attempt < 100; ++attempt) {
        for (int k = 0; k < 6; ++k) {
          a[k] = unif(rng) / ((k + 1.0) * (k + 1.0));
          b[k] = unif(rng) / ((k + 1.0) * (k + 1.0));
        }
        f = PeriodicFunction::fourier(1.0, a, b);
        if (f.min_on_grid(4) >= 0.3) break;
        for (double& v : a) v *= 0.7;
        for (double& v : b) v *= 0.7;
      }
      ++runs;
      const SolveReport rep = continuation_solve(p, f, 64);
      if (rep.status != SolveStatus::Converged) {
        pass = false;
        detail += " fail p=" + fmt(p) + "#" + std::to_string(rep_i);
        continue;
      }
      worst_id = std::max(worst_id, rep.identity_4_10_rel);
      try {
        bound_diagnostics(*rep.solution, f, p);
      } catch (const BoundViolation&) {
        pass = false;
        detail += " bounds p=" + fmt(p);
      }
      if (!(rep.solution->convexity_margin() > 0.0)) {
        pass = false;
        detail += " convexity p=" + fmt(p);
      }
    }
  }
  if (worst_id > 1e-8) pass = false;
  report(10, "existence for p in {-0.9,-0.5,0}: 60 random continuations", pass,
         "runs " + std::to_string(runs) + ", worst (4.10) rel " + fmt(worst_id) + detail);
}

// 11. Solution-identity regression: (7.1) on reconstructed p = -8 solutions.
void criterion_11() {
  const CountResult res = count_solutions(-8.0);
  EnergyContext ctx(-8.0);
  double worst = 0.0;
  bool any = false;
  for (const auto& r : res.roots) {
    const ReconstructedSolution sol = reconstruct_symmetric_solution(ctx, r.m, r.kappa);
    worst = std::max(worst,
                     std::abs(identity_residual(sol.body, PeriodicFunction::constant(1.0), -8.0)));
    any = true;
  }
  report(11, "identity (7.1) on reconstructed p = -8 solutions", any && worst <= 1e-6,
         "worst " + fmt(worst));
}

}  // namespace

int main() {
  std::printf("acceptance suite (tolerances pinned in code)\n");
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  std::printf("%d of 11 criteria failed\n", g_failures);
  if (g_failures > 0)
    std::printf(
        "note: criterion 1 at m = 1e-4 for p in {0, 1.5} and criterion 3's pair count are\n"
        "known mathematical limits, not regressions -- H converges to its m -> 0 limit like\n"
        "O(1/sqrt(log(1/m))) at p = 0 and O(m^{1/4}) at p = 1.5, far slower than 2e-2 at\n"
        "m = 1e-4, and for p = -8 the pi/2 level is a strict supremum of H, so only the\n"
        "kappa = 3 crossing exists. See README \"Known numerical limits\".\n");
  return g_failures == 0 ? 0 : 1;
}
