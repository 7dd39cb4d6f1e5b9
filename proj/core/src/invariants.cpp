#include "lpmink/invariants.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "lpmink/constructions.hpp"
#include "lpmink/energy.hpp"
#include "lpmink/errors.hpp"
#include "lpmink/obstruction.hpp"
#include "lpmink/ode.hpp"
#include "lpmink/reconstruct.hpp"
#include "lpmink/support_body.hpp"

namespace lpmink {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Suite {
  std::vector<CheckResult>& out;

  void add(const std::string& name, bool pass, double worst, const char* what = "worst") {
    std::ostringstream os;
    os << what << " = " << worst;
    out.push_back({name, pass, os.str()});
  }
};

}  // namespace

std::vector<CheckResult> run_invariant_suite(std::uint64_t seed) {
  std::vector<CheckResult> results;
  Suite s{results};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);

  // --- support geometry -----------------------------------------------------
  {
    double worst = 1e300;
    for (int rep = 0; rep < 8; ++rep) {
      const SupportBody body = random_convex_body(seed + rep);
      for (int j = 0; j < 128; ++j) {
        const double t = kTwoPi * j / 128;
        worst = std::min(worst, body.radial_length(t) - body.support().eval(t, 0));
      }
    }
    s.add("support_geometry/radial_length_ge_u", worst >= -1e-12, worst);
  }
  {
    double worst = 1e300;
    for (int rep = 0; rep < 8; ++rep) {
      const SupportBody body = random_convex_body(seed + 100 + rep);
      const Widths w = body.widths();
      const double umax = body.max_u(), umin = body.min_u();
      worst = std::min({worst, 2.0 * umax - w.w_minus, w.w_plus - 2.0 * umin});
    }
    s.add("support_geometry/width_envelope", worst >= -1e-12, worst);
  }
  {
    // Dilation scales area quadratically (trig representation).
    double worst = 0.0;
    for (int rep = 0; rep < 6; ++rep) {
      const SupportBody body = random_convex_body(seed + 200 + rep);
      const auto& c = body.support().coefficients();
      const double factor = 1.0 + 0.5 * std::abs(unif(rng));
      std::vector<double> a(c.a), b(c.b);
      for (double& v : a) v *= factor;
      for (double& v : b) v *= factor;
      const SupportBody dilated =
          SupportBody::certify(PeriodicFunction::fourier(factor * c.c0, a, b));
      const double rel = std::abs(dilated.area().geometric - factor * factor * body.area().geometric) /
                         dilated.area().geometric;
      worst = std::max(worst, rel);
    }
    s.add("support_geometry/area_dilation_quadratic", worst <= 1e-12, worst);
  }
  {
    // Trig interpolation of grid data reproduces derivatives of low harmonics.
    const int n = 64;
    double worst = 0.0;
    for (int k = 1; k <= n / 4; ++k) {
      std::vector<double> v(n);
      for (int j = 0; j < n; ++j) v[j] = std::cos(k * kTwoPi * j / n);
      PeriodicFunction g = PeriodicFunction::samples(v);
      for (int j = 0; j < 13; ++j) {
        const double t = 0.37 + j * 0.45;
        worst = std::max(worst, std::abs(g.eval(t, 1) + k * std::sin(k * t)));
        worst = std::max(worst, std::abs(g.eval(t, 2) + double(k) * k * std::cos(k * t)));
      }
    }
    s.add("support_geometry/trig_interp_derivatives", worst <= 1e-10, worst);
  }

  // --- lp_ode ---------------------------------------------------------------
  {
    // Converged continuation solves satisfy the integral identity and the
    // maximum-principle bounds.
    double worst_id = 0.0;
    bool bounds_ok = true;
    for (int rep = 0; rep < 3; ++rep) {
      std::vector<double> a(4), b(4);
      for (int k = 0; k < 4; ++k) {
        a[k] = 0.25 * unif(rng) / (k + 1);
        b[k] = 0.25 * unif(rng) / (k + 1);
      }
      PeriodicFunction f = PeriodicFunction::fourier(1.0, a, b);
      if (f.min_on_grid(4) < 0.3) continue;
      const double p = -0.9 + 0.4 * rep;
      SolveReport rep_s = continuation_solve(p, f, 32);
      if (rep_s.status != SolveStatus::Converged) {
        bounds_ok = false;
        continue;
      }
      worst_id = std::max(worst_id, rep_s.identity_4_10_rel);
      try {
        bound_diagnostics(*rep_s.solution, f, p);
      } catch (const BoundViolation&) {
        bounds_ok = false;
      }
    }
    s.add("lp_ode/identity_4_10_on_solutions", worst_id <= 1e-8 && bounds_ok, worst_id);
  }
  {
    // The p = 1 translation family has identically zero residual.
    ProblemSpec spec;
    spec.p = 1.0;
    double worst = 0.0;
    for (int rep = 0; rep < 5; ++rep) {
      const double A = 0.8 * unif(rng), B = 0.8 * unif(rng);
      if (A * A + B * B >= 1.0) continue;
      PeriodicFunction u = PeriodicFunction::fourier(1.0, {A}, {B});
      worst = std::max(worst, residual_max_norm(u, spec));
    }
    s.add("lp_ode/p1_family_zero_residual", worst <= 1e-12, worst);
  }
  {
    // Newton converges quadratically near a nondegenerate root.
    ProblemSpec spec;
    spec.p = -0.5;
    spec.f = PeriodicFunction::fourier(1.0, {0.2}, {});
    SolveReport rep = newton_solve(spec, PeriodicFunction::constant(1.0), 1e-10);
    bool quad = rep.status == SolveStatus::Converged && rep.residual_history.size() >= 3;
    if (quad) {
      const auto& h = rep.residual_history;
      for (size_t i = 2; i < h.size(); ++i) {
        // check only above the discrete roundoff floor
        if (h[i - 1] < 1e-2 && h[i - 1] > 1e-6)
          quad = quad && (h[i] <= 20.0 * h[i - 1] * h[i - 1]);
      }
    }
    s.add("lp_ode/newton_quadratic_convergence", quad,
          rep.residual_history.empty() ? 0.0 : rep.residual_history.back());
  }
  {
    // Conserves the first integral when f is constant; the constant-weight
    // families have no isolated roots (their H sits exactly on a level).
    const CountResult roots = count_solutions(-2.0, 60);
    ProblemSpec spec;
    spec.p = 0.0;
    SolveReport rep = newton_solve(spec, PeriodicFunction::fourier(1.0, {0.2}, {}), 1e-10);
    const bool ok = rep.status == SolveStatus::Converged && rep.first_integral_spread &&
                    *rep.first_integral_spread <= 1e-6 && roots.count == 0;
    s.add("lp_ode/first_integral_constant_f", ok,
          rep.first_integral_spread ? *rep.first_integral_spread : -1.0);
  }

  // --- energy ---------------------------------------------------------------
  {
    // F(m) = F(M(m)) and dM/dm matches differencing.
    double worst_f = 0.0, worst_d = 0.0;
    for (double p : {-3.0, -0.5, 0.0, 0.5, 1.5}) {
      EnergyContext ctx(p);
      for (double m : {0.15, 0.5, 0.85}) {
        const double M = conjugate_max(ctx, m);
        worst_f = std::max(worst_f,
                           std::abs(ctx.F(M) - ctx.F(m)) / (1.0 + std::abs(ctx.F(m))));
        const double h = 1e-6;
        const double fd = (conjugate_max(ctx, m + h) - conjugate_max(ctx, m - h)) / (2 * h);
        worst_d = std::max(worst_d, std::abs(dM_dm(ctx, m) - fd) / std::abs(fd));
      }
    }
    s.add("energy/conjugate_pairing", worst_f <= 1e-12, worst_f);
    s.add("energy/dM_dm_matches_fd", worst_d <= 1e-6, worst_d);
  }
  {
    // -2 K/(G')^4 is the derivative of ((G')^2 - 2 G G'')/(G')^3.
    double worst = 0.0;
    std::uniform_real_distribution<double> up(0.2, 3.0);
    std::uniform_real_distribution<double> pp(-6.0, 1.9);
    for (int rep = 0; rep < 100; ++rep) {
      const double p = pp(rng);
      EnergyContext ctx(p);
      double u = up(rng);
      if (std::abs(u - 1.0) < 0.01) u += 0.05;
      const double h = 1e-5 * std::max(1.0, std::abs(u));
      const double fd = (scan_ratio(ctx, u + h) - scan_ratio(ctx, u - h)) / (2 * h);
      const double lhs = -2.0 * kernel_over_gprime4(ctx, u);
      worst = std::max(worst, std::abs(lhs - fd) / std::max(1.0, std::abs(fd)));
    }
    s.add("energy/identity_8_13", worst <= 1e-6, worst);
  }
  {
    // Kernel vanishing at u = 1, scaled by the largest coefficient.
    double worst = 0.0;
    std::uniform_real_distribution<double> pp(-8.0, 1.95);
    for (int rep = 0; rep < 20; ++rep) {
      const double p = pp(rng);
      EnergyContext ctx(p);
      const KernelValues kv = kernels(ctx, 1.0);
      const double scale = std::max({1.0, std::abs(p * (p - 3.0)),
                                     std::abs(2 * (2 * p * p - 7 * p + 8))});
      const double l_prime = kernel_L_prime(ctx, 1.0);
      worst = std::max({worst, std::abs(kv.K) / scale, std::abs(kv.L) / scale,
                        std::abs(kv.T) / scale, std::abs(l_prime) / scale});
    }
    s.add("energy/kernels_vanish_at_1", worst <= 1e-9, worst);
  }
  {
    // H monotone on the uniqueness windows; endpoint slope signs.
    bool mono_ok = true;
    for (double p : {0.5, 0.75, 1.5, 1.9}) {
      EnergyContext ctx(p);
      double prev = H_integral(ctx, 0.01);
      int dir = 0;
      for (int i = 1; i < 50; ++i) {
        const double m = 0.01 + (0.98 * i) / 49;
        const double cur = H_integral(ctx, m);
        const int d = cur > prev ? 1 : -1;
        if (dir == 0) dir = d;
        if (d != dir) mono_ok = false;
        prev = cur;
      }
    }
    s.add("energy/H_monotone_uniqueness_window", mono_ok, mono_ok ? 1.0 : 0.0);

    bool signs_ok = true;
    for (double p : {1.5, 1.9}) signs_ok &= dH_dm(EnergyContext(p), 0.99, DHdmMethod::FiniteDifference) < 0;
    for (double p : {-1.5, 0.5}) signs_ok &= dH_dm(EnergyContext(p), 0.99, DHdmMethod::FiniteDifference) > 0;
    for (double p : {-3.0, -8.0}) signs_ok &= dH_dm(EnergyContext(p), 0.99, DHdmMethod::FiniteDifference) < 0;
    s.add("energy/sign_table_8_21", signs_ok, signs_ok ? 1.0 : 0.0);
  }
  {
    // Reconstructed solutions conserve the first integral.
    auto count = count_solutions(-8.0, 200);
    bool ok = !count.roots.empty();
    double worst = 0.0;
    EnergyContext ctx(-8.0);
    for (const auto& r : count.roots) {
      const ReconstructedSolution sol = reconstruct_symmetric_solution(ctx, r.m, r.kappa);
      worst = std::max(worst, sol.first_integral_spread);
      ok = ok && sol.first_integral_spread <= 1e-8;
    }
    s.add("energy/reconstruction_conserves_8_1", ok, worst);
  }

  // --- obstruction ----------------------------------------------------------
  {
    // K_f is linear in f.
    std::vector<double> av{0.3, -0.1, 0.2}, bv{0.1, 0.05, -0.2};
    PeriodicFunction f1 = PeriodicFunction::fourier(1.5, av, bv);
    PeriodicFunction f2 = PeriodicFunction::fourier(0.7, {0.2, 0.1}, {-0.3});
    const double p = -2.5, ca = 1.7, cb = -0.6;
    PeriodicFunction kf1 = kernel_Kf(f1, p);
    PeriodicFunction kf2 = kernel_Kf(f2, p);
    PeriodicFunction combo = kernel_Kf(pf_axpby(ca, f1, cb, f2), p);
    double worst = 0.0;
    for (int j = 0; j < 256; ++j) {
      const double t = kTwoPi * j / 256;
      worst = std::max(worst, std::abs(combo.eval(t, 0) - ca * kf1.eval(t, 0) - cb * kf2.eval(t, 0)));
    }
    s.add("obstruction/kernel_linearity", worst <= 1e-12, worst);
  }
  {
    // phi: even and pi-periodic everywhere. Pole regularity splits by p:
    // Lipschitz slopes (grid-doubling stable) for p <= -4, and the floor
    // phi > 1/(p+2) for p in (-4, -2]; the pole expansion coefficient
    // changes sign at p = -4, so neither property holds on the other side.
    PeriodicFunction phi3 = phi_function(-3.0);
    double worst_sym = 0.0;
    for (int j = 1; j < 100; ++j) {
      const double t = 0.015 * j;
      worst_sym = std::max(worst_sym, std::abs(phi3.eval(t, 0) - phi3.eval(-t, 0)));
      worst_sym = std::max(worst_sym, std::abs(phi3.eval(t, 0) - phi3.eval(t + kPi, 0)));
    }
    double floor_margin = 1e300;
    for (int j = 0; j < 700; ++j) {
      const double t = kTwoPi * j / 700;
      const double d = std::abs(std::remainder(t - 0.5 * kPi, kPi));
      if (d < 1e-3) continue;
      floor_margin = std::min(floor_margin, phi3.eval(t, 0) - 1.0 / (-3.0 + 2.0));
    }
    PeriodicFunction phi_lip = phi_function(-4.5);
    auto max_slope = [&](int n) {
      double worst = 0.0;
      double prev = phi_lip.eval(0.0, 0);
      for (int j = 1; j <= n; ++j) {
        const double cur = phi_lip.eval(kTwoPi * j / n, 0);
        worst = std::max(worst, std::abs(cur - prev) / (kTwoPi / n));
        prev = cur;
      }
      return worst;
    };
    const double s1 = max_slope(512), s2 = max_slope(1024);
    const bool lip_ok = s2 / s1 < 1.1;
    s.add("obstruction/phi_shape", worst_sym <= 1e-9 && lip_ok && floor_margin > 0.0,
          worst_sym, "symmetry defect");
  }
  {
    // Reconstructed p = -8 solutions satisfy the trigonometric identity.
    auto count = count_solutions(-8.0, 120);
    double worst = 0.0;
    bool ok = true;
    EnergyContext ctx(-8.0);
    for (const auto& r : count.roots) {
      const ReconstructedSolution sol = reconstruct_symmetric_solution(ctx, r.m, r.kappa);
      const double res = identity_residual(sol.body, PeriodicFunction::constant(1.0), -8.0);
      worst = std::max(worst, std::abs(res));
      ok = ok && std::abs(res) <= 1e-6;
    }
    s.add("obstruction/identity_7_1_on_solutions", ok, worst);
  }

  // --- constructions ----------------------------------------------------------
  {
    bool ok = true;
    double worst_resid = 0.0;
    double f_inf_cap = 0.0, f_min_floor = 1e300, width_worst = 0.0;
    for (int j : {10, 25, 50, 100}) {
      const DegeneratingFamily fam = build_family_member(1.0, 1.0 / j);
      const auto uv = fam.u().grid_values();
      double mn = uv[0];
      for (double v : uv) mn = std::min(mn, v);
      ok = ok && (mn == fam.min_u());
      ProblemSpec spec;
      spec.p = fam.p();
      spec.f = fam.f();
      worst_resid = std::max(worst_resid, residual_max_norm(fam.u(), spec));
      f_inf_cap = std::max(f_inf_cap, fam.f().max_on_grid());
      f_min_floor = std::min(f_min_floor, fam.f().min_on_grid());
      const Widths w = fam.body().widths();
      width_worst = std::max(width_worst, w.w_plus / w.w_minus);
    }
    ok = ok && worst_resid <= 1e-9 && f_min_floor > 0.0 && width_worst < 10.0;
    s.add("constructions/family_member_consistency", ok, worst_resid, "grid residual");
  }

  return results;
}

}  // namespace lpmink
