#pragma once

#include <utility>
#include <vector>

namespace lpmink {

// First-integral machinery for u'' + u = u^{p-1} (constant weight).
//
// F(u) = u^2 - (2/p) u^p for p != 0 and u^2 - 2 ln u for p = 0; G = F - F(1).
// F decreases on (0, 1], increases on [1, inf), so every m in (0, 1) pairs
// with a unique conjugate maximum M(m) > 1 with F(M) = F(m), and
//   H(m) = integral over [m, M] of du / sqrt(F(m) - F(u))
// is the half-period of the orbit through (m, 0).
class EnergyContext {
 public:
  explicit EnergyContext(double p);  // requires p < 2

  double p() const { return p_; }

  double F(double u) const;
  double F1(double u) const;  // dF/du = 2(u - u^{p-1}), valid for all p
  double G(double u) const { return F(u) - F_at_1_; }
  double G1(double u) const { return F1(u); }
  double G2(double u) const;
  double G3(double u) const;

  // Taylor coefficients of G about u = 1 (index = power of (u-1)).
  const std::vector<double>& series_about_1() const { return g_series_; }

 private:
  double p_ = 0.0;
  double F_at_1_ = 0.0;
  std::vector<double> g_series_;
};

double conjugate_max(const EnergyContext& ctx, double m);

double H_integral(const EnergyContext& ctx, double m, double abs_tol = 1e-10);

// Closed-form endpoint limits of H: (limit as m -> 0, limit as m -> 1).
std::pair<double, double> H_limits(double p);

double dM_dm(const EnergyContext& ctx, double m);

struct KernelValues {
  double K = 0.0;  // G G' G''' + (3/2)(G')^2 G'' - 3 G (G'')^2
  double L = 0.0;
  double T = 0.0;
};
KernelValues kernels(const EnergyContext& ctx, double u);
// dL/du in closed form (the vanishing of L'(1) is part of the kernel checks).
double kernel_L_prime(const EnergyContext& ctx, double u);

// K / (G')^4 with the removable singularity at u = 1 patched by the Taylor
// series of G (window |u-1| < 1e-3).
double kernel_over_gprime4(const EnergyContext& ctx, double u);
// ((G')^2 - 2 G G'') / (G')^2, same patching.
double boundary_ratio(const EnergyContext& ctx, double u);
// ((G')^2 - 2 G G'') / (G')^3, same patching.
double scan_ratio(const EnergyContext& ctx, double u);

enum class DHdmMethod { Kernel811, Boundary812, FiniteDifference };

double dH_dm(const EnergyContext& ctx, double m, DHdmMethod method);

struct KernelScanReport {
  double min_value = 0.0;
  double max_value = 0.0;
  bool sign_constant = false;
  int samples = 0;
};

// Samples the two-branch kernel difference along the level curve G(u) = G(v)
// between (m, 1) and (1, M(m)).
KernelScanReport prop83_kernel_scan(const EnergyContext& ctx, double m, int samples = 200);

struct ProfileRow {
  double m = 0.0;
  double M = 0.0;
  double H = 0.0;
  double dHdm_kernel = 0.0;
  double dHdm_boundary = 0.0;
  double dHdm_fd = 0.0;
};

struct EnergyProfile {
  double p = 0.0;
  std::vector<ProfileRow> rows;
};

EnergyProfile build_energy_profile(double p, const std::vector<double>& m_values,
                                   bool with_derivatives = true);

struct SolutionRoot {
  int kappa = 0;
  double m = 0.0;
  double H = 0.0;
};

struct CountResult {
  double p = 0.0;
  std::vector<SolutionRoot> roots;
  int count = 0;
};

// Brackets every crossing of H(m) with the levels pi/kappa on a grid refined
// geometrically toward both endpoints, then polishes by bisection. Each
// returned (kappa, m) pair is one non-constant solution up to rotation.
CountResult count_solutions(double p, int m_grid_size = 400);

// Geometric grid toward both endpoints of (eps, 1 - eps).
std::vector<double> counting_grid(int n, double eps = 1e-5);

}  // namespace lpmink
