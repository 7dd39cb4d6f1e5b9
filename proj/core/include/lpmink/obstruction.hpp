#pragma once

#include <cstdint>
#include <vector>

#include "lpmink/periodic_function.hpp"
#include "lpmink/support_body.hpp"

namespace lpmink {

// K_f = (p+2) f cos(2 theta) + f' sin(2 theta). For p <= -2 every positive
// classical solution satisfies the integral identity int K_f u^p = 0, so a
// sign-definite K_f obstructs solvability.
PeriodicFunction kernel_Kf(const PeriodicFunction& f, double p);

// int K_f u^p by the periodic trapezoid rule.
double identity_residual(const SupportBody& u, const PeriodicFunction& f, double p);

// xi(theta) = int_theta^{pi/4} sin^{p/2}(2 t) dt, extended pi-periodically and
// evenly; diverges at theta = k pi/2 (exclusion window 1e-6). Signed-power
// convention: t^b = |t|^{b-1} t.
PeriodicFunction xi_function(double p);

// phi = |sin 2theta|^{-(p+2)/2} xi off the half-axes, with the L'Hopital
// limit values -1/(p+2) at k pi and 1/(p+2) at pi/2 + k pi patched inside a
// window of 1e-3 around the poles.
PeriodicFunction phi_function(double p);

struct Counterexample {
  PeriodicFunction f;
  PeriodicFunction expected_Kf;
};

// p = -2: f = 2 + cos 2theta with K_f = -2 sin^2 2theta.
// p < -2: f = -1/(p+2) + phi, nonnegative with zeros only at the poles,
// and K_f = -1 - cos 2theta.
Counterexample construct_counterexample(double p);

struct ObstructionReport {
  double p = 0.0;
  double Kf_max = 0.0;
  double Kf_min = 0.0;
  double Kf_abs_integral = 0.0;
  double Kf_negative_fraction = 0.0;
  std::vector<double> probe_residuals;
  bool certified = false;
  std::uint64_t seed = 0;
};

// Generates `probes` random convex support bodies (truncated trig series with
// 6 harmonics, scaled into the convex cone) and certifies the obstruction if
// K_f <= 0, K_f not identically 0, and every probe residual is below -delta
// with delta = 1e-4 * int|K_f| * (min probe u)^p. Throws InconclusiveSign if
// K_f changes sign.
ObstructionReport certify_nonexistence(double p, const PeriodicFunction& f, int probes,
                                       std::uint64_t seed = 12345);

// Random positive convex body used by the probe family (exposed for tests).
SupportBody random_convex_body(std::uint64_t seed, int harmonics = 6);

}  // namespace lpmink
