#pragma once

#include <optional>

#include "lpmink/ode.hpp"
#include "lpmink/periodic_function.hpp"
#include "lpmink/support_body.hpp"

namespace lpmink {

// Glued family u_eps with min u = eps^{2/(2-p)} at theta = 0 and weight
// f = (u'' + u)/u^{p-1}. On [0,1] u is the explicit power construction; on
// [1, pi] a C^2 bridge levels the slope off and brings it to zero at pi; the
// whole is reflected evenly. The grid weight uses the discrete quotient, so
// the sampled u is an exact discrete solution for the solver's operator.
class DegeneratingFamily {
 public:
  DegeneratingFamily(double p, double eps, int grid_n = kDefaultGridSize,
                     Discretization disc = Discretization::Spectral);

  double p() const { return p_; }
  double eps() const { return eps_; }
  double q() const { return q_; }
  double a1() const { return a1_; }
  double a2() const { return a2_; }
  double a3() const { return a3_; }
  double sigma_p() const { return sigma_; }
  double C_p() const { return big_c_; }
  double min_u() const { return min_u_; }
  double phi_at_21() const;

  const PeriodicFunction& u() const { return u_grid_; }
  const PeriodicFunction& f() const { return f_grid_; }
  const SupportBody& body() const { return body_; }

  // Closed-form piecewise evaluation (order 0..2) of the glued support
  // function and of the analytic quotient weight.
  double u_exact(double theta, int order = 0) const;
  double f_exact(double theta) const;

 private:
  double p_, eps_, q_, a1_, a2_, a3_, sigma_, big_c_;
  double min_u_ = 0.0;
  // bridge parameters
  double alpha_ = 0.0;  // u'(1)
  double beta_ = 0.0;   // u''(1)
  double delta1_ = 0.6;
  double c2_ = 0.0, c3_ = 0.0;
  double phi_1_ = 0.0, phi_1d_ = 0.0, phi_21_ = 0.0;
  double ramp_c_ = 0.0;
  double lambda_ = 0.04;
  PeriodicFunction u_grid_ = PeriodicFunction::constant(1.0);
  PeriodicFunction f_grid_ = PeriodicFunction::constant(1.0);
  SupportBody body_ = SupportBody::certify(PeriodicFunction::constant(1.0));
};

DegeneratingFamily build_family_member(double p, double eps, int grid_n = kDefaultGridSize);

struct IntervalSlack {
  double lower = 0.0;  // min over the interval of f - lower_envelope
  double upper = 0.0;  // min over the interval of upper_envelope - f
};

struct FamilyBoundReport {
  IntervalSlack power_region;   // [0, 1]
  IntervalSlack leveling_region;  // (1, 2.1]
  IntervalSlack tail_region;    // (2.1, pi]
  double worst_slack = 0.0;
  double phi_21 = 0.0;
  double phi_21_target = 0.0;  // 2.2/(2-p) + 1
  bool phi_21_in_band = false;  // +-25% band
  bool phi_range_ok = false;    // a2 <= phi <= a3 on [2.1, pi]
};

FamilyBoundReport verify_family_bounds(const DegeneratingFamily& fam);

// Feeds (f_eps, p) back through the Newton solver starting at u_eps.
SolveReport solve_and_compare(const DegeneratingFamily& fam, double tol = 1e-10);

struct BoundDiagnostics {
  double max_principle_lower = 0.0;  // f_-^{1/(2-p)}
  double max_principle_upper = 0.0;  // f_+^{1/(2-p)}
  double u_min = 0.0;
  double u_max = 0.0;
  std::optional<double> harnack_ratio;
  double width_ratio = 0.0;
  bool bounds_hold = false;
};

// Asserts the parameter-free maximum-principle bounds (throws BoundViolation
// on failure) and reports the Harnack and width ratios.
BoundDiagnostics bound_diagnostics(const SupportBody& u, const PeriodicFunction& f, double p);

}  // namespace lpmink
