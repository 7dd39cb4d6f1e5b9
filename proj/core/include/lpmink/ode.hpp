#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lpmink/periodic_function.hpp"
#include "lpmink/support_body.hpp"

namespace lpmink {

enum class Discretization { Spectral, CenteredFd4 };

// u'' + u = f u^{p-1} on the circle. f must be positive on solve paths; the
// solver only ever raises positive u to the power p-1.
struct ProblemSpec {
  double p = 0.0;
  PeriodicFunction f = PeriodicFunction::constant(1.0);
  int grid_n = kDefaultGridSize;
  Discretization disc = Discretization::Spectral;
  double tol = 1e-10;
  int max_iter = 50;
};

enum class SolveStatus {
  Converged,
  SingularJacobian,
  NoConvergence,
  LeftPositiveCone,
  PathFailure,
};

const char* to_string(SolveStatus s);

struct TraceEntry {
  double t = 0.0;
  int newton_iterations = 0;
  double min_u = 0.0;
};

struct SolveReport {
  SolveStatus status = SolveStatus::NoConvergence;
  std::string message;
  std::optional<SupportBody> solution;
  std::vector<double> u_values;  // grid iterate, also on failure
  double residual_max = 0.0;
  // |int f u^{p-1} - int u| and the same relative to int u.
  double identity_4_10 = 0.0;
  double identity_4_10_rel = 0.0;
  // int K_f u^p, only meaningful for p <= -2.
  std::optional<double> identity_7_1;
  // u_max^2 / u_min^p for p < 0, u_max^2 / ln(1/u_min) at p = 0 (reported,
  // not asserted; the constants in the two-sided bound are not explicit).
  std::optional<double> harnack_ratio;
  // max - min of u'^2 + u^2 - (2/p) u^p when f is constant.
  std::optional<double> first_integral_spread;
  std::vector<double> residual_history;
  std::vector<TraceEntry> trace;
  int affine_family_dim = 0;  // populated by the p = 1 linear path
  double last_good_t = 0.0;   // continuation only
};

// Residual u'' + u - f u^{p-1} sampled on the grid.
PeriodicFunction residual(const PeriodicFunction& u, const ProblemSpec& spec);
double residual_max_norm(const PeriodicFunction& u, const ProblemSpec& spec);

// The collocation second derivative exactly as the solver applies it.
std::vector<double> apply_second_derivative(const std::vector<double>& values,
                                            Discretization disc);

// Damped Newton on the periodic collocation system. The linearization at u is
// phi -> phi'' + phi - (p-1) f u^{p-2} phi.
SolveReport newton_solve(const ProblemSpec& spec, const PeriodicFunction& init, double tol);

// Direct least-squares solve of the linear p = 1 problem u'' + u = f.
SolveReport solve_linear_p1(const ProblemSpec& spec);

// Smallest singular value of the discretized linearized operator at u.
double linearization_smallest_singular_value(const PeriodicFunction& u, const ProblemSpec& spec);

struct ContinuationOptions {
  int steps = 64;
  double step_floor = 1e-6;
  int grid_n = kDefaultGridSize;
  Discretization disc = Discretization::Spectral;
  double tol = 1e-10;
};

// Marches u'' + u = f_t u^{p_t - 1} with p_t = t p, f_t = t f + (1 - t) from
// the unique t = 0 solution u == 1, halving the step on Newton failure.
SolveReport continuation_solve(double p, const PeriodicFunction& f, int steps);
SolveReport continuation_solve(double p, const PeriodicFunction& f, const ContinuationOptions& opt);

// Diagnostics attached to a converged iterate.
void attach_diagnostics(SolveReport& rep, const ProblemSpec& spec);

}  // namespace lpmink
