#include "lpmink/ode.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lpmink/errors.hpp"
#include "lpmink/obstruction.hpp"

namespace lpmink {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Circulant second-derivative matrix for the chosen discretization.
Eigen::MatrixXd second_derivative_matrix(int n, Discretization disc) {
  Eigen::MatrixXd D(n, n);
  if (disc == Discretization::CenteredFd4) {
    const double h = kTwoPi / n;
    const double c0 = -30.0 / (12 * h * h), c1 = 16.0 / (12 * h * h), c2 = -1.0 / (12 * h * h);
    D.setZero();
    for (int j = 0; j < n; ++j) {
      D(j, j) = c0;
      D(j, (j + 1) % n) += c1;
      D(j, (j - 1 + n) % n) += c1;
      D(j, (j + 2) % n) += c2;
      D(j, (j - 2 + n) % n) += c2;
    }
    return D;
  }
  // Spectral: closed-form circulant entries of the periodic second-derivative
  // matrix for even n (summing the cosine series instead cancels
  // catastrophically).
  const double h = kTwoPi / n;
  std::vector<double> col(n, 0.0);
  col[0] = -std::numbers::pi * std::numbers::pi / (3.0 * h * h) - 1.0 / 6.0;
  for (int j = 1; j < n; ++j) {
    const double s = std::sin(0.5 * j * h);
    col[j] = -((j % 2 == 0) ? 1.0 : -1.0) / (2.0 * s * s);
  }
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) D(i, j) = col[(i - j + n) % n];
  return D;
}

Eigen::VectorXd to_vec(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<long>(v.size()));
}

std::vector<double> to_std(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

Eigen::VectorXd residual_vec(const Eigen::MatrixXd& D2, const Eigen::VectorXd& u,
                             const Eigen::VectorXd& f, double p) {
  Eigen::VectorXd r = D2 * u + u;
  for (long j = 0; j < u.size(); ++j) r[j] -= f[j] * std::pow(u[j], p - 1.0);
  return r;
}

}  // namespace

std::vector<double> apply_second_derivative(const std::vector<double>& values,
                                            Discretization disc) {
  const int n = static_cast<int>(values.size());
  const Eigen::MatrixXd D2 = second_derivative_matrix(n, disc);
  Eigen::VectorXd r = D2 * to_vec(values);
  return to_std(r);
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::SingularJacobian: return "singular_jacobian";
    case SolveStatus::NoConvergence: return "no_convergence";
    case SolveStatus::LeftPositiveCone: return "left_positive_cone";
    case SolveStatus::PathFailure: return "path_failure";
  }
  return "unknown";
}

PeriodicFunction residual(const PeriodicFunction& u, const ProblemSpec& spec) {
  // Derivatives follow the representation: exact for trig polynomials and
  // analytic closures, tagged spectral/fd4 interpolation for grids.
  const int n = spec.grid_n;
  std::vector<double> r(n);
  const GridDerivative gd = (spec.disc == Discretization::Spectral) ? GridDerivative::Spectral
                                                                    : GridDerivative::CenteredFd4;
  for (int j = 0; j < n; ++j) {
    const double t = kTwoPi * j / n;
    const double uv = u.eval(t, 0);
    if (!(uv > 0.0)) throw NonPositiveInput("residual: u not positive on the grid");
    r[j] = u.eval(t, 2) + uv - spec.f.eval(t, 0) * std::pow(uv, spec.p - 1.0);
  }
  return PeriodicFunction::samples(std::move(r), gd);
}

double residual_max_norm(const PeriodicFunction& u, const ProblemSpec& spec) {
  const std::vector<double> r = residual(u, spec).grid_values();
  double m = 0.0;
  for (double v : r) m = std::max(m, std::abs(v));
  return m;
}

void attach_diagnostics(SolveReport& rep, const ProblemSpec& spec) {
  if (rep.u_values.empty()) return;
  const int n = static_cast<int>(rep.u_values.size());
  const std::vector<double> fv = spec.f.sample_values(n);
  double int_fu = 0.0, int_u = 0.0, umin = rep.u_values[0], umax = rep.u_values[0];
  for (int j = 0; j < n; ++j) {
    const double uj = rep.u_values[j];
    int_fu += fv[j] * std::pow(uj, spec.p - 1.0);
    int_u += uj;
    umin = std::min(umin, uj);
    umax = std::max(umax, uj);
  }
  int_fu *= kTwoPi / n;
  int_u *= kTwoPi / n;
  rep.identity_4_10 = std::abs(int_fu - int_u);
  rep.identity_4_10_rel = rep.identity_4_10 / std::abs(int_u);

  if (spec.p < 0.0)
    rep.harnack_ratio = umax * umax / std::pow(umin, spec.p);
  else if (spec.p == 0.0 && umin < 1.0)
    rep.harnack_ratio = umax * umax / std::log(1.0 / umin);

  double fmin = fv[0], fmax = fv[0];
  for (double v : fv) {
    fmin = std::min(fmin, v);
    fmax = std::max(fmax, v);
  }
  const bool f_const = (fmax - fmin) <= 1e-13 * std::max(1.0, std::abs(fmax));
  if (f_const) {
    PeriodicFunction ug = PeriodicFunction::samples(rep.u_values);
    double emin = std::numeric_limits<double>::infinity(), emax = -emin;
    for (int j = 0; j < n; ++j) {
      const double t = kTwoPi * j / n;
      const double uj = ug.eval(t, 0), upj = ug.eval(t, 1);
      const double e = upj * upj + uj * uj -
                       (spec.p == 0.0 ? 2.0 * std::log(uj) : (2.0 / spec.p) * std::pow(uj, spec.p));
      emin = std::min(emin, e);
      emax = std::max(emax, e);
    }
    rep.first_integral_spread = emax - emin;
  }

  if (spec.p <= -2.0) {
    const PeriodicFunction kf = kernel_Kf(spec.f, spec.p);
    const std::vector<double> kv = kf.sample_values(n);
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += kv[j] * std::pow(rep.u_values[j], spec.p);
    rep.identity_7_1 = s * kTwoPi / n;
  }
}

SolveReport newton_solve(const ProblemSpec& spec, const PeriodicFunction& init, double tol) {
  const int n = spec.grid_n;
  SolveReport rep;
  if (n < 16 || n % 2 != 0) throw DomainError("newton_solve: grid_n must be even and >= 16");
  if (!(tol > 0.0)) throw DomainError("newton_solve: tol must be positive");
  const Eigen::VectorXd f = to_vec(spec.f.sample_values(n));
  if (f.minCoeff() <= 0.0) throw NonPositiveInput("newton_solve: f must be positive");
  Eigen::VectorXd u = to_vec(init.sample_values(n));
  if (u.minCoeff() <= 0.0) throw NonPositiveInput("newton_solve: init must be positive");

  const Eigen::MatrixXd D2 = second_derivative_matrix(n, spec.disc);
  Eigen::VectorXd r = residual_vec(D2, u, f, spec.p);
  double rnorm = r.lpNorm<Eigen::Infinity>();
  rep.residual_history.push_back(rnorm);

  int it = 0;
  for (; it < spec.max_iter && rnorm > tol; ++it) {
    Eigen::MatrixXd J = D2;
    J.diagonal().array() += 1.0;
    for (int j = 0; j < n; ++j) J(j, j) -= (spec.p - 1.0) * f[j] * std::pow(u[j], spec.p - 2.0);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(J);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-12)) {
      rep.status = SolveStatus::SingularJacobian;
      rep.message = "linearized operator numerically rank-deficient";
      rep.u_values = to_std(u);
      rep.residual_max = rnorm;
      return rep;
    }
    const Eigen::VectorXd step = lu.solve(-r);

    // Armijo backtracking plus a positivity guard: reject iterates losing
    // more than half of the current minimum in one step.
    const double min_u = u.minCoeff();
    double lambda = 1.0;
    bool accepted = false;
    while (lambda >= 1e-8) {
      Eigen::VectorXd un = u + lambda * step;
      if (un.minCoeff() > 0.5 * min_u) {
        Eigen::VectorXd rn = residual_vec(D2, un, f, spec.p);
        const double rn_norm = rn.lpNorm<Eigen::Infinity>();
        if (rn_norm <= (1.0 - 1e-4 * lambda) * rnorm) {
          u = std::move(un);
          r = std::move(rn);
          rnorm = rn_norm;
          accepted = true;
          break;
        }
      }
      lambda *= 0.5;
    }
    if (!accepted) {
      const bool left_cone = (u + step).minCoeff() <= 0.0;
      rep.status = left_cone ? SolveStatus::LeftPositiveCone : SolveStatus::NoConvergence;
      rep.message = left_cone ? "damping exhausted with nonpositive iterate"
                              : "damping exhausted without residual decrease";
      rep.u_values = to_std(u);
      rep.residual_max = rnorm;
      return rep;
    }
    rep.residual_history.push_back(rnorm);
  }

  rep.u_values = to_std(u);
  rep.residual_max = rnorm;
  rep.trace.push_back({1.0, it, u.minCoeff()});
  if (rnorm <= tol) {
    const Eigen::VectorXd conv = D2 * u + u;
    if (u.minCoeff() > 0.0 && conv.minCoeff() > 0.0) {
      try {
        rep.solution = SupportBody::certify(PeriodicFunction::samples(rep.u_values), n);
        rep.status = SolveStatus::Converged;
        attach_diagnostics(rep, spec);
      } catch (const NonPositiveInput&) {
        // Positive at the nodes but not as an interpolant.
        rep.status = SolveStatus::NoConvergence;
        rep.message = "iterate loses convexity between collocation nodes";
      }
    } else {
      rep.status = SolveStatus::NoConvergence;
      rep.message = "residual converged but iterate not a convex support function";
    }
  } else {
    rep.status = SolveStatus::NoConvergence;
    rep.message = "iteration budget exhausted";
  }
  return rep;
}

SolveReport solve_linear_p1(const ProblemSpec& spec) {
  // u'' + u = f; in Fourier space (1 - k^2) u_k = f_k. The k = 1 pair spans
  // the kernel, so f must be orthogonal to it; the returned representative
  // drops the kernel component and the affine family has dimension 2.
  const int n = spec.grid_n;
  SolveReport rep;
  rep.affine_family_dim = 2;
  PeriodicFunction fg = PeriodicFunction::samples(spec.f.sample_values(n));
  const auto& c = fg.coefficients();
  double scale = std::abs(c.c0);
  for (double v : c.a) scale = std::max(scale, std::abs(v));
  for (double v : c.b) scale = std::max(scale, std::abs(v));
  const double incompat = std::max(std::abs(c.a[0]), std::abs(c.b[0]));
  if (incompat > 1e-10 * std::max(1.0, scale)) {
    rep.status = SolveStatus::NoConvergence;
    rep.message = "f has a first-harmonic component; u'' + u = f is unsolvable";
    return rep;
  }
  std::vector<double> a(c.a.size(), 0.0), b(c.b.size(), 0.0);
  for (size_t k = 2; k <= c.a.size(); ++k) {
    const double denom = 1.0 - static_cast<double>(k) * k;
    a[k - 1] = c.a[k - 1] / denom;
    if (k - 1 < b.size()) b[k - 1] = c.b[k - 1] / denom;
  }
  PeriodicFunction u = PeriodicFunction::fourier(c.c0, std::move(a), std::move(b));
  rep.u_values = u.sample_values(n);
  ProblemSpec s1 = spec;
  rep.residual_max = residual_max_norm(u, s1);
  rep.status = SolveStatus::Converged;
  rep.solution = SupportBody::certify(u, n);
  attach_diagnostics(rep, spec);
  return rep;
}

double linearization_smallest_singular_value(const PeriodicFunction& u, const ProblemSpec& spec) {
  const int n = spec.grid_n;
  const Eigen::VectorXd uv = to_vec(u.sample_values(n));
  if (uv.minCoeff() <= 0.0)
    throw NonPositiveInput("linearization_smallest_singular_value: u must be positive");
  const Eigen::VectorXd f = to_vec(spec.f.sample_values(n));
  Eigen::MatrixXd J = second_derivative_matrix(n, spec.disc);
  J.diagonal().array() += 1.0;
  for (int j = 0; j < n; ++j) J(j, j) -= (spec.p - 1.0) * f[j] * std::pow(uv[j], spec.p - 2.0);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(J);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

SolveReport continuation_solve(double p, const PeriodicFunction& f, int steps) {
  ContinuationOptions opt;
  opt.steps = steps;
  return continuation_solve(p, f, opt);
}

SolveReport continuation_solve(double p, const PeriodicFunction& f, const ContinuationOptions& opt) {
  const int n = opt.grid_n;
  if (n < 16 || n % 2 != 0)
    throw DomainError("continuation_solve: grid_n must be even and >= 16");
  const std::vector<double> fv = f.sample_values(n);
  for (double v : fv)
    if (!(v > 0.0)) throw NonPositiveInput("continuation_solve: f must be positive");

  std::vector<TraceEntry> trace;
  std::vector<double> u(n, 1.0);
  double t = 0.0;
  double dt = 1.0 / opt.steps;
  trace.push_back({0.0, 0, 1.0});

  SolveReport last;
  while (t < 1.0) {
    const double t_next = std::min(1.0, t + dt);
    std::vector<double> ft(n);
    for (int j = 0; j < n; ++j) ft[j] = t_next * fv[j] + (1.0 - t_next);
    ProblemSpec spec;
    spec.p = t_next * p;
    spec.f = PeriodicFunction::samples(std::move(ft));
    spec.grid_n = n;
    spec.disc = opt.disc;
    SolveReport rep = newton_solve(spec, PeriodicFunction::samples(u), opt.tol);
    if (rep.status == SolveStatus::Converged) {
      t = t_next;
      u = rep.u_values;
      trace.push_back({t, static_cast<int>(rep.residual_history.size()) - 1,
                       *std::min_element(u.begin(), u.end())});
      last = std::move(rep);
      dt = std::min(1.0 / opt.steps, 2.0 * dt);  // recover after halvings
    } else {
      dt *= 0.5;
      if (dt < opt.step_floor) {
        SolveReport fail;
        fail.status = SolveStatus::PathFailure;
        fail.message = "continuation step underflow at t = " + std::to_string(t) + " (" +
                       to_string(rep.status) + ")";
        fail.last_good_t = t;
        fail.u_values = u;
        fail.trace = std::move(trace);
        return fail;
      }
    }
  }
  last.trace = std::move(trace);
  last.last_good_t = 1.0;
  return last;
}

}  // namespace lpmink
