#include "lpmink/constructions.hpp"

#include <cmath>
#include <numbers>

#include "lpmink/errors.hpp"

namespace lpmink {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kBridgeEnd = 2.1;

double smooth5(double x) { return x * x * x * (10.0 + x * (-15.0 + 6.0 * x)); }
double smooth5_int(double x) {  // integral of smooth5 from 0
  return x * x * x * x * (2.5 + x * (-3.0 + x));
}
double smooth5_int2(double x) {  // integral of smooth5_int from 0
  return std::pow(x, 5) * (0.5 + x * (-0.5 + x / 7.0));
}
}  // namespace

DegeneratingFamily::DegeneratingFamily(double p, double eps, int grid_n, Discretization disc)
    : p_(p), eps_(eps) {
  if (!(p > 0.0 && p < 2.0)) throw DomainError("DegeneratingFamily: p must lie in (0,2)");
  if (!(eps > 0.0 && eps <= 0.1)) throw DomainError("DegeneratingFamily: eps must lie in (0, 0.1]");
  q_ = 2.0 / (2.0 - p);
  a1_ = q_ * (q_ - 1.0);
  a2_ = 1.1 * q_;
  a3_ = q_ * (kPi - 1.0) + 2.0;
  // Envelope constants: sharp values for the two-sided power-region bound,
  // cushioned so the inequalities are strict at the touching points.
  sigma_ = 0.999 * (1.0 - std::pow((q_ - 1.0) / q_, q_ - 1.0));
  big_c_ = 1.001;

  min_u_ = std::pow(eps, q_);
  phi_1_ = std::pow(1.0 + eps, q_) - q_ * std::pow(eps, q_ - 1.0);
  alpha_ = q_ * (std::pow(1.0 + eps, q_ - 1.0) - std::pow(eps, q_ - 1.0));
  beta_ = a1_ * std::pow(1.0 + eps, q_ - 2.0);
  phi_1d_ = alpha_;

  // Slope piece: cubic Hermite from (alpha, beta) to (q, 0) over delta1; a
  // descending slope (p > 1) needs the full leveling interval.
  delta1_ = (alpha_ > q_ + 1e-14) ? (kBridgeEnd - 1.0) : 0.6;
  const double d = delta1_;
  const double A = q_ - alpha_ - beta_ * d;
  c3_ = -(beta_ + 2.0 * A / d) / (d * d);
  c2_ = (A - c3_ * d * d * d) / (d * d);
  phi_21_ = phi_1_ + alpha_ * d + 0.5 * beta_ * d * d + c2_ * d * d * d / 3.0 +
            0.25 * c3_ * d * d * d * d + q_ * (kBridgeEnd - 1.0 - d);

  // Tail: phi'' = -c * S(y) with a quintic-smoothstep ramp of relative length
  // lambda, c fixed by phi'(pi) = 0.
  const double ell = kPi - kBridgeEnd;
  ramp_c_ = q_ / (ell * (1.0 - 0.5 * lambda_));
  if (ramp_c_ > q_ * (1.0 + 1e-9))
    throw GluingFailure("DegeneratingFamily: tail curvature exceeds the permitted band");

  // Convexity and monotonicity of the glued function on a fine grid.
  const int check_n = 4096;
  for (int j = 0; j <= check_n; ++j) {
    const double t = kPi * j / check_n;
    const double u0 = u_exact(t, 0);
    const double u2 = u_exact(t, 2);
    if (!(u0 > 0.0) || !(u2 + u0 > 0.0))
      throw GluingFailure("DegeneratingFamily: glued function is not uniformly convex");
    if (t < kPi - 1e-9 && t > 0.0 && u_exact(t, 1) < -1e-10)
      throw GluingFailure("DegeneratingFamily: support function is not monotone up to pi");
  }

  // Grid weight: the discrete quotient through the solver's own collocation
  // operator, so the sampled u is an exact discrete solution.
  std::vector<double> uv(grid_n), fv(grid_n);
  for (int j = 0; j < grid_n; ++j) uv[j] = u_exact(kTwoPi * j / grid_n, 0);
  const std::vector<double> d2u = apply_second_derivative(uv, disc);
  const GridDerivative gd =
      disc == Discretization::Spectral ? GridDerivative::Spectral : GridDerivative::CenteredFd4;
  for (int j = 0; j < grid_n; ++j) fv[j] = (d2u[j] + uv[j]) / std::pow(uv[j], p_ - 1.0);
  u_grid_ = PeriodicFunction::samples(std::move(uv), gd);
  f_grid_ = PeriodicFunction::samples(std::move(fv), gd);
  body_ = SupportBody::certify(u_grid_, grid_n);
}

double DegeneratingFamily::phi_at_21() const { return phi_21_; }

double DegeneratingFamily::u_exact(double theta, int order) const {
  // Even 2*pi-periodic extension of the piecewise definition on [0, pi].
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  double sign = 1.0;
  if (t > kPi) {
    t = kTwoPi - t;
    sign = -1.0;  // odd first derivative on the mirrored half
  }
  double v = 0.0;
  if (t <= 1.0) {
    const double x = t + eps_;
    switch (order) {
      case 0: v = std::pow(x, q_) - q_ * std::pow(eps_, q_ - 1.0) * t; break;
      case 1: v = q_ * (std::pow(x, q_ - 1.0) - std::pow(eps_, q_ - 1.0)); break;
      case 2: v = a1_ * std::pow(x, q_ - 2.0); break;
    }
  } else if (t <= 1.0 + delta1_) {
    const double s = t - 1.0;
    switch (order) {
      case 0:
        v = phi_1_ + alpha_ * s + 0.5 * beta_ * s * s + c2_ * s * s * s / 3.0 +
            0.25 * c3_ * s * s * s * s;
        break;
      case 1: v = alpha_ + beta_ * s + c2_ * s * s + c3_ * s * s * s; break;
      case 2: v = beta_ + 2.0 * c2_ * s + 3.0 * c3_ * s * s; break;
    }
  } else if (t <= kBridgeEnd) {
    const double s = t - 1.0 - delta1_;
    const double phi_d1 = phi_1_ + alpha_ * delta1_ + 0.5 * beta_ * delta1_ * delta1_ +
                          c2_ * std::pow(delta1_, 3) / 3.0 + 0.25 * c3_ * std::pow(delta1_, 4);
    switch (order) {
      case 0: v = phi_d1 + q_ * s; break;
      case 1: v = q_; break;
      case 2: v = 0.0; break;
    }
  } else {
    const double ell = kPi - kBridgeEnd;
    const double y = (t - kBridgeEnd) / ell;
    auto T = [this](double y2) {
      return (y2 <= lambda_) ? lambda_ * smooth5_int(y2 / lambda_)
                             : 0.5 * lambda_ + (y2 - lambda_);
    };
    auto V = [this](double y2) {
      if (y2 <= lambda_) return lambda_ * lambda_ * smooth5_int2(y2 / lambda_);
      return lambda_ * lambda_ / 7.0 + 0.5 * lambda_ * (y2 - lambda_) +
             0.5 * (y2 - lambda_) * (y2 - lambda_);
    };
    switch (order) {
      case 0: v = phi_21_ + q_ * ell * y - ramp_c_ * ell * ell * V(y); break;
      case 1: v = q_ - ramp_c_ * ell * T(y); break;
      case 2: v = -ramp_c_ * ((y <= lambda_) ? smooth5(y / lambda_) : 1.0); break;
    }
  }
  return (order == 1) ? sign * v : v;
}

double DegeneratingFamily::f_exact(double theta) const {
  const double u0 = u_exact(theta, 0);
  return (u_exact(theta, 2) + u0) / std::pow(u0, p_ - 1.0);
}

DegeneratingFamily build_family_member(double p, double eps, int grid_n) {
  return DegeneratingFamily(p, eps, grid_n);
}

FamilyBoundReport verify_family_bounds(const DegeneratingFamily& fam) {
  const double p = fam.p();
  const double q = fam.q();
  const double eps = fam.eps();
  const double a1 = fam.a1();
  const double sigma = fam.sigma_p();
  const double C = fam.C_p();
  FamilyBoundReport rep;

  auto scan = [&](double lo, double hi, auto lower_env, auto upper_env) {
    IntervalSlack s{1e300, 1e300};
    const int n = 2000;
    for (int i = 0; i <= n; ++i) {
      const double t = lo + (hi - lo) * i / n;
      const double f = fam.f_exact(t);
      s.lower = std::min(s.lower, f - lower_env(t));
      s.upper = std::min(s.upper, upper_env(t) - f);
    }
    return s;
  };

  // Power region: two-sided envelope in terms of x = theta + eps. The
  // denominators follow the orientation of x^{p-1}, which reverses at p = 1.
  const double den_max = std::max(std::pow(sigma, p - 1.0), std::pow(C, p - 1.0));
  const double den_min = std::min(std::pow(sigma, p - 1.0), std::pow(C, p - 1.0));
  rep.power_region = scan(
      0.0, 1.0,
      [&](double t) {
        const double x = t + eps;
        return (a1 + sigma * x * x) / den_max;
      },
      [&](double t) {
        const double x = t + eps;
        return (a1 + C * x * x) / den_min;
      });

  // Leveling region: f >= g(1)^{2-p}; the upper envelope divides by the
  // smallest value of phi^{p-1} over the realized range.
  const double g1 = fam.u_exact(1.0, 0);
  const double beta = fam.u_exact(1.0, 2);
  const double phi21 = fam.phi_at_21();
  const double den2 = std::pow(p >= 1.0 ? g1 : phi21, p - 1.0);
  rep.leveling_region = scan(
      1.0, kBridgeEnd, [&](double) { return std::pow(g1, 2.0 - p); },
      [&](double) { return (1.1 * q + 1.0 + beta) / den2; });

  // Tail region: the displayed constants, with the same orientation rule and
  // the realized phi(2.1) standing in for the asymptotic 1.1 q + 1.
  const double phi_pi = fam.u_exact(kPi, 0);
  const double den3_lower = std::pow(p >= 1.0 ? fam.a3() : phi21, p - 1.0);
  const double den3_upper = std::pow(p >= 1.0 ? fam.a2() : phi_pi, p - 1.0);
  const double tail_num_lower = std::min(0.2 / (2.0 - p) + 1.0, phi21 - q);
  rep.tail_region = scan(
      kBridgeEnd, kPi, [&](double) { return tail_num_lower / den3_lower; },
      [&](double) { return fam.a3() / den3_upper; });

  rep.worst_slack =
      std::min({rep.power_region.lower, rep.power_region.upper, rep.leveling_region.lower,
                rep.leveling_region.upper, rep.tail_region.lower, rep.tail_region.upper});

  rep.phi_21 = phi21;
  rep.phi_21_target = 2.2 / (2.0 - p) + 1.0;
  rep.phi_21_in_band = std::abs(phi21 - rep.phi_21_target) <= 0.25 * rep.phi_21_target;

  bool range_ok = true;
  for (int i = 0; i <= 500; ++i) {
    const double t = kBridgeEnd + (kPi - kBridgeEnd) * i / 500;
    const double v = fam.u_exact(t, 0);
    if (v < fam.a2() - 1e-9 || v > fam.a3() + 1e-9) range_ok = false;
  }
  rep.phi_range_ok = range_ok;
  return rep;
}

SolveReport solve_and_compare(const DegeneratingFamily& fam, double tol) {
  ProblemSpec spec;
  spec.p = fam.p();
  spec.f = fam.f();
  spec.grid_n = fam.u().grid_size();
  return newton_solve(spec, fam.u(), tol);
}

BoundDiagnostics bound_diagnostics(const SupportBody& u, const PeriodicFunction& f, double p) {
  BoundDiagnostics d;
  const double fmin = f.min_on_grid();
  const double fmax = f.max_on_grid();
  d.u_min = u.min_u();
  d.u_max = u.max_u();
  d.max_principle_lower = std::pow(fmin, 1.0 / (2.0 - p));
  d.max_principle_upper = std::pow(fmax, 1.0 / (2.0 - p));
  const Widths w = u.widths();
  d.width_ratio = w.w_plus / w.w_minus;
  if (p < 0.0)
    d.harnack_ratio = d.u_max * d.u_max / std::pow(d.u_min, p);
  else if (p == 0.0 && d.u_min < 1.0)
    d.harnack_ratio = d.u_max * d.u_max / std::log(1.0 / d.u_min);
  d.bounds_hold =
      d.u_max >= d.max_principle_lower - 1e-8 && d.u_min <= d.max_principle_upper + 1e-8;
  if (!d.bounds_hold)
    throw BoundViolation("bound_diagnostics: maximum-principle bounds violated");
  return d;
}

}  // namespace lpmink
