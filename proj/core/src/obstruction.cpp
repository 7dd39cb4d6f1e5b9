#include "lpmink/obstruction.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "lpmink/errors.hpp"
#include "lpmink/parallel.hpp"
#include "lpmink/quadrature.hpp"

namespace lpmink {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPoleWindow = 1e-6;
constexpr double kPatchWindow = 1e-3;

// Distance to the nearest pole k*pi/2 and the index parity of that pole.
double pole_distance(double theta, bool* at_half_axis = nullptr) {
  const double q = theta / (0.5 * kPi);
  const double k = std::round(q);
  if (at_half_axis) *at_half_axis = (std::llround(k) % 2 != 0);
  return std::abs(theta - k * 0.5 * kPi);
}

// Fold theta into [0, pi/2] using pi-periodicity and evenness.
double fold_quarter(double theta) {
  double t = std::fmod(theta, kPi);
  if (t < 0.0) t += kPi;
  if (t > 0.5 * kPi) t = kPi - t;
  return t;
}

double signed_pow(double t, double beta) {
  if (t == 0.0) return 0.0;
  return std::pow(std::abs(t), beta - 1.0) * t;
}

}  // namespace

PeriodicFunction kernel_Kf(const PeriodicFunction& f, double p) {
  const int n = std::max(f.grid_size(), kDefaultGridSize);
  std::vector<double> k(n);
  for (int j = 0; j < n; ++j) {
    const double t = kTwoPi * j / n;
    k[j] = (p + 2.0) * f.eval(t, 0) * std::cos(2.0 * t) + f.eval(t, 1) * std::sin(2.0 * t);
  }
  return PeriodicFunction::samples(std::move(k));
}

double identity_residual(const SupportBody& u, const PeriodicFunction& f, double p) {
  const int n = std::max({u.grid_size(), f.grid_size(), kDefaultGridSize});
  double s = 0.0;
  for (int j = 0; j < n; ++j) {
    const double t = kTwoPi * j / n;
    const double kf =
        (p + 2.0) * f.eval(t, 0) * std::cos(2.0 * t) + f.eval(t, 1) * std::sin(2.0 * t);
    s += kf * std::pow(u.support().eval(t, 0), p);
  }
  return s * kTwoPi / n;
}

PeriodicFunction xi_function(double p) {
  if (!(p < -2.0)) throw DomainError("xi_function: requires p < -2");
  auto integrand = [p](double t) { return signed_pow(std::sin(2.0 * t), 0.5 * p); };
  auto value = [p, integrand](double theta) {
    const double t = fold_quarter(theta);
    if (pole_distance(t) < kPoleWindow)
      throw PoleEvaluation("xi_function: evaluation within 1e-6 of a pole");
    AdaptiveOptions opt;
    opt.abs_tol = 1e-12;
    opt.rel_tol = 1e-12;
    if (t == 0.25 * kPi) return 0.0;
    if (t < 0.25 * kPi) return integrate_adaptive(integrand, t, 0.25 * kPi, opt);
    return -integrate_adaptive(integrand, 0.25 * kPi, t, opt);
  };
  // xi' = -sin^{p/2}(2 theta) on (0, pi/2); the even pi-periodic extension
  // flips the sign on the mirrored half.
  auto deriv = [p, integrand](double theta) {
    double t = std::fmod(theta, kPi);
    if (t < 0.0) t += kPi;
    const bool mirrored = t > 0.5 * kPi;
    const double q = mirrored ? kPi - t : t;
    if (pole_distance(q) < kPoleWindow)
      throw PoleEvaluation("xi_function: evaluation within 1e-6 of a pole");
    const double d = -integrand(q);
    return mirrored ? -d : d;
  };
  return PeriodicFunction::analytic(value, deriv);
}

namespace {

struct PhiEval {
  double p;
  double window_value_0;     // phi at theta = k pi
  double window_value_half;  // phi at theta = pi/2 + k pi

  double raw(double t) const {  // t in (0, pi/2), off poles
    const double s = std::sin(2.0 * t);
    auto integrand = [this](double x) { return signed_pow(std::sin(2.0 * x), 0.5 * p); };
    AdaptiveOptions opt;
    opt.abs_tol = 1e-12;
    opt.rel_tol = 1e-12;
    double xi;
    if (t == 0.25 * kPi)
      xi = 0.0;
    else if (t < 0.25 * kPi)
      xi = integrate_adaptive(integrand, t, 0.25 * kPi, opt);
    else
      xi = -integrate_adaptive(integrand, 0.25 * kPi, t, opt);
    return std::pow(std::abs(s), -0.5 * (p + 2.0)) * xi;
  }

  double operator()(double theta) const {
    const double t = fold_quarter(theta);
    bool at_half = false;
    const double d = pole_distance(t, &at_half);
    const double limit = at_half ? window_value_half : window_value_0;
    if (d >= kPatchWindow) return raw(t);
    // Quadratic Taylor patch: phi'(pole) = 0, curvature matched at the
    // window edge so the patch meets the outer branch continuously.
    const double edge = at_half ? 0.5 * kPi - kPatchWindow : kPatchWindow;
    const double phi_edge = raw(edge);
    const double c2 = (phi_edge - limit) / (kPatchWindow * kPatchWindow);
    return limit + c2 * d * d;
  }

  double derivative(double theta) const {
    // On (0, pi/2): phi' = -(p+2) cos(2t) |sin 2t|^{-(p+4)/2} xi - 1/sin(2t).
    double tt = std::fmod(theta, kPi);
    if (tt < 0.0) tt += kPi;
    const bool mirrored = tt > 0.5 * kPi;
    const double t = mirrored ? kPi - tt : tt;
    bool at_half = false;
    const double d = pole_distance(t, &at_half);
    double val;
    if (d < kPatchWindow) {
      const double limit = at_half ? window_value_half : window_value_0;
      const double edge = at_half ? 0.5 * kPi - kPatchWindow : kPatchWindow;
      const double c2 = (raw(edge) - limit) / (kPatchWindow * kPatchWindow);
      const double signed_d = at_half ? (t - 0.5 * kPi) : t;
      val = 2.0 * c2 * signed_d;
    } else {
      const double s = std::sin(2.0 * t);
      auto integrand = [this](double x) { return signed_pow(std::sin(2.0 * x), 0.5 * p); };
      AdaptiveOptions opt;
      opt.abs_tol = 1e-12;
      opt.rel_tol = 1e-12;
      double xi;
      if (t == 0.25 * kPi)
        xi = 0.0;
      else if (t < 0.25 * kPi)
        xi = integrate_adaptive(integrand, t, 0.25 * kPi, opt);
      else
        xi = -integrate_adaptive(integrand, 0.25 * kPi, t, opt);
      val = -(p + 2.0) * std::cos(2.0 * t) * std::pow(std::abs(s), -0.5 * (p + 4.0)) * xi -
            1.0 / s;
    }
    return mirrored ? -val : val;
  }
};

}  // namespace

PeriodicFunction phi_function(double p) {
  if (!(p < -2.0)) throw DomainError("phi_function: requires p < -2");
  PhiEval ev{p, -1.0 / (p + 2.0), 1.0 / (p + 2.0)};
  return PeriodicFunction::analytic([ev](double t) { return ev(t); },
                                    [ev](double t) { return ev.derivative(t); });
}

Counterexample construct_counterexample(double p) {
  if (p > -2.0) throw DomainError("construct_counterexample: requires p <= -2");
  if (p == -2.0) {
    return {PeriodicFunction::fourier(2.0, {0.0, 1.0}, {}),
            PeriodicFunction::fourier(-1.0, {0.0, 0.0, 0.0, 1.0}, {})};  // -2 sin^2 = -1 + cos 4t
  }
  PeriodicFunction phi = phi_function(p);
  const double c = -1.0 / (p + 2.0);
  PeriodicFunction f = PeriodicFunction::analytic(
      [phi, c](double t) { return c + phi.eval(t, 0); },
      [phi](double t) { return phi.eval(t, 1); });
  // f >= 0 with zeros exactly at pi/2 + k pi.
  const int n = 1024;
  for (int j = 0; j < n; ++j) {
    const double t = kTwoPi * j / n;
    const double v = f.eval(t, 0);
    bool at_half = false;
    pole_distance(fold_quarter(t), &at_half);
    if (v < -1e-12) throw DomainError("construct_counterexample: f negative");
  }
  return {std::move(f), PeriodicFunction::fourier(-1.0, {0.0, -1.0}, {})};
}

SupportBody random_convex_body(std::uint64_t seed, int harmonics) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<double> a(harmonics), b(harmonics);
  for (int k = 0; k < harmonics; ++k) {
    const double damp = 1.0 / ((k + 1.0) * (k + 1.0));
    a[k] = unif(rng) * damp;
    b[k] = unif(rng) * damp;
  }
  // Scale the oscillation into the convex cone: min u > 0.1, min(u''+u) > 0.1.
  double scale = 1.0;
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::vector<double> as(a), bs(b);
    for (double& v : as) v *= scale;
    for (double& v : bs) v *= scale;
    PeriodicFunction u = PeriodicFunction::fourier(1.0, as, bs);
    double min_u = 1e300, min_conv = 1e300;
    const int n = 512;
    for (int j = 0; j < n; ++j) {
      const double t = kTwoPi * j / n;
      const double v = u.eval(t, 0);
      min_u = std::min(min_u, v);
      min_conv = std::min(min_conv, u.eval(t, 2) + v);
    }
    if (min_u > 0.1 && min_conv > 0.1) return SupportBody::certify(std::move(u));
    scale *= 0.8;
  }
  throw DomainError("random_convex_body: failed to scale into the convex cone");
}

ObstructionReport certify_nonexistence(double p, const PeriodicFunction& f, int probes,
                                       std::uint64_t seed) {
  if (!(p <= -2.0)) throw DomainError("certify_nonexistence: requires p <= -2");
  ObstructionReport rep;
  rep.p = p;
  rep.seed = seed;

  const PeriodicFunction kf = kernel_Kf(f, p);
  const std::vector<double> kv = kf.grid_values();
  const int n = static_cast<int>(kv.size());
  double kmax = kv[0], kmin = kv[0], kabs = 0.0;
  int negative = 0;
  for (double v : kv) {
    kmax = std::max(kmax, v);
    kmin = std::min(kmin, v);
    kabs += std::abs(v);
    if (v < 0.0) ++negative;
  }
  kabs *= kTwoPi / n;
  rep.Kf_max = kmax;
  rep.Kf_min = kmin;
  rep.Kf_abs_integral = kabs;
  rep.Kf_negative_fraction = static_cast<double>(negative) / n;

  const double sign_tol = 1e-8 * std::max(1.0, std::abs(kmin));
  if (kmax > sign_tol && kmin < -sign_tol)
    throw InconclusiveSign("certify_nonexistence: K_f changes sign");

  bool all_negative = kabs > 0.0 && kmax <= sign_tol;
  rep.probe_residuals.assign(probes, 0.0);
  std::vector<char> ok(probes, 0);
  parallel_for(probes, [&](int i) {
    const SupportBody body = random_convex_body(seed + 1000003ULL * i);
    const double res = identity_residual(body, f, p);
    rep.probe_residuals[i] = res;
    const double delta = 1e-4 * kabs * std::pow(body.min_u(), p);
    ok[i] = res < -delta;
  });
  bool probes_ok = true;
  for (char c : ok) probes_ok = probes_ok && c;
  rep.certified = all_negative && probes_ok;
  return rep;
}

}  // namespace lpmink
