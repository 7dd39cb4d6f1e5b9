#include "lpmink/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lpmink/errors.hpp"
#include "lpmink/quadrature.hpp"
#include "lpmink/roots.hpp"

namespace lpmink {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr int kSeriesDegree = 24;
constexpr double kPatchWindow = 1e-3;

// Fixed-degree truncated power series in (u - 1).
struct Series {
  std::vector<double> c;
  Series() : c(kSeriesDegree + 1, 0.0) {}

  static Series mul(const Series& a, const Series& b) {
    Series r;
    for (int i = 0; i <= kSeriesDegree; ++i) {
      if (a.c[i] == 0.0) continue;
      for (int j = 0; i + j <= kSeriesDegree; ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    return r;
  }
  static Series scaled(const Series& a, double s) {
    Series r = a;
    for (double& v : r.c) v *= s;
    return r;
  }
  static Series sum(const Series& a, const Series& b, double sb = 1.0) {
    Series r = a;
    for (int i = 0; i <= kSeriesDegree; ++i) r.c[i] += sb * b.c[i];
    return r;
  }
  Series derivative() const {
    Series r;
    for (int i = 1; i <= kSeriesDegree; ++i) r.c[i - 1] = i * c[i];
    return r;
  }
  // (this / b) after cancelling `shift` leading zeros from both.
  Series divide_shifted(const Series& b, int shift) const {
    Series num, den;
    for (int i = shift; i <= kSeriesDegree; ++i) {
      num.c[i - shift] = c[i];
      den.c[i - shift] = b.c[i];
    }
    Series q;
    const double d0 = den.c[0];
    for (int i = 0; i <= kSeriesDegree; ++i) {
      double s = num.c[i];
      for (int j = 0; j < i; ++j) s -= q.c[j] * den.c[i - j];
      q.c[i] = s / d0;
    }
    return q;
  }
  double eval(double eps) const {
    double r = 0.0;
    for (int i = kSeriesDegree; i >= 0; --i) r = r * eps + c[i];
    return r;
  }
};

struct KernelSeries {
  Series W;  // K / (G')^4
  Series B;  // ((G')^2 - 2 G G'') / (G')^2
  Series R;  // ((G')^2 - 2 G G'') / (G')^3
};

KernelSeries build_kernel_series(const std::vector<double>& g) {
  Series G;
  for (int i = 0; i <= kSeriesDegree; ++i) G.c[i] = g[i];
  const Series G1 = G.derivative();
  const Series G2 = G1.derivative();
  const Series G3 = G2.derivative();
  const Series G1sq = Series::mul(G1, G1);
  const Series K = Series::sum(
      Series::sum(Series::mul(Series::mul(G, G1), G3), Series::mul(G1sq, G2), 1.5),
      Series::mul(G, Series::mul(G2, G2)), -3.0);
  const Series N = Series::sum(G1sq, Series::mul(G, G2), -2.0);
  const Series G1cu = Series::mul(G1sq, G1);
  const Series G1q4 = Series::mul(G1sq, G1sq);
  KernelSeries ks;
  ks.W = K.divide_shifted(G1q4, 4);
  ks.B = N.divide_shifted(G1sq, 2);
  ks.R = N.divide_shifted(G1cu, 3);
  return ks;
}

const KernelSeries& kernel_series(const EnergyContext& ctx) {
  thread_local double cached_p = std::numeric_limits<double>::quiet_NaN();
  thread_local KernelSeries ks;
  if (cached_p != ctx.p()) {
    ks = build_kernel_series(ctx.series_about_1());
    cached_p = ctx.p();
  }
  return ks;
}

}  // namespace

EnergyContext::EnergyContext(double p) : p_(p) {
  if (!(p < 2.0)) throw DomainError("EnergyContext: requires p < 2");
  F_at_1_ = (p == 0.0) ? 1.0 : 1.0 - 2.0 / p;
  // G(1+e) = 2e + e^2 - 2 * sum_{k>=1} [ prod_{j=1}^{k-1} (p-j) / k! ] e^k.
  // The same product formula covers p = 0, where it reduces to the log series.
  g_series_.assign(kSeriesDegree + 1, 0.0);
  double prod = 1.0;  // prod_{j=1}^{k-1} (p - j), empty for k = 1
  for (int k = 1; k <= kSeriesDegree; ++k) {
    if (k > 1) prod *= (p - (k - 1));
    double fact = 1.0;
    for (int j = 2; j <= k; ++j) fact *= j;
    g_series_[k] = -2.0 * prod / fact;
  }
  g_series_[1] += 2.0;
  g_series_[2] += 1.0;
  // Sanity: F decreasing on (0,1], increasing on [1,inf), on a coarse sample.
  double prev = F(0.05);
  for (int i = 1; i <= 19; ++i) {
    const double u = 0.05 + 0.05 * i;
    const double cur = F(u);
    if (u <= 1.0 && cur > prev + 1e-12)
      throw DomainError("EnergyContext: F not decreasing on (0,1]");
    if (u > 1.0 + 0.05 && cur < prev - 1e-12)
      throw DomainError("EnergyContext: F not increasing on [1,inf)");
    prev = cur;
  }
}

double EnergyContext::F(double u) const {
  if (p_ == 0.0) return u * u - 2.0 * std::log(u);
  return u * u - (2.0 / p_) * std::pow(u, p_);
}

double EnergyContext::F1(double u) const { return 2.0 * (u - std::pow(u, p_ - 1.0)); }

double EnergyContext::G2(double u) const { return 2.0 - 2.0 * (p_ - 1.0) * std::pow(u, p_ - 2.0); }

double EnergyContext::G3(double u) const {
  return -2.0 * (p_ - 1.0) * (p_ - 2.0) * std::pow(u, p_ - 3.0);
}

double conjugate_max(const EnergyContext& ctx, double m) {
  if (!(m > 0.0 && m < 1.0)) throw DomainError("conjugate_max: m must lie in (0,1)");
  const double target = ctx.F(m);
  auto fdiff = [&](double u) { return ctx.F(u) - target; };
  BracketResult br = expand_bracket_up(fdiff, 1.0, 2.0, 1e300);
  if (!br.ok) throw DomainError("conjugate_max: failed to bracket M");
  double M = bisect(fdiff, br.lo, br.hi, 1e-15);
  for (int it = 0; it < 6; ++it) {
    const double d = ctx.F1(M);
    if (d == 0.0) break;
    const double step = fdiff(M) / d;
    const double Mn = M - step;
    if (Mn <= 1.0) break;
    M = Mn;
    if (std::abs(step) <= 1e-16 * M) break;
  }
  return M;
}

namespace {

long double F_ld(const EnergyContext& ctx, long double u) {
  const long double p = ctx.p();
  if (ctx.p() == 0.0) return u * u - 2.0L * std::log(u);
  return u * u - (2.0L / p) * std::pow(u, p);
}

// F(x0 + h) - F(x0). A Taylor form takes over for small |h| and the direct
// difference runs in extended precision: near m -> 1 the increments sit ten
// orders below F itself and double cancellation noise stalls the quadrature.
double stable_F_increment(const EnergyContext& ctx, double x0, double h) {
  const double p = ctx.p();
  if (std::abs(h) <= 1e-4 * x0) {
    const double d1 = ctx.F1(x0);
    const double d2 = 2.0 - 2.0 * (p - 1.0) * std::pow(x0, p - 2.0);
    const double d3 = -2.0 * (p - 1.0) * (p - 2.0) * std::pow(x0, p - 3.0);
    const double d4 = -2.0 * (p - 1.0) * (p - 2.0) * (p - 3.0) * std::pow(x0, p - 4.0);
    return h * (d1 + 0.5 * h * (d2 + h / 3.0 * (d3 + 0.25 * h * d4)));
  }
  const long double x = x0;
  return static_cast<double>(F_ld(ctx, x + static_cast<long double>(h)) - F_ld(ctx, x));
}

// Long-double Newton polish of the conjugate maximum. The turning point must
// match the energy level beyond double rounding, or the substituted upper
// integrand develops a resolution-dependent step near s = 0.
long double polish_conjugate_ld(const EnergyContext& ctx, double m, double M_seed) {
  const long double p = ctx.p();
  const long double target = F_ld(ctx, m);
  long double M = M_seed;
  for (int it = 0; it < 4; ++it) {
    const long double f1 = 2.0L * (M - std::pow(M, p - 1.0L));
    if (f1 == 0.0L) break;
    M -= (F_ld(ctx, M) - target) / f1;
  }
  return M;
}

// Integrates g over [m, M] after substituting u = m + s^2 on the lower half
// and u = M - s^2 on the upper half. g takes (u, F(m) - F(u)). Both panels
// treat their own endpoint as the exact turning point.
double integrate_with_endpoint_substitution(const EnergyContext& ctx, double m, double M,
                                            const std::function<double(double, double)>& g,
                                            double abs_tol) {
  const long double M_ld = polish_conjugate_ld(ctx, m, M);
  const double mid = m + 0.5 * (static_cast<double>(M_ld) - m);
  const long double p = ctx.p();
  auto lower = [&](double s) {
    const double u = m + s * s;
    const double d = -stable_F_increment(ctx, m, s * s);
    if (!(d > 0.0)) return 0.0;
    return 2.0 * s * g(u, d);
  };
  auto upper = [&](double s) {
    const long double u_ld = M_ld - static_cast<long double>(s) * s;
    const double u = static_cast<double>(u_ld);
    long double d;
    const long double h = -static_cast<long double>(s) * s;
    if (std::abs(static_cast<double>(h)) <= 1e-4 * static_cast<double>(M_ld)) {
      const long double d1 = 2.0L * (M_ld - std::pow(M_ld, p - 1.0L));
      const long double d2 = 2.0L - 2.0L * (p - 1.0L) * std::pow(M_ld, p - 2.0L);
      const long double d3 = -2.0L * (p - 1.0L) * (p - 2.0L) * std::pow(M_ld, p - 3.0L);
      const long double d4 =
          -2.0L * (p - 1.0L) * (p - 2.0L) * (p - 3.0L) * std::pow(M_ld, p - 4.0L);
      d = -h * (d1 + 0.5L * h * (d2 + h / 3.0L * (d3 + 0.25L * h * d4)));
    } else {
      d = F_ld(ctx, M_ld) - F_ld(ctx, u_ld);
    }
    if (!(d > 0.0L)) return 0.0;
    return 2.0 * s * g(u, static_cast<double>(d));
  };
  AdaptiveOptions opt;
  opt.abs_tol = 0.5 * abs_tol;
  opt.rel_tol = 1e-13;
  const double s_lo = std::sqrt(mid - m);
  const double s_hi = std::sqrt(static_cast<double>(M_ld) - mid);
  return integrate_adaptive(lower, 0.0, s_lo, opt) + integrate_adaptive(upper, 0.0, s_hi, opt);
}

}  // namespace

double H_integral(const EnergyContext& ctx, double m, double abs_tol) {
  if (!(m > 0.0 && m < 1.0)) throw DomainError("H_integral: m must lie in (0,1)");
  const double M = conjugate_max(ctx, m);
  return integrate_with_endpoint_substitution(
      ctx, m, M, [](double, double d) { return 1.0 / std::sqrt(d); }, abs_tol);
}

std::pair<double, double> H_limits(double p) {
  if (!(p < 2.0)) throw DomainError("H_limits: requires p < 2");
  const double at0 = (p > 0.0) ? kPi / (2.0 - p) : kPi / 2.0;
  return {at0, kPi / std::sqrt(2.0 - p)};
}

double dM_dm(const EnergyContext& ctx, double m) {
  const double M = conjugate_max(ctx, m);
  return ctx.F1(m) / ctx.F1(M);
}

KernelValues kernels(const EnergyContext& ctx, double u) {
  if (!(u > 0.0)) throw DomainError("kernels: u must be positive");
  const double p = ctx.p();
  KernelValues kv;
  const double G = ctx.G(u), G1 = ctx.G1(u), G2 = ctx.G2(u), G3 = ctx.G3(u);
  kv.K = G * G1 * G3 + 1.5 * G1 * G1 * G2 - 3.0 * G * G2 * G2;
  kv.L = (3 * p - 4) * std::pow(u, 2 * p - 4) +
         2 * (2 * p - 1) * (p - 2) * std::pow(u, p - 4) +
         (p - 2) * (p - 8) * std::pow(u, -2.0) -
         2 * (2 * p * p - 7 * p + 8) * std::pow(u, p - 2) - p * (p - 3);
  kv.T = 2 * (p - 1) * (3 * p - 4) * std::pow(u, p) + (p - 2) * (p - 4) * (2 * p - 1) -
         p * (2 * p * p - 7 * p + 8) * u * u;
  return kv;
}

double kernel_L_prime(const EnergyContext& ctx, double u) {
  const double p = ctx.p();
  return (2 * p - 4) * (3 * p - 4) * std::pow(u, 2 * p - 5) +
         2 * (2 * p - 1) * (p - 2) * (p - 4) * std::pow(u, p - 5) -
         2 * (p - 2) * (p - 8) * std::pow(u, -3.0) -
         2 * (2 * p * p - 7 * p + 8) * (p - 2) * std::pow(u, p - 3);
}

namespace {

// The combinations below cancel through two leading orders of (u - 1), so
// near u = 1 the direct double evaluation is noise. Extended precision keeps
// the noise floor below the quadrature tolerance everywhere outside the
// series window.
struct GLong {
  long double G, G1, G2, G3;
};

GLong g_long(const EnergyContext& ctx, double u) {
  const long double p = ctx.p();
  const long double ul = u;
  long double F, F_at_1;
  if (ctx.p() == 0.0) {
    F = ul * ul - 2.0L * std::log(ul);
    F_at_1 = 1.0L;
  } else {
    F = ul * ul - (2.0L / p) * std::pow(ul, p);
    F_at_1 = 1.0L - 2.0L / p;
  }
  GLong g;
  g.G = F - F_at_1;
  g.G1 = 2.0L * (ul - std::pow(ul, p - 1.0L));
  g.G2 = 2.0L - 2.0L * (p - 1.0L) * std::pow(ul, p - 2.0L);
  g.G3 = -2.0L * (p - 1.0L) * (p - 2.0L) * std::pow(ul, p - 3.0L);
  return g;
}

}  // namespace

double kernel_over_gprime4(const EnergyContext& ctx, double u) {
  const double eps = u - 1.0;
  if (std::abs(eps) < kPatchWindow) return kernel_series(ctx).W.eval(eps);
  const GLong g = g_long(ctx, u);
  const long double K =
      g.G * g.G1 * g.G3 + 1.5L * g.G1 * g.G1 * g.G2 - 3.0L * g.G * g.G2 * g.G2;
  return static_cast<double>(K / (g.G1 * g.G1 * g.G1 * g.G1));
}

double boundary_ratio(const EnergyContext& ctx, double u) {
  const double eps = u - 1.0;
  if (std::abs(eps) < kPatchWindow) return kernel_series(ctx).B.eval(eps);
  const GLong g = g_long(ctx, u);
  return static_cast<double>((g.G1 * g.G1 - 2.0L * g.G * g.G2) / (g.G1 * g.G1));
}

double scan_ratio(const EnergyContext& ctx, double u) {
  const double eps = u - 1.0;
  if (std::abs(eps) < kPatchWindow) return kernel_series(ctx).R.eval(eps);
  const GLong g = g_long(ctx, u);
  return static_cast<double>((g.G1 * g.G1 - 2.0L * g.G * g.G2) / (g.G1 * g.G1 * g.G1));
}

double dH_dm(const EnergyContext& ctx, double m, DHdmMethod method) {
  if (!(m > 0.0 && m < 1.0)) throw DomainError("dH_dm: m must lie in (0,1)");
  if (method != DHdmMethod::FiniteDifference && m > 1.0 - 1e-3)
    throw DomainError("dH_dm: integral methods need m <= 1 - 1e-3");
  switch (method) {
    case DHdmMethod::Kernel811: {
      const double M = conjugate_max(ctx, m);
      const double Gm = ctx.G(m);
      const double integral = integrate_with_endpoint_substitution(
          ctx, m, M,
          [&](double u, double d) { return kernel_over_gprime4(ctx, u) * std::sqrt(d); }, 1e-10);
      return -4.0 * (0.5 * ctx.F1(m)) * integral / Gm;
    }
    case DHdmMethod::Boundary812: {
      const double M = conjugate_max(ctx, m);
      const double Gm = ctx.G(m);
      const double integral = integrate_with_endpoint_substitution(
          ctx, m, M,
          [&](double u, double d) { return boundary_ratio(ctx, u) / std::sqrt(d); }, 1e-10);
      return (0.5 * ctx.F1(m)) * integral / Gm;
    }
    case DHdmMethod::FiniteDifference: {
      // Turning-point rounding leaves ~1e-8 jitter in H, so the step cannot
      // be much smaller than 1e-3 without amplifying it.
      const double h = std::min(1e-3, 0.25 * std::min(m, 1.0 - m));
      return (H_integral(ctx, m + h, 1e-11) - H_integral(ctx, m - h, 1e-11)) / (2.0 * h);
    }
  }
  throw DomainError("dH_dm: unknown method");
}

KernelScanReport prop83_kernel_scan(const EnergyContext& ctx, double m, int samples) {
  if (!(m > 0.0 && m < 1.0)) throw DomainError("prop83_kernel_scan: m must lie in (0,1)");
  const double M = conjugate_max(ctx, m);
  const double Gm = ctx.G(m);
  KernelScanReport rep;
  rep.samples = samples;
  rep.min_value = std::numeric_limits<double>::infinity();
  rep.max_value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const double gamma = Gm * (i + 0.5) / samples;
    // u on (m, 1): G decreasing; v on (1, M): G increasing.
    auto gl = [&](double x) { return ctx.G(x) - gamma; };
    const double u = bisect(gl, m, 1.0, 1e-14);
    const double v = bisect(gl, 1.0, M, 1e-14);
    const double val = scan_ratio(ctx, u) - scan_ratio(ctx, v);
    rep.min_value = std::min(rep.min_value, val);
    rep.max_value = std::max(rep.max_value, val);
  }
  const double scale = std::max(std::abs(rep.min_value), std::abs(rep.max_value));
  const double tol = 1e-10 * std::max(1.0, scale);
  rep.sign_constant = !(rep.min_value < -tol && rep.max_value > tol);
  return rep;
}

EnergyProfile build_energy_profile(double p, const std::vector<double>& m_values,
                                   bool with_derivatives) {
  EnergyContext ctx(p);
  EnergyProfile prof;
  prof.p = p;
  prof.rows.reserve(m_values.size());
  for (double m : m_values) {
    ProfileRow row;
    row.m = m;
    row.M = conjugate_max(ctx, m);
    row.H = H_integral(ctx, m);
    if (with_derivatives && m <= 1.0 - 1e-3) {
      row.dHdm_kernel = dH_dm(ctx, m, DHdmMethod::Kernel811);
      row.dHdm_boundary = dH_dm(ctx, m, DHdmMethod::Boundary812);
      row.dHdm_fd = dH_dm(ctx, m, DHdmMethod::FiniteDifference);
    } else if (with_derivatives) {
      row.dHdm_fd = dH_dm(ctx, m, DHdmMethod::FiniteDifference);
      row.dHdm_kernel = row.dHdm_fd;
      row.dHdm_boundary = row.dHdm_fd;
    }
    prof.rows.push_back(row);
  }
  return prof;
}

std::vector<double> counting_grid(int n, double eps) {
  // Geometric refinement toward both endpoints; H flattens toward its limits.
  std::vector<double> grid;
  grid.reserve(n);
  const int half = n / 2;
  for (int i = 0; i < half; ++i) {
    const double t = static_cast<double>(i) / (half - 1);
    grid.push_back(std::exp(std::log(eps) + t * (std::log(0.5) - std::log(eps))));
  }
  for (int i = half - 1; i >= 0; --i) {
    const double t = static_cast<double>(i) / (half - 1);
    const double d = std::exp(std::log(eps) + t * (std::log(0.5) - std::log(eps)));
    if (1.0 - d > grid.back()) grid.push_back(1.0 - d);
  }
  return grid;
}

CountResult count_solutions(double p, int m_grid_size) {
  if (!(p < 2.0)) throw DomainError("count_solutions: requires p < 2");
  EnergyContext ctx(p);
  CountResult res;
  res.p = p;
  const std::vector<double> grid = counting_grid(std::max(m_grid_size, 16));
  std::vector<double> Hv(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) Hv[i] = H_integral(ctx, grid[i]);

  // H flattens exponentially toward its endpoint limits, so sign changes
  // within evaluation noise of a level are touches, not crossings (genuine
  // crossings clear this floor by several orders on any sensible grid).
  const double noise_floor = 1e-7;
  const int kappa_max = static_cast<int>(std::ceil(std::sqrt(2.0 - p))) + 1;
  for (int kappa = 1; kappa <= kappa_max; ++kappa) {
    const double level = kPi / kappa;
    double last_root = -1.0;
    for (size_t i = 0; i + 1 < grid.size(); ++i) {
      const double d0 = Hv[i] - level, d1 = Hv[i + 1] - level;
      if (!(d0 * d1 < 0.0) || std::max(std::abs(d0), std::abs(d1)) <= noise_floor) continue;
      auto f = [&](double m) { return H_integral(ctx, m) - level; };
      const double m_root = bisect(f, grid[i], grid[i + 1], 1e-12);
      if (last_root >= 0.0 && std::abs(m_root - last_root) < 1e-8) continue;
      last_root = m_root;
      res.roots.push_back({kappa, m_root, H_integral(ctx, m_root)});
    }
  }
  std::sort(res.roots.begin(), res.roots.end(), [](const SolutionRoot& a, const SolutionRoot& b) {
    return a.kappa != b.kappa ? a.kappa < b.kappa : a.m < b.m;
  });
  res.count = static_cast<int>(res.roots.size());
  return res;
}

}  // namespace lpmink
