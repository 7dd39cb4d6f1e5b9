#include "lpmink/periodic_function.hpp"

#include <cmath>
#include <numbers>

#include "lpmink/errors.hpp"

namespace lpmink {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t;
}

double eval_coefficients(const PeriodicFunction::Coefficients& c, double theta, int order,
                         bool halve_nyquist, int n_grid) {
  // halve_nyquist: grid interpolants carry the k = N/2 cosine mode at half
  // weight so that the interpolant is the standard balanced one.
  double sum = (order == 0) ? c.c0 : 0.0;
  const int kmax = static_cast<int>(c.a.size());
  for (int k = 1; k <= kmax; ++k) {
    double ak = c.a[k - 1];
    double bk = (k - 1 < static_cast<int>(c.b.size())) ? c.b[k - 1] : 0.0;
    if (halve_nyquist && n_grid > 0 && k == n_grid / 2) ak *= 0.5;
    const double ck = std::cos(k * theta), sk = std::sin(k * theta);
    switch (order) {
      case 0: sum += ak * ck + bk * sk; break;
      case 1: sum += k * (-ak * sk + bk * ck); break;
      case 2: sum += -double(k) * k * (ak * ck + bk * sk); break;
      default: throw DomainError("PeriodicFunction: derivative order must be 0, 1 or 2");
    }
  }
  return sum;
}
}  // namespace

PeriodicFunction PeriodicFunction::constant(double c) {
  return fourier(c, {}, {});
}

PeriodicFunction PeriodicFunction::fourier(double c0, std::vector<double> cos_coeffs,
                                           std::vector<double> sin_coeffs) {
  PeriodicFunction f;
  FourierRep r;
  r.c = Coefficients{0.0, {}, {}};
  r.c.c0 = c0;
  r.c.a = std::move(cos_coeffs);
  r.c.b = std::move(sin_coeffs);
  if (r.c.b.size() > r.c.a.size()) r.c.a.resize(r.c.b.size(), 0.0);
  f.rep_ = std::move(r);
  return f;
}

PeriodicFunction PeriodicFunction::samples(std::vector<double> values, GridDerivative deriv) {
  const int n = static_cast<int>(values.size());
  if (n < 16 || n % 2 != 0)
    throw DomainError("PeriodicFunction::samples: grid size must be even and >= 16");
  PeriodicFunction f;
  GridRep r{std::move(values), deriv, nullptr};
  f.rep_ = std::move(r);
  return f;
}

PeriodicFunction PeriodicFunction::analytic(std::function<double(double)> f0,
                                            std::function<double(double)> f1,
                                            std::function<double(double)> f2) {
  if (!f0) throw DomainError("PeriodicFunction::analytic: value closure required");
  PeriodicFunction f;
  f.rep_ = AnalyticRep{std::move(f0), std::move(f1), std::move(f2)};
  return f;
}

bool PeriodicFunction::is_fourier() const { return std::holds_alternative<FourierRep>(rep_); }
bool PeriodicFunction::is_samples() const { return std::holds_alternative<GridRep>(rep_); }
bool PeriodicFunction::is_analytic() const { return std::holds_alternative<AnalyticRep>(rep_); }

int PeriodicFunction::grid_size() const {
  if (const auto* g = std::get_if<GridRep>(&rep_)) return static_cast<int>(g->v.size());
  return kDefaultGridSize;
}

const PeriodicFunction::Coefficients& PeriodicFunction::interp_coefficients(
    const GridRep& g) const {
  if (!g.interp) {
    const int n = static_cast<int>(g.v.size());
    auto c = std::make_shared<Coefficients>(Coefficients{0.0, {}, {}});
    c->a.assign(n / 2, 0.0);
    c->b.assign(n / 2, 0.0);
    // Exact integer argument reduction: cos(2 pi j k / n) through a table
    // indexed by j*k mod n, so high harmonics carry no range-reduction noise.
    std::vector<double> ct(n), st(n);
    for (int m = 0; m < n; ++m) {
      ct[m] = std::cos(kTwoPi * m / n);
      st[m] = std::sin(kTwoPi * m / n);
    }
    double c0 = 0.0;
    for (int j = 0; j < n; ++j) c0 += g.v[j];
    c->c0 = c0 / n;
    for (int k = 1; k <= n / 2; ++k) {
      double ak = 0.0, bk = 0.0;
      for (int j = 0; j < n; ++j) {
        const int m = static_cast<int>((static_cast<long long>(j) * k) % n);
        ak += g.v[j] * ct[m];
        bk += g.v[j] * st[m];
      }
      c->a[k - 1] = 2.0 * ak / n;
      c->b[k - 1] = (k == n / 2) ? 0.0 : 2.0 * bk / n;
    }
    g.interp = std::move(c);
  }
  return *g.interp;
}

const PeriodicFunction::Coefficients& PeriodicFunction::coefficients() const {
  if (const auto* f = std::get_if<FourierRep>(&rep_)) return f->c;
  if (const auto* g = std::get_if<GridRep>(&rep_)) return interp_coefficients(*g);
  throw DomainError("PeriodicFunction: analytic representation has no coefficient view");
}

GridDerivative PeriodicFunction::grid_derivative_method() const {
  if (const auto* g = std::get_if<GridRep>(&rep_)) return g->deriv;
  return GridDerivative::Spectral;
}

double PeriodicFunction::eval(double theta, int order) const {
  if (order < 0 || order > 2)
    throw DomainError("PeriodicFunction: derivative order must be 0, 1 or 2");
  const double t = wrap_angle(theta);
  if (const auto* f = std::get_if<FourierRep>(&rep_)) {
    return eval_coefficients(f->c, t, order, false, 0);
  }
  if (const auto* g = std::get_if<GridRep>(&rep_)) {
    const int n = static_cast<int>(g->v.size());
    const Coefficients& c = interp_coefficients(*g);
    if (order == 0 || g->deriv == GridDerivative::Spectral) {
      return eval_coefficients(c, t, order, true, n);
    }
    // 4th-order centered stencil on interpolated values; exact node values
    // are reproduced because interpolation is exact at nodes.
    const double h = kTwoPi / n;
    auto val = [&](double x) { return eval_coefficients(c, wrap_angle(x), 0, true, n); };
    if (order == 1) {
      return (-val(t + 2 * h) + 8 * val(t + h) - 8 * val(t - h) + val(t - 2 * h)) / (12 * h);
    }
    return (-val(t + 2 * h) + 16 * val(t + h) - 30 * val(t) + 16 * val(t - h) - val(t - 2 * h)) /
           (12 * h * h);
  }
  const auto& a = std::get<AnalyticRep>(rep_);
  switch (order) {
    case 0: return a.f0(t);
    case 1:
      if (a.f1) return a.f1(t);
      break;
    case 2:
      if (a.f2) return a.f2(t);
      break;
  }
  // Fall back to centered differences on the closure.
  const double h = 1e-5;
  if (order == 1) return (a.f0(wrap_angle(t + h)) - a.f0(wrap_angle(t - h))) / (2 * h);
  return (a.f0(wrap_angle(t + h)) - 2 * a.f0(t) + a.f0(wrap_angle(t - h))) / (h * h);
}

std::vector<double> PeriodicFunction::sample_values(int n) const {
  if (const auto* g = std::get_if<GridRep>(&rep_)) {
    if (n == static_cast<int>(g->v.size())) return g->v;
  }
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) out[j] = eval(kTwoPi * j / n, 0);
  return out;
}

std::vector<double> PeriodicFunction::grid_values() const { return sample_values(grid_size()); }

double PeriodicFunction::min_on_grid(int oversample) const {
  const int n = grid_size() * std::max(1, oversample);
  double m = eval(0.0, 0);
  for (int j = 1; j < n; ++j) m = std::min(m, eval(kTwoPi * j / n, 0));
  return m;
}

double PeriodicFunction::max_on_grid(int oversample) const {
  const int n = grid_size() * std::max(1, oversample);
  double m = eval(0.0, 0);
  for (int j = 1; j < n; ++j) m = std::max(m, eval(kTwoPi * j / n, 0));
  return m;
}

double PeriodicFunction::integrate() const {
  const int n = grid_size();
  double s = 0.0;
  if (const auto* g = std::get_if<GridRep>(&rep_)) {
    for (double v : g->v) s += v;
  } else {
    for (int j = 0; j < n; ++j) s += eval(kTwoPi * j / n, 0);
  }
  return s * kTwoPi / n;
}

PeriodicFunction pf_axpby(double a, const PeriodicFunction& x, double b, const PeriodicFunction& y,
                          int n) {
  std::vector<double> vx = x.sample_values(n);
  std::vector<double> vy = y.sample_values(n);
  for (int j = 0; j < n; ++j) vx[j] = a * vx[j] + b * vy[j];
  return PeriodicFunction::samples(std::move(vx));
}

}  // namespace lpmink
