#include "lpmink/roots.hpp"

#include <cmath>

#include "lpmink/errors.hpp"

namespace lpmink {

BracketResult expand_bracket_up(const std::function<double(double)>& f, double lo, double hi,
                                double hi_cap) {
  BracketResult r;
  double flo = f(lo);
  double fhi = f(hi);
  while (flo * fhi > 0.0 && hi < hi_cap) {
    lo = hi;
    flo = fhi;
    hi *= 2.0;
    fhi = f(hi);
  }
  r.lo = lo;
  r.hi = hi;
  r.ok = !(flo * fhi > 0.0);
  return r;
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double xtol,
              int max_iter) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0) throw DomainError("bisect: endpoints do not bracket a root");
  for (int it = 0; it < max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (flo * fm < 0.0) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
      flo = fm;
    }
    if (hi - lo <= xtol * (1.0 + std::abs(mid))) break;
  }
  return 0.5 * (lo + hi);
}

double bisect_newton(const std::function<double(double)>& f,
                     const std::function<double(double)>& df, double lo, double hi, double xtol) {
  double x = bisect(f, lo, hi, 1e4 * xtol);
  for (int it = 0; it < 8; ++it) {
    const double fx = f(x);
    const double dfx = df(x);
    if (dfx == 0.0) break;
    double step = fx / dfx;
    double xn = x - step;
    if (xn <= lo || xn >= hi) {
      xn = 0.5 * (lo + hi);  // fall back inside the bracket
    }
    if (std::abs(xn - x) <= xtol * (1.0 + std::abs(x))) {
      x = xn;
      break;
    }
    x = xn;
  }
  return x;
}

}  // namespace lpmink
