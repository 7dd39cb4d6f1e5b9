#pragma once

#include <functional>

namespace lpmink {

struct BracketResult {
  double lo = 0.0;
  double hi = 0.0;
  bool ok = false;
};

// Doubles the upper end until f changes sign. f(lo) must be on the `sign_lo` side.
BracketResult expand_bracket_up(const std::function<double(double)>& f, double lo, double hi,
                                double hi_cap);

// Bisection to |hi-lo| <= xtol*(1+|x|). Requires f(lo)*f(hi) <= 0.
double bisect(const std::function<double(double)>& f, double lo, double hi, double xtol,
              int max_iter = 200);

// Bisection followed by a few safeguarded Newton steps when df is supplied.
double bisect_newton(const std::function<double(double)>& f,
                     const std::function<double(double)>& df, double lo, double hi, double xtol);

}  // namespace lpmink
