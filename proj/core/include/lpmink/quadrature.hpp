#pragma once

#include <functional>
#include <span>
#include <vector>

namespace lpmink {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Gauss-Legendre nodes/weights, computed once per order and cached.
const GaussRule& gauss_legendre(int n);

double integrate_gauss(const std::function<double(double)>& f, double a, double b, int n = 16);

struct AdaptiveOptions {
  double abs_tol = 1e-11;
  double rel_tol = 1e-12;
  int max_depth = 48;
  int max_panels = 20000;
  int panel_order = 16;
};

// Adaptive bisection: a panel is accepted when one Gauss panel and its two
// halves agree within the locally allotted tolerance.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const AdaptiveOptions& opt = {});

}  // namespace lpmink
