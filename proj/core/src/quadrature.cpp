#include "lpmink/quadrature.hpp"

#include <cmath>
#include <map>
#include <queue>
#include <mutex>
#include <sstream>
#include <numbers>

#include "lpmink/errors.hpp"

namespace lpmink {

namespace {

GaussRule compute_gauss_legendre(int n) {
  // Newton iteration on Legendre P_n, nodes seeded by the Chebyshev estimate.
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static std::map<int, GaussRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

double integrate_gauss(const std::function<double(double)>& f, double a, double b, int n) {
  const GaussRule& rule = gauss_legendre(n);
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += rule.weights[i] * f(c + h * rule.nodes[i]);
  return h * sum;
}

namespace {

struct Panel {
  double a, b, value, error;
  int depth;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel make_panel(const std::function<double(double)>& f, double a, double b, int order,
                 int depth) {
  const double whole = integrate_gauss(f, a, b, order);
  const double mid = 0.5 * (a + b);
  const double halves = integrate_gauss(f, a, mid, order) + integrate_gauss(f, mid, b, order);
  return Panel{a, b, halves, std::abs(halves - whole), depth};
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const AdaptiveOptions& opt) {
  if (a == b) return 0.0;
  // Worst-panel-first refinement with a work budget; unconverged panels at
  // the budget are tolerated only within a small multiple of the target.
  std::priority_queue<Panel> queue;
  queue.push(make_panel(f, a, b, opt.panel_order, 0));
  double total = queue.top().value;
  double total_err = queue.top().error;
  const int budget = opt.max_panels;
  int used = 1;
  while (used < budget) {
    const double tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
    if (total_err <= tol) break;
    Panel worst = queue.top();
    if (worst.depth >= opt.max_depth) break;
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = make_panel(f, worst.a, mid, opt.panel_order, worst.depth + 1);
    Panel right = make_panel(f, mid, worst.b, opt.panel_order, worst.depth + 1);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++used;
  }
  const double tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
  if (total_err > 100.0 * tol) {
    std::ostringstream os;
    os << "adaptive quadrature stalled: err=" << total_err << " tol=" << tol
       << " panels=" << used << " I=" << total;
    throw QuadratureFailure(os.str());
  }
  return total;
}

}  // namespace lpmink
