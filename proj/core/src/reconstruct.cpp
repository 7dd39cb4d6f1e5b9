#include "lpmink/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "lpmink/errors.hpp"

namespace lpmink {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct State {
  double u;
  double v;  // u'
};

State rk4_step(const State& s, double h, double pm1) {
  auto acc = [&](const State& x) { return State{x.v, std::pow(x.u, pm1) - x.u}; };
  const State k1 = acc(s);
  const State k2 = acc({s.u + 0.5 * h * k1.u, s.v + 0.5 * h * k1.v});
  const State k3 = acc({s.u + 0.5 * h * k2.u, s.v + 0.5 * h * k2.v});
  const State k4 = acc({s.u + h * k3.u, s.v + h * k3.v});
  return {s.u + h / 6.0 * (k1.u + 2 * k2.u + 2 * k3.u + k4.u),
          s.v + h / 6.0 * (k1.v + 2 * k2.v + 2 * k3.v + k4.v)};
}

}  // namespace

ReconstructedSolution reconstruct_symmetric_solution(const EnergyContext& ctx, double m, int kappa,
                                                     int grid_n) {
  if (kappa < 1) throw DomainError("reconstruct_symmetric_solution: kappa must be positive");
  const double H = H_integral(ctx, m);
  const double half_period = kPi / kappa;
  if (std::abs(H - half_period) > 1e-8)
    throw CompatibilityError("reconstruct_symmetric_solution: H(m) does not match pi/kappa");

  // Fold the grid angles into [0, pi/kappa] and integrate once through the
  // sorted folded targets.
  const double full = kTwoPi / kappa;
  std::vector<double> folded(grid_n);
  for (int j = 0; j < grid_n; ++j) {
    double r = std::fmod(kTwoPi * j / grid_n, full);
    if (r > 0.5 * full) r = full - r;
    folded[j] = r;
  }
  std::vector<int> order(grid_n);
  for (int j = 0; j < grid_n; ++j) order[j] = j;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return folded[a] < folded[b]; });

  const double pm1 = ctx.p() - 1.0;
  const double h_base = half_period / 20000.0;
  State s{m, 0.0};
  double tau = 0.0;
  std::vector<double> uval(grid_n), vval(grid_n);
  for (int idx : order) {
    const double target = folded[idx];
    const double span = target - tau;
    if (span > 0.0) {
      const int nsub = std::max(1, static_cast<int>(std::ceil(span / h_base)));
      const double h = span / nsub;
      for (int k = 0; k < nsub; ++k) s = rk4_step(s, h, pm1);
      tau = target;
    }
    uval[idx] = s.u;
    vval[idx] = s.v;
  }

  ReconstructedSolution out{SupportBody::certify(PeriodicFunction::samples(uval)), kappa, m, H,
                            0.0, 0};

  double e_min = std::numeric_limits<double>::infinity();
  double e_max = -e_min;
  for (int j = 0; j < grid_n; ++j) {
    const double e = vval[j] * vval[j] + ctx.F(uval[j]);
    e_min = std::min(e_min, e);
    e_max = std::max(e_max, e);
  }
  out.first_integral_spread = e_max - e_min;

  // Count strict local minima on the grid.
  int minima = 0;
  for (int j = 0; j < grid_n; ++j) {
    const double prev = uval[(j - 1 + grid_n) % grid_n];
    const double next = uval[(j + 1) % grid_n];
    if (uval[j] < prev && uval[j] <= next) ++minima;
  }
  out.minima_count = minima;
  return out;
}

}  // namespace lpmink
