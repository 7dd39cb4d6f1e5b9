#include "lpmink/support_body.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "lpmink/errors.hpp"

namespace lpmink {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

SupportBody SupportBody::certify(PeriodicFunction u, int grid_n) {
  SupportBody b;
  b.grid_n_ = u.is_samples() ? u.grid_size() : grid_n;
  const int n = 4 * b.grid_n_;  // refinement pass
  double min_u = std::numeric_limits<double>::infinity();
  double min_conv = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    const double t = kTwoPi * j / n;
    const double v = u.eval(t, 0);
    const double c = u.eval(t, 2) + v;
    min_u = std::min(min_u, v);
    min_conv = std::min(min_conv, c);
  }
  if (!(min_u > 0.0)) throw NonPositiveInput("SupportBody: support function not positive");
  if (!(min_conv > 0.0)) throw NonPositiveInput("SupportBody: u'' + u not positive");
  b.u_ = std::move(u);
  b.positivity_margin_ = min_u;
  b.convexity_margin_ = min_conv;
  return b;
}

Vec2 SupportBody::boundary_point(double theta) const {
  const double u = u_.eval(theta, 0);
  const double up = u_.eval(theta, 1);
  const double c = std::cos(theta), s = std::sin(theta);
  return {u * c - up * s, u * s + up * c};
}

double SupportBody::radial_length(double theta) const {
  const double u = u_.eval(theta, 0);
  const double up = u_.eval(theta, 1);
  return std::sqrt(u * u + up * up);
}

Widths SupportBody::widths() const {
  const int n = grid_n_;
  Widths w{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (int j = 0; j < n; ++j) {
    const double t = kTwoPi * j / n;
    const double val = u_.eval(t, 0) + u_.eval(t + std::numbers::pi, 0);
    w.w_minus = std::min(w.w_minus, val);
    w.w_plus = std::max(w.w_plus, val);
  }
  return w;
}

AreaResult SupportBody::area() const {
  const int n = grid_n_;
  double s = 0.0;
  for (int j = 0; j < n; ++j) {
    const double t = kTwoPi * j / n;
    const double u = u_.eval(t, 0);
    s += u * (u_.eval(t, 2) + u);
  }
  const double paper = s * kTwoPi / n;
  return {0.5 * paper, paper};
}

double SupportBody::max_u() const { return u_.max_on_grid(4); }

namespace {

// F-style pendulum potential with the f weight frozen to a constant.
double energy_shape(double u, double coef, double p) {
  if (p == 0.0) return u * u - 2.0 * coef * std::log(u);
  return u * u - (2.0 * coef / p) * std::pow(u, p);
}

}  // namespace

ArcCheckReport arc_inequality_check(const SupportBody& body, const PeriodicFunction& f, double p,
                                    double tol) {
  const PeriodicFunction& u = body.support();
  const int n = body.grid_size();
  const double fmax = f.max_on_grid();
  const double fmin = f.min_on_grid();

  std::vector<double> uv(n), up(n);
  for (int j = 0; j < n; ++j) {
    const double t = kTwoPi * j / n;
    uv[j] = u.eval(t, 0);
    up[j] = u.eval(t, 1);
  }
  double up_scale = 0.0;
  for (double v : up) up_scale = std::max(up_scale, std::abs(v));
  const double flat_tol = 1e-10 * std::max(1.0, up_scale);

  // Signs with plateaus merged into the neighbouring arc.
  std::vector<int> sign(n, 0);
  for (int j = 0; j < n; ++j) sign[j] = (up[j] > flat_tol) ? 1 : (up[j] < -flat_tol ? -1 : 0);

  ArcCheckReport rep;
  rep.worst_arc_slack = std::numeric_limits<double>::infinity();

  auto arc_slacks = [&](int i0, int i1, bool increasing) {
    // l^2 change against (2f/p) * change of u^p (log form at p = 0).
    const double t1 = kTwoPi * i0 / n, t2 = kTwoPi * (i1 % n) / n;
    const double l1 = body.radial_length(t1), l2 = body.radial_length(t2);
    const double lhs = l2 * l2 - l1 * l1;
    const double u1 = uv[i0], u2 = uv[i1 % n];
    double d_plus, d_minus;
    if (p == 0.0) {
      d_plus = 2.0 * fmax * std::log(u2 / u1);
      d_minus = 2.0 * fmin * std::log(u2 / u1);
    } else {
      const double dup = (std::pow(u2, p) - std::pow(u1, p)) / p;
      d_plus = 2.0 * fmax * dup;
      d_minus = 2.0 * fmin * dup;
    }
    ArcRecord rec;
    rec.theta1 = t1;
    rec.theta2 = t2;
    rec.increasing = increasing;
    if (increasing) {
      rec.slack_upper = d_plus - lhs;
      rec.slack_lower = lhs - d_minus;
    } else {  // inequalities reverse on decreasing arcs
      rec.slack_upper = lhs - d_plus;
      rec.slack_lower = d_minus - lhs;
    }
    rep.arcs.push_back(rec);
    rep.worst_arc_slack = std::min({rep.worst_arc_slack, rec.slack_upper, rec.slack_lower});
  };

  // Merge plateaus into the preceding arc, then walk maximal same-sign runs.
  bool any_nonzero = false;
  for (int v : sign) any_nonzero |= (v != 0);
  if (any_nonzero) {
    int first = 0;
    while (sign[first] == 0) ++first;
    int carry = sign[first];
    for (int j = first, cnt = 0; cnt < n; ++cnt, j = (j + 1) % n) {
      if (sign[j] == 0)
        sign[j] = carry;
      else
        carry = sign[j];
    }
    // Run boundaries are indices where the sign differs from the predecessor.
    int start = first;
    while (sign[(start - 1 + n) % n] == sign[start]) {
      start = (start - 1 + n) % n;
      if (start == first) break;  // single sign everywhere; no closed arc
    }
    if (sign[(start - 1 + n) % n] != sign[start]) {
      int j = start, walked = 0;
      while (walked < n) {
        int len = 1;
        while (len < n && sign[(j + len) % n] == sign[j]) ++len;
        arc_slacks(j, j + len - 1, sign[j] > 0);
        j = (j + len) % n;
        walked += len;
      }
    }
  }

  // Global u_max/u_min inequalities.
  double umax = uv[0], umin = uv[0];
  for (double v : uv) {
    umax = std::max(umax, v);
    umin = std::min(umin, v);
  }
  const double g1 = energy_shape(umin, fmax, p) - energy_shape(umax, fmax, p);
  const double g2 = energy_shape(umax, fmin, p) - energy_shape(umin, fmin, p);
  rep.worst_global_slack = std::min(g1, g2);

  rep.worst_slack = std::min(rep.worst_global_slack,
                             rep.arcs.empty() ? rep.worst_global_slack : rep.worst_arc_slack);
  rep.consistent = rep.worst_slack >= -tol;
  return rep;
}

}  // namespace lpmink
