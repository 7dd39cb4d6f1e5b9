#pragma once

#include <array>
#include <vector>

#include "lpmink/periodic_function.hpp"

namespace lpmink {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

struct Widths {
  double w_minus = 0.0;
  double w_plus = 0.0;
};

struct AreaResult {
  double geometric = 0.0;         // (1/2) * integral of u (u'' + u)
  double paper_convention = 0.0;  // integral without the 1/2 factor
};

// A support function certified uniformly convex: u > 0 and u'' + u > 0,
// both margins taken over the grid with a 4x oversampling pass.
class SupportBody {
 public:
  static SupportBody certify(PeriodicFunction u, int grid_n = kDefaultGridSize);

  const PeriodicFunction& support() const { return u_; }
  double convexity_margin() const { return convexity_margin_; }
  double positivity_margin() const { return positivity_margin_; }
  int grid_size() const { return grid_n_; }

  Vec2 boundary_point(double theta) const;
  double radial_length(double theta) const;
  Widths widths() const;
  AreaResult area() const;

  double min_u() const { return positivity_margin_; }
  double max_u() const;

 private:
  PeriodicFunction u_ = PeriodicFunction::constant(1.0);
  int grid_n_ = kDefaultGridSize;
  double convexity_margin_ = 0.0;
  double positivity_margin_ = 0.0;
};

struct ArcRecord {
  double theta1 = 0.0;
  double theta2 = 0.0;
  bool increasing = true;
  double slack_upper = 0.0;  // one-sided slack of the f_+ inequality
  double slack_lower = 0.0;  // one-sided slack of the f_- inequality
};

struct ArcCheckReport {
  std::vector<ArcRecord> arcs;
  double worst_arc_slack = 0.0;     // min over arcs and sides; +inf if no arcs
  double worst_global_slack = 0.0;  // the u_max/u_min inequalities
  double worst_slack = 0.0;
  bool consistent = false;
};

// Lemma-style monotone-arc energy inequalities for a claimed solution of
// u'' + u = f u^{p-1}; nonnegative slack means consistent.
ArcCheckReport arc_inequality_check(const SupportBody& body, const PeriodicFunction& f, double p,
                                    double tol = 1e-8);

}  // namespace lpmink
