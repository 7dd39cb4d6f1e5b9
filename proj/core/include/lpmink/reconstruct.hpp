#pragma once

#include "lpmink/energy.hpp"
#include "lpmink/support_body.hpp"

namespace lpmink {

struct ReconstructedSolution {
  SupportBody body;
  int kappa = 0;
  double m = 0.0;
  double H = 0.0;
  // max - min over the grid of u'^2 + u^2 - (2/p) u^p (log form at p = 0),
  // with u' taken from the integrator state.
  double first_integral_spread = 0.0;
  int minima_count = 0;
};

// Builds the symmetric solution with kappa minima and minimum m by integrating
// u'' = u^{p-1} - u from (m, 0) over one half-period and reflecting evenly.
// Requires |H(m) - pi/kappa| <= 1e-8.
ReconstructedSolution reconstruct_symmetric_solution(const EnergyContext& ctx, double m, int kappa,
                                                     int grid_n = kDefaultGridSize);

}  // namespace lpmink
