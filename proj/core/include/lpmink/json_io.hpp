#pragma once

#include <cstdint>
#include <string>

#include "lpmink/energy.hpp"
#include "lpmink/obstruction.hpp"
#include "lpmink/ode.hpp"
#include "lpmink/periodic_function.hpp"

namespace lpmink {

// {"kind":"fourier","const":c,"cos":[...],"sin":[...]} or
// {"kind":"samples","values":[...]} (uniform grid starting at theta = 0).
PeriodicFunction periodic_function_from_json(const std::string& json_text);
std::string periodic_function_to_json(const PeriodicFunction& f, int sample_n = kDefaultGridSize);

struct RunMeta {
  double p = 0.0;
  int grid_n = kDefaultGridSize;
  double tol = 1e-10;
  std::uint64_t seed = 12345;
};

std::string solve_report_to_json(const SolveReport& rep, const RunMeta& meta);
std::string count_result_to_json(const CountResult& res, const RunMeta& meta);
std::string obstruction_report_to_json(const ObstructionReport& rep, const RunMeta& meta);

// CSV serialization uses 17 significant digits throughout.
std::string format_double(double v);
std::string energy_profile_to_csv(const EnergyProfile& prof, const RunMeta& meta);
std::string solution_to_csv(const SolveReport& rep, const ProblemSpec& spec, const RunMeta& meta);

struct SolveConfig {
  double p = 0.0;
  PeriodicFunction f = PeriodicFunction::constant(1.0);
  int grid_n = kDefaultGridSize;
  double tol = 1e-10;
  int continuation_steps = 64;
};

// {p, f:<PeriodicFunction>, grid_n, tol, continuation_steps}
SolveConfig solve_config_from_json(const std::string& json_text);

// Inline mini-language: "const:c", "fourier:c;a1,a2;b1,b2", or a small
// expression form like "2+cos2t" / "1+0.3cos t+0.1sin 3t".
PeriodicFunction parse_function_spec(const std::string& text);

}  // namespace lpmink
