#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lpmink {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Fixture-driven invariant battery covering every module; the CI entry point
// behind the `verify` subcommand.
std::vector<CheckResult> run_invariant_suite(std::uint64_t seed = 12345);

}  // namespace lpmink
