#include <CLI11.hpp>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <atomic>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "lpmink/constructions.hpp"
#include "lpmink/energy.hpp"
#include "lpmink/errors.hpp"
#include "lpmink/invariants.hpp"
#include "lpmink/json_io.hpp"
#include "lpmink/obstruction.hpp"
#include "lpmink/ode.hpp"
#include "lpmink/parallel.hpp"
#include "lpmink/version.hpp"
#include "svg.hpp"

namespace fs = std::filesystem;
using namespace lpmink;

namespace {

constexpr double kPi = std::numbers::pi;

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

struct CommonOpts {
  std::string out_dir = ".";
  int grid_n = kDefaultGridSize;
  double tol = 1e-10;
  std::uint64_t seed = 12345;
};

RunMeta make_meta(const CommonOpts& c, double p) {
  RunMeta m;
  m.p = p;
  m.grid_n = c.grid_n;
  m.tol = c.tol;
  m.seed = c.seed;
  return m;
}

int run_solve(double p, const std::string& f_spec, const std::string& config_path,
              const std::string& init_spec, int steps, CommonOpts common) {
  PeriodicFunction f = PeriodicFunction::constant(1.0);
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw JsonError("cannot read config " + config_path);
    std::stringstream ss;
    ss << in.rdbuf();
    SolveConfig cfg = solve_config_from_json(ss.str());
    p = cfg.p;
    f = cfg.f;
    common.grid_n = cfg.grid_n;
    common.tol = cfg.tol;
    steps = cfg.continuation_steps;
  } else {
    f = parse_function_spec(f_spec);
  }
  if (f.min_on_grid(4) <= 0.0) {
    std::cerr << "solve: f must be positive\n";
    return 1;
  }

  SolveReport rep;
  ProblemSpec spec;
  spec.p = p;
  spec.f = f;
  spec.grid_n = common.grid_n;
  spec.tol = common.tol;
  if (p == 1.0) {
    rep = solve_linear_p1(spec);
  } else if (!init_spec.empty()) {
    rep = newton_solve(spec, parse_function_spec(init_spec), common.tol);
  } else {
    ContinuationOptions opt;
    opt.steps = steps;
    opt.grid_n = common.grid_n;
    opt.tol = common.tol;
    rep = continuation_solve(p, f, opt);
  }

  const RunMeta meta = make_meta(common, p);
  fs::create_directories(common.out_dir);
  write_file(fs::path(common.out_dir) / "solve_report.json", solve_report_to_json(rep, meta));
  write_file(fs::path(common.out_dir) / "solution.csv", solution_to_csv(rep, spec, meta));
  std::cout << "status: " << to_string(rep.status) << "  residual: " << rep.residual_max << "\n";
  return rep.status == SolveStatus::Converged ? 0 : 2;
}

int run_energy_profile(double p, int rows, bool with_svg, const CommonOpts& common) {
  if (!(p < 2.0)) {
    std::cerr << "energy-profile: requires p < 2\n";
    return 1;
  }
  std::vector<double> ms;
  for (int i = 1; i <= rows; ++i) ms.push_back(static_cast<double>(i) / (rows + 1));
  EnergyProfile prof;
  prof.p = p;
  prof.rows.resize(ms.size());
  parallel_for(static_cast<int>(ms.size()), [&](int i) {
    EnergyProfile one = build_energy_profile(p, {ms[i]});
    prof.rows[i] = one.rows[0];
  });
  const RunMeta meta = make_meta(common, p);
  fs::create_directories(common.out_dir);
  write_file(fs::path(common.out_dir) / "energy_profile.csv", energy_profile_to_csv(prof, meta));
  if (with_svg) {
    svg::Curve c;
    c.label = "H(m)";
    for (const auto& r : prof.rows) {
      c.x.push_back(r.m);
      c.y.push_back(r.H);
    }
    std::vector<svg::HLine> lines;
    const int kmax = static_cast<int>(std::ceil(std::sqrt(2.0 - p))) + 1;
    for (int k = 1; k <= kmax; ++k) lines.push_back({kPi / k, "pi/" + std::to_string(k)});
    write_file(fs::path(common.out_dir) / "energy_profile.svg",
               svg::render({c}, lines, "H(m), p = " + std::to_string(p)));
  }
  std::cout << "rows: " << prof.rows.size() << "\n";
  return 0;
}

int run_count(double p, int grid, const CommonOpts& common) {
  if (!(p < 2.0)) {
    std::cerr << "count: requires p < 2\n";
    return 1;
  }
  const CountResult res = count_solutions(p, grid);
  fs::create_directories(common.out_dir);
  write_file(fs::path(common.out_dir) / "count.json", count_result_to_json(res, make_meta(common, p)));
  std::cout << "count: " << res.count << "\n";
  for (const auto& r : res.roots)
    std::cout << "  kappa=" << r.kappa << " m=" << format_double(r.m) << "\n";
  return 0;
}

int run_kernel_scan(double p, double m, int samples, const CommonOpts& common) {
  EnergyContext ctx(p);
  const KernelScanReport rep = prop83_kernel_scan(ctx, m, samples);
  nlohmann::json j{{"meta", nlohmann::json{{"p", p},
                                           {"grid_n", common.grid_n},
                                           {"tol", common.tol},
                                           {"seed", common.seed},
                                           {"version", kVersion}}},
                   {"p", p},
                   {"m", m},
                   {"K_min", rep.min_value},
                   {"K_max", rep.max_value},
                   {"sign_constant", rep.sign_constant},
                   {"samples", rep.samples}};
  fs::create_directories(common.out_dir);
  write_file(fs::path(common.out_dir) / "kernel_scan.json", j.dump(2));
  std::cout << "sign_constant: " << (rep.sign_constant ? "true" : "false") << "\n";
  return 0;
}

int run_obstruct(double p, const std::string& f_spec, int probes, const CommonOpts& common) {
  if (!(p <= -2.0)) {
    std::cerr << "obstruct: requires p <= -2\n";
    return 1;
  }
  PeriodicFunction f =
      f_spec.empty() ? construct_counterexample(p).f : parse_function_spec(f_spec);
  const ObstructionReport rep = certify_nonexistence(p, f, probes, common.seed);
  fs::create_directories(common.out_dir);
  write_file(fs::path(common.out_dir) / "obstruct.json",
             obstruction_report_to_json(rep, make_meta(common, p)));
  std::cout << "certified: " << (rep.certified ? "true" : "false") << "\n";
  return 0;
}

int run_construct(double p, double eps, const std::string& sweep, bool with_svg,
                  const CommonOpts& common) {
  std::vector<double> eps_values;
  if (!sweep.empty()) {
    const auto dots = sweep.find("..");
    if (dots == std::string::npos) {
      std::cerr << "construct: --eps-sweep expects j0..j1\n";
      return 1;
    }
    const int j0 = std::stoi(sweep.substr(0, dots));
    const int j1 = std::stoi(sweep.substr(dots + 2));
    if (j0 < 1 || j1 < j0) {
      std::cerr << "construct: bad sweep range\n";
      return 1;
    }
    for (int j = j0; j <= j1; ++j) eps_values.push_back(1.0 / j);
  } else {
    eps_values.push_back(eps);
  }

  struct Row {
    double eps, min_u, min_f, max_f, w_minus, w_plus;
  };
  std::vector<Row> rows(eps_values.size());
  std::atomic<bool> failed{false};
  std::string fail_msg;
  parallel_for(static_cast<int>(eps_values.size()), [&](int i) {
    try {
      const DegeneratingFamily fam = build_family_member(p, eps_values[i], common.grid_n);
      const Widths w = fam.body().widths();
      rows[i] = {eps_values[i], fam.min_u(), fam.f().min_on_grid(), fam.f().max_on_grid(),
                 w.w_minus, w.w_plus};
    } catch (const Error& e) {
      failed = true;
      fail_msg = e.what();
    }
  });
  if (failed) {
    std::cerr << "construct: " << fail_msg << "\n";
    return 2;
  }

  std::ostringstream csv;
  csv << "# p=" << format_double(p) << " grid_n=" << common.grid_n
      << " tol=" << format_double(common.tol) << " seed=" << common.seed << " version=" << kVersion
      << "\n";
  csv << "eps,min_u,min_f,max_f,w_minus,w_plus\n";
  for (const auto& r : rows)
    csv << format_double(r.eps) << ',' << format_double(r.min_u) << ',' << format_double(r.min_f)
        << ',' << format_double(r.max_f) << ',' << format_double(r.w_minus) << ','
        << format_double(r.w_plus) << "\n";
  fs::create_directories(common.out_dir);
  write_file(fs::path(common.out_dir) / "construct.csv", csv.str());

  if (with_svg) {
    const DegeneratingFamily fam = build_family_member(p, eps_values.back(), common.grid_n);
    svg::Curve cu, cf;
    cu.label = "u";
    cf.label = "f";
    cf.color = "#d62728";
    const int n = 400;
    for (int i = 0; i <= n; ++i) {
      const double t = 2.0 * kPi * i / n;
      cu.x.push_back(t);
      cu.y.push_back(fam.u_exact(t, 0));
      cf.x.push_back(t);
      cf.y.push_back(fam.f_exact(t));
    }
    write_file(fs::path(common.out_dir) / "construct.svg",
               svg::render({cu, cf}, {}, "degenerating family, eps = " +
                                            std::to_string(eps_values.back())));
  }
  std::cout << "rows: " << rows.size() << "\n";
  return 0;
}

int run_verify(std::uint64_t seed) {
  const std::vector<CheckResult> results = run_invariant_suite(seed);
  bool all = true;
  for (const auto& r : results) {
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " (" << r.detail << ")\n";
    all = all && r.pass;
  }
  std::cout << (all ? "verify: all invariants hold\n" : "verify: invariant violation\n");
  return all ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planar L_p-Minkowski problem: solve, count, and obstruct u'' + u = f u^{p-1}"};
  app.require_subcommand(1);

  CommonOpts common;
  double p = 0.0;
  std::string f_spec, init_spec, config_path, sweep;
  double eps = 0.01, m = 0.5;
  int steps = 64, rows = 40, grid = 400, probes = 100, samples = 200;
  bool with_svg = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", common.out_dir, "output directory");
    cmd->add_option("--grid-n", common.grid_n, "collocation grid size (even, >= 16)");
    cmd->add_option("--tol", common.tol, "solver tolerance");
    cmd->add_option("--seed", common.seed, "seed recorded in outputs and used for probes");
  };

  CLI::App* solve = app.add_subcommand("solve", "continuation/Newton solve of the ODE");
  solve->add_option("--p", p, "exponent p")->required();
  solve->add_option("--f", f_spec, "weight: const:c | fourier:c;a1,..;b1,.. | expression | JSON");
  solve->add_option("--config", config_path, "JSON config {p, f, grid_n, tol, continuation_steps}");
  solve->add_option("--init", init_spec, "initial guess (direct Newton instead of continuation)");
  solve->add_option("--steps", steps, "continuation steps");
  add_common(solve);

  CLI::App* profile = app.add_subcommand("energy-profile", "tabulate (m, M, H, dH/dm)");
  profile->add_option("--p", p, "exponent p (< 2)")->required();
  profile->add_option("--rows", rows, "number of interior m values");
  profile->add_flag("--svg", with_svg, "emit H(m) plot");
  add_common(profile);

  CLI::App* count = app.add_subcommand("count", "count non-constant solutions for f == 1");
  count->add_option("--p", p, "exponent p (< 2)")->required();
  count->add_option("--m-grid", grid, "m-grid size");
  add_common(count);

  CLI::App* scan = app.add_subcommand("kernel-scan", "two-branch kernel sign scan");
  scan->add_option("--p", p, "exponent p (< 2)")->required();
  scan->add_option("--m", m, "minimum value in (0,1)");
  scan->add_option("--samples", samples, "level samples");
  add_common(scan);

  CLI::App* obstruct = app.add_subcommand("obstruct", "certify non-existence via the kernel sign");
  obstruct->add_option("--p", p, "exponent p (<= -2)")->required();
  obstruct->add_option("--f", f_spec, "weight (defaults to the built-in counterexample)");
  obstruct->add_option("--probes", probes, "number of random convex probes");
  add_common(obstruct);

  CLI::App* construct = app.add_subcommand("construct", "degenerating family with min u -> 0");
  construct->add_option("--p", p, "exponent p in (0,2)")->required();
  construct->add_option("--eps", eps, "family parameter (0, 0.1]");
  construct->add_option("--eps-sweep", sweep, "sweep eps = 1/j for j in j0..j1");
  construct->add_flag("--svg", with_svg, "emit u and f plot");
  add_common(construct);

  CLI::App* verify = app.add_subcommand("verify", "run the module invariant suite");
  verify->add_option("--seed", common.seed, "fixture seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return run_solve(p, f_spec, config_path, init_spec, steps, common);
    if (profile->parsed()) return run_energy_profile(p, rows, with_svg, common);
    if (count->parsed()) return run_count(p, grid, common);
    if (scan->parsed()) return run_kernel_scan(p, m, samples, common);
    if (obstruct->parsed()) return run_obstruct(p, f_spec, probes, common);
    if (construct->parsed()) return run_construct(p, eps, sweep, with_svg, common);
    if (verify->parsed()) return run_verify(common.seed);
  } catch (const JsonError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
