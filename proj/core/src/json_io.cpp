#include "lpmink/json_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "lpmink/errors.hpp"
#include "lpmink/version.hpp"

namespace lpmink {

using nlohmann::json;

namespace {

json meta_json(const RunMeta& meta) {
  return json{{"p", meta.p},
              {"grid_n", meta.grid_n},
              {"tol", meta.tol},
              {"seed", meta.seed},
              {"version", kVersion}};
}

PeriodicFunction from_json_obj(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "fourier") {
    std::vector<double> a, b;
    if (j.contains("cos")) a = j["cos"].get<std::vector<double>>();
    if (j.contains("sin")) b = j["sin"].get<std::vector<double>>();
    return PeriodicFunction::fourier(j.value("const", 0.0), std::move(a), std::move(b));
  }
  if (kind == "samples") {
    return PeriodicFunction::samples(j.at("values").get<std::vector<double>>());
  }
  throw JsonError("PeriodicFunction: unknown kind '" + kind + "'");
}

json to_json_obj(const PeriodicFunction& f, int sample_n) {
  if (f.is_fourier()) {
    const auto& c = f.coefficients();
    return json{{"kind", "fourier"}, {"const", c.c0}, {"cos", c.a}, {"sin", c.b}};
  }
  return json{{"kind", "samples"}, {"values", f.sample_values(f.is_samples() ? f.grid_size() : sample_n)}};
}

}  // namespace

PeriodicFunction periodic_function_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw JsonError(std::string("PeriodicFunction: ") + e.what());
  }
  try {
    return from_json_obj(j);
  } catch (const json::exception& e) {
    throw JsonError(std::string("PeriodicFunction: ") + e.what());
  }
}

std::string periodic_function_to_json(const PeriodicFunction& f, int sample_n) {
  return to_json_obj(f, sample_n).dump();
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string solve_report_to_json(const SolveReport& rep, const RunMeta& meta) {
  json j;
  j["meta"] = meta_json(meta);
  j["status"] = to_string(rep.status);
  if (!rep.message.empty()) j["message"] = rep.message;
  j["residual_max"] = rep.residual_max;
  j["identity_4_10"] = rep.identity_4_10;
  j["identity_4_10_rel"] = rep.identity_4_10_rel;
  if (rep.identity_7_1) j["identity_7_1"] = *rep.identity_7_1;
  if (rep.harnack_ratio) j["harnack_ratio"] = *rep.harnack_ratio;
  if (rep.first_integral_spread) j["first_integral_spread"] = *rep.first_integral_spread;
  if (rep.affine_family_dim > 0) j["affine_family_dim"] = rep.affine_family_dim;
  j["last_good_t"] = rep.last_good_t;
  if (rep.solution) {
    j["min_u"] = rep.solution->min_u();
    j["max_u"] = rep.solution->max_u();
    j["convexity_margin"] = rep.solution->convexity_margin();
    const Widths w = rep.solution->widths();
    j["widths"] = json{{"w_minus", w.w_minus}, {"w_plus", w.w_plus}};
    j["solution"] = json{{"kind", "samples"}, {"values", rep.u_values}};
  }
  json trace = json::array();
  for (const auto& e : rep.trace)
    trace.push_back(json{{"t", e.t}, {"newton_iterations", e.newton_iterations}, {"min_u", e.min_u}});
  j["trace"] = std::move(trace);
  return j.dump(2);
}

std::string count_result_to_json(const CountResult& res, const RunMeta& meta) {
  json roots = json::array();
  for (const auto& r : res.roots)
    roots.push_back(json{{"kappa", r.kappa}, {"m", r.m}, {"H", r.H}});
  json j{{"meta", meta_json(meta)}, {"p", res.p}, {"roots", std::move(roots)}, {"count", res.count}};
  return j.dump(2);
}

std::string obstruction_report_to_json(const ObstructionReport& rep, const RunMeta& meta) {
  json j{{"meta", meta_json(meta)},
         {"p", rep.p},
         {"Kf_max", rep.Kf_max},
         {"Kf_min", rep.Kf_min},
         {"Kf_abs_integral", rep.Kf_abs_integral},
         {"Kf_negative_fraction", rep.Kf_negative_fraction},
         {"probe_residuals", rep.probe_residuals},
         {"certified", rep.certified}};
  return j.dump(2);
}

std::string energy_profile_to_csv(const EnergyProfile& prof, const RunMeta& meta) {
  std::ostringstream out;
  out << "# p=" << format_double(prof.p) << " grid_n=" << meta.grid_n
      << " tol=" << format_double(meta.tol) << " seed=" << meta.seed << " version=" << kVersion
      << "\n";
  out << "m,M,H,dHdm_kernel,dHdm_boundary,dHdm_fd\n";
  for (const auto& r : prof.rows) {
    out << format_double(r.m) << ',' << format_double(r.M) << ',' << format_double(r.H) << ','
        << format_double(r.dHdm_kernel) << ',' << format_double(r.dHdm_boundary) << ','
        << format_double(r.dHdm_fd) << "\n";
  }
  return out.str();
}

std::string solution_to_csv(const SolveReport& rep, const ProblemSpec& spec, const RunMeta& meta) {
  std::ostringstream out;
  out << "# p=" << format_double(meta.p) << " grid_n=" << meta.grid_n
      << " tol=" << format_double(meta.tol) << " seed=" << meta.seed << " version=" << kVersion
      << "\n";
  out << "theta,u,uprime,usecond,residual\n";
  if (rep.u_values.empty()) return out.str();
  PeriodicFunction u = PeriodicFunction::samples(rep.u_values);
  const int n = static_cast<int>(rep.u_values.size());
  const PeriodicFunction r = residual(u, spec);
  for (int j = 0; j < n; ++j) {
    const double t = 2.0 * std::numbers::pi * j / n;
    out << format_double(t) << ',' << format_double(u.eval(t, 0)) << ','
        << format_double(u.eval(t, 1)) << ',' << format_double(u.eval(t, 2)) << ','
        << format_double(r.eval(t, 0)) << "\n";
  }
  return out.str();
}

SolveConfig solve_config_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw JsonError(std::string("solve config: ") + e.what());
  }
  SolveConfig cfg;
  try {
    cfg.p = j.at("p").get<double>();
    cfg.f = from_json_obj(j.at("f"));
    cfg.grid_n = j.value("grid_n", kDefaultGridSize);
    cfg.tol = j.value("tol", 1e-10);
    cfg.continuation_steps = j.value("continuation_steps", 64);
  } catch (const json::exception& e) {
    throw JsonError(std::string("solve config: ") + e.what());
  }
  return cfg;
}

namespace {

// term := [sign] [coef ['*']] [("cos"|"sin") [k] ('t'|"theta")] ; sum of terms
PeriodicFunction parse_expression(const std::string& text) {
  double c0 = 0.0;
  std::vector<double> a, b;
  auto bump = [](std::vector<double>& v, int k, double val) {
    if (static_cast<int>(v.size()) < k) v.resize(k, 0.0);
    v[k - 1] += val;
  };
  size_t i = 0;
  const auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  bool first = true;
  while (i < text.size()) {
    double sign = 1.0;
    skip_ws();
    if (text[i] == '+' || text[i] == '-') {
      sign = (text[i] == '-') ? -1.0 : 1.0;
      ++i;
    } else if (!first) {
      throw JsonError("function expression: expected '+' or '-' between terms");
    }
    first = false;
    skip_ws();
    double coef = 1.0;
    bool have_coef = false;
    if (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '.')) {
      size_t used = 0;
      coef = std::stod(text.substr(i), &used);
      i += used;
      have_coef = true;
    }
    skip_ws();
    if (i < text.size() && text[i] == '*') {
      ++i;
      skip_ws();
    }
    if (text.compare(i, 3, "cos") == 0 || text.compare(i, 3, "sin") == 0) {
      const bool is_cos = text[i] == 'c';
      i += 3;
      skip_ws();
      int k = 1;
      if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        size_t used = 0;
        k = std::stoi(text.substr(i), &used);
        i += used;
      }
      skip_ws();
      if (i < text.size() && text[i] == '*') { ++i; skip_ws(); }
      if (text.compare(i, 5, "theta") == 0)
        i += 5;
      else if (i < text.size() && (text[i] == 't' || text[i] == 'x'))
        ++i;
      else
        throw JsonError("function expression: expected angle variable after cos/sin");
      if (k < 1) throw JsonError("function expression: harmonic index must be >= 1");
      bump(is_cos ? a : b, k, sign * coef);
    } else if (have_coef) {
      c0 += sign * coef;
    } else {
      throw JsonError("function expression: unparsable term near '" + text.substr(i, 8) + "'");
    }
    skip_ws();
  }
  return PeriodicFunction::fourier(c0, std::move(a), std::move(b));
}

std::vector<double> parse_csv_doubles(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

}  // namespace

PeriodicFunction parse_function_spec(const std::string& text) {
  if (text.rfind("const:", 0) == 0) {
    return PeriodicFunction::constant(std::stod(text.substr(6)));
  }
  if (text.rfind("fourier:", 0) == 0) {
    const std::string body = text.substr(8);
    std::vector<std::string> parts;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ';')) parts.push_back(item);
    if (parts.empty()) throw JsonError("fourier spec: missing constant term");
    const double c0 = std::stod(parts[0]);
    std::vector<double> a, b;
    if (parts.size() > 1) a = parse_csv_doubles(parts[1]);
    if (parts.size() > 2) b = parse_csv_doubles(parts[2]);
    return PeriodicFunction::fourier(c0, std::move(a), std::move(b));
  }
  if (!text.empty() && (text[0] == '{')) {
    return periodic_function_from_json(text);
  }
  return parse_expression(text);
}

}  // namespace lpmink
