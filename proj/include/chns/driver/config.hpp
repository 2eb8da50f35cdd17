#pragma once

// Run configuration as a flat "key = value" text file.  '#' starts a comment,
// blank lines are ignored and unknown keys are rejected.

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "chns/core/errors.hpp"
#include "chns/core/fields.hpp"
#include "chns/imex/chns_problem.hpp"

namespace chns {

struct RunConfig {
  std::string test = "test1";  // test1 | test2 | test3 | order | stability | mode
  int dim = 2;
  int M = 64;
  PhysParams phys{5.0 / 3.0, 1e-3, 1e-4, 1e-4, -10.0};

  std::string scheme = "dirksa";
  double cfl = 0.4;
  double cfl_max = 0.0;  // 0: same as cfl
  bool adapt_cfl = true;
  double c_threshold = 1.5;
  double dt_backoff = 0.5;
  double dt_recovery = 1.1;
  int max_retries = 20;
  double fixed_dt = 0.0;  // > 0 replaces the CFL rule
  double blowup_threshold = 1e6;
  std::string forcing_time = "explicit";

  SolverKind solver_c = SolverKind::Auto;
  SolverKind solver_v = SolverKind::Auto;
  double tol = 1e-6;
  int max_iters = 500;

  double t_final = 0.1;
  std::string output_dir;  // empty: no files
  double snapshot_interval = 0.0;
  bool figure_snapshots = true;

  unsigned long long seed = 1;
  double noise_amplitude = 1e-10;

  // Single cosine mode on a constant background ("mode" test).
  double c0 = 0.0;
  int mode_k1 = 1;
  int mode_k2 = 0;
  double mode_amplitude = 1e-8;

  double effective_cfl_max() const { return cfl_max > 0.0 ? cfl_max : cfl; }

  /// Throws ConfigError on inconsistent settings.
  void validate() const;
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline double parse_double(const std::string& v) {
  double out = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    throw ConfigError("'" + v + "' is not a number");
  return out;
}

inline long long parse_int(const std::string& v) {
  long long out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    throw ConfigError("'" + v + "' is not an integer");
  return out;
}

inline bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("'" + v + "' is not a boolean");
}

inline std::string format_double(double x) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

struct ConfigField {
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

/// Key table in echo order.
inline const std::vector<std::pair<std::string, ConfigField>>& config_fields() {
  using C = RunConfig;
  auto dbl = [](double C::*f) {
    return ConfigField{[f](C& c, const std::string& v) { c.*f = parse_double(v); },
                       [f](const C& c) { return format_double(c.*f); }};
  };
  auto phys = [](double PhysParams::*f) {
    return ConfigField{[f](C& c, const std::string& v) { c.phys.*f = parse_double(v); },
                       [f](const C& c) { return format_double(c.phys.*f); }};
  };
  auto integer = [](int C::*f) {
    return ConfigField{[f](C& c, const std::string& v) { c.*f = static_cast<int>(parse_int(v)); },
                       [f](const C& c) { return std::to_string(c.*f); }};
  };
  auto str = [](std::string C::*f) {
    return ConfigField{[f](C& c, const std::string& v) { c.*f = v; },
                       [f](const C& c) { return c.*f; }};
  };
  auto boolean = [](bool C::*f) {
    return ConfigField{[f](C& c, const std::string& v) { c.*f = parse_bool(v); },
                       [f](const C& c) { return std::string(c.*f ? "true" : "false"); }};
  };
  auto solver = [](SolverKind C::*f) {
    return ConfigField{[f](C& c, const std::string& v) { c.*f = parse_solver_kind(v); },
                       [f](const C& c) { return to_string(c.*f); }};
  };
  static const std::vector<std::pair<std::string, ConfigField>> table = {
      {"test", str(&C::test)},
      {"dim", integer(&C::dim)},
      {"M", integer(&C::M)},
      {"gamma", phys(&PhysParams::gamma)},
      {"nu", phys(&PhysParams::nu)},
      {"lambda", phys(&PhysParams::lambda)},
      {"eps", phys(&PhysParams::eps)},
      {"G", phys(&PhysParams::G)},
      {"scheme", str(&C::scheme)},
      {"cfl", dbl(&C::cfl)},
      {"cfl_max", dbl(&C::cfl_max)},
      {"adapt_cfl", boolean(&C::adapt_cfl)},
      {"c_threshold", dbl(&C::c_threshold)},
      {"dt_backoff", dbl(&C::dt_backoff)},
      {"dt_recovery", dbl(&C::dt_recovery)},
      {"max_retries", integer(&C::max_retries)},
      {"fixed_dt", dbl(&C::fixed_dt)},
      {"blowup_threshold", dbl(&C::blowup_threshold)},
      {"forcing_time", str(&C::forcing_time)},
      {"solver", solver(&C::solver_c)},
      {"solver_v", solver(&C::solver_v)},
      {"tol", dbl(&C::tol)},
      {"max_iters", integer(&C::max_iters)},
      {"t_final", dbl(&C::t_final)},
      {"output_dir", str(&C::output_dir)},
      {"snapshot_interval", dbl(&C::snapshot_interval)},
      {"figure_snapshots", boolean(&C::figure_snapshots)},
      {"seed",
       ConfigField{[](C& c, const std::string& v) {
                     c.seed = static_cast<unsigned long long>(parse_int(v));
                   },
                   [](const C& c) { return std::to_string(c.seed); }}},
      {"noise_amplitude", dbl(&C::noise_amplitude)},
      {"c0", dbl(&C::c0)},
      {"mode_k1", integer(&C::mode_k1)},
      {"mode_k2", integer(&C::mode_k2)},
      {"mode_amplitude", dbl(&C::mode_amplitude)},
  };
  return table;
}

}  // namespace detail

/// Applies one key = value assignment.
inline void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value) {
  for (const auto& [name, field] : detail::config_fields()) {
    if (name != key) continue;
    try {
      field.set(cfg, value);
    } catch (const ConfigError& e) {
      throw ConfigError("key '" + key + "': " + e.what());
    }
    return;
  }
  throw ConfigError("unknown key '" + key + "'");
}

inline RunConfig parse_config(const std::string& text, RunConfig cfg = {}) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = detail::trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    set_config_value(cfg, detail::trim(t.substr(0, eq)), detail::trim(t.substr(eq + 1)));
  }
  cfg.validate();
  return cfg;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

/// Every key with its value; parse_config(echo_config(c)) reproduces c.
inline std::string echo_config(const RunConfig& cfg) {
  std::string out;
  for (const auto& [name, field] : detail::config_fields()) out += name + " = " + field.get(cfg) + "\n";
  return out;
}

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

inline void RunConfig::validate() const {
  static const std::vector<std::string> tests = {"test1", "test2", "test3", "order", "stability", "mode"};
  if (std::find(tests.begin(), tests.end(), test) == tests.end())
    throw ConfigError("unknown test '" + test + "'");
  if (dim != 1 && dim != 2) throw ConfigError("dim must be 1 or 2");
  if (M < 2) throw ConfigError("M must be at least 2");
  if (!(cfl > 0.0)) throw ConfigError("cfl must be positive");
  if (cfl_max != 0.0 && !(cfl_max >= cfl)) throw ConfigError("cfl_max must be 0 or at least cfl");
  if (!(c_threshold > 1.0)) throw ConfigError("c_threshold must exceed 1");
  if (!(dt_backoff > 0.0 && dt_backoff < 1.0)) throw ConfigError("dt_backoff must lie in (0, 1)");
  if (!(dt_recovery >= 1.0)) throw ConfigError("dt_recovery must be at least 1");
  if (max_retries < 0) throw ConfigError("max_retries must be non-negative");
  if (fixed_dt < 0.0) throw ConfigError("fixed_dt must be non-negative");
  if (!(tol > 0.0)) throw ConfigError("tol must be positive");
  if (max_iters < 1) throw ConfigError("max_iters must be positive");
  if (t_final < 0.0) throw ConfigError("t_final must be non-negative");
  if (forcing_time != "explicit" && forcing_time != "implicit")
    throw ConfigError("forcing_time must be 'explicit' or 'implicit'");
  if (scheme != "ee-ie" && scheme != "dirksa" && scheme != "explicit-euler")
    throw ConfigError("unknown scheme '" + scheme + "'");
  const bool uses_mg = solver_c == SolverKind::Multigrid || solver_v == SolverKind::Multigrid ||
                       (dim == 2 && (solver_c == SolverKind::Auto || solver_v == SolverKind::Auto));
  if (uses_mg && !is_power_of_two(M)) throw ConfigError("multigrid needs M to be a power of two");
  if (solver_v == SolverKind::Pcg) throw ConfigError("pcg only applies to the concentration system");
  if ((test == "test1" || test == "test2" || test == "test3" || test == "order") && dim != 2)
    throw ConfigError("test '" + test + "' is two-dimensional");
  if (test == "stability" && dim != 1) throw ConfigError("the stability test is one-dimensional");
  try {
    phys.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace chns
