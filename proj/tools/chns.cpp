// Command-line front end: run a config file, or one of the verification
// experiments.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "chns/chns.hpp"

namespace {

int cmd_run(const std::string& path, const std::vector<std::string>& overrides, const std::string& out_dir) {
  chns::RunConfig cfg = chns::load_config(path);
  for (const std::string& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw chns::ConfigError("--set expects key=value, got '" + kv + "'");
    chns::set_config_value(cfg, chns::detail::trim(kv.substr(0, eq)), chns::detail::trim(kv.substr(eq + 1)));
  }
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  cfg.validate();

  const chns::RunResult r = chns::run(cfg);
  const chns::DiagnosticRow last = r.history.empty() ? r.initial : r.history.back();
  std::printf("t = %.6g after %d steps (%d rejected)\n", r.t, r.steps, r.rejections);
  std::printf("min c = %.6g, max c = %.6g, err_rho = %.3e, err_q = %.3e\n", last.cmin, last.cmax, last.err_rho,
              last.err_q);
  std::printf("average iterations: concentration %.2f, velocity %.2f\n", r.solver_stats.average_c(),
              r.solver_stats.average_v());
  if (cfg.test == "order")
    std::printf("global error %.4e\n", chns::global_error(r.state, chns::manufactured_state(r.state.grid(), r.t)));
  for (const std::string& s : r.snapshots) std::printf("wrote %s\n", s.c_str());
  return 0;
}

int cmd_order(const std::string& scheme, const std::vector<int>& Ms, double cfl, double T,
              const std::string& forcing_time) {
  std::printf("%6s %14s %8s\n", "M", "error", "ratio");
  for (const chns::OrderRow& row : chns::order_test(scheme, Ms, cfl, T, forcing_time)) {
    if (row.ratio > 0.0)
      std::printf("%6d %14.4e %8.2f\n", row.M, row.error, row.ratio);
    else
      std::printf("%6d %14.4e %8s\n", row.M, row.error, "-");
  }
  return 0;
}

int cmd_stability(const std::vector<std::string>& schemes, const std::vector<int>& Ms,
                  const std::vector<double>& cfls, double T, bool dx3) {
  std::printf("%-15s %6s %6s %12s %8s  %s\n", "scheme", "M", "cfl", "t", "steps", "outcome");
  for (const std::string& scheme : schemes)
    for (int M : Ms)
      for (double cfl : cfls) {
        chns::RunConfig cfg = chns::stability_config(scheme, M, cfl, T);
        if (dx3) cfg.fixed_dt = std::pow(1.0 / M, 3);
        const chns::StabilityOutcome o = chns::stability_run(cfg);
        const char* what = o.completed ? "completed" : o.blew_up ? "blow-up" : o.rejected ? "rejected" : "failed";
        std::printf("%-15s %6d %6.2f %12.5g %8d  %s\n", scheme.c_str(), M, dx3 ? 0.0 : cfl, o.t_reached, o.steps,
                    what);
        if (!o.message.empty()) std::printf("    %s\n", o.message.c_str());
      }
  return 0;
}

int cmd_bench(const std::string& test, const std::vector<int>& Ms, const std::vector<double>& nus,
              const std::vector<double>& epss, const std::vector<std::string>& solvers, double T, double tol) {
  std::printf("%-6s %9s %9s %5s %10s %8s %8s %6s\n", "test", "nu", "eps", "M", "solver", "avg_c", "avg_v", "steps");
  for (double eps : epss)
    for (double nu : nus)
      for (int M : Ms)
        for (const std::string& s : solvers) {
          const chns::BenchRow r = chns::solver_bench_run(test, M, nu, eps, chns::parse_solver_kind(s), T, tol);
          if (r.completed)
            std::printf("%-6s %9.0e %9.0e %5d %10s %8.2f %8.2f %6d\n", test.c_str(), nu, eps, M,
                        chns::to_string(r.solver).c_str(), r.avg_c, r.avg_v, r.steps);
          else
            std::printf("%-6s %9.0e %9.0e %5d %10s  failed: %s\n", test.c_str(), nu, eps, M,
                        chns::to_string(r.solver).c_str(), r.message.c_str());
          std::fflush(stdout);
        }
  return 0;
}

int cmd_spinodal(double c0, double eps, int dim, bool list) {
  const chns::SpinodalPrediction p = chns::predict_spinodal_mode(c0, eps, dim);
  if (!p.has_unstable) {
    std::printf("no unstable modes for c0 = %g, eps = %g\n", c0, eps);
    return 0;
  }
  std::printf("%zu unstable modes\n", p.unstable.size());
  std::printf("dominant (k1, k2) = (%d, %d), k1^2 + k2^2 = %d, sigma = %.6g\n", p.dominant.k1, p.dominant.k2,
              p.dominant.khat(), p.dominant.sigma);
  if (list)
    for (const chns::SpinodalMode& m : p.unstable)
      std::printf("%4d %4d %8d %14.6g\n", m.k1, m.k2, m.khat(), m.sigma);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-difference solver for the isentropic Cahn-Hilliard-Navier-Stokes system"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::vector<std::string> overrides;
  auto* run = app.add_subcommand("run", "Run the simulation described by a config file");
  run->add_option("config", config_path, "Config file (key = value lines)")->required()->check(CLI::ExistingFile);
  run->add_option("--set", overrides, "Override a config key, key=value");
  run->add_option("-o,--output", out_dir, "Output directory for snapshots and diagnostics.csv");

  std::string scheme = "dirksa", forcing_time = "explicit";
  std::vector<int> order_Ms = {8, 16, 32, 64};
  double order_cfl = 0.4, order_T = 0.01;
  auto* order = app.add_subcommand("order-test", "Convergence against the manufactured solution");
  order->add_option("--scheme", scheme, "ee-ie or dirksa")->capture_default_str();
  order->add_option("--M", order_Ms, "Grid sizes")->delimiter(',')->capture_default_str();
  order->add_option("--cfl", order_cfl)->capture_default_str();
  order->add_option("--T", order_T, "Final time")->capture_default_str();
  order->add_option("--forcing-time", forcing_time, "explicit or implicit stage abscissa")->capture_default_str();

  std::vector<std::string> stab_schemes = {"ee-ie", "dirksa"};
  std::vector<int> stab_Ms = {100};
  std::vector<double> stab_cfls = {1.0, 1.1};
  double stab_T = 0.1;
  bool dx3 = false;
  auto* stab = app.add_subcommand("stability-test", "1D stability sweep");
  stab->add_option("--scheme", stab_schemes, "ee-ie, dirksa or explicit-euler")->delimiter(',')->capture_default_str();
  stab->add_option("--M", stab_Ms)->delimiter(',')->capture_default_str();
  stab->add_option("--cfl", stab_cfls)->delimiter(',')->capture_default_str();
  stab->add_option("--T", stab_T)->capture_default_str();
  stab->add_flag("--dx3", dx3, "Use dt = dx^3 instead of the CFL rule");

  std::string bench_test = "test1";
  std::vector<int> bench_Ms = {16, 32, 64, 128, 256};
  std::vector<double> bench_nus = {1e-1, 1e-2, 1e-3}, bench_eps = {1e-3, 1e-4, 1e-5};
  std::vector<std::string> bench_solvers = {"multigrid"};
  double bench_T = 0.1, bench_tol = 1e-6;
  auto* bench = app.add_subcommand("solver-bench", "Average stage-solver iterations over a parameter grid");
  bench->add_option("--test", bench_test, "test1 or test2")->capture_default_str();
  bench->add_option("--M", bench_Ms)->delimiter(',')->capture_default_str();
  bench->add_option("--nu", bench_nus)->delimiter(',')->capture_default_str();
  bench->add_option("--eps", bench_eps)->delimiter(',')->capture_default_str();
  bench->add_option("--solver", bench_solvers, "multigrid and/or pcg")->delimiter(',')->capture_default_str();
  bench->add_option("--T", bench_T)->capture_default_str();
  bench->add_option("--tol", bench_tol)->capture_default_str();

  double c0 = 0.0, eps = 1e-4;
  int dim = 2;
  bool list = false;
  auto* spin = app.add_subcommand("spinodal-predict", "Unstable cosine modes of a homogeneous mixture");
  spin->add_option("--c0", c0)->capture_default_str();
  spin->add_option("--eps", eps)->capture_default_str();
  spin->add_option("--dim", dim)->check(CLI::IsMember({1, 2}))->capture_default_str();
  spin->add_flag("--list", list, "Print every unstable mode");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config_path, overrides, out_dir);
    if (*order) return cmd_order(scheme, order_Ms, order_cfl, order_T, forcing_time);
    if (*stab) return cmd_stability(stab_schemes, stab_Ms, stab_cfls, stab_T, dx3);
    if (*bench) return cmd_bench(bench_test, bench_Ms, bench_nus, bench_eps, bench_solvers, bench_T, bench_tol);
    if (*spin) return cmd_spinodal(c0, eps, dim, list);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
