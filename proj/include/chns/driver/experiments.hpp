#pragma once

// Reproductions of the verification experiments: convergence against the
// manufactured solution, 1D stability runs and solver iteration counts.

#include <cmath>
#include <string>
#include <vector>

#include "chns/driver/diagnostics.hpp"
#include "chns/driver/run.hpp"

namespace chns {

struct OrderRow {
  int M = 0;
  double error = 0.0;
  double ratio = 0.0;  // e_M / e_2M, 0 for the last row
};

/// Order-test parameters: nu = 1, lambda = 0.1, eps = 1e-4, G = -10.
inline RunConfig order_test_config(const std::string& scheme, int M, double cfl, double T) {
  RunConfig cfg;
  cfg.test = "order";
  cfg.dim = 2;
  cfg.M = M;
  cfg.phys = PhysParams{5.0 / 3.0, 1.0, 0.1, 1e-4, -10.0};
  cfg.scheme = scheme;
  cfg.cfl = cfl;
  cfg.t_final = T;
  cfg.figure_snapshots = false;
  return cfg;
}

inline std::vector<OrderRow> order_test(const std::string& scheme, const std::vector<int>& Ms,
                                        double cfl = 0.4, double T = 0.01,
                                        const std::string& forcing_time = "explicit") {
  std::vector<OrderRow> rows;
  for (int M : Ms) {
    RunConfig cfg = order_test_config(scheme, M, cfl, T);
    cfg.forcing_time = forcing_time;
    const RunResult r = run(cfg);
    rows.push_back({M, global_error(r.state, manufactured_state(r.state.grid(), r.t)), 0.0});
  }
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) rows[i].ratio = rows[i].error / rows[i + 1].error;
  return rows;
}

struct StabilityOutcome {
  std::string scheme;
  int M = 0;
  bool completed = false;
  bool blew_up = false;     // non-finite, |U| above threshold or rho <= 0
  bool rejected = false;    // bound violation or rejection cascade
  double t_reached = 0.0;   // final time or failure time
  int steps = 0;
  std::string message;
};

/// 1D stability data with G = -10, 2 nu + lambda = 2 (nu = 1, lambda = 0), eps = 1e-4.
inline RunConfig stability_config(const std::string& scheme, int M, double cfl, double T) {
  RunConfig cfg;
  cfg.test = "stability";
  cfg.dim = 1;
  cfg.M = M;
  cfg.phys = PhysParams{5.0 / 3.0, 1.0, 0.0, 1e-4, -10.0};
  cfg.scheme = scheme;
  cfg.cfl = cfl;
  cfg.t_final = T;
  cfg.adapt_cfl = false;
  cfg.figure_snapshots = false;
  return cfg;
}

inline StabilityOutcome stability_run(const RunConfig& cfg) {
  StabilityOutcome out;
  out.scheme = cfg.scheme;
  out.M = cfg.M;
  try {
    const RunResult r = run(cfg);
    out.completed = true;
    out.t_reached = r.t;
    out.steps = r.steps;
  } catch (const RunError& e) {
    out.t_reached = e.time();
    out.steps = e.step();
    out.message = e.what();
    out.blew_up = e.kind() == RunError::Kind::BlowUp || e.kind() == RunError::Kind::NonPositiveDensity;
    out.rejected = e.kind() == RunError::Kind::BoundViolation || e.kind() == RunError::Kind::Rejected;
  }
  return out;
}

struct BenchRow {
  std::string test;
  int M = 0;
  double nu = 0.0;
  double eps = 0.0;
  SolverKind solver = SolverKind::Multigrid;
  double avg_c = 0.0;
  double avg_v = 0.0;
  int steps = 0;
  bool completed = false;
  std::string message;
};

/// Solver statistics for a 2D test with lambda = nu / 10, G = -10, DIRKSA.
inline BenchRow solver_bench_run(const std::string& test, int M, double nu, double eps, SolverKind solver,
                                 double T, double tol = 1e-6) {
  RunConfig cfg;
  cfg.test = test;
  cfg.dim = 2;
  cfg.M = M;
  cfg.phys = PhysParams{5.0 / 3.0, nu, nu / 10.0, eps, -10.0};
  cfg.scheme = "dirksa";
  cfg.solver_c = solver;
  cfg.solver_v = SolverKind::Multigrid;
  cfg.tol = tol;
  cfg.t_final = T;
  cfg.figure_snapshots = false;
  BenchRow row;
  row.test = test;
  row.M = M;
  row.nu = nu;
  row.eps = eps;
  row.solver = solver;
  try {
    const RunResult r = run(cfg);
    row.avg_c = r.solver_stats.average_c();
    row.avg_v = r.solver_stats.average_v();
    row.steps = r.steps;
    row.completed = true;
  } catch (const Error& e) {
    row.message = e.what();
  }
  return row;
}

}  // namespace chns
