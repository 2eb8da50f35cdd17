#pragma once

// Time loop: CFL-based step selection, step rejection when max|c| reaches the
// threshold (or the density stops being positive), blow-up detection,
// snapshots and diagnostics.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "chns/core/errors.hpp"
#include "chns/driver/config.hpp"
#include "chns/driver/diagnostics.hpp"
#include "chns/driver/initial.hpp"
#include "chns/driver/snapshot.hpp"
#include "chns/driver/timestep.hpp"
#include "chns/imex/chns_problem.hpp"
#include "chns/imex/stepper.hpp"
#include "chns/imex/tableau.hpp"

namespace chns {

/// Times at which figure snapshots are taken when they fall inside the run.
inline const std::vector<double>& figure_times() {
  static const std::vector<double> times = {0.0,  0.01, 0.02, 0.03, 0.04, 0.1, 0.14, 0.23,
                                            0.24, 0.28, 0.29, 0.3,  0.5,  0.6, 0.7,  1.0};
  return times;
}

class RunError : public Error {
 public:
  enum class Kind { BlowUp, NonPositiveDensity, BoundViolation, Rejected, Solver };

  RunError(Kind kind, double t, int step, int stage, const std::string& what)
      : Error("run failed at t=" + format_time(t) + " (step " + std::to_string(step) + ", stage " +
              std::to_string(stage + 1) + "): " + what),
        kind_(kind),
        t_(t),
        step_(step),
        stage_(stage) {}

  Kind kind() const noexcept { return kind_; }
  double time() const noexcept { return t_; }
  int step() const noexcept { return step_; }
  int stage() const noexcept { return stage_; }

 private:
  static std::string format_time(double t) {
    char b[32];
    std::snprintf(b, sizeof b, "%.6g", t);
    return b;
  }
  Kind kind_;
  double t_;
  int step_;
  int stage_;
};

struct RunResult {
  State state;
  double t = 0.0;
  DiagnosticRow initial;
  std::vector<DiagnosticRow> history;  // one row per accepted step
  int steps = 0;
  int rejections = 0;
  SolverStats solver_stats;
  std::vector<std::string> snapshots;
};

/// Called after every accepted step with the new state and its row.
using StepObserver = std::function<void(const State&, const DiagnosticRow&)>;

inline SolverOptions solver_options(const RunConfig& cfg) {
  SolverOptions o;
  o.concentration = cfg.solver_c;
  o.velocity = cfg.solver_v;
  o.rel_tol = cfg.tol;
  o.max_iterations = cfg.max_iters;
  return o;
}

inline ChnsProblem make_problem(const RunConfig& cfg) {
  Forcing f;
  if (cfg.test == "order") f = manufactured_forcing(cfg.phys);
  ChnsProblem pb(cfg.phys, solver_options(cfg), std::move(f));
  pb.set_forcing_time(cfg.forcing_time == "implicit" ? ForcingTime::Implicit : ForcingTime::Explicit);
  pb.set_c_threshold(cfg.c_threshold);
  return pb;
}

inline RunResult run(const RunConfig& cfg, State u, const StepObserver& observer = {}) {
  cfg.validate();
  const ButcherPair tab = tableau(cfg.scheme);
  ChnsProblem problem = make_problem(cfg);
  const double T = cfg.t_final;
  const double rho0 = integral(u.rho), q0 = integral(u.q);

  std::optional<DiagnosticsCsv> csv;
  const std::string echo = echo_config(cfg);
  RunResult res;
  auto snapshot = [&](const State& s, double t) {
    if (cfg.output_dir.empty()) return;
    char name[64];
    std::snprintf(name, sizeof name, "snapshot_%04zu", res.snapshots.size());
    const std::filesystem::path base = std::filesystem::path(cfg.output_dir) / name;
    write_snapshot(base.string() + ".chns", s, t);
    write_snapshot_meta(base.string() + ".meta", t, cfg.seed, echo);
    res.snapshots.push_back(base.string() + ".chns");
  };
  if (!cfg.output_dir.empty()) {
    std::filesystem::create_directories(cfg.output_dir);
    csv.emplace((std::filesystem::path(cfg.output_dir) / "diagnostics.csv").string());
  }

  // Snapshot targets that the step size is clamped to.
  std::vector<double> targets;
  if (cfg.figure_snapshots)
    for (double ft : figure_times())
      if (ft > 0.0 && ft < T) targets.push_back(ft);
  if (cfg.snapshot_interval > 0.0)
    for (double s = cfg.snapshot_interval; s < T; s += cfg.snapshot_interval) targets.push_back(s);
  std::sort(targets.begin(), targets.end());
  targets.push_back(T);
  std::size_t next_target = 0;

  double t = 0.0;
  double cfl = cfg.cfl;
  const double cfl_max = cfg.effective_cfl_max();
  double dt_scale = 1.0;  // used with fixed_dt

  res.initial = measure(u, rho0, q0, cfg.phys);
  res.initial.cfl = cfl;
  if (csv) csv->append(res.initial);
  snapshot(u, 0.0);

  while (t < T) {
    while (targets[next_target] <= t) ++next_target;
    const double target = targets[next_target];
    int retries = 0;
    double last_attempt = std::numeric_limits<double>::infinity();
    const SolverStats before = problem.stats();
    State next;
    double dt = 0.0;
    bool hit = false;
    for (;;) {
      dt = cfg.fixed_dt > 0.0 ? cfg.fixed_dt * dt_scale : select_dt(u, cfl, cfg.phys.gamma);
      if (retries > 0) dt = std::min(dt, cfg.dt_backoff * last_attempt);
      hit = t + dt >= target * (1.0 - 1e-14) || t + dt >= target - 1e-15;
      if (hit) dt = target - t;
      last_attempt = dt;
      std::string reason;
      bool bound = false;
      try {
        next = imex_step(problem, u, t, dt, tab).next;
        if (!next.all_finite() || next.max_abs() > cfg.blowup_threshold)
          throw RunError(RunError::Kind::BlowUp, t + dt, res.steps + 1, tab.stages - 1,
                         "solution blew up (non-finite or larger than " +
                             detail::format_double(cfg.blowup_threshold) + ")");
        require_positive(next.rho);
        const double cmax = max_abs(concentration(next));
        if (cmax >= cfg.c_threshold) throw BoundViolation(cmax);
        break;
      } catch (const BoundViolation& e) {
        reason = e.what();
        bound = true;
      } catch (const NonPositiveDensity& e) {
        reason = e.what();
      } catch (const SolverDivergence& e) {
        throw RunError(RunError::Kind::Solver, t, res.steps + 1, problem.current_stage(), e.what());
      }
      if (!cfg.adapt_cfl)
        throw RunError(bound ? RunError::Kind::BoundViolation : RunError::Kind::NonPositiveDensity, t,
                       res.steps + 1, problem.current_stage(), reason);
      ++retries;
      ++res.rejections;
      if (retries > cfg.max_retries) {
        const StepRejectedTooManyTimes e(t, retries - 1);
        throw RunError(RunError::Kind::Rejected, t, res.steps + 1, problem.current_stage(), e.what());
      }
      cfl = adapt_cfl(cfg.c_threshold, cfg.c_threshold, cfl, cfl_max, cfg.dt_backoff, cfg.dt_recovery).cfl;
      dt_scale *= cfg.dt_backoff;
    }

    const double used_cfl = cfg.fixed_dt > 0.0 ? dt * char_speed(u, cfg.phys.gamma) / u.grid().h() : cfl;
    u = std::move(next);
    t = hit ? target : t + dt;
    ++res.steps;

    const SolverStats& after = problem.stats();
    DiagnosticRow row = measure(u, rho0, q0, cfg.phys);
    row.t = t;
    row.dt = dt;
    row.cfl = used_cfl;
    const long dc = after.c_solves - before.c_solves, dv = after.v_solves - before.v_solves;
    row.iters_c = dc ? double(after.c_iterations - before.c_iterations) / double(dc) : 0.0;
    row.iters_v = dv ? double(after.v_iterations - before.v_iterations) / double(dv) : 0.0;
    res.history.push_back(row);
    if (csv) csv->append(row);
    if (observer) observer(u, row);
    if (hit) snapshot(u, t);

    if (cfg.adapt_cfl) {
      cfl = adapt_cfl(std::max(std::abs(row.cmin), std::abs(row.cmax)), cfg.c_threshold, cfl, cfl_max,
                      cfg.dt_backoff, cfg.dt_recovery)
                .cfl;
      dt_scale = std::min(1.0, dt_scale * cfg.dt_recovery);
    }
  }
  res.state = std::move(u);
  res.t = t;
  res.solver_stats = problem.stats();
  return res;
}

inline RunResult run(const RunConfig& cfg, const StepObserver& observer = {}) {
  return run(cfg, initial_state(cfg), observer);
}

}  // namespace chns
