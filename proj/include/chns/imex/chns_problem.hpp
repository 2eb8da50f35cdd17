#pragma once

// Stage solves for the isentropic CHNS system.  Within a stage the unknowns
// are found one after another:
//
//   rho(i) explicitly, since L~ has no implicit part in the mass equation;
//   C(i) from the concentration system (needs rho(i) and C~(i) only);
//   V(i) from the velocity system (its right-hand side needs C(i) for the
//        capillary forcing).

#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chns/convection/weno.hpp"
#include "chns/core/errors.hpp"
#include "chns/core/fields.hpp"
#include "chns/imex/stage_systems.hpp"
#include "chns/imex/stepper.hpp"
#include "chns/linsolve/banded.hpp"
#include "chns/linsolve/multigrid.hpp"
#include "chns/linsolve/pcg.hpp"
#include "chns/semidisc/rhs.hpp"

namespace chns {

enum class SolverKind { Auto, Multigrid, Pcg, Direct };

inline SolverKind parse_solver_kind(const std::string& s) {
  if (s == "auto") return SolverKind::Auto;
  if (s == "multigrid" || s == "mg") return SolverKind::Multigrid;
  if (s == "pcg") return SolverKind::Pcg;
  if (s == "direct") return SolverKind::Direct;
  throw ConfigError("unknown solver '" + s + "'");
}

inline std::string to_string(SolverKind k) {
  switch (k) {
    case SolverKind::Auto: return "auto";
    case SolverKind::Multigrid: return "multigrid";
    case SolverKind::Pcg: return "pcg";
    case SolverKind::Direct: return "direct";
  }
  return "auto";
}

/// Where a time-dependent forcing is evaluated inside stage i.
enum class ForcingTime { Implicit, Explicit };

struct SolverOptions {
  SolverKind concentration = SolverKind::Auto;
  SolverKind velocity = SolverKind::Auto;
  double rel_tol = 1e-6;
  int max_iterations = 500;
  MultigridOptions multigrid{};
};

struct SolverStats {
  long c_solves = 0;
  long c_iterations = 0;
  long v_solves = 0;
  long v_iterations = 0;

  double average_c() const { return c_solves ? double(c_iterations) / double(c_solves) : 0.0; }
  double average_v() const { return v_solves ? double(v_iterations) / double(v_solves) : 0.0; }
};

class ChnsProblem {
 public:
  explicit ChnsProblem(PhysParams params, SolverOptions solvers = {}, Forcing forcing = {})
      : params_(params), solvers_(solvers), forcing_(std::move(forcing)) {
    params_.validate();
  }

  const PhysParams& params() const noexcept { return params_; }
  const SolverOptions& solvers() const noexcept { return solvers_; }
  SolverOptions& solvers() noexcept { return solvers_; }
  const SolverStats& stats() const noexcept { return stats_; }
  void reset_stats() { stats_ = {}; }

  void set_forcing_time(ForcingTime ft) { forcing_time_ = ft; }
  /// Stage solves throw BoundViolation once max|C(i)| reaches this value.
  void set_c_threshold(double v) { c_threshold_ = v; }
  double c_threshold() const noexcept { return c_threshold_; }
  /// Index of the stage most recently started, for error reports.
  int current_stage() const noexcept { return current_stage_; }

  /// U(i) = base + tau L~(tilde, U(i)).
  State solve_stage(const State& tilde, const State& base, double tau, const StageTimes& times) {
    current_stage_ = times.stage;
    const Grid& g = base.grid();
    const State& conv = convective(tilde);
    const std::optional<State> frc = forcing_state(g, times);

    GridField rho = base.rho;
    rho.axpy(tau, conv.rho);
    if (frc) rho.axpy(tau, frc->rho);
    require_positive(rho);

    // Concentration.
    const GridField c_tilde = concentration(tilde);
    GridField rhs_c = base.q;
    if (tau != 0.0) {
      GridField explicit_part = conv.q;
      explicit_part += apply_split_tensor(assemble_split_tensor(c_tilde, SplitSign::Minus), c_tilde);
      if (frc) explicit_part += frc->q;
      rhs_c.axpy(tau, explicit_part);
    }
    GridField c = solve_concentration(rho, c_tilde, rhs_c, tau);
    if (max_abs(c) >= c_threshold_) throw BoundViolation(max_abs(c));

    // Velocity.
    const std::size_t nm = base.m.size();
    std::vector<GridField> rhs_v(base.m);
    if (tau != 0.0) {
      const std::vector<GridField> cap = capillary_terms(c, params_.eps);
      for (std::size_t k = 0; k < nm; ++k) {
        GridField e = conv.m[k];
        e += cap[k];
        if (frc) e += frc->m[k];
        rhs_v[k].axpy(tau, e);
      }
      rhs_v.back().axpy(tau, gravity_term(rho, params_.G));
    }
    std::vector<GridField> v = solve_velocity(rho, rhs_v, tau);
    return conserved(rho, v, c);
  }

  /// K_i = L~(tilde, u) plus forcing.
  State stage_rhs(const State& tilde, const State& u, const StageTimes& times) {
    const State& conv = convective(tilde);
    State out = rhs_parts(tilde, u, params_, &conv).sum();
    if (forcing_) add_forcing(out, forcing_, forcing_eval_time(times));
    return out;
  }

  /// Full right-hand side L(u) plus forcing at time t.
  State rhs(const State& u, double t) const {
    return rhs_full(u, params_, t, forcing_ ? &forcing_ : nullptr);
  }

 private:
  double forcing_eval_time(const StageTimes& t) const {
    return forcing_time_ == ForcingTime::Implicit ? t.implicit_time : t.explicit_time;
  }

  std::optional<State> forcing_state(const Grid& g, const StageTimes& times) const {
    if (!forcing_) return std::nullopt;
    State f(g);
    add_forcing(f, forcing_, forcing_eval_time(times));
    return f;
  }

  /// C(U~), cached between the stage solve and the stage right-hand side.
  const State& convective(const State& tilde) {
    if (!(conv_input_ && same_values(*conv_input_, tilde))) {
      conv_input_ = tilde;
      conv_value_ = convective_rhs(tilde, params_.gamma);
    }
    return conv_value_;
  }

  static bool same_values(const State& a, const State& b) {
    if (!(a.grid() == b.grid()) || a.components() != b.components()) return false;
    for (int k = 0; k < a.components(); ++k)
      if (a.component(k).values() != b.component(k).values()) return false;
    return true;
  }

  SolverKind resolve(SolverKind k, const Grid& g) const {
    if (k != SolverKind::Auto) return k;
    return g.dim() == 1 ? SolverKind::Direct : SolverKind::Multigrid;
  }

  GridField solve_concentration(const GridField& rho, const GridField& c_tilde, const GridField& rhs,
                                double tau) {
    const Grid& g = rho.grid();
    GridField c(g);
    if (tau == 0.0) {
      for (std::size_t k = 0; k < g.size(); ++k) c[k] = rhs[k] / rho[k];
      return c;
    }
    if (prev_c_.size() == g.size()) {
      c = GridField(g, prev_c_);
    } else {
      for (std::size_t k = 0; k < g.size(); ++k) c[k] = rhs[k] / rho[k];
    }
    const StencilMatrix A = concentration_matrix(rho, c_tilde, tau, params_.eps);
    const SolverKind kind = resolve(solvers_.concentration, g);
    SolveStats st;
    if (kind == SolverKind::Direct) {
      BandedLU lu(A);
      c = rhs;
      lu.solve(c.span());
      st.iterations = 1;
    } else if (kind == SolverKind::Pcg) {
      if (!dct_ || !(dct_->grid() == g)) dct_ = std::make_shared<CosineTransform>(g);
      DctPreconditioner P(dct_, rho, tau, params_.eps);
      st = pcg_solve(A, rhs.span(), c.span(), P, solvers_.rel_tol, solvers_.max_iterations);
    } else {
      MultigridOptions mo = solvers_.multigrid;
      mo.parity = Parity::Even;
      MultigridHierarchy mg(A, {rho}, concentration_level_builder(tau, params_.eps), mo);
      st = mg_solve(mg, rhs.span(), c.span(), solvers_.rel_tol, solvers_.max_iterations,
                    "concentration");
    }
    ++stats_.c_solves;
    stats_.c_iterations += st.iterations;
    prev_c_ = c.values();
    return c;
  }

  std::vector<GridField> solve_velocity(const GridField& rho, const std::vector<GridField>& rhs,
                                        double tau) {
    const Grid& g = rho.grid();
    const std::size_t nm = rhs.size();
    std::vector<GridField> v(nm, GridField(g));
    if (tau == 0.0) {
      for (std::size_t c = 0; c < nm; ++c)
        for (std::size_t k = 0; k < g.size(); ++k) v[c][k] = rhs[c][k] / rho[k];
      return v;
    }
    std::vector<double> b(g.size() * nm), x(g.size() * nm);
    for (std::size_t k = 0; k < g.size(); ++k)
      for (std::size_t c = 0; c < nm; ++c) {
        b[k * nm + c] = rhs[c][k];
        x[k * nm + c] = rhs[c][k] / rho[k];
      }
    if (prev_v_.size() == x.size()) x = prev_v_;
    const StencilMatrix A = velocity_matrix(rho, tau, params_);
    const SolverKind kind = resolve(solvers_.velocity, g);
    SolveStats st;
    if (kind == SolverKind::Pcg) throw NotApplicable("conjugate gradients are not used for the velocity system");
    if (kind == SolverKind::Direct) {
      BandedLU lu(A);
      x = b;
      lu.solve(x);
      st.iterations = 1;
    } else {
      MultigridOptions mo = solvers_.multigrid;
      mo.parity = Parity::Odd;
      MultigridHierarchy mg(A, {rho}, velocity_level_builder(tau, params_), mo);
      st = mg_solve(mg, b, x, solvers_.rel_tol, solvers_.max_iterations, "velocity");
    }
    ++stats_.v_solves;
    stats_.v_iterations += st.iterations;
    prev_v_ = x;
    for (std::size_t k = 0; k < g.size(); ++k)
      for (std::size_t c = 0; c < nm; ++c) v[c][k] = x[k * nm + c];
    return v;
  }

  PhysParams params_;
  SolverOptions solvers_;
  Forcing forcing_;
  ForcingTime forcing_time_ = ForcingTime::Implicit;
  double c_threshold_ = std::numeric_limits<double>::infinity();
  SolverStats stats_;
  int current_stage_ = 0;
  std::vector<double> prev_c_;
  std::vector<double> prev_v_;
  std::shared_ptr<CosineTransform> dct_;
  std::optional<State> conv_input_;
  State conv_value_;
};

}  // namespace chns
