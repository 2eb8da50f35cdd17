#pragma once

// One step of a partitioned IMEX Runge-Kutta scheme without doubled
// variables:
//
//   U~(i) = U^n + dt sum_{j<i} at_ij K_j
//   U(i)  = U^n + dt sum_{j<i} a_ij K_j + dt a_ii L~(U~(i), U(i))
//   K_i   = L~(U~(i), U(i))
//   U^{n+1} = U^n + dt sum_j b_j K_j
//
// The problem type supplies the linearly implicit stage solve and the stage
// right-hand side; states only need a free function axpy(y, a, x).

#include <vector>

#include "chns/imex/tableau.hpp"

namespace chns {

/// Abscissae of the current stage, t_n + ct_i dt and t_n + c_i dt.
struct StageTimes {
  double explicit_time = 0.0;
  double implicit_time = 0.0;
  int stage = 0;
};

template <class S>
struct StepResult {
  S next;
  S last_stage;
};

template <class Problem, class S>
StepResult<S> imex_step(Problem& problem, const S& un, double t, double dt, const ButcherPair& tab) {
  std::vector<S> K;
  K.reserve(static_cast<std::size_t>(tab.stages));
  S last = un;
  for (int i = 0; i < tab.stages; ++i) {
    const auto si = static_cast<std::size_t>(i);
    S tilde = un;
    S base = un;
    for (int j = 0; j < i; ++j) {
      const auto sj = static_cast<std::size_t>(j);
      if (tab.at[si][sj] != 0.0) axpy(tilde, dt * tab.at[si][sj], K[sj]);
      if (tab.a[si][sj] != 0.0) axpy(base, dt * tab.a[si][sj], K[sj]);
    }
    const StageTimes times{t + tab.ct[si] * dt, t + tab.c[si] * dt, i};
    last = problem.solve_stage(tilde, base, dt * tab.a[si][si], times);
    K.push_back(problem.stage_rhs(tilde, last, times));
  }
  S next = un;
  for (int j = 0; j < tab.stages; ++j) axpy(next, dt * tab.b[static_cast<std::size_t>(j)], K[static_cast<std::size_t>(j)]);
  return {std::move(next), std::move(last)};
}

}  // namespace chns
