#pragma once

#include <algorithm>

#include "chns/convection/weno.hpp"
#include "chns/core/fields.hpp"

namespace chns {

/// dt = cfl h / cs with cs the largest characteristic speed.
inline double select_dt(const State& s, double cfl, double gamma) {
  return cfl * s.grid().h() / char_speed(s, gamma);
}

struct CflDecision {
  double cfl = 0.0;
  bool reject = false;
};

/// Backs off and asks for a retry once max|c| reaches the threshold, and
/// otherwise grows the CFL number back towards cfl_max.
inline CflDecision adapt_cfl(double max_abs_c, double c_threshold, double current_cfl, double cfl_max,
                             double backoff = 0.5, double recovery = 1.1) {
  if (max_abs_c >= c_threshold) return {current_cfl * backoff, true};
  return {std::min(cfl_max, current_cfl * recovery), false};
}

}  // namespace chns
