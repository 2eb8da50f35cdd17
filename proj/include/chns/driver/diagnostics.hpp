#pragma once

// Per-step diagnostics and the CSV time series written next to snapshots.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "chns/convection/weno.hpp"
#include "chns/core/errors.hpp"
#include "chns/core/fields.hpp"
#include "chns/semidisc/rhs.hpp"

namespace chns {

struct DiagnosticRow {
  double t = 0.0;
  double dt = 0.0;
  double cfl = 0.0;
  double err_rho = 0.0;  // sum rho^n - sum rho^0
  double err_q = 0.0;    // sum q^n - sum q^0
  double cmin = 0.0;
  double cmax = 0.0;
  double cs = 0.0;
  double iters_c = 0.0;  // mean iterations per concentration solve in the step
  double iters_v = 0.0;  // same for the velocity solves
  double energy = 0.0;
};

inline const char* diagnostics_csv_header() {
  return "t,dt,cfl,err_rho,err_q,cmin,cmax,cs,mg_iters_c,mg_iters_v,energy";
}

inline std::string diagnostics_csv_line(const DiagnosticRow& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g",
                r.t, r.dt, r.cfl, r.err_rho, r.err_q, r.cmin, r.cmax, r.cs, r.iters_c, r.iters_v,
                r.energy);
  return buf;
}

/// Fills the state-dependent fields of a row.
inline DiagnosticRow measure(const State& s, double rho0_sum, double q0_sum, const PhysParams& p) {
  DiagnosticRow r;
  r.err_rho = integral(s.rho) - rho0_sum;
  r.err_q = integral(s.q) - q0_sum;
  const GridField c = concentration(s);
  r.cmin = min_value(c);
  r.cmax = max_value(c);
  r.cs = char_speed(s, p.gamma);
  r.energy = discrete_energy(c, p.eps);
  return r;
}

/// Append-only CSV writer; the header is written when the file is created.
class DiagnosticsCsv {
 public:
  explicit DiagnosticsCsv(const std::string& path) : out_(path, std::ios::trunc) {
    if (!out_) throw FormatError("cannot open '" + path + "' for writing");
    out_ << diagnostics_csv_header() << '\n';
  }
  void append(const DiagnosticRow& r) {
    out_ << diagnostics_csv_line(r) << '\n';
    out_.flush();
  }

 private:
  std::ofstream out_;
};

/// (1/M^dim) sum over components and nodes of |u - u_exact|.
inline double global_error(const State& numerical, const State& exact) {
  if (!(numerical.grid() == exact.grid())) throw std::invalid_argument("states live on different grids");
  double e = 0.0;
  for (int k = 0; k < numerical.components(); ++k) {
    const GridField& a = numerical.component(k);
    const GridField& b = exact.component(k);
    for (std::size_t i = 0; i < a.size(); ++i) e += std::abs(a[i] - b[i]);
  }
  return e / static_cast<double>(numerical.grid().size());
}

}  // namespace chns
