#pragma once

// Method-of-lines right-hand side
//
//   L(U) = C(U) + L1(U) + L2(U) + L3(U) + L4(U)
//
// (convection, gravity, capillarity, Cahn-Hilliard flux, viscosity) and the
// partitioned variant L~(U~, U) in which convection and the concave part of
// the chemical potential are evaluated at the explicit state U~.

#include <array>
#include <functional>
#include <utility>
#include <vector>

#include "chns/convection/weno.hpp"
#include "chns/core/fields.hpp"
#include "chns/fd/operators.hpp"
#include "chns/semidisc/manufactured.hpp"

namespace chns {

/// Source term s(x, y, t) for the conserved components (rho, m_1, m_2, q); in
/// 1D the third entry is ignored and the fourth drives q.
using Forcing = std::function<std::array<double, 4>(double x, double y, double t)>;

inline Forcing manufactured_forcing(const PhysParams& p) {
  return [p](double x, double y, double t) { return ManufacturedSolution::source(x, y, t, p); };
}

inline void add_forcing(State& rates, const Forcing& f, double t) {
  const Grid& g = rates.grid();
  const bool two_d = g.dim() == 2;
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) {
      const auto s = f(g.x(i), g.y(j), t);
      const std::size_t k = g.index(i, j);
      rates.rho[k] += s[0];
      rates.m[0][k] += s[1];
      if (two_d) rates.m[1][k] += s[2];
      rates.q[k] += s[3];
    }
}

/// The individual contributions; slots that do not act on an equation are
/// simply absent (gravity and capillarity only feed the momenta, the
/// Cahn-Hilliard term only q).
struct RhsParts {
  State convective;
  GridField gravity;                  // last momentum component
  std::vector<GridField> capillary;   // per momentum component
  GridField cahn_hilliard;            // q equation
  std::vector<GridField> viscous;     // per momentum component

  State sum() const {
    State out = convective;
    for (std::size_t k = 0; k < out.m.size(); ++k) {
      out.m[k] += capillary[k];
      out.m[k] += viscous[k];
    }
    out.m.back() += gravity;
    out.q += cahn_hilliard;
    return out;
  }
};

/// Gravity rho G in the last momentum equation (y in 2D, x in 1D).
inline GridField gravity_term(const GridField& rho, double G) { return G * rho; }

/// Parts of L~(U~, U).  If `convective` is given it is used instead of
/// recomputing C(U~).
inline RhsParts rhs_parts(const State& tilde, const State& u, const PhysParams& p,
                          const State* convective = nullptr) {
  RhsParts parts;
  parts.convective = convective ? *convective : convective_rhs(tilde, p.gamma);
  const Primitives prim = primitives(u);
  const GridField c_tilde = concentration(tilde);
  parts.gravity = gravity_term(u.rho, p.G);
  parts.capillary = capillary_terms(prim.c, p.eps);
  parts.cahn_hilliard = chemical_potential_laplacian(prim.c, u.rho, c_tilde, p.eps);
  parts.viscous = viscous_block_apply(prim.v, p);
  return parts;
}

inline State rhs_split(const State& tilde, const State& u, const PhysParams& p, double t,
                       const Forcing* forcing = nullptr) {
  State out = rhs_parts(tilde, u, p).sum();
  if (forcing && *forcing) add_forcing(out, *forcing, t);
  return out;
}

inline State rhs_full(const State& u, const PhysParams& p, double t,
                      const Forcing* forcing = nullptr) {
  return rhs_split(u, u, p, t, forcing);
}

/// 1D system: (rho, rho v, rho c) with momentum diffusion (2nu+lambda) v_xx,
/// capillarity -(eps/2)(c_x^2)_x and gravity along x.
inline State rhs_1d(const State& u, const PhysParams& p, double t,
                    const Forcing* forcing = nullptr) {
  if (u.grid().dim() != 1) throw std::invalid_argument("rhs_1d needs a 1D state");
  return rhs_full(u, p, t, forcing);
}

/// Ginzburg-Landau energy sum(psi(c) + eps/2 |grad_h c|^2) h^dim with
/// psi(c) = (c^2-1)^2/4 and forward differences on interior edges.
inline double discrete_energy(const GridField& c, double eps) {
  const Grid& g = c.grid();
  double e = 0.0;
  for (double ck : c) e += 0.25 * (ck * ck - 1.0) * (ck * ck - 1.0);
  auto grad = [&](Axis a) {
    const GridField d = apply_d1(c, a);
    double s = 0.0;
    for (double dk : d) s += dk * dk;
    return s;
  };
  double gsum = grad(Axis::X);
  if (g.dim() == 2) gsum += grad(Axis::Y);
  e += 0.5 * eps * gsum;
  return e * std::pow(g.h(), g.dim());
}

}  // namespace chns
