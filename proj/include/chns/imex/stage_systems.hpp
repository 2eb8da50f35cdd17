#pragma once

// Matrices of the two linear systems solved in every implicit stage:
//
//   concentration:  D(rho) - tau M_+(C~) + tau eps Delta_h D(rho)^{-1} Delta_h
//   velocity:       blockdiag(D(rho), D(rho)) - tau L4
//
// with tau = dt * a_ii.  The velocity unknowns are interleaved (V_1, V_2) per
// node; in 1D the velocity system is scalar.

#include <vector>

#include "chns/core/fields.hpp"
#include "chns/fd/operators.hpp"
#include "chns/linsolve/multigrid.hpp"
#include "chns/linsolve/stencil_matrix.hpp"

namespace chns {

/// Matrix of apply_split_tensor for the given edge coefficients.
inline StencilMatrix split_tensor_matrix(const SplitPotentialTensor& t) {
  const Grid& g = t.grid;
  const double inv_h2 = 1.0 / (g.h() * g.h());
  std::vector<Offset> offs = {{0, 0}, {-1, 0}, {1, 0}};
  if (g.dim() == 2) offs.insert(offs.end(), {{0, -1}, {0, 1}});
  StencilMatrix A(g, 1, offs);
  auto add_axis = [&](Axis axis, const std::vector<double>& w) {
    const Offset fwd = axis == Axis::X ? Offset{1, 0} : Offset{0, 1};
    const Offset bwd = axis == Axis::X ? Offset{-1, 0} : Offset{0, -1};
    detail::for_each_line(g, axis, [&](std::size_t base, std::size_t stride, int n) {
      for (int i = 0; i + 1 < n; ++i) {
        const std::size_t k = base + static_cast<std::size_t>(i) * stride;
        const double a = w[k] * inv_h2;
        A.at(k, {0, 0}) -= a;
        A.at(k, fwd) += a;
        A.at(k + stride, {0, 0}) -= a;
        A.at(k + stride, bwd) += a;
      }
    });
  };
  add_axis(Axis::X, t.wx);
  if (g.dim() == 2) add_axis(Axis::Y, t.wy);
  return A;
}

inline StencilMatrix concentration_matrix(const GridField& rho, const GridField& c_ref, double tau,
                                          double eps) {
  require_positive(rho);
  const Grid& g = rho.grid();
  StencilMatrix A = diagonal_matrix(rho);
  if (tau == 0.0) return A;
  A.add(-tau, split_tensor_matrix(assemble_split_tensor(c_ref, SplitSign::Plus)));
  GridField inv_rho(g);
  for (std::size_t k = 0; k < g.size(); ++k) inv_rho[k] = 1.0 / rho[k];
  const StencilMatrix lap = laplacian_matrix(g);
  A.add(tau * eps, multiply(lap, multiply(diagonal_matrix(inv_rho), lap)));
  return A;
}

/// tau-free viscous operator L4 in matrix form (block size 2 in 2D).
inline StencilMatrix viscous_matrix(const Grid& g, const PhysParams& p) {
  const double a = 2.0 * p.nu + p.lambda;
  if (g.dim() == 1) {
    StencilMatrix E = e_matrix(g, Axis::X);
    StencilMatrix out(g, 1, {{0, 0}});
    return out.add(a, E);
  }
  const double b = p.nu + p.lambda;
  const StencilMatrix Ex = e_matrix(g, Axis::X), Ey = e_matrix(g, Axis::Y);
  const StencilMatrix DxDy = multiply(d_matrix(g, Axis::X), d_matrix(g, Axis::Y));
  StencilMatrix A11(g, 1, {{0, 0}}), A22(g, 1, {{0, 0}}), A12(g, 1, {{0, 0}});
  A11.add(a, Ex).add(p.nu, Ey);
  A22.add(p.nu, Ex).add(a, Ey);
  A12.add(b, DxDy);
  return block_matrix(A11, A12, A12, A22);
}

inline StencilMatrix velocity_matrix(const GridField& rho, double tau, const PhysParams& p) {
  require_positive(rho);
  const Grid& g = rho.grid();
  StencilMatrix D = diagonal_matrix(rho);
  StencilMatrix A = g.dim() == 1 ? D : block_matrix(D, StencilMatrix(g, 1, {}), StencilMatrix(g, 1, {}), D);
  if (tau == 0.0) return A;
  return A.add(-tau, viscous_matrix(g, p));
}

/// Multigrid level builders; the coefficient list is {rho} for the
/// concentration system (M_+ does not depend on C~) and {rho} for velocity.
inline LevelBuilder concentration_level_builder(double tau, double eps) {
  return [tau, eps](const Grid& g, const std::vector<GridField>& coeffs) {
    return concentration_matrix(coeffs.at(0), GridField(g), tau, eps);
  };
}

inline LevelBuilder velocity_level_builder(double tau, const PhysParams& p) {
  return [tau, p](const Grid&, const std::vector<GridField>& coeffs) {
    return velocity_matrix(coeffs.at(0), tau, p);
  };
}

}  // namespace chns
