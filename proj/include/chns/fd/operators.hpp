#pragma once

// Finite-difference building blocks on cell-centred grids, each with its own
// boundary closure:
//
//   D1*  backward difference at half nodes, f(x_0) = f(x_M) = 0 closure
//   D1   forward difference at half nodes, zero last row
//   D    central difference, one-sided first-order rows at the walls
//   D*   central difference, halved one-sided rows (odd-extension closure)
//   S    forward shift, zero last row
//   E    second difference for no-slip fields (ghost value from v = 0 wall)
//   Lap  second difference for homogeneous Neumann fields
//
// All operators act along one axis; 2D operators are sums/compositions.

#include <array>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "chns/core/fields.hpp"

namespace chns {

namespace detail {

/// Calls body(base, stride, n) once per grid line parallel to `axis`.
template <class Body>
void for_each_line(const Grid& g, Axis axis, Body&& body) {
  const std::size_t stride = g.stride(axis);
  const int n = g.extent(axis);
  if (axis == Axis::X) {
    for (int j = 0; j < g.ny(); ++j) body(static_cast<std::size_t>(j), stride, n);
  } else {
    for (int i = 0; i < g.nx(); ++i) body(g.index(i, 0), stride, n);
  }
}

/// Applies a three-point rule out_i = rule(i, f_{i-1}, f_i, f_{i+1}) along an
/// axis; missing neighbours are passed as 0.
template <class Rule>
GridField apply_line_rule(const GridField& f, Axis axis, Rule&& rule) {
  const Grid& g = f.grid();
  GridField out(g);
  for_each_line(g, axis, [&](std::size_t base, std::size_t stride, int n) {
    for (int i = 0; i < n; ++i) {
      const std::size_t k = base + static_cast<std::size_t>(i) * stride;
      const double fm = i > 0 ? f[k - stride] : 0.0;
      const double fp = i < n - 1 ? f[k + stride] : 0.0;
      out[k] = rule(i, n, fm, f[k], fp);
    }
  });
  return out;
}

}  // namespace detail

inline GridField apply_d1star(const GridField& f, Axis axis) {
  const double inv_h = 1.0 / f.grid().h();
  return detail::apply_line_rule(f, axis, [inv_h](int i, int n, double fm, double f0, double) {
    if (i == 0) return f0 * inv_h;
    if (i == n - 1) return -fm * inv_h;
    return (f0 - fm) * inv_h;
  });
}

inline GridField apply_d1(const GridField& f, Axis axis) {
  const double inv_h = 1.0 / f.grid().h();
  return detail::apply_line_rule(f, axis, [inv_h](int i, int n, double, double f0, double fp) {
    return i == n - 1 ? 0.0 : (fp - f0) * inv_h;
  });
}

inline GridField apply_d(const GridField& f, Axis axis) {
  const double inv_h = 1.0 / f.grid().h();
  return detail::apply_line_rule(f, axis, [inv_h](int i, int n, double fm, double f0, double fp) {
    if (i == 0) return (fp - f0) * inv_h;
    if (i == n - 1) return (f0 - fm) * inv_h;
    return 0.5 * (fp - fm) * inv_h;
  });
}

inline GridField apply_dstar(const GridField& f, Axis axis) {
  const double inv_2h = 0.5 / f.grid().h();
  return detail::apply_line_rule(f, axis, [inv_2h](int i, int n, double fm, double f0, double fp) {
    if (i == 0) return (fp - f0) * inv_2h;
    if (i == n - 1) return (f0 - fm) * inv_2h;
    return (fp - fm) * inv_2h;
  });
}

inline GridField apply_shift(const GridField& f, Axis axis) {
  return detail::apply_line_rule(f, axis, [](int i, int n, double, double, double fp) {
    return i == n - 1 ? 0.0 : fp;
  });
}

inline GridField apply_e(const GridField& f, Axis axis) {
  const double inv_h2 = 1.0 / (f.grid().h() * f.grid().h());
  return detail::apply_line_rule(f, axis, [inv_h2](int i, int n, double fm, double f0, double fp) {
    if (i == 0) return (4.0 / 3.0 * fp - 4.0 * f0) * inv_h2;
    if (i == n - 1) return (4.0 / 3.0 * fm - 4.0 * f0) * inv_h2;
    return (fp - 2.0 * f0 + fm) * inv_h2;
  });
}

inline GridField apply_laplacian_axis(const GridField& f, Axis axis) {
  const double inv_h2 = 1.0 / (f.grid().h() * f.grid().h());
  return detail::apply_line_rule(f, axis, [inv_h2](int i, int n, double fm, double f0, double fp) {
    if (n == 1) return 0.0;
    if (i == 0) return (fp - f0) * inv_h2;
    if (i == n - 1) return (fm - f0) * inv_h2;
    return (fp - 2.0 * f0 + fm) * inv_h2;
  });
}

/// Neumann Laplacian, sum of the axis operators.  Symmetric, negative
/// semidefinite, constants in the null space.
inline GridField apply_neumann_laplacian(const GridField& f) {
  GridField out = apply_laplacian_axis(f, Axis::X);
  if (f.grid().dim() == 2) out += apply_laplacian_axis(f, Axis::Y);
  return out;
}

// ---------------------------------------------------------------------------
// Convex-concave split of psi'(c) = c^3 - c into phi_+ = 2c and
// phi_- = c^3 - 3c, discretised in edge-weighted divergence form.

enum class SplitSign { Plus, Minus };

inline double split_potential_derivative(SplitSign sign, double c) {
  return sign == SplitSign::Plus ? 2.0 : 3.0 * (c * c - 1.0);
}

/// Edge coefficients 1/2 (phi'(c_k) + phi'(c_{k+1})) for every interior edge;
/// wx[k] couples k with its +x neighbour, wy[k] with its +y neighbour.  The
/// entry for a node on the last row/column along that axis is 0.
struct SplitPotentialTensor {
  Grid grid;
  SplitSign sign = SplitSign::Plus;
  std::vector<double> wx;
  std::vector<double> wy;
};

inline SplitPotentialTensor assemble_split_tensor(const GridField& c_ref, SplitSign sign) {
  const Grid& g = c_ref.grid();
  SplitPotentialTensor t{g, sign, std::vector<double>(g.size(), 0.0), {}};
  if (g.dim() == 2) t.wy.assign(g.size(), 0.0);
  auto fill = [&](Axis axis, std::vector<double>& w) {
    detail::for_each_line(g, axis, [&](std::size_t base, std::size_t stride, int n) {
      for (int i = 0; i + 1 < n; ++i) {
        const std::size_t k = base + static_cast<std::size_t>(i) * stride;
        w[k] = 0.5 * (split_potential_derivative(sign, c_ref[k]) +
                      split_potential_derivative(sign, c_ref[k + stride]));
      }
    });
  };
  fill(Axis::X, t.wx);
  if (g.dim() == 2) fill(Axis::Y, t.wy);
  return t;
}

inline GridField apply_split_tensor(const SplitPotentialTensor& t, const GridField& c) {
  const Grid& g = c.grid();
  const double inv_h2 = 1.0 / (g.h() * g.h());
  GridField out(g);
  auto add_axis = [&](Axis axis, const std::vector<double>& w) {
    detail::for_each_line(g, axis, [&](std::size_t base, std::size_t stride, int n) {
      for (int i = 0; i + 1 < n; ++i) {
        const std::size_t k = base + static_cast<std::size_t>(i) * stride;
        const double flux = w[k] * (c[k + stride] - c[k]) * inv_h2;
        out[k] += flux;
        out[k + stride] -= flux;
      }
    });
  };
  add_axis(Axis::X, t.wx);
  if (g.dim() == 2) add_axis(Axis::Y, t.wy);
  return out;
}

// ---------------------------------------------------------------------------
// Korteweg (capillary) forcing of the momentum equations.

/// Returns one field per momentum component.  In 2D:
///   f_1 = eps (1/2 (c_y^2)_x - 1/2 (c_x^2)_x - (c_x c_y)_y)
///   f_2 = eps (1/2 (c_x^2)_y - 1/2 (c_y^2)_y - (c_x c_y)_x)
/// and in 1D f = -eps/2 (c_x^2)_x.
inline std::vector<GridField> capillary_terms(const GridField& c, double eps) {
  const Grid& g = c.grid();
  if (g.dim() == 1) {
    const GridField dx = apply_d1(c, Axis::X);
    return {(-0.5 * eps) * apply_d1star(hadamard(dx, dx), Axis::X)};
  }
  const GridField d1x = apply_d1(c, Axis::X);
  const GridField d1y = apply_d1(c, Axis::Y);
  const GridField dsx = apply_dstar(c, Axis::X);
  const GridField dsy = apply_dstar(c, Axis::Y);

  const GridField cx2_x = apply_d1star(hadamard(d1x, d1x), Axis::X);
  const GridField cy2_x = apply_d(hadamard(dsy, dsy), Axis::X);
  const GridField cxcy_x =
      0.5 * apply_d1star(hadamard(d1x, apply_shift(dsy, Axis::X) + dsy), Axis::X);
  const GridField cy2_y = apply_d1star(hadamard(d1y, d1y), Axis::Y);
  const GridField cx2_y = apply_d(hadamard(dsx, dsx), Axis::Y);
  const GridField cycx_y =
      0.5 * apply_d1star(hadamard(d1y, apply_shift(dsx, Axis::Y) + dsx), Axis::Y);

  GridField f1(g), f2(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    f1[k] = eps * (0.5 * cy2_x[k] - 0.5 * cx2_x[k] - cycx_y[k]);
    f2[k] = eps * (0.5 * cx2_y[k] - 0.5 * cy2_y[k] - cxcy_x[k]);
  }
  return {std::move(f1), std::move(f2)};
}

// ---------------------------------------------------------------------------
// Viscous stress divergence for no-slip velocities.
//
//   g_1 = (2nu+lambda) E_x V_1 + nu E_y V_1 + (nu+lambda) D_x D_y V_2
//   g_2 = (nu+lambda) D_x D_y V_1 + nu E_x V_2 + (2nu+lambda) E_y V_2
//
// In 1D only (2nu+lambda) E V remains.
inline std::vector<GridField> viscous_block_apply(const std::vector<GridField>& v,
                                                  const PhysParams& p) {
  const Grid& g = v.at(0).grid();
  const double a = 2.0 * p.nu + p.lambda;
  if (g.dim() == 1) return {a * apply_e(v[0], Axis::X)};
  const double b = p.nu + p.lambda;
  GridField g1 = a * apply_e(v[0], Axis::X);
  g1.axpy(p.nu, apply_e(v[0], Axis::Y));
  g1.axpy(b, apply_d(apply_d(v[1], Axis::Y), Axis::X));
  GridField g2 = b * apply_d(apply_d(v[0], Axis::Y), Axis::X);
  g2.axpy(p.nu, apply_e(v[1], Axis::X));
  g2.axpy(a, apply_e(v[1], Axis::Y));
  return {std::move(g1), std::move(g2)};
}

// ---------------------------------------------------------------------------

/// -eps Lap(D(rho)^{-1} Lap C), the fourth-order part of the Cahn-Hilliard flux.
inline GridField fourth_order_term(const GridField& c, const GridField& rho, double eps) {
  GridField lc = apply_neumann_laplacian(c);
  for (std::size_t k = 0; k < lc.size(); ++k) lc[k] /= rho[k];
  return -eps * apply_neumann_laplacian(lc);
}

/// Discrete Lap(mu), mu = psi'(c) - (eps/rho) Lap c, with the phi_+ part acting
/// on `c` and the phi_- part frozen at `c_ref`:
///   M_+(c_ref) c + M_-(c_ref) c_ref - eps Lap(D(rho)^{-1} Lap c).
/// With c_ref == c this is the unsplit operator.
inline GridField chemical_potential_laplacian(const GridField& c, const GridField& rho,
                                              const GridField& c_ref, double eps) {
  require_positive(rho);
  GridField out = apply_split_tensor(assemble_split_tensor(c_ref, SplitSign::Plus), c);
  out += apply_split_tensor(assemble_split_tensor(c_ref, SplitSign::Minus), c_ref);
  out += fourth_order_term(c, rho, eps);
  return out;
}

}  // namespace chns
