#pragma once

// Convective right-hand side C(U): fifth-order WENO reconstruction of global
// Lax-Friedrichs split fluxes, dimension by dimension, componentwise.
//
// Walls are handled with three reflected ghost cells per side: rho, q and the
// tangential momentum are extended evenly, the normal momentum oddly.  With
// that extension the numerical mass and concentration fluxes through a wall
// are exactly zero, so the plain sums of the rho and q rates vanish up to
// rounding.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "chns/core/fields.hpp"
#include "chns/fd/operators.hpp"

namespace chns {

enum class Boundary { Wall, Periodic };

inline constexpr double kWenoEpsilon = 1e-6;

/// Largest characteristic speed, max over nodes and components of
/// |v_k| + sqrt(gamma rho^(gamma-1)).
inline double char_speed(const State& s, double gamma) {
  require_positive(s.rho);
  double cs = 0.0;
  for (std::size_t k = 0; k < s.rho.size(); ++k) {
    const double sound = std::sqrt(gamma * std::pow(s.rho[k], gamma - 1.0));
    for (const auto& mk : s.m) cs = std::max(cs, std::abs(mk[k] / s.rho[k]) + sound);
  }
  return cs;
}

struct SplitFluxes {
  std::vector<double> plus;
  std::vector<double> minus;
};

/// f^+- = (f +- alpha u) / 2.
inline SplitFluxes glf_split(std::span<const double> flux, std::span<const double> u,
                             double alpha) {
  SplitFluxes s{std::vector<double>(flux.size()), std::vector<double>(flux.size())};
  for (std::size_t i = 0; i < flux.size(); ++i) {
    s.plus[i] = 0.5 * (flux[i] + alpha * u[i]);
    s.minus[i] = 0.5 * (flux[i] - alpha * u[i]);
  }
  return s;
}

/// Nonlinear Jiang-Shu weights for the stencil (v_{i-2}, ..., v_{i+2}).
inline std::array<double, 3> weno5_weights(double a, double b, double c, double d, double e) {
  const double b0 = 13.0 / 12.0 * (a - 2 * b + c) * (a - 2 * b + c) +
                    0.25 * (a - 4 * b + 3 * c) * (a - 4 * b + 3 * c);
  const double b1 = 13.0 / 12.0 * (b - 2 * c + d) * (b - 2 * c + d) + 0.25 * (b - d) * (b - d);
  const double b2 = 13.0 / 12.0 * (c - 2 * d + e) * (c - 2 * d + e) +
                    0.25 * (3 * c - 4 * d + e) * (3 * c - 4 * d + e);
  const double a0 = 0.1 / ((kWenoEpsilon + b0) * (kWenoEpsilon + b0));
  const double a1 = 0.6 / ((kWenoEpsilon + b1) * (kWenoEpsilon + b1));
  const double a2 = 0.3 / ((kWenoEpsilon + b2) * (kWenoEpsilon + b2));
  const double sum = a0 + a1 + a2;
  return {a0 / sum, a1 / sum, a2 / sum};
}

/// Left-biased value at x_{i+1/2} from (v_{i-2}, ..., v_{i+2}).  The
/// right-biased reconstruction at the same interface is obtained by passing
/// (v_{i+3}, ..., v_{i-1}).
inline double weno5_reconstruct(double a, double b, double c, double d, double e) {
  const auto w = weno5_weights(a, b, c, d, e);
  const double q0 = (2 * a - 7 * b + 11 * c) / 6.0;
  const double q1 = (-b + 5 * c + 2 * d) / 6.0;
  const double q2 = (2 * c + 5 * d - e) / 6.0;
  return w[0] * q0 + w[1] * q1 + w[2] * q2;
}

namespace detail {

inline constexpr int kGhost = 3;

/// Physical flux of component `comp` along the axis whose momentum index is
/// `normal` (0-based among the momenta).
inline double physical_flux(int comp, int n_mom, int normal, double rho, const double* m,
                            double q, double gamma) {
  const double vn = m[normal] / rho;
  if (comp == 0) return m[normal];
  if (comp <= n_mom) {
    const int mk = comp - 1;
    double f = m[mk] * vn;
    if (mk == normal) f += std::pow(rho, gamma);
    return f;
  }
  return q * vn;
}

}  // namespace detail

/// -div of the numerical convective flux, one rate field per conserved
/// component.
inline State convective_rhs(const State& s, double gamma, Boundary bc = Boundary::Wall) {
  const Grid& g = s.grid();
  const double alpha = char_speed(s, gamma);
  const int n_mom = static_cast<int>(s.m.size());
  const int ncomp = s.components();
  const double inv_h = 1.0 / g.h();
  State out(g);

  const int n_axes = g.dim();
  for (int ax = 0; ax < n_axes; ++ax) {
    const Axis axis = ax == 0 ? Axis::X : Axis::Y;
    const int normal = ax;
    detail::for_each_line(g, axis, [&](std::size_t base, std::size_t stride, int n) {
      const int ne = n + 2 * detail::kGhost;
      // Extended conserved values, ghosts included.
      std::vector<double> u(static_cast<std::size_t>(ncomp * ne));
      auto U = [&](int comp, int i) -> double& {
        return u[static_cast<std::size_t>(comp * ne + i + detail::kGhost)];
      };
      for (int i = 0; i < n; ++i) {
        const std::size_t k = base + static_cast<std::size_t>(i) * stride;
        for (int comp = 0; comp < ncomp; ++comp) U(comp, i) = s.component(comp)[k];
      }
      for (int gidx = 0; gidx < detail::kGhost; ++gidx) {
        for (int comp = 0; comp < ncomp; ++comp) {
          if (bc == Boundary::Periodic) {
            U(comp, -1 - gidx) = U(comp, n - 1 - gidx);
            U(comp, n + gidx) = U(comp, gidx);
          } else {
            const double sign = comp == normal + 1 ? -1.0 : 1.0;
            U(comp, -1 - gidx) = sign * U(comp, gidx);
            U(comp, n + gidx) = sign * U(comp, n - 1 - gidx);
          }
        }
      }

      std::vector<double> fp(static_cast<std::size_t>(ncomp * ne));
      std::vector<double> fm(fp.size());
      std::array<double, 2> mom{};
      for (int i = -detail::kGhost; i < n + detail::kGhost; ++i) {
        const double rho = U(0, i);
        for (int k = 0; k < n_mom; ++k) mom[static_cast<std::size_t>(k)] = U(1 + k, i);
        const double q = U(ncomp - 1, i);
        for (int comp = 0; comp < ncomp; ++comp) {
          const double f = detail::physical_flux(comp, n_mom, normal, rho, mom.data(), q, gamma);
          const std::size_t idx = static_cast<std::size_t>(comp * ne + i + detail::kGhost);
          fp[idx] = 0.5 * (f + alpha * u[idx]);
          fm[idx] = 0.5 * (f - alpha * u[idx]);
        }
      }

      // Interface fluxes F_{i+1/2} for i = -1 .. n-1.
      std::vector<double> flux(static_cast<std::size_t>(n + 1));
      for (int comp = 0; comp < ncomp; ++comp) {
        const double* P = fp.data() + comp * ne + detail::kGhost;
        const double* Mm = fm.data() + comp * ne + detail::kGhost;
        for (int i = -1; i < n; ++i) {
          const double left = weno5_reconstruct(P[i - 2], P[i - 1], P[i], P[i + 1], P[i + 2]);
          const double right = weno5_reconstruct(Mm[i + 3], Mm[i + 2], Mm[i + 1], Mm[i], Mm[i - 1]);
          flux[static_cast<std::size_t>(i + 1)] = left + right;
        }
        GridField& r = out.component(comp);
        for (int i = 0; i < n; ++i) {
          const std::size_t k = base + static_cast<std::size_t>(i) * stride;
          r[k] -= (flux[static_cast<std::size_t>(i + 1)] - flux[static_cast<std::size_t>(i)]) * inv_h;
        }
      }
    });
  }
  return out;
}

}  // namespace chns
