#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>

#include "chns/core/errors.hpp"
#include "chns/core/fields.hpp"
#include "chns/driver/config.hpp"
#include "chns/semidisc/manufactured.hpp"

namespace chns {

namespace detail {

template <class Prim>
State sample_primitive(const Grid& g, Prim&& prim) {
  State s(g);
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) {
      const auto p = prim(g.x(i), g.y(j));  // rho, v..., c
      const std::size_t k = g.index(i, j);
      s.rho[k] = p[0];
      for (std::size_t m = 0; m < s.m.size(); ++m) s.m[m][k] = p[0] * p[1 + m];
      s.q[k] = p[0] * p[s.m.size() + 1];
    }
  return s;
}

}  // namespace detail

/// Shared density and velocity of Tests 1 and 2, with c = c_mean + 0.1 cos(pi x) cos(pi y).
inline State two_d_test_state(const Grid& g, double c_mean) {
  constexpr double pi = std::numbers::pi;
  return detail::sample_primitive(g, [&](double x, double y) {
    return std::array<double, 4>{0.1 * std::cos(2 * pi * x) * std::cos(pi * y) + 1.25,
                                 std::sin(pi * x) * std::sin(pi * y),
                                 std::sin(pi * x) * std::sin(2 * pi * y),
                                 c_mean + 0.1 * std::cos(pi * x) * std::cos(pi * y)};
  });
}

inline State test1_state(const Grid& g) { return two_d_test_state(g, 0.0); }
inline State test2_state(const Grid& g) { return two_d_test_state(g, 0.75); }

/// Uniform on [0, 1) from the top 53 bits, identical on every platform.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// rho = 1, v = 0, c uniform with zero mean and standard deviation `amplitude`.
inline State test3_state(const Grid& g, std::uint64_t seed, double amplitude = 1e-10) {
  std::mt19937_64 rng(seed);
  const double half = amplitude * std::sqrt(3.0);
  GridField c(g);
  for (double& ck : c) ck = half * (2.0 * uniform01(rng) - 1.0);
  const double mean = integral(c) / static_cast<double>(c.size());
  for (double& ck : c) ck -= mean;
  return conserved(GridField(g, 1.0), std::vector<GridField>(static_cast<std::size_t>(g.dim()), GridField(g)), c);
}

/// 1D data of the stability study.
inline State stability_state(const Grid& g) {
  constexpr double pi = std::numbers::pi;
  return detail::sample_primitive(g, [&](double x, double) {
    return std::array<double, 3>{0.1 * std::cos(2 * pi * x) + 1.25, std::sin(pi * x),
                                 0.1 * std::cos(pi * x)};
  });
}

inline State manufactured_state(const Grid& g, double t) {
  if (g.dim() != 2) throw std::invalid_argument("the manufactured solution is two-dimensional");
  return detail::sample_primitive(
      g, [&](double x, double y) { return ManufacturedSolution::primitive(x, y, t); });
}

/// rho = 1, v = 0, c = c0 + amplitude cos(k1 pi x) cos(k2 pi y).
inline State mode_state(const Grid& g, double c0, int k1, int k2, double amplitude) {
  constexpr double pi = std::numbers::pi;
  const GridField c = GridField::sample(g, [&](double x, double y) {
    const double cy = g.dim() == 2 ? std::cos(k2 * pi * y) : 1.0;
    return c0 + amplitude * std::cos(k1 * pi * x) * cy;
  });
  return conserved(GridField(g, 1.0), std::vector<GridField>(static_cast<std::size_t>(g.dim()), GridField(g)), c);
}

inline State initial_state(const RunConfig& cfg) {
  const Grid g(cfg.dim, cfg.M);
  if (cfg.test == "test1") return test1_state(g);
  if (cfg.test == "test2") return test2_state(g);
  if (cfg.test == "test3") return test3_state(g, cfg.seed, cfg.noise_amplitude);
  if (cfg.test == "order") return manufactured_state(g, 0.0);
  if (cfg.test == "stability") return stability_state(g);
  if (cfg.test == "mode") return mode_state(g, cfg.c0, cfg.mode_k1, cfg.mode_k2, cfg.mode_amplitude);
  throw ConfigError("unknown test '" + cfg.test + "'");
}

}  // namespace chns
