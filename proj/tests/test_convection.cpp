#include <gtest/gtest.h>

#include <numbers>

#include "test_util.hpp"

using namespace chns;
using namespace chns::testing;
using std::numbers::pi;

TEST(CharSpeed, UnitDensityAtRest) {
  const Grid g(2, 8);
  State s(g);
  s.rho = GridField(g, 1.0);
  EXPECT_NEAR(char_speed(s, 5.0 / 3.0), 1.29099444873580562, 1e-14);
  s.m[0] = GridField(g, 2.0);
  EXPECT_NEAR(char_speed(s, 5.0 / 3.0), 2.0 + std::sqrt(5.0 / 3.0), 1e-14);
}

TEST(CharSpeed, BruteForce) {
  const State s = random_state(Grid(2, 10), 0.5, 2.0, 1.0);
  const double gamma = 1.4;
  double cs = 0.0;
  for (std::size_t k = 0; k < s.rho.size(); ++k)
    for (const auto& mk : s.m)
      cs = std::max(cs, std::abs(mk[k] / s.rho[k]) + std::sqrt(gamma * std::pow(s.rho[k], gamma - 1)));
  EXPECT_DOUBLE_EQ(char_speed(s, gamma), cs);
}

TEST(CharSpeed, NonPositiveDensity) {
  State s = random_state(Grid(1, 8));
  s.rho[2] = -0.1;
  EXPECT_THROW(char_speed(s, 1.4), NonPositiveDensity);
}

TEST(GlfSplit, Cases) {
  const std::vector<double> f = {1.0, -2.0, 3.5}, u = {0.3, 0.7, -1.1};
  const SplitFluxes zero_alpha = glf_split(f, u, 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_EQ(zero_alpha.plus[i], f[i] / 2);
    EXPECT_EQ(zero_alpha.minus[i], f[i] / 2);
  }
  const std::vector<double> z(3, 0.0);
  const SplitFluxes zz = glf_split(z, z, 2.0);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(zz.plus[i] + std::abs(zz.minus[i]), 0.0);
}

TEST(GlfSplit, SumRecoversFlux) {
  const GridField f = random_field(Grid(1, 200), -5, 5), u = random_field(Grid(1, 200), -5, 5);
  const SplitFluxes s = glf_split(f.span(), u.span(), 3.7);
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_NEAR(s.plus[i] + s.minus[i], f[i], 1e-15 * 8);
}

TEST(Weno5, Constants) {
  for (double c : {0.0, 1.0, -3.25, 1e6}) EXPECT_DOUBLE_EQ(weno5_reconstruct(c, c, c, c, c), c);
}

TEST(Weno5, LinearData) {
  EXPECT_NEAR(weno5_reconstruct(1, 2, 3, 4, 5), 3.5, 1e-14);
  // Ideal-weight reconstruction of the same data.
  const double q0 = (2 * 1 - 7 * 2 + 11 * 3) / 6.0, q1 = (-2 + 5 * 3 + 2 * 4) / 6.0, q2 = (2 * 3 + 5 * 4 - 5) / 6.0;
  EXPECT_NEAR(0.1 * q0 + 0.6 * q1 + 0.3 * q2, 3.5, 1e-14);
}

TEST(Weno5, WeightsNonNegativeSumToOne) {
  for (int trial = 0; trial < 200; ++trial) {
    const GridField v = random_field(Grid(1, 5), -2, 2);
    const auto w = weno5_weights(v[0], v[1], v[2], v[3], v[4]);
    for (double wk : w) EXPECT_GE(wk, 0.0);
    EXPECT_NEAR(w[0] + w[1] + w[2], 1.0, 1e-14);
  }
}

TEST(Weno5, IdealWeightsOnSmoothData) {
  std::vector<double> hs, dev;
  for (int n : {10, 20, 40, 80}) {
    const double h = 1.0 / n;
    double v[5];
    for (int k = 0; k < 5; ++k) v[k] = std::exp(0.3 + (k - 2) * h);
    const auto w = weno5_weights(v[0], v[1], v[2], v[3], v[4]);
    hs.push_back(h);
    dev.push_back(std::max({std::abs(w[0] - 0.1), std::abs(w[1] - 0.6), std::abs(w[2] - 0.3)}));
  }
  EXPECT_GE(convergence_slope(hs, dev), 1.9);
}

TEST(Weno5, FifthOrderInterfaceValues) {
  // Cell averages of exp(x) reconstruct the point value at the right face.
  std::vector<double> hs, errs;
  for (int n : {10, 20, 40, 80}) {
    const double h = 1.0 / n;
    double err = 0.0;
    for (int i = 2; i < n - 2; ++i) {
      double v[5];
      for (int k = 0; k < 5; ++k) {
        const double a = (i + k - 2) * h;
        v[k] = (std::exp(a + h) - std::exp(a)) / h;
      }
      err = std::max(err, std::abs(weno5_reconstruct(v[0], v[1], v[2], v[3], v[4]) - std::exp((i + 1) * h)));
    }
    hs.push_back(h);
    errs.push_back(err);
  }
  EXPECT_GE(convergence_slope(hs, errs), 4.8);
}

TEST(Convection, UniformStateGivesZero) {
  const Grid g(2, 16);
  const State s = conserved(GridField(g, 1.25), {GridField(g), GridField(g)}, GridField(g, 0.75));
  const State r = convective_rhs(s, 5.0 / 3.0);
  for (int k = 0; k < r.components(); ++k) EXPECT_LE(max_abs(r.component(k)), 1e-12);
}

TEST(Convection, PeriodicFifthOrder1D) {
  const double gamma = 5.0 / 3.0;
  auto rho = [](double x) { return 1.0 + 0.2 * std::sin(2 * pi * x); };
  auto drho = [](double x) { return 0.4 * pi * std::cos(2 * pi * x); };
  auto v = [](double x) { return 0.3 + 0.1 * std::cos(2 * pi * x); };
  auto dv = [](double x) { return -0.2 * pi * std::sin(2 * pi * x); };
  auto c = [](double x) { return 0.5 * std::sin(2 * pi * x); };
  auto dc = [](double x) { return pi * std::cos(2 * pi * x); };

  std::vector<double> hs, errs;
  for (int M : {20, 40, 80, 160}) {
    const Grid g(1, M);
    const State s = conserved(GridField::sample(g, [&](double x, double) { return rho(x); }),
                              {GridField::sample(g, [&](double x, double) { return v(x); })},
                              GridField::sample(g, [&](double x, double) { return c(x); }));
    const State r = convective_rhs(s, gamma, Boundary::Periodic);
    double err = 0.0;
    for (int i = 0; i < M; ++i) {
      const double x = g.x(i);
      const double e0 = -(drho(x) * v(x) + rho(x) * dv(x));
      const double e1 = -(drho(x) * v(x) * v(x) + 2 * rho(x) * v(x) * dv(x) +
                          gamma * std::pow(rho(x), gamma - 1) * drho(x));
      const double e2 = -(drho(x) * c(x) * v(x) + rho(x) * dc(x) * v(x) + rho(x) * c(x) * dv(x));
      const auto k = static_cast<std::size_t>(i);
      err = std::max({err, std::abs(r.rho[k] - e0), std::abs(r.m[0][k] - e1), std::abs(r.q[k] - e2)});
    }
    hs.push_back(g.h());
    errs.push_back(err);
  }
  EXPECT_GE(convergence_slope(hs, errs), 4.5);
}

TEST(Convection, MirrorSymmetry) {
  const Grid g(2, 12);
  const State s = random_state(g);
  State m(g);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) {
      const std::size_t k = g.index(i, j), km = g.index(11 - i, j);
      m.rho[k] = s.rho[km];
      m.m[0][k] = -s.m[0][km];
      m.m[1][k] = s.m[1][km];
      m.q[k] = s.q[km];
    }
  const State r = convective_rhs(s, 5.0 / 3.0), rm = convective_rhs(m, 5.0 / 3.0);
  const double scale = r.max_abs();
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) {
      const std::size_t k = g.index(i, j), km = g.index(11 - i, j);
      EXPECT_NEAR(rm.rho[k], r.rho[km], 1e-12 * scale);
      EXPECT_NEAR(rm.m[0][k], -r.m[0][km], 1e-12 * scale);
      EXPECT_NEAR(rm.m[1][k], r.m[1][km], 1e-12 * scale);
      EXPECT_NEAR(rm.q[k], r.q[km], 1e-12 * scale);
    }
}

TEST(Convection, WallsConserveMassAndConcentration) {
  for (int dim : {1, 2}) {
    const State s = random_state(Grid(dim, 32));
    const State r = convective_rhs(s, 5.0 / 3.0);
    double abs_rho = 0.0, abs_q = 0.0;
    for (std::size_t k = 0; k < r.rho.size(); ++k) {
      abs_rho += std::abs(r.rho[k]);
      abs_q += std::abs(r.q[k]);
    }
    EXPECT_LE(std::abs(integral(r.rho)), 1e-12 * abs_rho);
    EXPECT_LE(std::abs(integral(r.q)), 1e-12 * abs_q);
  }
}
