#include <gtest/gtest.h>

#include <functional>
#include <numbers>

#include "test_util.hpp"

using namespace chns;
using namespace chns::testing;
using std::numbers::pi;

namespace {

using Fn = std::function<double(double, double, double)>;

// Sixth-order central differences in x (dir 0), y (dir 1) or t (dir 2).
constexpr double kStep = 1e-2;

double shifted(const Fn& f, int dir, double x, double y, double t, double d) {
  return dir == 0 ? f(x + d, y, t) : dir == 1 ? f(x, y + d, t) : f(x, y, t + d);
}

Fn d1(Fn f, int dir) {
  return [f, dir](double x, double y, double t) {
    const double h = kStep;
    auto F = [&](int k) { return shifted(f, dir, x, y, t, k * h); };
    return (-F(-3) + 9 * F(-2) - 45 * F(-1) + 45 * F(1) - 9 * F(2) + F(3)) / (60 * h);
  };
}

Fn d2(Fn f, int dir) {
  return [f, dir](double x, double y, double t) {
    const double h = kStep;
    auto F = [&](int k) { return shifted(f, dir, x, y, t, k * h); };
    return (2 * F(-3) - 27 * F(-2) + 270 * F(-1) - 490 * F(0) + 270 * F(1) - 27 * F(2) + 2 * F(3)) / (180 * h * h);
  };
}

Fn lap(Fn f) {
  return [fx = d2(f, 0), fy = d2(f, 1)](double x, double y, double t) { return fx(x, y, t) + fy(x, y, t); };
}

Fn prim(int k) {
  return [k](double x, double y, double t) { return ManufacturedSolution::primitive(x, y, t)[static_cast<std::size_t>(k)]; };
}

// Residual of the continuous 2D system at the manufactured solution, i.e. the
// source that has to be added to the right-hand sides.
std::array<double, 4> fd_source(double x, double y, double t, const PhysParams& p) {
  const Fn rho = prim(0), v1 = prim(1), v2 = prim(2), c = prim(3);
  auto mul = [](Fn a, Fn b) { return Fn([a, b](double x, double y, double t) { return a(x, y, t) * b(x, y, t); }); };
  const Fn m1 = mul(rho, v1), m2 = mul(rho, v2), q = mul(rho, c);
  const Fn pres = [rho, p](double x, double y, double t) { return std::pow(rho(x, y, t), p.gamma); };
  const Fn cx = d1(c, 0), cy = d1(c, 1);
  const Fn mu = [c, rho, lc = lap(c), p](double x, double y, double t) {
    const double cc = c(x, y, t);
    return cc * cc * cc - cc - p.eps / rho(x, y, t) * lc(x, y, t);
  };
  const double a = 2 * p.nu + p.lambda, b = p.nu + p.lambda;
  std::array<double, 4> s{};
  s[0] = d1(rho, 2)(x, y, t) + d1(m1, 0)(x, y, t) + d1(m2, 1)(x, y, t);
  s[1] = d1(m1, 2)(x, y, t) + d1(mul(m1, v1), 0)(x, y, t) + d1(pres, 0)(x, y, t) + d1(mul(m1, v2), 1)(x, y, t) -
         p.eps * (0.5 * d1(mul(cy, cy), 0)(x, y, t) - 0.5 * d1(mul(cx, cx), 0)(x, y, t) - d1(mul(cx, cy), 1)(x, y, t)) -
         (a * d2(v1, 0)(x, y, t) + p.nu * d2(v1, 1)(x, y, t) + b * d1(d1(v2, 1), 0)(x, y, t));
  s[2] = d1(m2, 2)(x, y, t) + d1(mul(m2, v1), 0)(x, y, t) + d1(mul(m2, v2), 1)(x, y, t) + d1(pres, 1)(x, y, t) -
         p.eps * (0.5 * d1(mul(cx, cx), 1)(x, y, t) - 0.5 * d1(mul(cy, cy), 1)(x, y, t) - d1(mul(cx, cy), 0)(x, y, t)) -
         (p.nu * d2(v2, 0)(x, y, t) + a * d2(v2, 1)(x, y, t) + b * d1(d1(v1, 1), 0)(x, y, t)) - rho(x, y, t) * p.G;
  s[3] = d1(q, 2)(x, y, t) + d1(mul(q, v1), 0)(x, y, t) + d1(mul(q, v2), 1)(x, y, t) - lap(mu)(x, y, t);
  return s;
}

}  // namespace

TEST(Rhs, EquilibriumIsZero) {
  for (int dim : {1, 2}) {
    const Grid g(dim, 8);
    const State u = conserved(GridField(g, 1.0), std::vector<GridField>(static_cast<std::size_t>(dim), GridField(g)),
                              GridField(g, 0.3));
    const State r = rhs_full(u, PhysParams{5.0 / 3.0, 0.1, 0.01, 1e-3, 0.0}, 0.0);
    EXPECT_LE(r.max_abs(), 1e-12);
  }
}

TEST(Rhs, GravityOnly) {
  const Grid g(2, 8);
  const State u = conserved(GridField(g, 1.0), {GridField(g), GridField(g)}, GridField(g, 0.3));
  const State r = rhs_full(u, PhysParams{5.0 / 3.0, 0.1, 0.01, 1e-3, -10.0}, 0.0);
  EXPECT_LE(max_abs(r.rho), 1e-12);
  EXPECT_LE(max_abs(r.m[0]), 1e-12);
  EXPECT_LE(max_abs(r.q), 1e-12);
  for (double v : r.m[1]) EXPECT_NEAR(v, -10.0, 1e-12);
}

TEST(ManufacturedForcing, MatchesFiniteDifferenceResidual) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const PhysParams& p : {PhysParams{5.0 / 3.0, 1.0, 0.1, 1e-4, -10.0}, PhysParams{1.4, 0.3, 0.05, 1e-2, 2.0}})
    for (int n = 0; n < 20; ++n) {
      const double x = u(gen), y = u(gen), t = 0.5 * u(gen);
      const auto closed = ManufacturedSolution::source(x, y, t, p);
      const auto fd = fd_source(x, y, t, p);
      for (std::size_t k = 0; k < 4; ++k)
        EXPECT_NEAR(closed[k], fd[k], 1e-6 * std::max(1.0, std::abs(fd[k]))) << "component " << k << " at " << x << "," << y << "," << t;
    }
}

TEST(ManufacturedForcing, SemidiscreteResidualSecondOrder) {
  // L(U) + S - dU/dt at the sampled exact solution.
  const PhysParams p{5.0 / 3.0, 1.0, 0.1, 1e-4, -10.0};
  const Forcing f = manufactured_forcing(p);
  std::vector<double> hs, errs;
  for (int M : {16, 32, 64}) {
    const Grid g(2, M);
    const double t = 0.0, dt = 1e-5;
    const State r = rhs_full(ManufacturedSolution::sample(g, t), p, t, &f);
    State dudt = ManufacturedSolution::sample(g, t + dt);
    axpy(dudt, -1.0, ManufacturedSolution::sample(g, t - dt));
    double err = 0.0;
    for (int k = 0; k < r.components(); ++k) {
      GridField d = r.component(k);
      d.axpy(-0.5 / dt, dudt.component(k));
      err += volume_integral(GridField(g, [&] {
        std::vector<double> a(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) a[i] = std::abs(d[i]);
        return a;
      }()));
    }
    hs.push_back(g.h());
    errs.push_back(err);
  }
  EXPECT_GE(convergence_slope(hs, errs), 1.5);
}

TEST(RhsSplit, ConsistentWithFull) {
  const PhysParams p{5.0 / 3.0, 0.2, 0.03, 1e-3, -10.0};
  for (int dim : {1, 2}) {
    const State u = random_state(Grid(dim, 16));
    const State a = rhs_split(u, u, p, 0.0), b = rhs_full(u, p, 0.0);
    EXPECT_LE(max_diff(a, b), 1e-13 * b.max_abs());
  }
}

TEST(RhsSplit, ConvectionFromTilde) {
  const Grid g(2, 12);
  const PhysParams p{5.0 / 3.0, 0.2, 0.03, 1e-3, -10.0};
  const State tilde = conserved(random_field(g, 0.8, 1.2), {GridField(g), GridField(g)}, random_field(g));
  const RhsParts parts = rhs_parts(tilde, random_state(g), p);
  EXPECT_EQ(max_diff(parts.convective, convective_rhs(tilde, p.gamma)), 0.0);
}

TEST(RhsSplit, CahnHilliardAffineInC) {
  const Grid g(2, 10);
  const PhysParams p{5.0 / 3.0, 0.2, 0.03, 1e-3, 0.0};
  const State tilde = random_state(g);
  const GridField rho = random_field(g, 0.8, 1.3);
  const std::vector<GridField> v = {random_field(g), random_field(g)};
  auto part = [&](const GridField& c) { return rhs_parts(tilde, conserved(rho, v, c), p).cahn_hilliard; };
  const GridField c1 = random_field(g), c2 = random_field(g);
  const double a = 0.37, b = -1.9;
  const GridField p0 = part(GridField(g));
  GridField expect = p0;
  expect.axpy(a, part(c1) - p0).axpy(b, part(c2) - p0);
  const GridField got = part(a * c1 + b * c2);
  EXPECT_LE(max_diff(got, expect), 1e-10 * max_abs(expect));
}

TEST(Rhs1D, Equilibrium) {
  const Grid g(1, 16);
  const State u = conserved(GridField(g, 1.2), {GridField(g)}, GridField(g, -0.4));
  EXPECT_LE(rhs_1d(u, PhysParams{5.0 / 3.0, 1.0, 0.0, 1e-4, 0.0}, 0.0).max_abs(), 1e-11);
  EXPECT_THROW(rhs_1d(random_state(Grid(2, 4)), PhysParams{}, 0.0), std::invalid_argument);
}

TEST(Rhs1D, CahnHilliardAnalytic) {
  const double eps = 1e-3;
  std::vector<double> hs, errs;
  for (int M : {32, 64, 128, 256}) {
    const Grid g(1, M);
    const GridField c = GridField::sample(g, [](double x, double) { return std::cos(pi * x); });
    const State u = conserved(GridField(g, 1.0), {GridField(g)}, c);
    const State r = rhs_1d(u, PhysParams{5.0 / 3.0, 1.0, 0.0, eps, 0.0}, 0.0);
    // (c^3 - c - eps c'')'' with c = cos(pi x)
    double err = 0.0;
    for (int i = 2; i < M - 2; ++i) {
      const double x = g.x(i), C = std::cos(pi * x), S = std::sin(pi * x);
      const double c3xx = 3 * (2 * C * S * S * pi * pi - C * C * C * pi * pi);
      const double expect = c3xx + pi * pi * C - eps * pi * pi * pi * pi * C;
      err = std::max(err, std::abs(r.q[static_cast<std::size_t>(i)] - expect));
    }
    hs.push_back(g.h());
    errs.push_back(err);
  }
  EXPECT_GE(convergence_slope(hs, errs), 1.9);
}

TEST(Rhs1D, StabilityDataRegression) {
  const State u = stability_state(Grid(1, 100));
  const PhysParams p{5.0 / 3.0, 1.0, 0.0, 1e-4, -10.0};
  const State r = rhs_1d(u, p, 0.0);
  ASSERT_TRUE(r.all_finite());
  EXPECT_EQ(max_diff(r, rhs_1d(u, p, 0.0)), 0.0);
  // Reference values of this build.
  EXPECT_NEAR(r.rho[10], -3.8253787325114308, 1e-10);
  EXPECT_NEAR(r.m[0][0], -14.00590333321372, 1e-10);
  EXPECT_NEAR(r.q[50], 0.34474849951540648, 1e-10);
}

TEST(Rhs, DiscreteConservation) {
  const PhysParams p{5.0 / 3.0, 0.2, 0.03, 1e-3, -10.0};
  for (int dim : {1, 2}) {
    const State u = random_state(Grid(dim, 32));
    const State r = rhs_full(u, p, 0.0);
    double scale_rho = 0.0, scale_q = 0.0;
    for (std::size_t k = 0; k < r.rho.size(); ++k) {
      scale_rho += std::abs(r.rho[k]);
      scale_q += std::abs(r.q[k]);
    }
    EXPECT_LE(std::abs(integral(r.rho)), 1e-12 * scale_rho);
    EXPECT_LE(std::abs(integral(r.q)), 1e-12 * scale_q);
  }
}

TEST(Energy, DoubleWellMinimum) {
  EXPECT_NEAR(discrete_energy(GridField(Grid(2, 8), 1.0), 1e-3), 0.0, 1e-15);
  EXPECT_NEAR(discrete_energy(GridField(Grid(2, 8), 0.0), 1e-3), 0.25, 1e-15);
}
