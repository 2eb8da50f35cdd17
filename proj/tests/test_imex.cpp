#include <gtest/gtest.h>

#include <cmath>

#include "test_util.hpp"

using namespace chns;
using namespace chns::testing;

namespace {

struct Scalar {
  double y = 0.0;
};
void axpy(Scalar& a, double s, const Scalar& b) { a.y += s * b.y; }

// y' = le y (explicit) + li y (implicit)
struct LinearScalar {
  double le, li;
  Scalar solve_stage(const Scalar& tilde, const Scalar& base, double tau, const StageTimes&) const {
    return {(base.y + tau * le * tilde.y) / (1.0 - tau * li)};
  }
  Scalar stage_rhs(const Scalar& tilde, const Scalar& u, const StageTimes&) const { return {le * tilde.y + li * u.y}; }
};

double stability_function(const ButcherPair& tab, double z) {
  const int s = tab.stages;
  Eigen::MatrixXd A(s, s);
  Eigen::VectorXd b(s);
  for (int i = 0; i < s; ++i) {
    b(i) = tab.b[static_cast<std::size_t>(i)];
    for (int j = 0; j < s; ++j) A(i, j) = tab.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(s, s);
  return 1.0 + z * b.dot((I - z * A).lu().solve(Eigen::VectorXd::Ones(s)));
}

Eigen::MatrixXd neumann_laplacian_dense(const Grid& g) {
  const int M = g.M();
  const double ih2 = 1.0 / (g.h() * g.h());
  const Eigen::MatrixXd L1 = tridiag(M, [&](int i, int n) {
    return std::array<double, 3>{ih2, (i == 0 || i == n - 1 ? -1.0 : -2.0) * ih2, ih2};
  });
  if (g.dim() == 1) return L1;
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(M, M);
  return kron(L1, I) + kron(I, L1);
}

SolverOptions direct() {
  SolverOptions o;
  o.concentration = SolverKind::Direct;
  o.velocity = SolverKind::Direct;
  return o;
}

}  // namespace

TEST(Tableau, Values) {
  const double s = 1.0 / std::sqrt(2.0);
  const ButcherPair d = tableau("dirksa");
  EXPECT_EQ(d.stages, 2);
  EXPECT_DOUBLE_EQ(d.at[1][0], 1.0 + s);
  EXPECT_DOUBLE_EQ(d.a[0][0], 1.0 - s);
  EXPECT_DOUBLE_EQ(d.a[1][0], s);
  EXPECT_DOUBLE_EQ(d.a[1][1], 1.0 - s);
  EXPECT_TRUE(d.stiffly_accurate());
  EXPECT_TRUE(tableau("ee-ie").stiffly_accurate());
  EXPECT_FALSE(tableau("explicit-euler").stiffly_accurate());
  EXPECT_THROW(tableau("rk4"), UnknownScheme);
}

TEST(Tableau, RowSumsAndWeights) {
  for (const char* name : {"ee-ie", "dirksa", "explicit-euler"}) {
    const ButcherPair t = tableau(name);
    double sb = 0.0;
    for (double b : t.b) sb += b;
    EXPECT_NEAR(sb, 1.0, 1e-15) << name;
    for (int i = 0; i < t.stages; ++i) {
      const auto si = static_cast<std::size_t>(i);
      double sa = 0.0, sat = 0.0;
      for (int j = 0; j < t.stages; ++j) {
        sa += t.a[si][static_cast<std::size_t>(j)];
        sat += t.at[si][static_cast<std::size_t>(j)];
        if (j >= i) {
          EXPECT_EQ(t.at[si][static_cast<std::size_t>(j)], 0.0);
        }
      }
      EXPECT_NEAR(sa, t.c[si], 1e-15) << name;
      EXPECT_NEAR(sat, t.ct[si], 1e-15) << name;
    }
  }
}

TEST(Imex, ZeroOperatorIsIdentity) {
  LinearScalar p{0.0, 0.0};
  for (const char* name : {"ee-ie", "dirksa"})
    EXPECT_EQ(imex_step(p, Scalar{1.75}, 0.0, 0.3, tableau(name)).next.y, 1.75);
}

TEST(Imex, DirksaStabilityFunction) {
  const double s = 1.0 / std::sqrt(2.0);
  const ButcherPair tab = tableau("dirksa");
  for (double z : {-1.0, -0.1, -10.0, -1e4}) {
    LinearScalar p{0.0, z};
    const double R = imex_step(p, Scalar{1.0}, 0.0, 1.0, tab).next.y;
    EXPECT_NEAR(R, stability_function(tab, z), 1e-14);
    EXPECT_NEAR(R, (1.0 + (2 * s - 1) * z) / std::pow(1.0 - (1.0 - s) * z, 2), 1e-14);
  }
  // L-stable
  LinearScalar stiff{0.0, -1e12};
  EXPECT_LT(std::abs(imex_step(stiff, Scalar{1.0}, 0.0, 1.0, tab).next.y), 1e-5);
}

TEST(Imex, PartitionedOrder) {
  const double le = -0.7, li = -2.3;
  for (auto [name, order] : {std::pair{"ee-ie", 1.0}, std::pair{"dirksa", 2.0}}) {
    std::vector<double> hs, errs;
    for (int n : {20, 40, 80, 160}) {
      LinearScalar p{le, li};
      Scalar y{1.0};
      const double dt = 1.0 / n;
      for (int k = 0; k < n; ++k) y = imex_step(p, y, k * dt, dt, tableau(name)).next;
      hs.push_back(dt);
      errs.push_back(std::abs(y.y - std::exp(le + li)));
    }
    EXPECT_NEAR(convergence_slope(hs, errs), order, 0.1) << name;
  }
}

TEST(Imex, EeIePureCahnHilliardHandAssembly) {
  const Grid g(2, 8);
  const double eps = 1e-2, dt = 1e-4;
  const GridField c0 = random_field(g, -0.8, 0.8);
  const State un = conserved(GridField(g, 1.0), {GridField(g), GridField(g)}, c0);
  ChnsProblem prob(PhysParams{5.0 / 3.0, 0.1, 0.01, eps, 0.0}, direct());
  const State next = imex_step(prob, un, 0.0, dt, tableau("ee-ie")).next;

  // (I - 2 dt L + dt eps L^2) C = c0 + dt (conv_q + M_-(c0) c0)
  const Eigen::MatrixXd L = neumann_laplacian_dense(g);
  const auto n = static_cast<Eigen::Index>(g.size());
  const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n) - 2 * dt * L + dt * eps * L * L;
  GridField rhs = c0;
  rhs.axpy(dt, convective_rhs(un, 5.0 / 3.0).q);
  rhs.axpy(dt, apply_split_tensor(assemble_split_tensor(c0, SplitSign::Minus), c0));
  const GridField expect = from_eigen(g, A.lu().solve(to_eigen(rhs)));
  EXPECT_LE(max_diff(next.q, expect), 1e-12);
  EXPECT_LE(max_diff(next.rho, GridField(g, 1.0)), 1e-14);
}

TEST(StageSolve, TauZeroReturnsBase) {
  const Grid g(2, 8);
  ChnsProblem prob(PhysParams{5.0 / 3.0, 0.1, 0.01, 1e-3, -10.0});
  const State base = random_state(g), tilde = random_state(g);
  const State u = prob.solve_stage(tilde, base, 0.0, StageTimes{});
  EXPECT_LE(max_diff(u, base), 1e-15);
}

TEST(StageSystems, InviscidVelocityMatrixIsDiagonal) {
  const Grid g(2, 6);
  const GridField rho = random_field(g, 0.5, 2.0);
  const Eigen::MatrixXd A = to_eigen(velocity_matrix(rho, 0.3, PhysParams{5.0 / 3.0, 0.0, 0.0, 1e-3, 0.0}));
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(A.rows(), A.cols());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(2 * k);
    D(i, i) = D(i + 1, i + 1) = rho[k];
  }
  EXPECT_LE((A - D).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(StageSystems, ConcentrationMatrixDenseSpd) {
  for (int dim : {1, 2})
    for (int M : {4, 6, 8}) {
      const Grid g(dim, M);
      const GridField rho = random_field(g, 0.5, 2.0);
      const Eigen::MatrixXd A = to_eigen(concentration_matrix(rho, random_field(g), 0.01, 1e-2));
      EXPECT_LE((A - A.transpose()).cwiseAbs().maxCoeff(), 1e-12 * A.cwiseAbs().maxCoeff());
      EXPECT_EQ(Eigen::LLT<Eigen::MatrixXd>(A).info(), Eigen::Success);
      EXPECT_GT(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(A).eigenvalues().minCoeff(), 0.0);
    }
}

TEST(StageSystems, ConcentrationMatrixUnitDensity) {
  const Grid g(2, 6);
  const double tau = 0.02, eps = 3e-3;
  const Eigen::MatrixXd L = neumann_laplacian_dense(g);
  const auto n = static_cast<Eigen::Index>(g.size());
  const Eigen::MatrixXd expect = Eigen::MatrixXd::Identity(n, n) - 2 * tau * L + tau * eps * L * L;
  const Eigen::MatrixXd A = to_eigen(concentration_matrix(GridField(g, 1.0), random_field(g), tau, eps));
  EXPECT_LE((A - expect).cwiseAbs().maxCoeff(), 1e-12 * expect.cwiseAbs().maxCoeff());
}

TEST(StageSystems, VelocityMatrixKroneckerM4) {
  const Grid g(2, 4);
  const PhysParams p{5.0 / 3.0, 0.3, 0.07, 1e-3, 0.0};
  const double tau = 0.05;
  const GridField rho = random_field(g, 0.5, 2.0);
  const Eigen::MatrixXd A = to_eigen(velocity_matrix(rho, tau, p));
  const Eigen::MatrixXd L4 = to_eigen(viscous_matrix(g, p));
  Eigen::MatrixXd expect = -tau * L4;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(2 * k);
    expect(i, i) += rho[k];
    expect(i + 1, i + 1) += rho[k];
  }
  EXPECT_LE((A - expect).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Imex, StifflyAccurateLastStage) {
  const Grid g(2, 16);
  ChnsProblem prob(PhysParams{5.0 / 3.0, 0.05, 0.005, 1e-3, -10.0}, direct());
  const State un = random_state(g);
  const auto r = imex_step(prob, un, 0.0, 1e-3, tableau("dirksa"));
  EXPECT_LE(max_diff(r.next, r.last_stage), 1e-12 * r.next.max_abs());
}

TEST(Imex, DoubledVariableReferenceBitwise) {
  // Carry U~ and U separately, as in the textbook partitioned form.
  const Grid g(2, 8);
  const PhysParams p{5.0 / 3.0, 0.05, 0.005, 1e-3, -10.0};
  const ButcherPair tab = tableau("dirksa");
  const double dt = 2e-3;
  ChnsProblem a(p, direct()), b(p, direct());
  State u = random_state(g), ut = u, uref = u;
  for (int step = 0; step < 5; ++step) {
    const double t = step * dt;
    std::vector<State> K;
    for (int i = 0; i < tab.stages; ++i) {
      const auto si = static_cast<std::size_t>(i);
      State tilde = ut, base = uref;
      for (int j = 0; j < i; ++j) {
        const auto sj = static_cast<std::size_t>(j);
        if (tab.at[si][sj] != 0.0) axpy(tilde, dt * tab.at[si][sj], K[sj]);
        if (tab.a[si][sj] != 0.0) axpy(base, dt * tab.a[si][sj], K[sj]);
      }
      const StageTimes times{t + tab.ct[si] * dt, t + tab.c[si] * dt, i};
      const State stage = b.solve_stage(tilde, base, dt * tab.a[si][si], times);
      K.push_back(b.stage_rhs(tilde, stage, times));
    }
    State nt = ut, nu = uref;
    for (int j = 0; j < tab.stages; ++j) {
      axpy(nt, dt * tab.b[static_cast<std::size_t>(j)], K[static_cast<std::size_t>(j)]);
      axpy(nu, dt * tab.b[static_cast<std::size_t>(j)], K[static_cast<std::size_t>(j)]);
    }
    ut = nt;
    uref = nu;
    u = imex_step(a, u, t, dt, tab).next;
    ASSERT_EQ(max_diff(ut, uref), 0.0);
    ASSERT_EQ(max_diff(u, uref), 0.0) << "step " << step;
  }
}

TEST(Imex, ConservesMassAndConcentration) {
  const Grid g(2, 16);
  ChnsProblem prob(PhysParams{5.0 / 3.0, 0.05, 0.005, 1e-3, -10.0}, direct());
  const State un = random_state(g);
  for (const char* name : {"ee-ie", "dirksa"}) {
    const State next = imex_step(prob, un, 0.0, 1e-3, tableau(name)).next;
    EXPECT_NEAR(integral(next.rho), integral(un.rho), 1e-12 * integral(un.rho)) << name;
    EXPECT_NEAR(integral(next.q), integral(un.q), 1e-11 * integral(un.rho)) << name;
  }
}

TEST(Imex, SolverChoiceAgrees) {
  const Grid g(2, 16);
  const PhysParams p{5.0 / 3.0, 0.05, 0.005, 1e-3, -10.0};
  const State un = random_state(g);
  ChnsProblem ref(p, direct());
  const State expect = imex_step(ref, un, 0.0, 1e-3, tableau("dirksa")).next;
  for (SolverKind k : {SolverKind::Multigrid, SolverKind::Pcg}) {
    SolverOptions o;
    o.concentration = k;
    o.velocity = SolverKind::Multigrid;
    o.rel_tol = 1e-10;
    ChnsProblem prob(p, o);
    EXPECT_LE(max_diff(imex_step(prob, un, 0.0, 1e-3, tableau("dirksa")).next, expect), 1e-8) << to_string(k);
  }
  SolverOptions bad;
  bad.velocity = SolverKind::Pcg;
  ChnsProblem prob(p, bad);
  EXPECT_THROW(imex_step(prob, un, 0.0, 1e-3, tableau("dirksa")), NotApplicable);
}
