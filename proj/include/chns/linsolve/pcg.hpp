#pragma once

// Conjugate gradients for the concentration system, preconditioned with the
// constant-coefficient operator
//
//   B = mu1 I - 2 tau Delta_h + tau eps mu3 Delta_h^2,
//   mu1 = mean(rho), mu3 = mean(1/rho),
//
// which the cosine transform diagonalises.  For constant rho, B equals the
// system matrix.

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <span>
#include <vector>

#include "chns/core/errors.hpp"
#include "chns/core/fields.hpp"
#include "chns/linsolve/dct.hpp"
#include "chns/linsolve/multigrid.hpp"
#include "chns/linsolve/stencil_matrix.hpp"

namespace chns {

struct DensityMeans {
  double mu1 = 0.0;  // mean rho
  double mu3 = 0.0;  // mean 1/rho
};

inline DensityMeans density_means(const GridField& rho) {
  require_positive(rho);
  DensityMeans m;
  for (double r : rho) {
    m.mu1 += r;
    m.mu3 += 1.0 / r;
  }
  m.mu1 /= static_cast<double>(rho.size());
  m.mu3 /= static_cast<double>(rho.size());
  return m;
}

/// Bound on the condition number of B^{-1} A.
inline double condition_bound(const GridField& rho) {
  const DensityMeans m = density_means(rho);
  double hi = 0.0, lo = std::numeric_limits<double>::infinity();
  for (double r : rho) {
    hi = std::max({hi, r / m.mu1, (1.0 / r) / m.mu3});
    lo = std::min({lo, r / m.mu1, (1.0 / r) / m.mu3});
  }
  return hi / lo;
}

class DctPreconditioner {
 public:
  /// The transform is shared so that plans survive across stages.
  DctPreconditioner(std::shared_ptr<CosineTransform> transform, const GridField& rho, double tau,
                    double eps)
      : dct_(std::move(transform)), means_(density_means(rho)), eig_(rho.size()), tmp_(rho.size()) {
    const std::vector<double> lap = neumann_laplacian_eigenvalues(rho.grid());
    for (std::size_t k = 0; k < eig_.size(); ++k)
      eig_[k] = means_.mu1 - 2.0 * tau * lap[k] + tau * eps * means_.mu3 * lap[k] * lap[k];
  }

  const DensityMeans& means() const noexcept { return means_; }
  const std::vector<double>& eigenvalues() const noexcept { return eig_; }

  /// z = B^{-1} r.
  void apply_inverse(std::span<const double> r, std::span<double> z) {
    dct_->forward(r, tmp_);
    for (std::size_t k = 0; k < tmp_.size(); ++k) tmp_[k] /= eig_[k];
    dct_->inverse(tmp_, z);
  }
  /// y = B x.
  void apply(std::span<const double> x, std::span<double> y) {
    dct_->forward(x, tmp_);
    for (std::size_t k = 0; k < tmp_.size(); ++k) tmp_[k] *= eig_[k];
    dct_->inverse(tmp_, y);
  }

 private:
  std::shared_ptr<CosineTransform> dct_;
  DensityMeans means_;
  std::vector<double> eig_;
  std::vector<double> tmp_;
};

/// Preconditioned CG until ||b - A x|| <= rel_tol ||b - A x0|| (or the round-off
/// floor), with the final residual recomputed from scratch.
inline SolveStats pcg_solve(const StencilMatrix& A, std::span<const double> b, std::span<double> x,
                            DctPreconditioner& P, double rel_tol, int max_iters,
                            const char* system = "concentration") {
  if (A.block() != 1) throw NotApplicable("the cosine preconditioner only applies to scalar systems");
  const std::size_t n = A.rows();
  std::vector<double> r(n), z(n), p(n), q(n);
  A.residual(x, b, r);
  SolveStats st;
  st.initial_residual = norm2(r);
  st.final_residual = st.initial_residual;
  if (st.initial_residual == 0.0) return st;
  const double target = std::max(rel_tol * st.initial_residual, roundoff_floor(b));
  P.apply_inverse(r, z);
  p = z;
  double rz = dot(r, z);
  while (true) {
    if (st.iterations >= max_iters || !std::isfinite(st.final_residual))
      throw SolverDivergence(system, st.relative());
    A.apply(p, q);
    const double alpha = rz / dot(p, q);
    for (std::size_t k = 0; k < n; ++k) {
      x[k] += alpha * p[k];
      r[k] -= alpha * q[k];
    }
    ++st.iterations;
    st.final_residual = norm2(r);
    if (st.final_residual <= target) {
      A.residual(x, b, r);
      st.final_residual = norm2(r);
      if (st.final_residual <= target) return st;
    }
    P.apply_inverse(r, z);
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t k = 0; k < n; ++k) p[k] = z[k] + beta * p[k];
  }
}

}  // namespace chns
