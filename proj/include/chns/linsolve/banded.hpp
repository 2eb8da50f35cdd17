#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "chns/core/errors.hpp"
#include "chns/linsolve/stencil_matrix.hpp"

namespace chns {

/// LU factorisation of a stencil matrix in band storage, without pivoting.
/// The stage systems are SPD or diagonally dominant, so no pivoting is needed.
/// Used for 1D systems and for the coarsest multigrid level.
class BandedLU {
 public:
  BandedLU() = default;
  explicit BandedLU(const StencilMatrix& A) { factor(A); }

  void factor(const StencilMatrix& A) {
    n_ = A.rows();
    w_ = std::min(A.half_bandwidth(), n_ == 0 ? 0 : n_ - 1);
    const std::size_t width = 2 * w_ + 1;
    band_.assign(n_ * width, 0.0);
    const Grid& g = A.grid();
    const std::size_t b = static_cast<std::size_t>(A.block());
    for (int i = 0; i < g.nx(); ++i)
      for (int j = 0; j < g.ny(); ++j) {
        const std::size_t k = g.index(i, j);
        for (std::size_t s = 0; s < A.offsets().size(); ++s) {
          std::size_t nb;
          if (!A.neighbor(i, j, A.offsets()[s], nb)) continue;
          const double* c = A.coef(k, s);
          for (std::size_t r = 0; r < b; ++r)
            for (std::size_t q = 0; q < b; ++q) at(k * b + r, nb * b + q) += c[r * b + q];
        }
      }
    for (std::size_t p = 0; p < n_; ++p) {
      const double piv = at(p, p);
      if (piv == 0.0 || !std::isfinite(piv)) throw ZeroDiagonal(p);
      const std::size_t last = std::min(n_ - 1, p + w_);
      for (std::size_t r = p + 1; r <= last; ++r) {
        const double l = at(r, p) / piv;
        if (l == 0.0) continue;
        at(r, p) = l;
        for (std::size_t c = p + 1; c <= last; ++c) at(r, c) -= l * at(p, c);
      }
    }
  }

  /// Solves A x = rhs in place.
  void solve(std::span<double> x) const {
    for (std::size_t r = 0; r < n_; ++r) {
      const std::size_t first = r > w_ ? r - w_ : 0;
      double s = x[r];
      for (std::size_t c = first; c < r; ++c) s -= at(r, c) * x[c];
      x[r] = s;
    }
    for (std::size_t r = n_; r-- > 0;) {
      const std::size_t last = std::min(n_ - 1, r + w_);
      double s = x[r];
      for (std::size_t c = r + 1; c <= last; ++c) s -= at(r, c) * x[c];
      x[r] = s / at(r, r);
    }
  }

  std::size_t size() const noexcept { return n_; }

 private:
  double& at(std::size_t r, std::size_t c) { return band_[r * (2 * w_ + 1) + (c + w_ - r)]; }
  double at(std::size_t r, std::size_t c) const { return band_[r * (2 * w_ + 1) + (c + w_ - r)]; }

  std::size_t n_ = 0;
  std::size_t w_ = 0;
  std::vector<double> band_;
};

}  // namespace chns
