#pragma once

// Even-symmetric cosine transforms on cell-centred grids, backed by FFTW.
// The basis cos(pi k (i + 1/2) / M) diagonalises the Neumann Laplacian Delta_h
// exactly; its eigenvalues are -(4/h^2) sum_axes sin^2(pi k / (2M)).

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "chns/core/fields.hpp"

namespace chns {

class CosineTransform {
 public:
  explicit CosineTransform(const Grid& g) : grid_(g), buf_(g.size()) {
    double* b = buf_.data();
    if (g.dim() == 1) {
      fwd_ = fftw_plan_r2r_1d(g.nx(), b, b, FFTW_REDFT10, FFTW_ESTIMATE);
      inv_ = fftw_plan_r2r_1d(g.nx(), b, b, FFTW_REDFT01, FFTW_ESTIMATE);
    } else {
      fwd_ = fftw_plan_r2r_2d(g.nx(), g.ny(), b, b, FFTW_REDFT10, FFTW_REDFT10, FFTW_ESTIMATE);
      inv_ = fftw_plan_r2r_2d(g.nx(), g.ny(), b, b, FFTW_REDFT01, FFTW_REDFT01, FFTW_ESTIMATE);
    }
    if (!fwd_ || !inv_) throw std::runtime_error("FFTW planning failed");
    scale_ = 1.0;
    for (int d = 0; d < g.dim(); ++d) scale_ /= 2.0 * g.M();
  }
  CosineTransform(const CosineTransform&) = delete;
  CosineTransform& operator=(const CosineTransform&) = delete;
  ~CosineTransform() {
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(inv_);
  }

  const Grid& grid() const noexcept { return grid_; }

  /// Unnormalised forward transform (DCT-II along each axis).
  void forward(std::span<const double> in, std::span<double> out) {
    std::copy(in.begin(), in.end(), buf_.begin());
    fftw_execute(fwd_);
    std::copy(buf_.begin(), buf_.end(), out.begin());
  }
  /// Inverse of `forward`, normalisation included.
  void inverse(std::span<const double> in, std::span<double> out) {
    std::copy(in.begin(), in.end(), buf_.begin());
    fftw_execute(inv_);
    for (std::size_t k = 0; k < buf_.size(); ++k) out[k] = scale_ * buf_[k];
  }

 private:
  Grid grid_;
  std::vector<double> buf_;
  fftw_plan fwd_ = nullptr;
  fftw_plan inv_ = nullptr;
  double scale_ = 1.0;
};

/// Eigenvalue of Delta_h for the cosine mode with wavenumbers (k1, k2); k2 is
/// ignored in 1D.
inline double neumann_laplacian_eigenvalue(const Grid& g, int k1, int k2 = 0) {
  const double s = 4.0 / (g.h() * g.h());
  auto term = [&](int k) {
    const double a = std::sin(std::numbers::pi * k / (2.0 * g.M()));
    return a * a;
  };
  double v = term(k1);
  if (g.dim() == 2) v += term(k2);
  return -s * v;
}

/// All eigenvalues in transform (lexicographic) order.
inline std::vector<double> neumann_laplacian_eigenvalues(const Grid& g) {
  std::vector<double> ev(g.size());
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) ev[g.index(i, j)] = neumann_laplacian_eigenvalue(g, i, j);
  return ev;
}

}  // namespace chns
