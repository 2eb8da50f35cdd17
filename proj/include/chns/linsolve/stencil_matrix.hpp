#pragma once

// Sparse matrices with a fixed stencil pattern on a structured grid ("stored
// by diagonals").  Each node carries one b x b block per stencil offset; b is
// 1 for scalar systems and 2 for the coupled velocity system, whose unknowns
// are interleaved as (V_1, V_2) per node.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdlib>
#include <span>
#include <stdexcept>
#include <vector>

#include "chns/core/fields.hpp"

namespace chns {

struct Offset {
  int di = 0;
  int dj = 0;
  friend bool operator==(const Offset&, const Offset&) = default;
};

class StencilMatrix {
 public:
  StencilMatrix() = default;
  StencilMatrix(const Grid& g, int block, std::vector<Offset> offsets)
      : grid_(g), block_(block), offsets_(std::move(offsets)) {
    if (find({0, 0}) < 0) offsets_.insert(offsets_.begin(), Offset{0, 0});
    coef_.assign(g.size() * offsets_.size() * bb(), 0.0);
  }

  const Grid& grid() const noexcept { return grid_; }
  int block() const noexcept { return block_; }
  std::size_t nodes() const noexcept { return grid_.size(); }
  std::size_t rows() const noexcept { return nodes() * static_cast<std::size_t>(block_); }
  const std::vector<Offset>& offsets() const noexcept { return offsets_; }

  int find(Offset o) const {
    for (std::size_t i = 0; i < offsets_.size(); ++i)
      if (offsets_[i] == o) return static_cast<int>(i);
    return -1;
  }
  int diagonal_slot() const { return find({0, 0}); }

  /// Pointer to the row-major b x b block of `node` for stencil slot `slot`.
  double* coef(std::size_t node, std::size_t slot) noexcept {
    return coef_.data() + (node * offsets_.size() + slot) * bb();
  }
  const double* coef(std::size_t node, std::size_t slot) const noexcept {
    return coef_.data() + (node * offsets_.size() + slot) * bb();
  }
  /// Scalar entry for block size 1.
  double& at(std::size_t node, Offset o) {
    const int s = find(o);
    if (s < 0) throw std::out_of_range("offset not in stencil");
    return coef(node, static_cast<std::size_t>(s))[0];
  }

  /// Neighbour of node (i, j) through offset o, or false if outside.
  bool neighbor(int i, int j, Offset o, std::size_t& out) const noexcept {
    const int ni = i + o.di, nj = j + o.dj;
    if (ni < 0 || ni >= grid_.nx() || nj < 0 || nj >= grid_.ny()) return false;
    out = grid_.index(ni, nj);
    return true;
  }

  /// y = A x.
  void apply(std::span<const double> x, std::span<double> y) const {
    const std::size_t b = static_cast<std::size_t>(block_);
    for (int i = 0; i < grid_.nx(); ++i)
      for (int j = 0; j < grid_.ny(); ++j) {
        const std::size_t k = grid_.index(i, j);
        double acc[2] = {0.0, 0.0};
        for (std::size_t s = 0; s < offsets_.size(); ++s) {
          std::size_t n;
          if (!neighbor(i, j, offsets_[s], n)) continue;
          const double* c = coef(k, s);
          for (std::size_t r = 0; r < b; ++r)
            for (std::size_t q = 0; q < b; ++q) acc[r] += c[r * b + q] * x[n * b + q];
        }
        for (std::size_t r = 0; r < b; ++r) y[k * b + r] = acc[r];
      }
  }

  std::vector<double> apply(std::span<const double> x) const {
    std::vector<double> y(rows());
    apply(x, y);
    return y;
  }

  /// r = b - A x.
  void residual(std::span<const double> x, std::span<const double> rhs, std::span<double> r) const {
    apply(x, r);
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = rhs[k] - r[k];
  }

  /// Adds s * B to this matrix, extending the stencil as needed.
  StencilMatrix& add(double s, const StencilMatrix& B) {
    if (B.block_ != block_ || !(B.grid_ == grid_)) throw std::invalid_argument("incompatible matrices");
    for (const Offset& o : B.offsets_) ensure_offset(o);
    const std::size_t n = bb();
    for (std::size_t k = 0; k < nodes(); ++k)
      for (std::size_t sb = 0; sb < B.offsets_.size(); ++sb) {
        double* dst = coef(k, static_cast<std::size_t>(find(B.offsets_[sb])));
        const double* src = B.coef(k, sb);
        for (std::size_t e = 0; e < n; ++e) dst[e] += s * src[e];
      }
    return *this;
  }

  /// Adds the stencil slot if missing, preserving existing coefficients.
  int ensure_offset(Offset o) {
    const int s = find(o);
    if (s >= 0) return s;
    const std::size_t old = offsets_.size();
    std::vector<double> c(nodes() * (old + 1) * bb(), 0.0);
    for (std::size_t k = 0; k < nodes(); ++k)
      std::copy_n(coef_.data() + k * old * bb(), old * bb(), c.data() + k * (old + 1) * bb());
    offsets_.push_back(o);
    coef_ = std::move(c);
    return static_cast<int>(old);
  }

  /// Half bandwidth of the matrix in the flat (interleaved) unknown ordering.
  std::size_t half_bandwidth() const {
    std::size_t w = 0;
    for (const Offset& o : offsets_) {
      const long shift = static_cast<long>(o.di) * grid_.ny() + o.dj;
      w = std::max(w, static_cast<std::size_t>(std::labs(shift)));
    }
    return (w + 1) * static_cast<std::size_t>(block_) - 1;
  }

  /// Dense row-major copy, for small systems and tests.
  std::vector<double> dense() const {
    const std::size_t n = rows(), b = static_cast<std::size_t>(block_);
    std::vector<double> d(n * n, 0.0);
    for (int i = 0; i < grid_.nx(); ++i)
      for (int j = 0; j < grid_.ny(); ++j) {
        const std::size_t k = grid_.index(i, j);
        for (std::size_t s = 0; s < offsets_.size(); ++s) {
          std::size_t nb;
          if (!neighbor(i, j, offsets_[s], nb)) continue;
          const double* c = coef(k, s);
          for (std::size_t r = 0; r < b; ++r)
            for (std::size_t q = 0; q < b; ++q) d[(k * b + r) * n + nb * b + q] += c[r * b + q];
        }
      }
    return d;
  }

 private:
  std::size_t bb() const noexcept { return static_cast<std::size_t>(block_ * block_); }

  Grid grid_;
  int block_ = 1;
  std::vector<Offset> offsets_;
  std::vector<double> coef_;
};

/// Diagonal matrix D(v).
inline StencilMatrix diagonal_matrix(const GridField& v) {
  StencilMatrix A(v.grid(), 1, {{0, 0}});
  for (std::size_t k = 0; k < v.size(); ++k) A.coef(k, 0)[0] = v[k];
  return A;
}

/// Product of scalar stencil matrices; the stencil of A B is the Minkowski
/// sum of the two stencils.
inline StencilMatrix multiply(const StencilMatrix& A, const StencilMatrix& B) {
  if (A.block() != 1 || B.block() != 1) throw std::invalid_argument("multiply needs scalar matrices");
  std::vector<Offset> offs;
  for (const Offset& a : A.offsets())
    for (const Offset& b : B.offsets()) {
      const Offset o{a.di + b.di, a.dj + b.dj};
      if (std::find(offs.begin(), offs.end(), o) == offs.end()) offs.push_back(o);
    }
  const Grid& g = A.grid();
  StencilMatrix C(g, 1, offs);
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) {
      const std::size_t k = g.index(i, j);
      for (std::size_t sa = 0; sa < A.offsets().size(); ++sa) {
        const Offset a = A.offsets()[sa];
        std::size_t mid;
        if (!A.neighbor(i, j, a, mid)) continue;
        const double ca = A.coef(k, sa)[0];
        if (ca == 0.0) continue;
        for (std::size_t sb = 0; sb < B.offsets().size(); ++sb) {
          const Offset b = B.offsets()[sb];
          std::size_t end;
          if (!B.neighbor(i + a.di, j + a.dj, b, end)) continue;
          const int sc = C.find({a.di + b.di, a.dj + b.dj});
          C.coef(k, static_cast<std::size_t>(sc))[0] += ca * B.coef(mid, sb)[0];
        }
      }
    }
  return C;
}

/// Block matrix [[A11, A12], [A21, A22]] with interleaved unknowns.
inline StencilMatrix block_matrix(const StencilMatrix& A11, const StencilMatrix& A12,
                                  const StencilMatrix& A21, const StencilMatrix& A22) {
  std::vector<Offset> offs;
  for (const StencilMatrix* A : {&A11, &A12, &A21, &A22})
    for (const Offset& o : A->offsets())
      if (std::find(offs.begin(), offs.end(), o) == offs.end()) offs.push_back(o);
  StencilMatrix B(A11.grid(), 2, offs);
  const StencilMatrix* parts[2][2] = {{&A11, &A12}, {&A21, &A22}};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      const StencilMatrix& P = *parts[r][c];
      for (std::size_t k = 0; k < B.nodes(); ++k)
        for (std::size_t s = 0; s < P.offsets().size(); ++s) {
          const int sb = B.find(P.offsets()[s]);
          B.coef(k, static_cast<std::size_t>(sb))[r * 2 + c] += P.coef(k, s)[0];
        }
    }
  return B;
}

// ---------------------------------------------------------------------------
// Matrix forms of the grid operators.

namespace detail {

inline Offset axis_offset(Axis a, int d) { return a == Axis::X ? Offset{d, 0} : Offset{0, d}; }

/// Three-point operator along an axis; weights(i, n) gives the coefficients of
/// (f_{i-1}, f_i, f_{i+1}).
template <class Weights>
StencilMatrix three_point_matrix(const Grid& g, Axis axis, Weights&& weights) {
  StencilMatrix A(g, 1, {{0, 0}, axis_offset(axis, -1), axis_offset(axis, 1)});
  const int sm = A.find(axis_offset(axis, -1)), sp = A.find(axis_offset(axis, 1));
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) {
      const int pos = axis == Axis::X ? i : j;
      const auto w = weights(pos, g.extent(axis));
      const std::size_t k = g.index(i, j);
      A.coef(k, static_cast<std::size_t>(sm))[0] = w[0];
      A.coef(k, 0)[0] = w[1];
      A.coef(k, static_cast<std::size_t>(sp))[0] = w[2];
    }
  return A;
}

}  // namespace detail

inline StencilMatrix laplacian_axis_matrix(const Grid& g, Axis axis) {
  const double s = 1.0 / (g.h() * g.h());
  return detail::three_point_matrix(g, axis, [s](int i, int n) -> std::array<double, 3> {
    if (n == 1) return {0.0, 0.0, 0.0};
    if (i == 0) return {0.0, -s, s};
    if (i == n - 1) return {s, -s, 0.0};
    return {s, -2 * s, s};
  });
}

inline StencilMatrix laplacian_matrix(const Grid& g) {
  StencilMatrix A = laplacian_axis_matrix(g, Axis::X);
  if (g.dim() == 2) A.add(1.0, laplacian_axis_matrix(g, Axis::Y));
  return A;
}

inline StencilMatrix e_matrix(const Grid& g, Axis axis) {
  const double s = 1.0 / (g.h() * g.h());
  return detail::three_point_matrix(g, axis, [s](int i, int n) -> std::array<double, 3> {
    if (i == 0) return {0.0, -4 * s, 4.0 / 3.0 * s};
    if (i == n - 1) return {4.0 / 3.0 * s, -4 * s, 0.0};
    return {s, -2 * s, s};
  });
}

inline StencilMatrix d_matrix(const Grid& g, Axis axis) {
  const double s = 1.0 / g.h();
  return detail::three_point_matrix(g, axis, [s](int i, int n) -> std::array<double, 3> {
    if (i == 0) return {0.0, -s, s};
    if (i == n - 1) return {-s, s, 0.0};
    return {-0.5 * s, 0.0, 0.5 * s};
  });
}

}  // namespace chns
