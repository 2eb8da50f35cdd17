#pragma once

// Geometric multigrid V-cycle for the stage systems on cell-centred grids.
//
// Coarse operators are re-discretised: the fine-level coefficient fields
// (density, reference concentration) are restricted by full weighting and the
// system is rebuilt on the coarse grid by the same builder.  Residuals are
// restricted with the adjoint of bilinear prolongation.  Smoothing is
// lexicographic Gauss-Seidel, pointwise for scalar systems and collective
// (2x2 blocks) for the velocity pair.  The coarsest level is solved directly.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "chns/core/errors.hpp"
#include "chns/core/fields.hpp"
#include "chns/linsolve/banded.hpp"
#include "chns/linsolve/stencil_matrix.hpp"

namespace chns {

enum class SweepOrder { Forward, Backward };

/// One Gauss-Seidel sweep over all nodes in lexicographic (or reversed) order.
inline void gauss_seidel_sweep(const StencilMatrix& A, std::span<double> x,
                               std::span<const double> b, SweepOrder order) {
  const Grid& g = A.grid();
  const int bs = A.block();
  const int dslot = A.diagonal_slot();
  const auto& offs = A.offsets();
  const std::size_t n = g.size();
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t k = order == SweepOrder::Forward ? step : n - 1 - step;
    const auto [i, j] = g.position(k);
    if (bs == 1) {
      double acc = b[k];
      for (std::size_t s = 0; s < offs.size(); ++s) {
        if (static_cast<int>(s) == dslot) continue;
        std::size_t nb;
        if (A.neighbor(i, j, offs[s], nb)) acc -= A.coef(k, s)[0] * x[nb];
      }
      const double d = A.coef(k, static_cast<std::size_t>(dslot))[0];
      if (d == 0.0) throw ZeroDiagonal(k);
      x[k] = acc / d;
    } else {
      double r0 = b[2 * k], r1 = b[2 * k + 1];
      for (std::size_t s = 0; s < offs.size(); ++s) {
        if (static_cast<int>(s) == dslot) continue;
        std::size_t nb;
        if (!A.neighbor(i, j, offs[s], nb)) continue;
        const double* c = A.coef(k, s);
        r0 -= c[0] * x[2 * nb] + c[1] * x[2 * nb + 1];
        r1 -= c[2] * x[2 * nb] + c[3] * x[2 * nb + 1];
      }
      const double* d = A.coef(k, static_cast<std::size_t>(dslot));
      const double det = d[0] * d[3] - d[1] * d[2];
      if (det == 0.0) throw ZeroDiagonal(2 * k);
      x[2 * k] = (d[3] * r0 - d[1] * r1) / det;
      x[2 * k + 1] = (d[0] * r1 - d[2] * r0) / det;
    }
  }
}

/// How unknowns are extended across the wall by the transfer operators:
/// Even for Neumann-type unknowns, Odd for unknowns vanishing on the wall.
enum class Parity { Even, Odd };

namespace detail {

struct TransferWeight {
  int coarse;
  double w;
};

/// Bilinear weights of the coarse cells contributing to fine cell f along one
/// axis with Mc coarse cells.
inline int axis_transfer(int f, int Mc, double parity, TransferWeight out[2]) {
  const int I = f / 2;
  const int J = (f % 2 == 0) ? I - 1 : I + 1;
  if (Mc == 1) {
    out[0] = {0, 1.0};
    return 1;
  }
  if (J < 0 || J >= Mc) {
    out[0] = {I, 0.75 + 0.25 * parity};
    return 1;
  }
  out[0] = {I, 0.75};
  out[1] = {J, 0.25};
  return 2;
}

template <class Body>
void for_each_transfer(const Grid& fine, double parity, Body&& body) {
  const Grid coarse = fine.coarsened();
  for (int i = 0; i < fine.nx(); ++i) {
    TransferWeight wx[2];
    const int nx = axis_transfer(i, coarse.nx(), parity, wx);
    for (int j = 0; j < fine.ny(); ++j) {
      TransferWeight wy[2] = {{0, 1.0}, {0, 0.0}};
      const int ny = fine.dim() == 2 ? axis_transfer(j, coarse.ny(), parity, wy) : 1;
      for (int a = 0; a < nx; ++a)
        for (int c = 0; c < ny; ++c)
          body(fine.index(i, j), coarse.index(wx[a].coarse, wy[c].coarse), wx[a].w * wy[c].w);
    }
  }
}

}  // namespace detail

/// Bilinear prolongation from the coarse grid of `fine` to `fine`.
inline std::vector<double> prolongate(const Grid& fine, std::span<const double> coarse, int block,
                                      Parity parity) {
  const double p = parity == Parity::Even ? 1.0 : -1.0;
  const std::size_t b = static_cast<std::size_t>(block);
  std::vector<double> out(fine.size() * b, 0.0);
  detail::for_each_transfer(fine, p, [&](std::size_t kf, std::size_t kc, double w) {
    for (std::size_t r = 0; r < b; ++r) out[kf * b + r] += w * coarse[kc * b + r];
  });
  return out;
}

/// Full-weighting restriction, the adjoint of `prolongate` scaled by 2^-dim so
/// that constants are preserved.
inline std::vector<double> restrict_full_weighting(const Grid& fine, std::span<const double> values,
                                                   int block, Parity parity) {
  const double p = parity == Parity::Even ? 1.0 : -1.0;
  const std::size_t b = static_cast<std::size_t>(block);
  const double scale = fine.dim() == 2 ? 0.25 : 0.5;
  std::vector<double> out(fine.coarsened().size() * b, 0.0);
  detail::for_each_transfer(fine, p, [&](std::size_t kf, std::size_t kc, double w) {
    for (std::size_t r = 0; r < b; ++r) out[kc * b + r] += scale * w * values[kf * b + r];
  });
  return out;
}

inline GridField restrict_field(const GridField& f) {
  return GridField(f.grid().coarsened(),
                   restrict_full_weighting(f.grid(), f.span(), 1, Parity::Even));
}

/// Rebuilds a stage system on a given grid from restricted coefficient fields.
using LevelBuilder = std::function<StencilMatrix(const Grid&, const std::vector<GridField>&)>;

struct MultigridOptions {
  int pre_smooth = 4;
  int post_smooth = 4;
  int coarsest = 4;  // direct solve once M <= coarsest
  Parity parity = Parity::Even;
};

struct SolveStats {
  int iterations = 0;
  double initial_residual = 0.0;
  double final_residual = 0.0;
  double relative() const { return initial_residual > 0.0 ? final_residual / initial_residual : 0.0; }
};

class MultigridHierarchy {
 public:
  MultigridHierarchy(StencilMatrix fine, std::vector<GridField> coeffs, const LevelBuilder& build,
                     MultigridOptions opts = {})
      : opts_(opts) {
    levels_.push_back(std::move(fine));
    while (can_coarsen(levels_.back().grid())) {
      for (auto& c : coeffs) c = restrict_field(c);
      levels_.push_back(build(levels_.back().grid().coarsened(), coeffs));
    }
    coarse_lu_.factor(levels_.back());
  }

  int levels() const noexcept { return static_cast<int>(levels_.size()); }
  const StencilMatrix& matrix(int level = 0) const { return levels_.at(static_cast<std::size_t>(level)); }
  const MultigridOptions& options() const noexcept { return opts_; }

  void vcycle(std::span<double> x, std::span<const double> b) const { cycle(0, x, b); }

 private:
  bool can_coarsen(const Grid& g) const { return g.M() > opts_.coarsest && g.M() % 2 == 0; }

  void cycle(std::size_t level, std::span<double> x, std::span<const double> b) const {
    const StencilMatrix& A = levels_[level];
    if (level + 1 == levels_.size()) {
      std::copy(b.begin(), b.end(), x.begin());
      coarse_lu_.solve(x);
      return;
    }
    for (int s = 0; s < opts_.pre_smooth; ++s) gauss_seidel_sweep(A, x, b, SweepOrder::Forward);
    std::vector<double> r(A.rows());
    A.residual(x, b, r);
    const std::vector<double> rc = restrict_full_weighting(A.grid(), r, A.block(), opts_.parity);
    std::vector<double> ec(rc.size(), 0.0);
    cycle(level + 1, ec, rc);
    const std::vector<double> e = prolongate(A.grid(), ec, A.block(), opts_.parity);
    for (std::size_t k = 0; k < x.size(); ++k) x[k] += e[k];
    for (int s = 0; s < opts_.post_smooth; ++s) gauss_seidel_sweep(A, x, b, SweepOrder::Backward);
  }

  MultigridOptions opts_;
  std::vector<StencilMatrix> levels_;
  BandedLU coarse_lu_;
};

/// Residual below which iterating further only stirs round-off.
inline double roundoff_floor(std::span<const double> b) { return 1e-13 * norm2(b); }

/// V-cycles until ||b - A x|| <= rel_tol ||b - A x0|| (or the round-off floor).
inline SolveStats mg_solve(const MultigridHierarchy& mg, std::span<const double> b,
                           std::span<double> x, double rel_tol, int max_cycles,
                           const char* system = "multigrid") {
  const StencilMatrix& A = mg.matrix();
  std::vector<double> r(A.rows());
  A.residual(x, b, r);
  SolveStats st;
  st.initial_residual = norm2(r);
  st.final_residual = st.initial_residual;
  if (st.initial_residual == 0.0) return st;
  const double target = std::max(rel_tol * st.initial_residual, roundoff_floor(b));
  while (st.final_residual > target) {
    if (st.iterations >= max_cycles || !std::isfinite(st.final_residual))
      throw SolverDivergence(system, st.relative());
    mg.vcycle(x, b);
    ++st.iterations;
    A.residual(x, b, r);
    st.final_residual = norm2(r);
  }
  return st;
}

}  // namespace chns
