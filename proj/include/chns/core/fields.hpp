#pragma once

// Cell-centred grids on the unit square (or unit interval), scalar fields on
// them and the conserved state vector (rho, m, q).
//
// Storage is a single flat array.  With 1-based x-index i and y-index j the
// node (i, j) sits at ((i - 1/2) h, (j - 1/2) h) and has flat index
// k = M (i - 1) + j, i.e. the y-index runs fastest.  Internally everything is
// 0-based: k = i * ny + j.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "chns/core/errors.hpp"

namespace chns {

enum class Axis { X, Y };

class Grid {
 public:
  Grid() = default;
  Grid(int dim, int M) : dim_(dim), M_(M) {
    if (dim != 1 && dim != 2) throw std::invalid_argument("grid dimension must be 1 or 2");
    if (M < 1) throw std::invalid_argument("grid needs at least one cell per axis");
  }

  int dim() const noexcept { return dim_; }
  int M() const noexcept { return M_; }
  double h() const noexcept { return 1.0 / M_; }
  int nx() const noexcept { return M_; }
  int ny() const noexcept { return dim_ == 2 ? M_ : 1; }
  std::size_t size() const noexcept {
    return static_cast<std::size_t>(nx()) * static_cast<std::size_t>(ny());
  }

  std::size_t index(int i, int j = 0) const noexcept {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(ny()) +
           static_cast<std::size_t>(j);
  }
  std::pair<int, int> position(std::size_t k) const noexcept {
    return {static_cast<int>(k / static_cast<std::size_t>(ny())),
            static_cast<int>(k % static_cast<std::size_t>(ny()))};
  }

  double x(int i) const noexcept { return (i + 0.5) * h(); }
  double y(int j) const noexcept { return dim_ == 2 ? (j + 0.5) * h() : 0.0; }

  /// Number of cells along an axis; Y is only valid on 2D grids.
  int extent(Axis a) const {
    check_axis(a);
    return a == Axis::X ? nx() : ny();
  }
  /// Flat-index distance between neighbours along an axis.
  std::size_t stride(Axis a) const {
    check_axis(a);
    return a == Axis::X ? static_cast<std::size_t>(ny()) : 1;
  }
  void check_axis(Axis a) const {
    if (a == Axis::Y && dim_ != 2) throw std::invalid_argument("Y axis used on a 1D grid");
  }

  Grid coarsened() const { return Grid(dim_, M_ / 2); }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int dim_ = 1;
  int M_ = 1;
};

class GridField {
 public:
  GridField() = default;
  explicit GridField(const Grid& g, double value = 0.0) : grid_(g), v_(g.size(), value) {}
  GridField(const Grid& g, std::vector<double> values) : grid_(g), v_(std::move(values)) {
    if (v_.size() != g.size()) throw std::invalid_argument("field length does not match grid");
  }

  template <class F>
  static GridField sample(const Grid& g, F&& f) {
    GridField out(g);
    for (int i = 0; i < g.nx(); ++i)
      for (int j = 0; j < g.ny(); ++j) out[g.index(i, j)] = f(g.x(i), g.y(j));
    return out;
  }

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return v_.size(); }
  double& operator[](std::size_t k) noexcept { return v_[k]; }
  double operator[](std::size_t k) const noexcept { return v_[k]; }
  double& at(int i, int j = 0) noexcept { return v_[grid_.index(i, j)]; }
  double at(int i, int j = 0) const noexcept { return v_[grid_.index(i, j)]; }

  std::span<double> span() noexcept { return v_; }
  std::span<const double> span() const noexcept { return v_; }
  std::vector<double>& values() noexcept { return v_; }
  const std::vector<double>& values() const noexcept { return v_; }
  auto begin() noexcept { return v_.begin(); }
  auto end() noexcept { return v_.end(); }
  auto begin() const noexcept { return v_.begin(); }
  auto end() const noexcept { return v_.end(); }

  GridField& operator+=(const GridField& o) {
    for (std::size_t k = 0; k < v_.size(); ++k) v_[k] += o.v_[k];
    return *this;
  }
  GridField& operator-=(const GridField& o) {
    for (std::size_t k = 0; k < v_.size(); ++k) v_[k] -= o.v_[k];
    return *this;
  }
  GridField& operator*=(double s) {
    for (double& x : v_) x *= s;
    return *this;
  }
  /// this += a * x
  GridField& axpy(double a, const GridField& x) {
    for (std::size_t k = 0; k < v_.size(); ++k) v_[k] += a * x.v_[k];
    return *this;
  }

  bool all_finite() const {
    return std::all_of(v_.begin(), v_.end(), [](double x) { return std::isfinite(x); });
  }

 private:
  Grid grid_;
  std::vector<double> v_;
};

inline GridField operator+(GridField a, const GridField& b) { return a += b; }
inline GridField operator-(GridField a, const GridField& b) { return a -= b; }
inline GridField operator*(double s, GridField a) { return a *= s; }
inline GridField operator*(GridField a, double s) { return a *= s; }

/// Elementwise product f*g.
inline GridField hadamard(const GridField& f, const GridField& g) {
  GridField out(f.grid());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = f[k] * g[k];
  return out;
}

/// Plain sum of nodal values, no cell-volume factor (conservation errors are
/// defined this way).
inline double integral(const GridField& f) {
  double s = 0.0;
  for (double x : f) s += x;
  return s;
}

/// Cell-volume weighted sum, an approximation of the integral over the domain.
inline double volume_integral(const GridField& f) {
  return integral(f) * std::pow(f.grid().h(), f.grid().dim());
}

inline double max_abs(const GridField& f) {
  double m = 0.0;
  for (double x : f) m = std::max(m, std::abs(x));
  return m;
}
inline double min_value(const GridField& f) { return *std::min_element(f.begin(), f.end()); }
inline double max_value(const GridField& f) { return *std::max_element(f.begin(), f.end()); }

inline double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}
inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline void require_positive(const GridField& rho) {
  for (std::size_t k = 0; k < rho.size(); ++k)
    if (!(rho[k] > 0.0)) throw NonPositiveDensity(k, rho[k]);
}

struct PhysParams {
  double gamma = 5.0 / 3.0;
  double nu = 0.0;
  double lambda = 0.0;
  double eps = 1e-4;
  double G = 0.0;

  void validate() const {
    if (!(gamma > 1.0)) throw std::invalid_argument("adiabatic exponent must exceed 1");
    if (!(eps > 0.0)) throw std::invalid_argument("interface parameter eps must be positive");
    if (nu < 0.0) throw std::invalid_argument("shear viscosity must be non-negative");
    if ((nu != 0.0 || lambda != 0.0) && !(2.0 * nu + lambda > 0.0))
      throw std::invalid_argument("2 nu + lambda must be positive");
  }
};

/// Conserved variables u = (rho, m_1[, m_2], q) with m = rho v and q = rho c.
/// The same type carries right-hand sides, whose entries obey no sign rule.
struct State {
  GridField rho;
  std::vector<GridField> m;
  GridField q;

  State() = default;
  explicit State(const Grid& g) : rho(g), m(static_cast<std::size_t>(g.dim()), GridField(g)), q(g) {}

  const Grid& grid() const noexcept { return rho.grid(); }
  int components() const noexcept { return 2 + static_cast<int>(m.size()); }

  /// Component k in the order rho, m_1, [m_2,] q.
  GridField& component(int k) {
    if (k == 0) return rho;
    if (k <= static_cast<int>(m.size())) return m[static_cast<std::size_t>(k - 1)];
    return q;
  }
  const GridField& component(int k) const { return const_cast<State*>(this)->component(k); }

  bool all_finite() const {
    for (int k = 0; k < components(); ++k)
      if (!component(k).all_finite()) return false;
    return true;
  }
  double max_abs() const {
    double a = 0.0;
    for (int k = 0; k < components(); ++k) a = std::max(a, chns::max_abs(component(k)));
    return a;
  }
};

/// y += a * x, componentwise.
inline void axpy(State& y, double a, const State& x) {
  for (int k = 0; k < y.components(); ++k) y.component(k).axpy(a, x.component(k));
}

struct Primitives {
  std::vector<GridField> v;
  GridField c;
};

/// v_k = m_k / rho and c = q / rho.
inline Primitives primitives(const State& s) {
  require_positive(s.rho);
  Primitives p;
  for (const auto& mk : s.m) {
    GridField vk(s.grid());
    for (std::size_t i = 0; i < vk.size(); ++i) vk[i] = mk[i] / s.rho[i];
    p.v.push_back(std::move(vk));
  }
  p.c = GridField(s.grid());
  for (std::size_t i = 0; i < p.c.size(); ++i) p.c[i] = s.q[i] / s.rho[i];
  return p;
}

inline GridField concentration(const State& s) {
  require_positive(s.rho);
  GridField c(s.grid());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = s.q[i] / s.rho[i];
  return c;
}

inline State conserved(const GridField& rho, const std::vector<GridField>& v, const GridField& c) {
  State s(rho.grid());
  s.rho = rho;
  for (std::size_t k = 0; k < s.m.size(); ++k) s.m[k] = hadamard(rho, v[k]);
  s.q = hadamard(rho, c);
  return s;
}

}  // namespace chns
