#pragma once

// Linear stability of a homogeneous mixture c = c0.  A cosine mode with
// wavenumbers (k1, k2) and K = (k1^2 + k2^2) pi^2 evolves like exp(sigma t),
//
//   sigma = -(psi''(c0) K + eps K^2),   psi''(c) = 3 c^2 - 1,
//
// so it grows when psi''(c0) < 0 and K < -psi''(c0) / eps.

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "chns/core/errors.hpp"
#include "chns/core/fields.hpp"
#include "chns/driver/run.hpp"
#include "chns/linsolve/dct.hpp"

namespace chns {

inline double psi_second(double c) { return 3.0 * c * c - 1.0; }

inline double growth_exponent(double c0, double eps, double K) {
  return -(psi_second(c0) * K + eps * K * K);
}

struct SpinodalMode {
  int k1 = 0;
  int k2 = 0;
  double K = 0.0;      // (k1^2 + k2^2) pi^2
  double sigma = 0.0;  // growth exponent
  int khat() const { return k1 * k1 + k2 * k2; }
};

struct SpinodalPrediction {
  double c0 = 0.0;
  double eps = 0.0;
  int dim = 2;
  bool has_unstable = false;
  std::vector<SpinodalMode> unstable;  // every mode with sigma > 0
  SpinodalMode dominant;               // largest sigma (first in k1-major order on ties)
};

inline SpinodalPrediction predict_spinodal_mode(double c0, double eps, int dim) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (dim != 1 && dim != 2) throw std::invalid_argument("dimension must be 1 or 2");
  const double p2 = psi_second(c0);
  if (p2 >= 0.0) throw OutsideSpinodal(c0);
  SpinodalPrediction pred{c0, eps, dim, false, {}, {}};
  const double pi2 = std::numbers::pi * std::numbers::pi;
  // sigma > 0 needs K < -psi''/eps.
  const int kmax = static_cast<int>(std::ceil(std::sqrt(-p2 / eps / pi2))) + 1;
  double best = -std::numeric_limits<double>::infinity();
  for (int k1 = 0; k1 <= kmax; ++k1)
    for (int k2 = 0; k2 <= (dim == 2 ? kmax : 0); ++k2) {
      if (k1 == 0 && k2 == 0) continue;
      SpinodalMode m{k1, k2, (k1 * k1 + k2 * k2) * pi2, 0.0};
      m.sigma = growth_exponent(c0, eps, m.K);
      if (m.sigma <= 0.0) continue;
      pred.unstable.push_back(m);
      if (m.sigma > best) {
        best = m.sigma;
        pred.dominant = m;
      }
    }
  pred.has_unstable = !pred.unstable.empty();
  return pred;
}

/// Coefficient a of (c - c0) along cos(k1 pi x) cos(k2 pi y), by projection.
inline double mode_coefficient(const GridField& c, double c0, int k1, int k2) {
  const Grid& g = c.grid();
  constexpr double pi = std::numbers::pi;
  double num = 0.0, den = 0.0;
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) {
      const double phi = std::cos(k1 * pi * g.x(i)) * (g.dim() == 2 ? std::cos(k2 * pi * g.y(j)) : 1.0);
      num += (c.at(i, j) - c0) * phi;
      den += phi * phi;
    }
  return num / den;
}

struct GrowthSetup {
  int dim = 2;
  int M = 64;
  double c0 = 0.0;
  double eps = 1e-3;
  int k1 = 3;
  int k2 = 0;
  double amplitude = 1e-8;
  double dt = 1e-4;
  double t_end = 0.02;
  double nu = 1e-2;
  double lambda = 1e-3;
  std::string scheme = "dirksa";
};

struct GrowthMeasurement {
  double sigma_predicted = 0.0;  // continuous exponent
  double sigma_measured = 0.0;   // least-squares slope of log|a(t)|
  std::vector<double> times;
  std::vector<double> amplitudes;
};

/// Largest |c - c0| allowed for the linearised picture to apply.
inline constexpr double kLinearAmplitudeLimit = 1e-4;

/// Runs the full system from rho = 1, v = 0 and c = c0 plus one seeded cosine
/// mode, without gravity, and fits the growth of that mode.
inline GrowthMeasurement measure_mode_growth(const GrowthSetup& s) {
  if (std::abs(s.amplitude) >= kLinearAmplitudeLimit)
    throw AmplitudeTooLarge("seed amplitude is outside the linear regime");
  RunConfig cfg;
  cfg.test = "mode";
  cfg.dim = s.dim;
  cfg.M = s.M;
  cfg.phys = PhysParams{5.0 / 3.0, s.nu, s.lambda, s.eps, 0.0};
  cfg.scheme = s.scheme;
  cfg.fixed_dt = s.dt;
  cfg.adapt_cfl = false;
  cfg.figure_snapshots = false;
  cfg.t_final = s.t_end;
  cfg.c0 = s.c0;
  cfg.mode_k1 = s.k1;
  cfg.mode_k2 = s.k2;
  cfg.mode_amplitude = s.amplitude;
  cfg.tol = 1e-10;

  GrowthMeasurement out;
  out.sigma_predicted = growth_exponent(s.c0, s.eps, (s.k1 * s.k1 + s.k2 * s.k2) * std::numbers::pi * std::numbers::pi);
  const State u0 = initial_state(cfg);
  out.times.push_back(0.0);
  out.amplitudes.push_back(mode_coefficient(concentration(u0), s.c0, s.k1, s.k2));
  run(cfg, u0, [&](const State& u, const DiagnosticRow& row) {
    const GridField c = concentration(u);
    double dev = 0.0;
    for (double ck : c) dev = std::max(dev, std::abs(ck - s.c0));
    if (dev >= kLinearAmplitudeLimit) throw AmplitudeTooLarge("perturbation left the linear regime");
    out.times.push_back(row.t);
    out.amplitudes.push_back(mode_coefficient(c, s.c0, s.k1, s.k2));
  });

  // Least squares for log|a| = log|a0| + sigma t.
  double st = 0, sy = 0, stt = 0, sty = 0;
  const double n = static_cast<double>(out.times.size());
  for (std::size_t i = 0; i < out.times.size(); ++i) {
    const double y = std::log(std::abs(out.amplitudes[i]));
    st += out.times[i];
    sy += y;
    stt += out.times[i] * out.times[i];
    sty += out.times[i] * y;
  }
  out.sigma_measured = (n * sty - st * sy) / (n * stt - st * st);
  return out;
}

struct SpectrumSummary {
  double khat_centroid = 0.0;  // power-weighted mean of k1^2 + k2^2
  int khat_peak = 0;           // shell k1^2 + k2^2 with the most power
  double power = 0.0;          // total power without the mean
};

/// Cosine-mode power spectrum of c (mean removed), summarised by shells of
/// constant k1^2 + k2^2.
inline SpectrumSummary cosine_spectrum_summary(const GridField& c) {
  const Grid& g = c.grid();
  CosineTransform dct(g);
  std::vector<double> coef(g.size());
  dct.forward(c.span(), coef);
  std::vector<double> shell(static_cast<std::size_t>(2 * g.M() * g.M() + 1), 0.0);
  SpectrumSummary s;
  double weighted = 0.0;
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) {
      if (i == 0 && j == 0) continue;
      // The unnormalised DCT-II coefficient is 2^dim times sum(c phi), and
      // sum(phi^2) = M^dim / 2 per nonzero wavenumber.
      const double norm = (i == 0 ? 1.0 : 0.5) * (g.dim() == 2 ? (j == 0 ? 1.0 : 0.5) : 1.0) *
                          std::pow(static_cast<double>(g.M()), g.dim());
      const double proj = coef[g.index(i, j)] / std::pow(2.0, g.dim());
      const double p = proj * proj / norm;
      const int khat = i * i + j * j;
      shell[static_cast<std::size_t>(khat)] += p;
      s.power += p;
      weighted += p * khat;
    }
  s.khat_centroid = s.power > 0.0 ? weighted / s.power : 0.0;
  s.khat_peak = static_cast<int>(std::max_element(shell.begin(), shell.end()) - shell.begin());
  return s;
}

}  // namespace chns
