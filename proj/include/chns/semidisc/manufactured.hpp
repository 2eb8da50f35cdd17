#pragma once

// Prescribed smooth solution on (0,1)^2 that satisfies the wall conditions,
// together with the source terms that make it an exact solution of the 2D
// system.  The source expressions were generated symbolically and are checked
// at run time by the unit tests against a finite-difference evaluation of
// the PDE residual.

#include <array>
#include <cmath>
#include <numbers>

#include "chns/core/fields.hpp"

namespace chns {

struct ManufacturedSolution {
  /// (rho, v_1, v_2, c) at (x, y, t).
  static std::array<double, 4> primitive(double x, double y, double t) {
    constexpr double pi = std::numbers::pi;
    const double rho = std::cos(2 * pi * x) * std::cos(pi * y) * (t + 1) / 10 + 1.25;
    const double v1 = -std::sin(pi * x) * std::sin(pi * y) * (2 * t * t - 1);
    const double v2 = std::sin(pi * x) * std::sin(2 * pi * y) * (t * t + 1);
    const double c = 0.75 - std::cos(pi * x) * std::cos(pi * y) * (t - 1) / 10;
    return {rho, v1, v2, c};
  }

  /// Conserved variables (rho, rho v_1, rho v_2, rho c).
  static std::array<double, 4> conserved(double x, double y, double t) {
    const auto p = primitive(x, y, t);
    return {p[0], p[0] * p[1], p[0] * p[2], p[0] * p[3]};
  }

  /// Source terms to add to the right-hand sides of the four equations.
  static std::array<double, 4> source(double x, double y, double t, const PhysParams& params) {
    constexpr double pi = std::numbers::pi;
    const double nu = params.nu;
    const double lambda_ = params.lambda;
    const double eps = params.eps;
    const double G = params.G;
    const double gamma = params.gamma;
    std::array<double, 4> f{};
    const double x0 = pi*x;
    const double x1 = 2*x0;
    const double x2 = std::cos(x1);
    const double x3 = pi*y;
    const double x4 = std::cos(x3);
    const double x5 = 2*x4;
    const double x6 = x2*x5;
    const double x7 = std::pow(t, 2);
    const double x8 = x7 + 1;
    const double x9 = std::sin(x0);
    const double x10 = 2*x3;
    const double x11 = std::sin(x10);
    const double x12 = x11*x9;
    const double x13 = x12*x8;
    const double x14 = std::sin(x3);
    const double x15 = pi*x14;
    const double x16 = x13*x15;
    const double x17 = t + 1;
    const double x18 = x17*x2;
    const double x19 = 2*x18;
    const double x20 = 2*x7 - 1;
    const double x21 = x14*x20;
    const double x22 = x21*x9;
    const double x23 = x22*x4;
    const double x24 = std::sin(x1);
    const double x25 = x17*x24;
    const double x26 = pi*x25;
    const double x27 = 4*x26;
    const double x28 = std::cos(x10);
    const double x29 = x28*x8;
    const double x30 = 2*x29;
    const double x31 = x17*x6 + 25;
    const double x32 = pi*x31;
    const double x33 = std::cos(x0);
    const double x34 = x32*x33;
    const double x35 = x21*x34;
    const double x36 = std::pow(pi, 2);
    const double x37 = nu*x36;
    const double x38 = (1.0/10.0)*x2;
    const double x39 = t*x31;
    const double x40 = std::pow(pi, 3);
    const double x41 = t - 1;
    const double x42 = std::pow(x41, 2);
    const double x43 = std::pow(x14, 2);
    const double x44 = std::pow(x4, 2);
    const double x45 = eps*x33;
    const double x46 = (1.0/100.0)*x40*x42;
    const double x47 = std::pow(x20, 2);
    const double x48 = std::pow(x9, 2);
    const double x49 = (1.0/5.0)*x48;
    const double x50 = x26*x4;
    const double x51 = x36*(lambda_ + nu);
    const double x52 = (1.0/20.0)*x31;
    const double x53 = x11*x8;
    const double x54 = 1.0/x31;
    const double x55 = gamma*x54*std::pow((1.0/20.0)*x31, gamma);
    const double x56 = std::pow(x33, 2);
    const double x57 = eps*x14*x4*x46;
    const double x58 = std::pow(x8, 2);
    const double x59 = x33*x4;
    const double x60 = x11*x49;
    const double x61 = x33*x41;
    const double x62 = x5*x61 - 15;
    const double x63 = x4*x62;
    const double x64 = 20*x2;
    const double x65 = 20*x31;
    const double x66 = x41*x48;
    const double x67 = pi*x65;
    const double x68 = 3*std::pow(x62, 2);
    const double x69 = 16000*x54;
    const double x70 = x36*x4;
    const double x71 = eps*x70;
    const double x72 = std::pow(x31, -2);
    const double x73 = eps*x18*x36*x72;
    const double x74 = 128000*x71;
    const double x75 = std::pow(x17, 2)/std::pow(x31, 3);
    const double x76 = x36*x45;
    f[0] = -1.0/20.0*x16*x19 + (1.0/20.0)*x23*x27 + (1.0/20.0)*x30*x32*x9 - 1.0/20.0*x35 + (1.0/20.0)*x6;
    f[1] = (1.0/100.0)*eps*x33*x40*x42*x9*(x43 + x44) + (1.0/10.0)*pi*x11*x17*x2*x20*x43*x48*x8 - 1.0/5.0*x14*x39*x9 - pi*x20*x4*x48*x52*x53 - 1.0/10.0*x21*x29*x32*x48 - 2*x22*x37 - x23*x38 - x27*x4*x55 + (1.0/10.0)*pi*x31*x33*x43*x47*x9 - x43*x47*x49*x50 - x45*x46*x9*(x43 - x44) - x51*(x22 + x30*x33);
    f[2] = -G*x52 - std::pow(x11, 2)*x15*x17*x38*x48*x58 + (1.0/10.0)*x12*x39 + 5*x13*x37 + x13*x38*x4 - x15*x19*x55 + x21*x50*x60*x8 - 1.0/10.0*x22*x34*x53 + x28*x32*x58*x60 + x51*(4*x13 + x20*x59) - x57*(x48 - x56) + x57*(x48 + x56);
    f[3] = (1.0/4000.0)*x13*x14*x61*x67 + (1.0/4000.0)*x16*x17*x62*x64 - 1.0/4000.0*x21*x4*x66*x67 - 1.0/100.0*x22*x26*x63 - 1.0/4000.0*x29*x62*x67*x9 + (1.0/400.0)*x35*x62 + (1.0/4000.0)*x36*x61*(std::pow(x2, 2)*x43*x74*x75 - x4*x68 + 400*x4 + 12*x43*x61*x62 - 64000*x43*x73 + 32000*x44*x73 - x69*x71) + (1.0/4000.0)*x41*x70*(512000*std::pow(x24, 2)*x44*x75*x76 - x25*x72*x74*x9 - x33*x68 + 400*x33 + 128000*x59*x73 + 12*x63*x66 - x69*x76) - 1.0/4000.0*x59*x65 - 1.0/4000.0*x63*x64;
    return f;
  }

  static State sample(const Grid& g, double t) {
    State s(g);
    for (int i = 0; i < g.nx(); ++i)
      for (int j = 0; j < g.ny(); ++j) {
        const auto u = conserved(g.x(i), g.y(j), t);
        const std::size_t k = g.index(i, j);
        s.rho[k] = u[0];
        s.m[0][k] = u[1];
        s.m[1][k] = u[2];
        s.q[k] = u[3];
      }
    return s;
  }
};

}  // namespace chns
