#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "chns/core/errors.hpp"

namespace chns {

/// Explicit tableau (ct, at, b) paired with a diagonally implicit one (c, a, b).
/// Both share the weights b.
struct ButcherPair {
  std::string name;
  int stages = 0;
  std::vector<std::vector<double>> at;  // strictly lower triangular
  std::vector<double> ct;
  std::vector<std::vector<double>> a;  // lower triangular
  std::vector<double> c;
  std::vector<double> b;

  bool stiffly_accurate() const {
    for (int j = 0; j < stages; ++j)
      if (a[static_cast<std::size_t>(stages - 1)][static_cast<std::size_t>(j)] != b[static_cast<std::size_t>(j)])
        return false;
    return true;
  }
};

/// "ee-ie": explicit/implicit Euler.  "dirksa": the two-stage second-order
/// stiffly accurate DIRK with s = 1/sqrt(2) and its explicit partner.
/// "explicit-euler": a single explicit stage (a_11 = 0), for stability studies.
inline ButcherPair tableau(const std::string& name) {
  if (name == "ee-ie") return {name, 1, {{0.0}}, {0.0}, {{1.0}}, {1.0}, {1.0}};
  if (name == "dirksa") {
    const double s = 1.0 / std::sqrt(2.0);
    return {name,
            2,
            {{0.0, 0.0}, {1.0 + s, 0.0}},
            {0.0, 1.0 + s},
            {{1.0 - s, 0.0}, {s, 1.0 - s}},
            {1.0 - s, 1.0},
            {s, 1.0 - s}};
  }
  if (name == "explicit-euler") return {name, 1, {{0.0}}, {0.0}, {{0.0}}, {0.0}, {1.0}};
  throw UnknownScheme(name);
}

}  // namespace chns
