#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace dnfa {

using Vector = std::vector<double>;

/// Scores closer than this to the maximum count as tied; lowest index wins.
inline constexpr double kTieTolerance = 1e-12;

inline double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(std::span<const double> v) { return std::sqrt(dot(v, v)); }

/// Unit-length copy of v; the zero vector maps to itself.
inline Vector normalize(std::span<const double> v) {
  Vector out(v.begin(), v.end());
  const double n = norm(v);
  if (n > 0.0) {
    for (double& c : out) c /= n;
  }
  return out;
}

}  // namespace dnfa
