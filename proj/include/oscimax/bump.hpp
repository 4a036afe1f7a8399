#ifndef OSCIMAX_BUMP_HPP
#define OSCIMAX_BUMP_HPP

#include <cmath>

namespace oscimax {

/// Canonical cutoff: exp(1 - 1/(1 - (u/2)^2)) on |u| < 2, zero elsewhere.
/// Smooth, even, mu(0) = 1, values in (0, 1] on its support.
inline double cutoff(double u) {
  const double v = 0.25 * u * u;
  if (v >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - v));
}

/// d/du of cutoff(u).
inline double cutoff_derivative(double u) {
  const double v = 0.25 * u * u;
  if (v >= 1.0) return 0.0;
  const double w = 1.0 - v;
  // d/du [1 - 1/w] = -(u/2) / w^2
  return cutoff(u) * (-0.5 * u / (w * w));
}

/// The same bump rescaled to the support (-1, 1): cutoff(2u).
inline double unit_bump(double u) { return cutoff(2.0 * u); }

}  // namespace oscimax

#endif  // OSCIMAX_BUMP_HPP
