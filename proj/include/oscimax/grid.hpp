#ifndef OSCIMAX_GRID_HPP
#define OSCIMAX_GRID_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "oscimax/error.hpp"

namespace oscimax {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Exponents a = (a_1, ..., a_n) of the phase t_1|xi_1|^a_1 + ... + t_n|xi_n|^a_n.
class DispersionLaw {
 public:
  explicit DispersionLaw(std::vector<double> exponents) : a_(std::move(exponents)) {
    if (a_.empty()) throw DimensionError("dispersion law needs at least one exponent");
    for (double aj : a_) {
      if (!(aj > 1.0)) throw RangeError("dispersion exponent must exceed 1, got " + std::to_string(aj));
    }
  }
  static DispersionLaw uniform(std::size_t n, double a) { return DispersionLaw(std::vector<double>(n, a)); }

  std::size_t dim() const { return a_.size(); }
  double operator[](std::size_t j) const { return a_[j]; }
  const std::vector<double>& exponents() const { return a_; }
  /// |a| = a_1 + ... + a_n
  double abs() const { return std::accumulate(a_.begin(), a_.end(), 0.0); }

 private:
  std::vector<double> a_;
};

/// One symmetric axis: nodes x_k = (k - m/2) h, k = 0..m-1, and the dual
/// frequency nodes xi_l = (l - m/2) dxi with dxi = 2 pi / (m h).
struct Axis {
  std::size_t m = 0;
  double h = 0.0;

  Axis() = default;
  Axis(std::size_t m_, double h_) : m(m_), h(h_) {
    if (m < 4 || m % 2 != 0) throw PreconditionError("axis point count must be even and >= 4");
    if (!(h > 0.0)) throw PreconditionError("axis spacing must be positive");
  }
  /// m points covering [-half_extent, half_extent).
  static Axis symmetric(std::size_t m, double half_extent) { return Axis(m, 2.0 * half_extent / double(m)); }
  /// Axis with the requested frequency spacing and frequency half-extent of at least xi_max.
  static Axis for_frequency(double dxi, double xi_max) {
    std::size_t m = 4;
    while (double(m / 2) * dxi < xi_max) m *= 2;
    return Axis(m, kTwoPi / (double(m) * dxi));
  }

  double dxi() const { return kTwoPi / (double(m) * h); }
  double x(std::size_t k) const { return (double(k) - double(m / 2)) * h; }
  double xi(std::size_t l) const { return (double(l) - double(m / 2)) * dxi(); }
  double extent() const { return double(m / 2) * h; }
  double freq_extent() const { return double(m / 2) * dxi(); }

  bool operator==(const Axis& o) const { return m == o.m && h == o.h; }
};

/// Tensor product of symmetric axes; values are stored row-major with axis 0 slowest.
class UniformGrid {
 public:
  UniformGrid() = default;
  explicit UniformGrid(std::vector<Axis> axes) : axes_(std::move(axes)) {
    if (axes_.empty()) throw DimensionError("grid needs at least one axis");
  }
  static UniformGrid line(std::size_t m, double half_extent) { return UniformGrid({Axis::symmetric(m, half_extent)}); }
  static UniformGrid square(std::size_t n, std::size_t m, double half_extent) {
    return UniformGrid(std::vector<Axis>(n, Axis::symmetric(m, half_extent)));
  }

  std::size_t dim() const { return axes_.size(); }
  const Axis& axis(std::size_t j) const { return axes_[j]; }
  const std::vector<Axis>& axes() const { return axes_; }
  std::size_t size() const {
    std::size_t s = 1;
    for (const auto& ax : axes_) s *= ax.m;
    return s;
  }
  double cell_volume() const {
    double v = 1.0;
    for (const auto& ax : axes_) v *= ax.h;
    return v;
  }
  double freq_cell_volume() const {
    double v = 1.0;
    for (const auto& ax : axes_) v *= ax.dxi();
    return v;
  }
  /// Multi-index of flat position p.
  std::vector<std::size_t> unravel(std::size_t p) const {
    std::vector<std::size_t> idx(dim());
    for (std::size_t j = dim(); j-- > 0;) {
      idx[j] = p % axes_[j].m;
      p /= axes_[j].m;
    }
    return idx;
  }
  std::vector<double> point(std::size_t p) const {
    auto idx = unravel(p);
    std::vector<double> x(dim());
    for (std::size_t j = 0; j < dim(); ++j) x[j] = axes_[j].x(idx[j]);
    return x;
  }
  std::vector<double> frequency(std::size_t p) const {
    auto idx = unravel(p);
    std::vector<double> xi(dim());
    for (std::size_t j = 0; j < dim(); ++j) xi[j] = axes_[j].xi(idx[j]);
    return xi;
  }

  bool operator==(const UniformGrid& o) const { return axes_ == o.axes_; }

 private:
  std::vector<Axis> axes_;
};

/// Node values of the indicator of [lo, hi] as the covered fraction of each
/// node's cell [x - h/2, x + h/2); the trapezoid integral is exactly hi - lo.
inline std::vector<double> indicator_cells(std::size_t m, double spacing, double lo, double hi) {
  std::vector<double> v(m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    const double c = (double(k) - double(m / 2)) * spacing;
    const double a = std::max(lo, c - 0.5 * spacing), b = std::min(hi, c + 0.5 * spacing);
    if (b > a) v[k] = (b - a) / spacing;
  }
  return v;
}

/// t = (t_1, ..., t_n)
using TimeVector = std::vector<double>;

inline void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                         std::to_string(b) + ")");
  }
}

}  // namespace oscimax

#endif  // OSCIMAX_GRID_HPP
