#ifndef OSCIMAX_NORMS_HPP
#define OSCIMAX_NORMS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "oscimax/error.hpp"
#include "oscimax/spectral.hpp"

namespace oscimax {

/// (1+|xi|^2)^s (log(2+|xi|^2))^{log_exponent}, or |xi|^{2s} when homogeneous.
struct SobolevWeight {
  double s = 0.0;
  bool homogeneous = false;
  double log_exponent = 0.0;

  SobolevWeight() = default;
  SobolevWeight(double s_, bool homogeneous_, double log_exponent_ = 0.0)
      : s(s_), homogeneous(homogeneous_), log_exponent(log_exponent_) {
    if (log_exponent < 0.0) throw PreconditionError("log exponent must be nonnegative");
    if (homogeneous && log_exponent != 0.0) throw PreconditionError("log factor only combines with the inhomogeneous weight");
  }
  static SobolevWeight inhomogeneous(double s, double log_exponent = 0.0) { return {s, false, log_exponent}; }
  static SobolevWeight homog(double s) { return {s, true, 0.0}; }

  /// Squared weight at |xi|^2 = r2.
  double squared(double r2) const {
    if (homogeneous) return r2 == 0.0 ? (s == 0.0 ? 1.0 : (s > 0.0 ? 0.0 : std::numeric_limits<double>::infinity()))
                                      : std::pow(r2, s);
    double w = std::pow(1.0 + r2, s);
    if (log_exponent != 0.0) w *= std::pow(std::log(2.0 + r2), log_exponent);
    return w;
  }
};

namespace detail {

// Average of |xi|^{2s} over the ball whose volume equals one frequency cell.
inline double origin_cell_weight(double s, std::size_t n, double cell_volume) {
  const double nd = double(n);
  const double unit_ball = std::pow(kPi, nd / 2.0) / std::tgamma(nd / 2.0 + 1.0);
  const double r = std::pow(cell_volume / unit_ball, 1.0 / nd);
  return nd / (nd + 2.0 * s) * std::pow(r, 2.0 * s);
}

}  // namespace detail

/// (int w(xi)^2 |F(xi)|^2 dxi)^{1/2} by the trapezoid rule.
inline double sobolev_norm(const SpectralField& F, const SobolevWeight& w) {
  require_rep(F, Representation::frequency, "sobolev_norm");
  const auto& g = F.grid;
  const std::size_t n = g.dim();
  double acc = 0.0;
  for (std::size_t p = 0; p < F.size(); ++p) {
    const double m2 = std::norm(F[p]);
    if (m2 == 0.0) continue;
    auto xi = g.frequency(p);
    double r2 = 0.0;
    for (double v : xi) r2 += v * v;
    if (w.homogeneous && r2 == 0.0 && w.s < 0.0) {
      if (w.s <= -double(n) / 2.0) throw DivergenceError("homogeneous weight with s <= -n/2 and F(0) != 0");
      acc += m2 * detail::origin_cell_weight(w.s, n, g.freq_cell_volume());
      continue;
    }
    acc += m2 * w.squared(r2);
  }
  return std::sqrt(acc * g.freq_cell_volume());
}

/// Product weight prod_j w_j(xi_j)^2 with one weight per axis.
inline double sobolev_norm(const SpectralField& F, const std::vector<SobolevWeight>& axis_weights) {
  require_rep(F, Representation::frequency, "sobolev_norm");
  require_same_dim(axis_weights.size(), F.grid.dim(), "sobolev_norm");
  const auto& g = F.grid;
  double acc = 0.0;
  for (std::size_t p = 0; p < F.size(); ++p) {
    const double m2 = std::norm(F[p]);
    if (m2 == 0.0) continue;
    auto xi = g.frequency(p);
    double w = 1.0;
    for (std::size_t j = 0; j < xi.size(); ++j) {
      const auto& wj = axis_weights[j];
      if (wj.homogeneous && xi[j] == 0.0 && wj.s < 0.0) {
        if (wj.s <= -0.5) throw DivergenceError("homogeneous axis weight with s <= -1/2 and F(0) != 0");
        w *= detail::origin_cell_weight(wj.s, 1, g.axis(j).dxi());
      } else {
        w *= wj.squared(xi[j] * xi[j]);
      }
    }
    acc += m2 * w;
  }
  return std::sqrt(acc * g.freq_cell_volume());
}

/// Sobolev norm of a tensor product f^(xi) = prod_j F_j(xi_j) given by its 1D
/// factors; only the product of the factors' supports is visited.
inline double sobolev_norm_tensor(const std::vector<SpectralField>& factors, const SobolevWeight& w) {
  if (factors.empty()) throw DimensionError("tensor norm needs at least one factor");
  struct Node {
    double xi;
    double m2;
  };
  std::vector<std::vector<Node>> nodes;
  double cell = 1.0;
  for (const auto& F : factors) {
    require_rep(F, Representation::frequency, "sobolev_norm_tensor");
    require_same_dim(F.grid.dim(), 1, "sobolev_norm_tensor");
    std::vector<Node> nz;
    for (std::size_t l = 0; l < F.size(); ++l)
      if (F[l] != cplx(0.0)) nz.push_back({F.grid.axis(0).xi(l), std::norm(F[l])});
    nodes.push_back(std::move(nz));
    cell *= F.grid.axis(0).dxi();
  }
  const std::size_t n = factors.size();
  double acc = 0.0;
  std::vector<std::size_t> idx(n, 0);
  for (const auto& nz : nodes)
    if (nz.empty()) return 0.0;
  while (true) {
    double r2 = 0.0, m2 = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      r2 += nodes[j][idx[j]].xi * nodes[j][idx[j]].xi;
      m2 *= nodes[j][idx[j]].m2;
    }
    if (w.homogeneous && r2 == 0.0 && w.s < 0.0) {
      if (w.s <= -double(n) / 2.0) throw DivergenceError("homogeneous weight with s <= -n/2 and F(0) != 0");
      acc += m2 * detail::origin_cell_weight(w.s, n, cell);
    } else {
      acc += m2 * w.squared(r2);
    }
    std::size_t j = n;
    while (j-- > 0) {
      if (++idx[j] < nodes[j].size()) break;
      idx[j] = 0;
    }
    if (j == std::size_t(-1)) break;
  }
  return std::sqrt(acc * cell);
}

/// Lebesgue exponent with a distinguished infinity.
struct Lq {
  double q = 2.0;
  bool infinite = false;

  Lq() = default;
  explicit Lq(double q_) : q(q_) {
    if (std::isinf(q_)) {
      infinite = true;
      return;
    }
    if (!(q_ >= 1.0)) throw RangeError("L^q exponent must be >= 1");
  }
  static Lq infinity() {
    Lq e;
    e.infinite = true;
    e.q = std::numeric_limits<double>::infinity();
    return e;
  }
};

/// Half-open box prod_j [lo_j, hi_j).
struct Box {
  std::vector<double> lo, hi;
  bool contains(const std::vector<double>& x) const {
    for (std::size_t j = 0; j < x.size(); ++j)
      if (x[j] < lo[j] || x[j] >= hi[j]) return false;
    return true;
  }
};

/// Trapezoid L^q norm over the grid, optionally restricted to a box.
inline double lq_norm(const SpectralField& f, Lq q, const std::optional<Box>& region = std::nullopt) {
  require_rep(f, Representation::spatial, "lq_norm");
  const auto& g = f.grid;
  if (region) {
    require_same_dim(region->lo.size(), g.dim(), "lq_norm region");
    require_same_dim(region->hi.size(), g.dim(), "lq_norm region");
  }
  double acc = 0.0;
  for (std::size_t p = 0; p < f.size(); ++p) {
    if (region && !region->contains(g.point(p))) continue;
    const double a = std::abs(f[p]);
    if (q.infinite)
      acc = std::max(acc, a);
    else
      acc += std::pow(a, q.q);
  }
  if (q.infinite) return acc;
  return std::pow(acc * g.cell_volume(), 1.0 / q.q);
}

/// Same for a real sample array on grid g.
inline double lq_norm(const std::vector<double>& v, const UniformGrid& g, Lq q,
                      const std::optional<Box>& region = std::nullopt) {
  SpectralField f(g, Representation::spatial);
  for (std::size_t p = 0; p < v.size(); ++p) f[p] = v[p];
  return lq_norm(f, q, region);
}

}  // namespace oscimax

#endif  // OSCIMAX_NORMS_HPP
