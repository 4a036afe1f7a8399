#ifndef OSCIMAX_SECTION5_HPP
#define OSCIMAX_SECTION5_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "oscimax/counterexamples.hpp"
#include "oscimax/error.hpp"
#include "oscimax/fft.hpp"
#include "oscimax/maximal.hpp"
#include "oscimax/norms.hpp"
#include "oscimax/parallel.hpp"
#include "oscimax/spectral.hpp"

namespace oscimax {

/// A measurable choice x -> t(x) in (0,1) on |x| >= 2, with its frequency windows.
struct WindowMap {
  std::function<double(double)> t;

  WindowMap() = default;
  explicit WindowMap(std::function<double(double)> fn) : t(std::move(fn)) {}

  static WindowMap constant(double t0) {
    if (!(t0 > 0.0 && t0 < 1.0)) throw RangeError("t must lie in (0,1)");
    return WindowMap([t0](double) { return t0; });
  }
  /// Nearest-node lookup into a 1D time selection.
  static WindowMap from_selection(const TimeSelection& sel) {
    require_same_dim(sel.grid.dim(), 1, "WindowMap::from_selection");
    const Axis ax = sel.grid.axis(0);
    return WindowMap([sel, ax](double x) {
      auto k = std::llround(x / ax.h + double(ax.m / 2));
      k = std::clamp<long long>(k, 0, (long long)ax.m - 1);
      return sel.time(std::size_t(k), 0);
    });
  }

  double at(double x) const {
    if (std::abs(x) < 2.0) throw PreconditionError("windows are defined only for |x| >= 2");
    const double v = t(x);
    if (!(v > 0.0 && v < 1.0)) throw RangeError("t(x) must lie in (0,1)");
    return v;
  }
  /// Window of the adjoint-side operator L: [(x-1)/(2t), (x+1)/(2t)].
  std::pair<double, double> window(double x) const {
    const double tx = at(x);
    return {(x - 1.0) / (2.0 * tx), (x + 1.0) / (2.0 * tx)};
  }
  /// Window where the phase t xi^2 + x xi is nearly stationary: [(-x-1)/(2t), (-x+1)/(2t)].
  std::pair<double, double> s_window(double x) const {
    const double tx = at(x);
    return {(-x - 1.0) / (2.0 * tx), (-x + 1.0) / (2.0 * tx)};
  }
};

/// Exact integrals of the piecewise-linear interpolant of grid samples.
class CumulativeLinear {
 public:
  CumulativeLinear(double x0, double h, std::vector<cplx> v) : x0_(x0), h_(h), v_(std::move(v)), c_(v_.size(), 0.0) {
    for (std::size_t k = 1; k < v_.size(); ++k) c_[k] = c_[k - 1] + 0.5 * h_ * (v_[k - 1] + v_[k]);
  }
  double lo() const { return x0_; }
  double hi() const { return x0_ + h_ * double(v_.size() - 1); }
  /// int_{lo()}^{x}
  cplx primitive(double x) const {
    if (x < lo() || x > hi()) throw RangeError("integration limit outside the sampled range");
    const double u = (x - x0_) / h_;
    std::size_t k = std::min<std::size_t>(std::size_t(u), v_.size() - 2);
    const double r = u - double(k);
    const cplx slope = v_[k + 1] - v_[k];
    return c_[k] + h_ * (v_[k] * r + 0.5 * slope * r * r);
  }
  cplx integral(double a, double b) const { return primitive(b) - primitive(a); }

 private:
  double x0_, h_;
  std::vector<cplx> v_;
  std::vector<cplx> c_;
};

inline CumulativeLinear cumulative_of(const SpectralField& F) {
  require_rep(F, Representation::frequency, "cumulative_of");
  require_same_dim(F.grid.dim(), 1, "cumulative_of");
  const auto& ax = F.grid.axis(0);
  return CumulativeLinear(ax.xi(0), ax.dxi(), F.values);
}

/// Lf(x) = int_{window(x)} f^(xi) dxi at every spatial node of F's grid with
/// |x| >= 2 inside region (others are zero). Returned as a spatial field.
inline SpectralField apply_L(const SpectralField& F, const WindowMap& w,
                             std::optional<std::pair<double, double>> region = std::nullopt) {
  const auto cum = cumulative_of(F);
  const auto& ax = F.grid.axis(0);
  SpectralField out(F.grid, Representation::spatial);
  for (std::size_t k = 0; k < ax.m; ++k) {
    const double x = ax.x(k);
    if (std::abs(x) < 2.0) continue;
    if (region && (x < region->first || x > region->second)) continue;
    const auto [lo, hi] = w.window(x);
    if (lo < cum.lo() || hi > cum.hi()) throw RangeError("window exceeds the grid frequency extent");
    out[k] = cum.integral(lo, hi);
  }
  return out;
}

/// K(x,y) = int over window(x) cap window(y) of dxi/|xi|.
inline double ttstar_kernel(double x, double y, const WindowMap& w) {
  const auto [a1, a2] = w.window(x);
  const auto [b1, b2] = w.window(y);
  const double lo = std::max(a1, b1), hi = std::min(a2, b2);
  if (!(hi > lo)) return 0.0;
  if (lo > 0.0) return std::log(hi / lo);
  if (hi < 0.0) return std::log(lo / hi);
  throw DivergenceError("window intersection contains the origin");
}

/// Upper bound log((|x|+1)/(|x|-1)) that the kernel obeys in each variable.
inline double ttstar_bound(double x, double y) {
  const auto b = [](double z) { return std::log((std::abs(z) + 1.0) / (std::abs(z) - 1.0)); };
  return 2.0 * std::min(b(x), b(y));
}

/// Cell-exact Riesz potential weights: w_k = int over cell k of |u|^{r-1} du.
inline std::vector<double> riesz_weights(std::size_t count, double h, double r) {
  std::vector<double> w(count);
  w[0] = 2.0 * std::pow(0.5 * h, r) / r;
  for (std::size_t k = 1; k < count; ++k)
    w[k] = std::pow(h, r) * (std::pow(double(k) + 0.5, r) - std::pow(double(k) - 0.5, r)) / r;
  return w;
}

/// I_r h(x) = int |x-y|^{r-1} h(y) dy on the axis nodes, for 0 < r < 1.
inline std::vector<double> riesz_potential(const std::vector<double>& hv, const Axis& ax, double r) {
  if (!(r > 0.0 && r < 1.0)) throw RangeError("Riesz potential order must lie in (0,1)");
  if (hv.size() != ax.m) throw DimensionError("sample count does not match the axis");
  const std::size_t m = ax.m;
  const auto w = riesz_weights(m, ax.h, r);
  std::vector<std::size_t> nz;
  for (std::size_t k = 0; k < m; ++k)
    if (hv[k] != 0.0) nz.push_back(k);
  std::vector<double> out(m, 0.0);
  if (double(nz.size()) * double(m) < 64.0 * double(m) * std::log2(double(m))) {
    for (std::size_t k = 0; k < m; ++k) {
      double acc = 0.0;
      for (std::size_t j : nz) acc += w[k > j ? k - j : j - k] * hv[j];
      out[k] = acc;
    }
    return out;
  }
  // circular convolution of length 2m holds the full linear convolution
  const std::size_t L = 2 * m;
  std::vector<cplx> a(L, 0.0), b(L, 0.0);
  for (std::size_t k = 0; k < m; ++k) a[k] = hv[k];
  for (std::size_t k = 0; k < m; ++k) {
    b[k] = w[k];
    if (k > 0) b[L - k] = w[k];
  }
  const std::vector<int> dims{int(L)};
  detail::dft_inplace(a, dims, FFTW_FORWARD);
  detail::dft_inplace(b, dims, FFTW_FORWARD);
  for (std::size_t k = 0; k < L; ++k) a[k] *= b[k];
  detail::dft_inplace(a, dims, FFTW_BACKWARD);
  for (std::size_t k = 0; k < m; ++k) out[k] = a[k].real() / double(L);
  return out;
}

struct MajorizationResult {
  double value = 0.0;           // |S_t f(x)|
  double lower = 0.0;           // cos(1/2) int f^
  double phase_variation = 0.0; // max |phi_x(xi) - phi_x(mid)| over the support, mid its midpoint
  bool pass = false;
};

/// For f^ >= 0 supported in the window of x (length <= 1), |S_t f(x)| >= cos(1/2) int f^.
inline MajorizationResult majorization_check(const SpectralField& F, double x, double t) {
  require_rep(F, Representation::frequency, "majorization_check");
  require_same_dim(F.grid.dim(), 1, "majorization_check");
  if (!(t > 0.0 && t < 1.0)) throw RangeError("t must lie in (0,1)");
  const auto& ax = F.grid.axis(0);
  const double lo = (-x - 1.0) / (2.0 * t), hi = (-x + 1.0) / (2.0 * t);
  const double tol = 1e-12 * std::max(1.0, std::abs(hi));
  double mass = 0.0, slo = INFINITY, shi = -INFINITY;
  for (std::size_t l = 0; l < ax.m; ++l) {
    if (F[l] == cplx(0.0)) continue;
    if (F[l].imag() != 0.0 || F[l].real() < 0.0) throw PreconditionError("f^ must be nonnegative");
    const double xi = ax.xi(l);
    if (xi < lo - tol || xi > hi + tol) throw PreconditionError("f^ is not supported in the window of x");
    slo = std::min(slo, xi);
    shi = std::max(shi, xi);
    mass += F[l].real() * ax.dxi();
  }
  if (!(shi >= slo)) throw PreconditionError("f^ vanishes identically");
  if (shi - slo > 1.0 + tol) throw PreconditionError("support longer than 1");
  // phi(xi) - phi(mid) = (xi - mid)(t (xi + mid) + x)
  const double mid = 0.5 * (slo + shi);
  double var = 0.0;
  for (std::size_t l = 0; l < ax.m; ++l)
    if (F[l] != cplx(0.0)) var = std::max(var, std::abs((ax.xi(l) - mid) * (t * (ax.xi(l) + mid) + x)));
  MajorizationResult r;
  r.value = std::abs(evaluate_offgrid(F, DispersionLaw({2.0}), {t}, {x}));
  r.lower = std::cos(0.5) * mass;
  r.phase_variation = var;
  r.pass = r.value >= r.lower;
  return r;
}

/// U*g(x) = sup_R int_{Rx}^{Rx+1} |g(y)| |y|^{-s} dy over a candidate set of R,
/// for x >= 2 (zero elsewhere). Integrals use the exact piecewise-linear interpolant.
struct UstarResult {
  std::vector<double> value;
  std::size_t clipped = 0;  // (x, R) pairs skipped because the window left the grid
};

inline UstarResult apply_Ustar(const std::vector<double>& g, const Axis& ax, double s,
                               const std::vector<double>& R_grid) {
  if (!(s >= 0.0)) throw RangeError("U* needs s >= 0");
  if (R_grid.empty()) throw PreconditionError("U* needs at least one R");
  if (g.size() != ax.m) throw DimensionError("sample count does not match the axis");
  for (double R : R_grid)
    if (!(R > 1.0)) throw RangeError("U* candidates must satisfy R > 1");
  std::vector<cplx> v(ax.m);
  for (std::size_t k = 0; k < ax.m; ++k) {
    const double y = std::abs(ax.x(k));
    v[k] = (g[k] == 0.0) ? 0.0 : std::abs(g[k]) * std::pow(y, -s);
  }
  CumulativeLinear cum(ax.x(0), ax.h, std::move(v));
  UstarResult out;
  out.value.assign(ax.m, 0.0);
  for (std::size_t k = 0; k < ax.m; ++k) {
    const double x = ax.x(k);
    if (x < 2.0) continue;
    double best = 0.0;
    for (double R : R_grid) {
      const double a = R * x, b = R * x + 1.0;
      if (a < cum.lo() || b > cum.hi()) {
        ++out.clipped;
        continue;
      }
      best = std::max(best, std::abs(cum.integral(a, b)));
    }
    out.value[k] = best;
  }
  return out;
}

/// U*g with the sup over every R > 1: sup over window starts u >= x of
/// int_u^{u+1}, u running over grid nodes whose window stays on the grid.
/// g must vanish beyond the grid for this to equal the unrestricted sup.
inline UstarResult apply_Ustar_sup(const std::vector<double>& g, const Axis& ax, double s) {
  if (!(s >= 0.0)) throw RangeError("U* needs s >= 0");
  if (g.size() != ax.m) throw DimensionError("sample count does not match the axis");
  std::vector<cplx> v(ax.m);
  for (std::size_t k = 0; k < ax.m; ++k) {
    const double y = std::abs(ax.x(k));
    v[k] = (g[k] == 0.0) ? 0.0 : std::abs(g[k]) * std::pow(y, -s);
  }
  CumulativeLinear cum(ax.x(0), ax.h, std::move(v));
  UstarResult out;
  out.value.assign(ax.m, 0.0);
  double best = 0.0;
  for (std::size_t k = ax.m; k-- > 0;) {
    const double x = ax.x(k);
    if (x + 1.0 > cum.hi()) {
      ++out.clipped;
      continue;
    }
    if (x < 2.0) break;
    best = std::max(best, std::abs(cum.integral(x, x + 1.0)));
    out.value[k] = best;
  }
  return out;
}

/// Box family quantities: the linearized evolution on [-M,-2] against the H_s norm.
struct BoxRatio {
  double M = 0.0;
  double sf_l2_sq = 0.0;     // int_{-M}^{-2} |S_{t(x)} f(x)|^2
  double min_modulus = 0.0;  // min over [-M,-2] of |S_{t(x)} f(x)|
  double hs_norm_sq = 0.0;
  double ratio() const { return sf_l2_sq / hs_norm_sq; }
};

inline BoxRatio thm6_ratio(double M, double s, std::optional<Axis> axis = std::nullopt) {
  const auto fam = gen_box(M, s, axis);
  const auto& F = fam.factors[0];
  const auto& ax = F.grid.axis(0);
  const SparseSpectrum1D sp(F, 2.0);
  std::vector<std::size_t> pts;
  for (std::size_t k = 0; k < ax.m; ++k)
    if (ax.x(k) >= -M && ax.x(k) <= -2.0) pts.push_back(k);
  std::vector<double> mod(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    const std::size_t k = pts[i];
    mod[i] = std::abs(sp(ax.x(k), fam.selection->time(k, 0)));
  });
  BoxRatio r;
  r.M = M;
  r.min_modulus = mod.empty() ? 0.0 : *std::min_element(mod.begin(), mod.end());
  // trapezoid over the closed node range
  for (std::size_t i = 0; i < mod.size(); ++i) {
    const double wgt = (i == 0 || i + 1 == mod.size()) ? 0.5 : 1.0;
    r.sf_l2_sq += wgt * mod[i] * mod[i] * ax.h;
  }
  const double n = sobolev_norm(F, SobolevWeight::inhomogeneous(s));
  r.hs_norm_sq = n * n;
  return r;
}

}  // namespace oscimax

#endif  // OSCIMAX_SECTION5_HPP
