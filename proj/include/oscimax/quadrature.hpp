#ifndef OSCIMAX_QUADRATURE_HPP
#define OSCIMAX_QUADRATURE_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <queue>
#include <vector>

#include "oscimax/error.hpp"
#include "oscimax/grid.hpp"

namespace oscimax::quad {

using cplx = std::complex<double>;

struct Rule {
  std::vector<double> x, w;  // on [-1, 1]
};

/// Gauss-Legendre rule with n nodes (Newton iteration on the three-term recurrence).
inline const Rule& gauss_legendre(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, Rule> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (double(i) + 0.75) / (double(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (std::size_t k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * double(k) - 1.0) * z * p1 - (double(k) - 1.0) * p2) / double(k);
      }
      dp = double(n) * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    double p0 = 1.0, p1 = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * double(k) - 1.0) * z * p1 - (double(k) - 1.0) * p2) / double(k);
    }
    dp = double(n) * (z * p0 - p1) / (z * z - 1.0);
    r.x[i] = -z;
    r.x[n - 1 - i] = z;
    r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return cache.emplace(n, std::move(r)).first->second;
}

struct Cheb {
  std::vector<double> x;  // Chebyshev-Lobatto points on [-1,1], descending
  Eigen::MatrixXd D;      // differentiation matrix
};

inline const Cheb& chebyshev(std::size_t k) {
  static std::mutex mu;
  static std::map<std::size_t, Cheb> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;
  Cheb c;
  const std::size_t N = k - 1;
  c.x.resize(k);
  for (std::size_t j = 0; j < k; ++j) c.x[j] = std::cos(kPi * double(j) / double(N));
  c.D = Eigen::MatrixXd::Zero(Eigen::Index(k), Eigen::Index(k));
  auto cw = [&](std::size_t j) { return ((j == 0 || j == N) ? 2.0 : 1.0) * ((j % 2) ? -1.0 : 1.0); };
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (i != j) c.D(Eigen::Index(i), Eigen::Index(j)) = cw(i) / cw(j) / (c.x[i] - c.x[j]);
  for (std::size_t i = 0; i < k; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < k; ++j)
      if (i != j) s += c.D(Eigen::Index(i), Eigen::Index(j));
    c.D(Eigen::Index(i), Eigen::Index(i)) = -s;
  }
  return cache.emplace(k, std::move(c)).first->second;
}

/// Integrand e^{i phase(s)} amp(s) on a chain [lo, hi].
struct Oscillator {
  std::function<double(double)> phase;
  std::function<double(double)> dphase;
  std::function<double(double)> amp;
  /// Zero of dphase inside the chain, NaN if none.
  double stationary = std::numeric_limits<double>::quiet_NaN();
  /// If set, panels touching lo use s = lo + (b - lo) v^grade.
  bool graded_lo = false;
  double grade = 2.0;
};

struct ChainOptions {
  double tol = 1e-10;  // absolute target on the summed panel error estimates
  std::size_t max_panels = 40000;
  std::size_t nodes_per_period = 20;
  std::size_t min_nodes = 32;
  std::size_t levin_points = 16;
  double gl_max_variation = 16.0 * kPi;
  /// Drop the Levin boundary term at the chain's lower / upper end.
  bool reduce_lo = false;
  bool reduce_hi = false;
};

struct PanelValue {
  cplx value{0.0};
  cplx left{0.0};   // -p(a) e^{i phase(a)} when levin
  cplx right{0.0};  // p(b) e^{i phase(b)} when levin
  bool levin = false;
  bool ok = false;
};

struct Panel {
  double a, b;
  PanelValue whole;  // single-rule estimate
  PanelValue lo, hi;  // estimates on the halves
  double err;
};

struct ChainResult {
  cplx value{0.0};
  double err = 0.0;
  std::size_t panels = 0;
  std::vector<std::pair<double, double>> breaks;  // accepted panels
};

namespace detail {

inline std::size_t round_nodes(std::size_t n) {
  static const std::size_t sizes[] = {32, 48, 64, 96, 128, 160, 192, 256};
  for (auto s : sizes)
    if (n <= s) return s;
  return 256;
}

inline PanelValue gl(const Oscillator& f, double a, double b, std::size_t n) {
  const Rule& r = gauss_legendre(round_nodes(n));
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  cplx acc(0.0);
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    const double s = c + h * r.x[i];
    acc += r.w[i] * f.amp(s) * std::polar(1.0, f.phase(s));
  }
  PanelValue v;
  v.value = acc * h;
  v.ok = std::isfinite(v.value.real()) && std::isfinite(v.value.imag());
  return v;
}

// s = a + (b-a) v^p, v in [0,1]
inline PanelValue gl_graded(const Oscillator& f, double a, double b, double p, std::size_t n) {
  const Rule& r = gauss_legendre(round_nodes(n));
  cplx acc(0.0);
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    const double v = 0.5 * (1.0 + r.x[i]);
    const double vp = std::pow(v, p);
    const double s = a + (b - a) * vp;
    const double jac = (b - a) * p * vp / v;
    acc += 0.5 * r.w[i] * jac * f.amp(s) * std::polar(1.0, f.phase(s));
  }
  PanelValue out;
  out.value = acc;
  out.ok = std::isfinite(acc.real()) && std::isfinite(acc.imag());
  return out;
}

// Levin collocation: p' + i phase' p = amp on [a,b]; integral = p e^{i phase} |_a^b.
inline PanelValue levin(const Oscillator& f, double a, double b, std::size_t k) {
  const Cheb& ch = chebyshev(k);
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const auto K = Eigen::Index(k);
  Eigen::MatrixXcd A(K, K);
  Eigen::VectorXcd rhs(K);
  for (Eigen::Index i = 0; i < K; ++i) {
    const double s = c + h * ch.x[std::size_t(i)];
    for (Eigen::Index j = 0; j < K; ++j) A(i, j) = cplx(ch.D(i, j) / h, 0.0);
    A(i, i) += cplx(0.0, f.dphase(s));
    rhs(i) = f.amp(s);
  }
  Eigen::VectorXcd p = A.partialPivLu().solve(rhs);
  PanelValue v;
  v.levin = true;
  v.right = p(0) * std::polar(1.0, f.phase(b));
  v.left = -p(K - 1) * std::polar(1.0, f.phase(a));
  v.value = v.right + v.left;
  v.ok = std::isfinite(v.value.real()) && std::isfinite(v.value.imag());
  return v;
}

}  // namespace detail

/// Adaptive oscillatory quadrature on one chain. Each panel is compared with the
/// sum over its halves; the panel with the largest disagreement is split until
/// the summed disagreement meets opt.tol.
class Chain {
 public:
  Chain(Oscillator f, std::vector<double> breakpoints, ChainOptions opt)
      : f_(std::move(f)), opt_(opt), lo_(breakpoints.front()), hi_(breakpoints.back()) {
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
      if (breakpoints[i + 1] > breakpoints[i]) push(make(breakpoints[i], breakpoints[i + 1]));
    }
  }

  /// Refine until the estimate meets tol or the panel budget runs out.
  bool refine(double tol) {
    double running = total_err();
    std::size_t since = 0;
    while (true) {
      if (running <= tol || ++since >= 256) {
        running = total_err();
        since = 0;
        if (running <= tol) return true;
      }
      if (panels_.size() >= opt_.max_panels) return false;
      std::pop_heap(panels_.begin(), panels_.end(), by_err);
      Panel p = panels_.back();
      panels_.pop_back();
      if (!std::isfinite(p.err) && p.b - p.a < 1e-14 * std::max(1.0, std::abs(p.a))) {
        push(p);
        return false;
      }
      const double m = 0.5 * (p.a + p.b);
      if (!(m > p.a && m < p.b)) {
        push(p);
        return false;
      }
      Panel l = make(p.a, m, p.lo), r = make(m, p.b, p.hi);
      running += l.err + r.err - p.err;
      if (!std::isfinite(running)) running = std::numeric_limits<double>::infinity();
      push(std::move(l));
      push(std::move(r));
    }
  }

  double total_err() const {
    double e = 0.0;
    for (const auto& p : panels_) e += p.err;
    return e;
  }

  cplx value() const {
    cplx acc(0.0);
    for (const auto& p : panels_) acc += p.lo.value + p.hi.value;
    return acc + end_correction(false);
  }

  /// Value with every accepted panel halved once more.
  cplx halved_value() const {
    cplx acc(0.0);
    for (const auto& p : panels_) {
      const double m = 0.5 * (p.a + p.b);
      for (auto [a, b] : {std::pair{p.a, m}, std::pair{m, p.b}}) {
        const double q = 0.5 * (a + b);
        acc += eval(a, q).value + eval(q, b).value;
      }
    }
    return acc + end_correction(true);
  }

  ChainResult result() const {
    ChainResult r;
    r.value = value();
    r.err = total_err();
    r.panels = panels_.size();
    for (const auto& p : panels_) r.breaks.emplace_back(p.a, p.b);
    std::sort(r.breaks.begin(), r.breaks.end());
    return r;
  }

 private:
  bool forced(double a, double b) const { return (opt_.reduce_lo && a == lo_) || (opt_.reduce_hi && b == hi_); }

  PanelValue eval(double a, double b) const {
    const double d0 = f_.dphase(a), d1 = f_.dphase(b), dm = f_.dphase(0.5 * (a + b));
    const double var = std::max({std::abs(d0), std::abs(d1), std::abs(dm)}) * (b - a);
    const bool has_stat = !std::isnan(f_.stationary) && f_.stationary >= a && f_.stationary <= b;
    const bool sign_change = (d0 > 0) != (d1 > 0) || (d0 > 0) != (dm > 0) || d0 == 0.0 || d1 == 0.0;
    if (forced(a, b)) {
      if (has_stat || sign_change) return {};
      return detail::levin(f_, a, b, opt_.levin_points);
    }
    const bool graded = f_.graded_lo && a == lo_;
    if (var <= opt_.gl_max_variation) {
      const auto n = std::max<std::size_t>(opt_.min_nodes,
                                           std::size_t(std::ceil(double(opt_.nodes_per_period) * var / kTwoPi)));
      return graded ? detail::gl_graded(f_, a, b, f_.grade, n) : detail::gl(f_, a, b, n);
    }
    if (graded || has_stat || sign_change) return {};
    return detail::levin(f_, a, b, opt_.levin_points);
  }

  Panel make(double a, double b) const { return make(a, b, eval(a, b)); }

  Panel make(double a, double b, const PanelValue& whole) const {
    Panel p{a, b, whole, {}, {}, 0.0};
    const double m = 0.5 * (a + b);
    p.lo = eval(a, m);
    p.hi = eval(m, b);
    if (p.whole.ok && p.lo.ok && p.hi.ok)
      p.err = std::abs(p.whole.value - p.lo.value - p.hi.value);
    else
      p.err = std::numeric_limits<double>::infinity();
    return p;
  }

  static bool by_err(const Panel& x, const Panel& y) { return x.err < y.err; }
  void push(Panel p) {
    panels_.push_back(std::move(p));
    std::push_heap(panels_.begin(), panels_.end(), by_err);
  }

  // Remove the dropped Levin boundary terms at reduced chain ends.
  cplx end_correction(bool halved) const {
    cplx c(0.0);
    for (const auto& p : panels_) {
      if (opt_.reduce_lo && p.a == lo_) {
        const double m = 0.5 * (p.a + p.b);
        c -= halved ? eval(p.a, 0.5 * (p.a + m)).left : p.lo.left;
      }
      if (opt_.reduce_hi && p.b == hi_) {
        const double m = 0.5 * (p.a + p.b);
        c -= halved ? eval(0.5 * (m + p.b), p.b).right : p.hi.right;
      }
    }
    return c;
  }

  Oscillator f_;
  ChainOptions opt_;
  double lo_, hi_;
  std::vector<Panel> panels_;
};

/// Plain adaptive Gauss-Legendre for smooth non-oscillatory integrands.
inline double integrate_smooth(const std::function<double(double)>& g, double a, double b, double tol = 1e-12,
                               int depth = 0) {
  const Rule& r = gauss_legendre(32);
  auto q = [&](double lo, double hi) {
    double acc = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) acc += r.w[i] * g(0.5 * (lo + hi) + 0.5 * (hi - lo) * r.x[i]);
    return 0.5 * (hi - lo) * acc;
  };
  const double m = 0.5 * (a + b);
  const double whole = q(a, b), halves = q(a, m) + q(m, b);
  if (std::abs(whole - halves) <= tol || depth > 40) return halves;
  return integrate_smooth(g, a, m, 0.5 * tol, depth + 1) + integrate_smooth(g, m, b, 0.5 * tol, depth + 1);
}

}  // namespace oscimax::quad

#endif  // OSCIMAX_QUADRATURE_HPP
