#ifndef OSCIMAX_KERNELS_HPP
#define OSCIMAX_KERNELS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "oscimax/bump.hpp"
#include "oscimax/error.hpp"
#include "oscimax/fit.hpp"
#include "oscimax/grid.hpp"
#include "oscimax/quadrature.hpp"

namespace oscimax {

using cplx = std::complex<double>;

enum class WeightKind { lemma1, lemma2, lemma3 };

/// Amplitude of the weighted integrals, always multiplied by cutoff(xi/N).
///   lemma1: |xi|^{-s}
///   lemma2: (1+xi^2)^{-alpha/2}
///   lemma3: (1+xi^2)^{-alpha/2} (log(2+xi^2))^{-(1+eps)}
struct WeightSpec {
  WeightKind kind = WeightKind::lemma2;
  double s = 0.5;
  double alpha = 1.0;
  double eps = 1.0;
  double N = 1.0;

  static WeightSpec lemma1(double s, double N) { return {WeightKind::lemma1, s, 0.0, 0.0, N}; }
  static WeightSpec lemma2(double alpha, double N) { return {WeightKind::lemma2, 0.0, alpha, 0.0, N}; }
  static WeightSpec lemma3(double alpha, double eps, double N) { return {WeightKind::lemma3, 0.0, alpha, eps, N}; }

  void validate(double a) const {
    if (!(N > 0.0)) throw PreconditionError("cutoff scale N must be positive");
    switch (kind) {
      case WeightKind::lemma1:
        if (!(s >= 0.5 && s < 1.0)) throw RangeError("lemma1 weight needs 1/2 <= s < 1");
        break;
      case WeightKind::lemma2:
        if (!(alpha >= 0.5 && alpha <= a / 2.0 + 1e-12)) throw RangeError("lemma2 weight needs 1/2 <= alpha <= a/2");
        break;
      case WeightKind::lemma3:
        if (std::abs(alpha - a / 2.0) > 1e-12) throw RangeError("lemma3 weight needs alpha = a/2");
        if (!(eps > 0.0)) throw RangeError("lemma3 weight needs eps > 0");
        break;
    }
  }

  /// Value at |xi| = e (even in xi).
  double operator()(double e) const {
    const double mu = cutoff(e / N);
    if (mu == 0.0) return 0.0;
    switch (kind) {
      case WeightKind::lemma1:
        return std::pow(e, -s) * mu;
      case WeightKind::lemma2:
        return std::pow(1.0 + e * e, -0.5 * alpha) * mu;
      default:
        return std::pow(1.0 + e * e, -0.5 * alpha) * std::pow(std::log(2.0 + e * e), -(1.0 + eps)) * mu;
    }
  }
  /// Exponent of the integrable singularity at 0 (0 if none).
  double singularity() const { return kind == WeightKind::lemma1 ? s : 0.0; }
};

/// F(xi) = d|xi|^a - x xi. For lemma1 weights d plays the role of t and the
/// integral carries e^{i x xi} instead of e^{-i x xi}.
struct PhaseSpec {
  double a = 2.0;
  double d = 0.5;
  double x = 1.0;

  void validate() const {
    if (!(a > 1.0)) throw RangeError("phase exponent a must exceed 1");
    if (x == 0.0) throw PreconditionError("evaluation point x must be nonzero");
  }
};

struct QuadOptions {
  double rel_tol = 1e-7;
  bool certify = true;
  std::size_t max_panels = 40000;
  double delta = 0.1;  // inner splitting radius factor
  double K = 10.0;     // outer splitting radius factor
  double frame_switch = 1e4;  // |F(rho)| above which the centred phase is used
};

struct OscResult {
  cplx value{0.0};
  double est_error = 0.0;
  double gap = 0.0;  // certification gap (absolute)
  std::size_t panels = 0;
  double l1 = 0.0;  // int |amplitude|
};

enum class RadiusVariant { lemma2, lemma3 };

/// Lemma-2 splitting radius (|x|/|d|)^{1/(a-1)} or the critical point (|x|/(|d| a))^{1/(a-1)}.
inline double stationary_radius(const PhaseSpec& ph, RadiusVariant v = RadiusVariant::lemma3) {
  ph.validate();
  if (ph.d == 0.0) throw PreconditionError("d = 0: the phase has no stationary point");
  const double denom = v == RadiusVariant::lemma2 ? std::abs(ph.d) : std::abs(ph.d) * ph.a;
  return std::pow(std::abs(ph.x) / denom, 1.0 / (ph.a - 1.0));
}

namespace detail {

// (1+u)^a - 1 - a u, accurate for small u.
inline double centred_power(double a, double u) {
  if (std::abs(u) < 1e-2) {
    double b = a * (a - 1.0) / 2.0, un = u * u, acc = 0.0;
    for (int k = 2; k <= 14; ++k) {
      acc += b * un;
      b *= (a - double(k)) / double(k + 1);
      un *= u;
    }
    return acc;
  }
  return std::expm1(a * std::log1p(u)) - a * u;
}

struct HalfLine {
  double a;     // exponent
  double c;     // coefficient of eta^a
  double b;     // coefficient of eta
  double R;     // upper limit
  std::function<double(double)> amp;
  double grade = 2.0;
};

struct PartialResult {
  std::vector<quad::Chain> chains;
  std::vector<cplx> frames;  // e^{i theta} per chain
};

// int_0^R e^{i(c eta^a + b eta)} amp(eta) d eta as a set of chains.
inline PartialResult build_half_line(const HalfLine& hl, const QuadOptions& opt) {
  PartialResult out;
  quad::ChainOptions co;
  co.max_panels = opt.max_panels;
  const double a = hl.a, c = hl.c, b = hl.b, R = hl.R;
  const bool stat = c * b < 0.0;
  const double rho = stat ? std::pow(-b / (c * a), 1.0 / (a - 1.0)) : 0.0;
  const bool in_range = stat && rho < R;
  const double theta = in_range ? c * std::pow(rho, a) * (1.0 - a) : 0.0;

  quad::Oscillator abs_f;
  abs_f.phase = [=](double e) { return c * std::pow(e, a) + b * e; };
  abs_f.dphase = [=](double e) { return e == 0.0 ? b : c * a * std::pow(e, a - 1.0) + b; };
  abs_f.amp = hl.amp;
  abs_f.graded_lo = true;
  abs_f.grade = hl.grade;

  auto add = [&](std::vector<double> br, const quad::Oscillator& f, quad::ChainOptions o, cplx frame) {
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    out.chains.emplace_back(f, br, o);
    out.frames.push_back(frame);
  };

  if (!in_range) {
    std::vector<double> br{0.0, R};
    if (R > 1.0) br.push_back(1.0);
    add(br, abs_f, co, 1.0);
    return out;
  }
  abs_f.stationary = rho;
  if (std::abs(theta) <= opt.frame_switch) {
    std::vector<double> br{0.0, R};
    for (double r : {opt.delta * rho, 0.5 * rho, rho, 2.0 * rho, opt.K * rho})
      if (r < R) br.push_back(r);
    if (R > 1.0 && 1.0 < opt.delta * rho) br.push_back(1.0);
    add(br, abs_f, co, 1.0);
    return out;
  }
  // Huge phase at the critical point: integrate [0, rho/2] in the absolute
  // frame and [rho/2, R] in the variable u = eta/rho - 1 with the phase measured
  // from its critical value. The Levin boundary terms at rho/2 cancel
  // analytically and are dropped from both chains.
  abs_f.stationary = std::numeric_limits<double>::quiet_NaN();
  quad::ChainOptions ca = co;
  ca.reduce_hi = true;
  std::vector<double> bra{0.0, opt.delta * rho, 0.5 * rho};
  if (1.0 < opt.delta * rho) bra.push_back(1.0);
  add(bra, abs_f, ca, 1.0);

  const double A = c * std::pow(rho, a);
  quad::Oscillator cf;
  cf.phase = [=](double u) { return A * centred_power(a, u); };
  cf.dphase = [=](double u) { return A * a * std::expm1((a - 1.0) * std::log1p(u)); };
  auto amp = hl.amp;
  cf.amp = [=](double u) { return rho * amp(rho * (1.0 + u)); };
  cf.stationary = 0.0;
  quad::ChainOptions cb = co;
  cb.reduce_lo = true;
  const double uhi = R / rho - 1.0;
  std::vector<double> brb{-0.5, 0.0, uhi};
  for (double u : {1.0, opt.K - 1.0})
    if (u < uhi) brb.push_back(u);
  add(brb, cf, cb, std::polar(1.0, theta));
  return out;
}

inline double amp_l1(const std::function<double(double)>& amp, double R, double grade) {
  // graded first unit, then doubling panels
  const double first = std::min(1.0, R);
  double acc = quad::integrate_smooth(
      [&](double v) {
        if (v <= 0.0) return 0.0;
        const double vp = std::pow(v, grade);
        return std::abs(amp(first * vp)) * first * grade * vp / v;
      },
      0.0, 1.0, 1e-14);
  for (double lo = first; lo < R; lo *= 2.0) {
    const double hi = std::min(2.0 * lo, R);
    acc += quad::integrate_smooth([&](double e) { return std::abs(amp(e)); }, lo, hi, 1e-14 * (hi - lo));
  }
  return acc;
}

// Sum of half-line integrals with the two-pass tolerance and halving certification.
inline OscResult integrate_half_lines(const std::vector<HalfLine>& parts, const QuadOptions& opt) {
  OscResult res;
  for (const auto& hl : parts) res.l1 += amp_l1(hl.amp, hl.R, hl.grade);
  std::vector<PartialResult> built;
  std::size_t nchains = 0;
  for (const auto& hl : parts) {
    built.push_back(build_half_line(hl, opt));
    nchains += built.back().chains.size();
  }
  auto total = [&] {
    cplx v(0.0);
    for (auto& pr : built)
      for (std::size_t i = 0; i < pr.chains.size(); ++i) v += pr.frames[i] * pr.chains[i].value();
    return v;
  };
  auto refine_all = [&](double tol) {
    bool ok = true;
    for (auto& pr : built)
      for (auto& ch : pr.chains) ok = ch.refine(tol / double(nchains)) && ok;
    return ok;
  };
  double tol = 0.1 * opt.rel_tol * std::max(res.l1, 1e-300);
  bool ok = refine_all(tol);
  cplx v = total();
  const double floor = 1e-14 * res.l1;
  double gap = 0.0;
  for (int attempt = 0; attempt < 4; ++attempt) {
    tol = std::max(0.1 * opt.rel_tol * std::abs(v), floor) * std::pow(0.01, attempt);
    ok = refine_all(tol) && ok;
    v = total();
    if (!opt.certify) break;
    cplx h(0.0);
    for (auto& pr : built)
      for (std::size_t i = 0; i < pr.chains.size(); ++i) h += pr.frames[i] * pr.chains[i].halved_value();
    gap = std::abs(h - v);
    if (gap <= std::max(opt.rel_tol * std::abs(v), floor)) break;
  }
  res.value = v;
  res.gap = gap;
  for (auto& pr : built)
    for (auto& ch : pr.chains) {
      res.est_error += ch.total_err();
      res.panels += ch.result().panels;
    }
  if (opt.certify && gap > std::max(opt.rel_tol * std::abs(v), floor)) {
    throw AccuracyError("oscillatory quadrature did not certify: gap " + std::to_string(gap) + " vs value " +
                            std::to_string(std::abs(v)),
                        v, gap);
  }
  if (!ok && res.est_error > std::max(opt.rel_tol * std::abs(v), floor)) {
    throw AccuracyError("oscillatory quadrature ran out of panels", v, res.est_error);
  }
  return res;
}

}  // namespace detail

/// int e^{i(d|xi|^a - x xi)} w(xi) cutoff(xi/N) dxi (lemma1 weights: e^{i(t|xi|^a + x xi)}).
inline OscResult oscillatory_integral(const PhaseSpec& ph, const WeightSpec& w, const QuadOptions& opt = {}) {
  ph.validate();
  w.validate(ph.a);
  if (w.kind != WeightKind::lemma1 && !(std::abs(ph.d) < 1.0)) throw RangeError("d must lie in (-1, 1)");
  const double xs = w.kind == WeightKind::lemma1 ? -ph.x : ph.x;
  const double grade = std::max(2.0, 1.0 / (1.0 - w.singularity()));
  auto amp = [w](double e) { return w(e); };
  const double R = 2.0 * w.N;
  // xi > 0: d eta^a - x eta ; xi < 0 (xi = -eta): d eta^a + x eta
  std::vector<detail::HalfLine> parts{{ph.a, ph.d, -xs, R, amp, grade}, {ph.a, ph.d, xs, R, amp, grade}};
  return detail::integrate_half_lines(parts, opt);
}

/// Decay exponent of |integral| against |x| over a window.
inline ExponentReport fit_decay_exponent(const std::vector<std::pair<double, double>>& samples, double lo,
                                         double hi, double predicted = 0.0, double tol = 0.05,
                                         const std::string& scenario = "") {
  std::vector<double> x, y;
  for (const auto& [xx, yy] : samples) {
    x.push_back(std::abs(xx));
    y.push_back(yy);
  }
  return make_report(scenario, fit_loglog(x, y, lo, hi), predicted, tol);
}

inline double lemma2_beta(double a, double alpha) { return (alpha + a / 2.0 - 1.0) / (a - 1.0); }

// ---------------------------------------------------------------------------
// log-weighted majorant

struct MajorantReport {
  double a = 2.0, alpha = 1.0, eps = 1.0;
  std::vector<double> far_x, far_modulus, far_ratio;  // ratio = modulus |x| (log|x|)^{1+eps}
  std::vector<double> near_x, near_modulus;
  double C_far = 0.0;           // max far ratio
  double far_ratio_slope = 0.0;  // log-log slope of the ratio; bounded ratio means <= 0 up to noise
  double C_near = 0.0;          // case (i): max modulus; case (ii): max modulus |x|^{1-alpha}
  double near_slope = 0.0;
  double l1_bound = 0.0;        // int_{|x| <= C0} + int_{|x| > C0} of the fitted majorant, closed form
  double C0 = 100.0;
  double amplitude_l1 = 0.0;    // int |amplitude|, the trivial bound in case (i)
  bool pass = false;
  double witness_x = 0.0;
  std::string note;
};

struct MajorantSettings {
  std::vector<double> d{-0.9, -0.5, -0.1, 0.1, 0.5, 0.9};
  double far_lo = 1e2, far_hi = 1e5;
  std::size_t far_count = 13;
  double near_lo = 1e-3, near_hi = 1.0;
  std::size_t near_count = 13;
  double near_N = 256.0;
  double slope_slack = 0.05;
};

/// Checks |I(x)| against K(x) = C/(|x| (log|x|)^{1+eps}) for |x| >= C0 and the
/// near-field case (i) / (ii), each with one fitted constant; the sup over d is taken pointwise.
inline MajorantReport lemma3_majorant_check(double a, double eps, const MajorantSettings& st = {},
                                            const QuadOptions& opt = {}) {
  MajorantReport rep;
  rep.a = a;
  rep.alpha = a / 2.0;
  rep.eps = eps;
  rep.C0 = st.far_lo;
  if (!(eps > 0.0)) throw PreconditionError("lemma3 needs eps > 0");
  double dmin = 1.0;
  for (double d : st.d) dmin = std::min(dmin, std::abs(d));
  // far field: the critical point must lie well inside the cutoff for every d
  const double rho_max = std::pow(st.far_hi / (dmin * a), 1.0 / (a - 1.0));
  const double N_far = std::exp2(std::ceil(std::log2(8.0 * rho_max)));
  for (std::size_t i = 0; i < st.far_count; ++i) {
    const double x = st.far_lo * std::pow(st.far_hi / st.far_lo, double(i) / double(st.far_count - 1));
    double m = 0.0;
    for (double d : st.d) {
      auto r = oscillatory_integral({a, d, x}, WeightSpec::lemma3(a / 2.0, eps, N_far), opt);
      m = std::max(m, std::abs(r.value));
    }
    rep.far_x.push_back(x);
    rep.far_modulus.push_back(m);
    rep.far_ratio.push_back(m * x * std::pow(std::log(x), 1.0 + eps));
  }
  rep.C_far = *std::max_element(rep.far_ratio.begin(), rep.far_ratio.end());
  rep.far_ratio_slope = fit_loglog(rep.far_x, rep.far_ratio, 0.0, INFINITY, 8).slope;

  const auto wnear = WeightSpec::lemma3(a / 2.0, eps, st.near_N);
  rep.amplitude_l1 = 2.0 * detail::amp_l1([&](double e) { return wnear(e); }, 2.0 * st.near_N, 2.0);
  for (std::size_t i = 0; i < st.near_count; ++i) {
    const double x = st.near_lo * std::pow(st.near_hi / st.near_lo, double(i) / double(st.near_count - 1));
    double m = 0.0;
    for (double d : st.d) m = std::max(m, std::abs(oscillatory_integral({a, d, x}, wnear, opt).value));
    rep.near_x.push_back(x);
    rep.near_modulus.push_back(m);
  }
  rep.near_slope = fit_loglog(rep.near_x, rep.near_modulus, 0.0, INFINITY, 8).slope;
  const bool far_ok = rep.far_ratio_slope <= st.slope_slack;
  bool near_ok;
  const double alpha = rep.alpha;
  if (alpha >= 1.0) {
    rep.C_near = *std::max_element(rep.near_modulus.begin(), rep.near_modulus.end());
    near_ok = rep.C_near <= rep.amplitude_l1 * (1.0 + 1e-6);
    rep.l1_bound = 2.0 * rep.C_near * rep.C0;
  } else {
    rep.C_near = 0.0;
    for (std::size_t i = 0; i < rep.near_x.size(); ++i)
      rep.C_near = std::max(rep.C_near, rep.near_modulus[i] * std::pow(rep.near_x[i], 1.0 - alpha));
    near_ok = rep.near_slope >= -(1.0 - alpha) - st.slope_slack;
    rep.l1_bound = 2.0 * rep.C_near * std::pow(rep.C0, alpha) / alpha;
  }
  rep.l1_bound += 2.0 * rep.C_far * std::pow(std::log(rep.C0), -eps) / eps;
  rep.pass = far_ok && near_ok && std::isfinite(rep.l1_bound);
  if (!far_ok) {
    auto it = std::max_element(rep.far_ratio.begin(), rep.far_ratio.end());
    rep.witness_x = rep.far_x[std::size_t(it - rep.far_ratio.begin())];
    rep.note = "far-field ratio grows";
  } else if (!near_ok) {
    rep.witness_x = rep.near_x.front();
    rep.note = "near-field bound violated";
  }
  return rep;
}

// ---------------------------------------------------------------------------
// van der Corput

struct VdcReport {
  cplx value{0.0};
  double rhs = 0.0;  // gamma^{-1/order} (|psi(b)| + int |psi'|)
  double ratio = 0.0;
  double constant = 10.0;
  bool pass = false;
};

/// |int_lo^hi e^{iF} psi| <= C gamma^{-1/order} (|psi(hi)| + int |psi'|) with C = 10.
/// dF(s, k) returns the k-th derivative of the phase (k = 0, 1, 2).
inline VdcReport vdc_bound_check(const std::function<double(double, int)>& F, const std::function<double(double)>& psi,
                                 double lo, double hi, double gamma, int order, std::size_t samples = 4001) {
  if (order != 1 && order != 2) throw PreconditionError("van der Corput order must be 1 or 2");
  if (!(gamma > 0.0) || !(hi > lo)) throw PreconditionError("need gamma > 0 and a nonempty interval");
  double prev_d1 = 0.0, tv = 0.0, prev_psi = psi(lo);
  double stat = std::numeric_limits<double>::quiet_NaN();
  int mono = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double s = lo + (hi - lo) * double(i) / double(samples - 1);
    const double d1 = F(s, 1), d2 = F(s, 2);
    if (order == 1) {
      if (std::abs(d1) < gamma * (1.0 - 1e-9)) throw PreconditionError("|F'| >= gamma fails on the interval");
      if (i > 0) {
        const int dir = d1 > prev_d1 ? 1 : (d1 < prev_d1 ? -1 : 0);
        if (dir != 0 && mono != 0 && dir != mono) throw PreconditionError("F' is not monotone on the interval");
        if (dir != 0) mono = dir;
      }
    } else {
      if (std::abs(d2) < gamma * (1.0 - 1e-9)) throw PreconditionError("|F''| >= gamma fails on the interval");
      if (i > 0 && (d1 > 0.0) != (prev_d1 > 0.0)) {
        double l = s - (hi - lo) / double(samples - 1), r = s;
        for (int it = 0; it < 200; ++it) {
          const double m = 0.5 * (l + r);
          ((F(m, 1) > 0.0) == (F(l, 1) > 0.0) ? l : r) = m;
        }
        stat = 0.5 * (l + r);
      }
      if (i == 0 && d1 == 0.0) stat = s;
    }
    const double p = psi(s);
    if (i > 0) tv += std::abs(p - prev_psi);
    prev_psi = p;
    prev_d1 = d1;
  }
  quad::Oscillator f;
  f.phase = [&](double s) { return F(s, 0); };
  f.dphase = [&](double s) { return F(s, 1); };
  f.amp = psi;
  f.stationary = stat;
  std::vector<double> br{lo, hi};
  if (!std::isnan(stat) && stat > lo && stat < hi) br.insert(br.begin() + 1, stat);
  quad::Chain ch(f, br, {});
  double l1 = 0.0;
  for (std::size_t i = 0; i + 1 < samples; ++i) l1 += std::abs(psi(lo + (hi - lo) * (double(i) + 0.5) / double(samples - 1)));
  l1 *= (hi - lo) / double(samples - 1);
  ch.refine(1e-10 * std::max(l1, 1e-300));
  VdcReport rep;
  rep.value = ch.value();
  rep.rhs = std::pow(gamma, -1.0 / double(order)) * (std::abs(psi(hi)) + tv);
  rep.ratio = std::abs(rep.value) / rep.rhs;
  rep.pass = rep.ratio <= rep.constant;
  return rep;
}

// ---------------------------------------------------------------------------
// kernel K_t(x) = int e^{i x xi} e^{i t |xi|^a} d xi

struct KernelSamples {
  double a = 2.0, t = 1.0;
  std::vector<double> x;
  std::vector<cplx> value;
  std::vector<std::size_t> panels;
  std::vector<double> est_error;
};

namespace detail {

inline OscResult tapered_kernel(double a, double t, double x, double W, const QuadOptions& opt) {
  auto amp = [W](double e) {
    const double r = e / W;
    return std::exp(-r * r);
  };
  const double R = 7.0 * W;
  std::vector<HalfLine> parts{{a, t, x, R, amp, 2.0}, {a, t, -x, R, amp, 2.0}};
  return integrate_half_lines(parts, opt);
}

}  // namespace detail

/// K_t(x) as the limit of Gaussian-tapered transforms, extrapolated in 1/W^2.
inline OscResult kernel_value(double a, double t, double x, const QuadOptions& opt = {}) {
  if (t == 0.0) throw PreconditionError("kernel_Kt needs t != 0");
  if (!(a > 1.0)) throw RangeError("kernel exponent must exceed 1");
  const double scale = std::max(std::pow(std::abs(x) / (a * std::abs(t)), 1.0 / (a - 1.0)),
                                std::pow(1.0 / std::abs(t), 1.0 / a));
  QuadOptions q = opt;
  q.rel_tol = std::min(opt.rel_tol, 1e-9);
  for (double W0 = 16.0 * scale; W0 < 1e4 * scale; W0 *= 4.0) {
    std::vector<OscResult> r;
    for (int k = 0; k < 4; ++k) r.push_back(detail::tapered_kernel(a, t, x, W0 * std::exp2(k), q));
    // Richardson in h = 1/W^2 with ratio 4
    std::vector<cplx> T;
    for (auto& v : r) T.push_back(v.value);
    std::vector<cplx> prev;
    cplx last2(0.0), last3(0.0);
    for (int lvl = 1; lvl < 4; ++lvl) {
      const double f = std::pow(4.0, lvl);
      std::vector<cplx> nt;
      for (std::size_t i = 0; i + 1 < T.size(); ++i) nt.push_back((f * T[i + 1] - T[i]) / (f - 1.0));
      T = nt;
      if (lvl == 2) last2 = T.back();
    }
    last3 = T.back();
    const double diff = std::abs(last3 - last2);
    if (diff <= 1e-6 * std::abs(last3)) {
      OscResult out = r.back();
      out.value = last3;
      out.est_error = diff;
      for (auto& v : r) out.panels = std::max(out.panels, v.panels);
      return out;
    }
  }
  throw AccuracyError("taper extrapolation did not converge", cplx(0.0), 0.0);
}

inline KernelSamples kernel_Kt(double a, double t, const std::vector<double>& xs, const QuadOptions& opt = {}) {
  KernelSamples ks;
  ks.a = a;
  ks.t = t;
  for (double x : xs) {
    auto r = kernel_value(a, t, x, opt);
    ks.x.push_back(x);
    ks.value.push_back(r.value);
    ks.panels.push_back(r.panels);
    ks.est_error.push_back(r.est_error);
  }
  return ks;
}

/// K_1(0) = 2 Gamma(1 + 1/a) e^{i pi/(2a)}.
inline cplx kernel_at_origin(double a) { return 2.0 * std::tgamma(1.0 + 1.0 / a) * std::polar(1.0, kPi / (2.0 * a)); }

/// Self-similarity exponent sigma in K_t(x) = t^{-sigma} K_1(x t^{-sigma}), fitted from |K_t(0)| over ts.
inline double kernel_sigma(double a, const std::vector<double>& ts, const QuadOptions& opt = {}) {
  std::vector<double> x, y;
  for (double t : ts) {
    x.push_back(t);
    y.push_back(std::abs(kernel_value(a, t, 0.0, opt).value));
  }
  return -fit_loglog(x, y, 0.0, INFINITY, 2).slope;
}

}  // namespace oscimax

#endif  // OSCIMAX_KERNELS_HPP
