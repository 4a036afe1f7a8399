#ifndef OSCIMAX_SCENARIOS_HPP
#define OSCIMAX_SCENARIOS_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "oscimax/bump.hpp"
#include "oscimax/counterexamples.hpp"
#include "oscimax/experiments.hpp"
#include "oscimax/fit.hpp"
#include "oscimax/kernels.hpp"
#include "oscimax/maximal.hpp"
#include "oscimax/norms.hpp"
#include "oscimax/parallel.hpp"
#include "oscimax/section5.hpp"
#include "oscimax/spectral.hpp"

namespace oscimax {

namespace scen {

inline std::vector<double> dvec(const json& j) { return j.get<std::vector<double>>(); }
inline double num(const json& s, const char* k) { return s.at(k).get<double>(); }
inline std::size_t count(const json& s, const char* k) {
  const double v = s.at(k).get<double>();
  if (!(v >= 0.0) || v != std::floor(v)) throw ConfigError(std::string("setting '") + k + "' must be a nonnegative integer");
  return std::size_t(v);
}
inline int refine_level(const json& s) { return s.contains("refine") ? int(count(s, "refine")) : 0; }

inline std::vector<double> geometric(double lo, double hi, std::size_t n) { return TimeSearchGrid::geometric(n, lo, hi); }

/// Rounded geometric integers, duplicates removed.
inline std::vector<double> geometric_ints(double lo, double hi, std::size_t n) {
  std::vector<double> v;
  for (double x : geometric(lo, hi, n)) v.push_back(std::round(x));
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline std::string label(const std::string& k, double v) { return k + "=" + format_double(v); }

/// Sum of Gaussian wave packets; effectively band-limited to |xi_j| <= band_j + 8.
inline SpectralField random_packets(const UniformGrid& g, Rng& rng, const std::vector<double>& band,
                                    std::size_t packets = 4) {
  const std::size_t n = g.dim();
  struct Packet {
    cplx amp;
    std::vector<double> c, k, sigma;
  };
  std::vector<Packet> ps(packets);
  for (auto& p : ps) {
    p.amp = std::polar(rng.uniform(0.5, 1.5), rng.uniform(0.0, kTwoPi));
    for (std::size_t j = 0; j < n; ++j) {
      p.c.push_back(rng.uniform(-0.1, 0.1) * g.axis(j).extent());
      p.k.push_back(rng.uniform(-band[j], band[j]));
      p.sigma.push_back(rng.uniform(1.0, 3.0));
    }
  }
  SpectralField f(g, Representation::spatial);
  std::vector<std::vector<std::vector<cplx>>> axis_vals(packets, std::vector<std::vector<cplx>>(n));
  for (std::size_t q = 0; q < packets; ++q)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& ax = g.axis(j);
      auto& v = axis_vals[q][j];
      v.resize(ax.m);
      for (std::size_t k = 0; k < ax.m; ++k) {
        const double u = (ax.x(k) - ps[q].c[j]) / ps[q].sigma[j];
        v[k] = std::exp(-0.5 * u * u) * std::polar(1.0, ps[q].k[j] * ax.x(k));
      }
    }
  for (std::size_t p = 0; p < g.size(); ++p) {
    const auto idx = g.unravel(p);
    cplx acc(0.0);
    for (std::size_t q = 0; q < packets; ++q) {
      cplx v = ps[q].amp;
      for (std::size_t j = 0; j < n; ++j) v *= axis_vals[q][j][idx[j]];
      acc += v;
    }
    f[p] = acc;
  }
  return f;
}

inline double max_abs(const SpectralField& f) {
  double m = 0.0;
  for (const auto& v : f.values) m = std::max(m, std::abs(v));
  return m;
}
inline double max_rel_diff(const SpectralField& a, const SpectralField& b) {
  double d = 0.0;
  for (std::size_t p = 0; p < a.size(); ++p) d = std::max(d, std::abs(a[p] - b[p]));
  return d / std::max(max_abs(b), 1e-300);
}
inline double l2(const SpectralField& f) {
  double acc = 0.0;
  for (const auto& v : f.values) acc += std::norm(v);
  return std::sqrt(acc * f.grid.cell_volume());
}

inline UniformGrid grid1(const json& s) { return UniformGrid::line(count(s, "m1"), num(s, "half_extent1")); }
inline UniformGrid grid2(const json& s) { return UniformGrid::square(2, count(s, "m2"), num(s, "half_extent2")); }

inline ExponentReport informational(ExponentReport r) {
  r.informational = true;
  r.verdict = Verdict::informational;
  return r;
}

// ---------------------------------------------------------------------------
// evolution identities

inline ScenarioResult run_unitarity(const json& s, std::uint64_t seed) {
  ScenarioResult res;
  res.samples.columns = {"report", "case", "dim", "t1", "t2", "isometry_dev", "s0_dev"};
  const std::size_t fields = count(s, "fields");
  const double a = num(s, "a");
  const auto g1 = grid1(s), g2 = grid2(s);
  double iso1 = 0.0, iso2 = 0.0, s0 = 0.0;
  for (std::size_t i = 0; i < fields; ++i) {
    Rng rng = Rng::stream(seed, i);
    for (std::size_t n : {1, 2}) {
      const auto& g = n == 1 ? g1 : g2;
      const DispersionLaw law = DispersionLaw::uniform(n, a);
      const auto f = random_packets(g, rng, std::vector<double>(n, num(s, n == 1 ? "band1" : "band2")));
      TimeVector t(n);
      for (auto& tj : t) tj = rng.uniform(-1.0, 1.0);
      const double c = std::pow(kTwoPi, double(n));
      const auto u = evolve(f, law, t);
      const double dev = std::abs(l2(u) / (c * l2(f)) - 1.0);
      SpectralField cf = f;
      for (auto& v : cf.values) v *= c;
      const double d0 = max_rel_diff(evolve(f, law, TimeVector(n, 0.0)), cf);
      (n == 1 ? iso1 : iso2) = std::max(n == 1 ? iso1 : iso2, dev);
      s0 = std::max(s0, d0);
      res.samples.add({double(n - 1), double(i), double(n), t[0], n > 1 ? t[1] : 0.0, dev, d0});
    }
  }
  const double tol = num(s, "tol"), tol0 = num(s, "tol_s0");
  res.reports.push_back(check_report("UNITARITY", "isometry 1D", iso1, 0.0, tol, BoundKind::upper));
  res.reports.push_back(check_report("UNITARITY", "isometry 2D", iso2, 0.0, tol, BoundKind::upper));
  res.reports.push_back(check_report("UNITARITY", "S_0 f = (2pi)^n f", s0, 0.0, tol0, BoundKind::upper));
  return res;
}

inline SpectralField conj_field(SpectralField f) {
  for (auto& v : f.values) v = std::conj(v);
  return f;
}

inline ScenarioResult run_semigroup(const json& s, std::uint64_t seed) {
  ScenarioResult res;
  res.samples.columns = {"report", "case", "dim", "deviation"};
  const std::size_t fields = count(s, "fields");
  const double a = num(s, "a");
  const auto g1 = grid1(s), g2 = grid2(s);
  double semi[2] = {0, 0}, conj[2] = {0, 0}, tens = 0.0;
  for (std::size_t i = 0; i < fields; ++i) {
    Rng rng = Rng::stream(seed, i);
    for (std::size_t n : {1, 2}) {
      const auto& g = n == 1 ? g1 : g2;
      const DispersionLaw law = DispersionLaw::uniform(n, a);
      const auto f = random_packets(g, rng, std::vector<double>(n, num(s, n == 1 ? "band1" : "band2")));
      TimeVector t(n), r(n), tr(n), mt(n);
      for (std::size_t j = 0; j < n; ++j) {
        t[j] = rng.uniform(-0.5, 0.5);
        r[j] = rng.uniform(-0.5, 0.5);
        tr[j] = t[j] + r[j];
        mt[j] = -t[j];
      }
      EvolveOptions loose;
      loose.allow_aliasing = true;  // the intermediate field is evolved, not band-checked
      const auto st = scale_to_Tt(evolve(f, law, t));
      const double ds = max_rel_diff(evolve(st, law, r, loose), evolve(f, law, tr));
      const double dc = max_rel_diff(conj_field(evolve(f, law, t)), evolve(conj_field(f), law, mt));
      semi[n - 1] = std::max(semi[n - 1], ds);
      conj[n - 1] = std::max(conj[n - 1], dc);
      res.samples.add({double(n - 1), double(i), double(n), ds});
      res.samples.add({double(2 + n - 1), double(i), double(n), dc});
    }
    // tensorization: S_(t1,t2)(f1 x f2) = S_t1 f1 x S_t2 f2
    const UniformGrid line(std::vector<Axis>{g2.axis(0)});
    const auto f1 = random_packets(line, rng, {num(s, "band2")});
    const auto f2 = random_packets(line, rng, {num(s, "band2")});
    const double t1 = rng.uniform(-1.0, 1.0), t2 = rng.uniform(-1.0, 1.0);
    SpectralField F(g2, Representation::spatial);
    for (std::size_t p = 0; p < F.size(); ++p) {
      const auto idx = g2.unravel(p);
      F[p] = f1[idx[0]] * f2[idx[1]];
    }
    const DispersionLaw law2({a, a});
    const auto u1 = evolve(f1, DispersionLaw({a}), {t1}), u2 = evolve(f2, DispersionLaw({a}), {t2});
    SpectralField U(g2, Representation::spatial);
    for (std::size_t p = 0; p < U.size(); ++p) {
      const auto idx = g2.unravel(p);
      U[p] = u1[idx[0]] * u2[idx[1]];
    }
    const double dt = max_rel_diff(evolve(F, law2, {t1, t2}), U);
    tens = std::max(tens, dt);
    res.samples.add({4.0, double(i), 2.0, dt});
  }
  const double tol = num(s, "tol");
  res.reports.push_back(check_report("SEMIGROUP", "semigroup 1D", semi[0], 0.0, tol, BoundKind::upper));
  res.reports.push_back(check_report("SEMIGROUP", "semigroup 2D", semi[1], 0.0, tol, BoundKind::upper));
  res.reports.push_back(check_report("SEMIGROUP", "conjugation 1D", conj[0], 0.0, tol, BoundKind::upper));
  res.reports.push_back(check_report("SEMIGROUP", "conjugation 2D", conj[1], 0.0, tol, BoundKind::upper));
  res.reports.push_back(check_report("SEMIGROUP", "tensorization", tens, 0.0, tol, BoundKind::upper));
  return res;
}

inline ScenarioResult run_scaling(const json& s, std::uint64_t seed) {
  ScenarioResult res;
  res.samples.columns = {"report", "case", "R", "deviation"};
  const std::size_t fields = count(s, "fields");
  const double a = num(s, "a");
  const DispersionLaw law({a});
  const Axis ax = Axis::symmetric(count(s, "m"), num(s, "half_extent"));
  double dev = 0.0, mdev = 0.0;
  const auto times = TimeSearchGrid::doublestar(1, count(s, "maximal_times"), 1.0, 1e-3);
  for (std::size_t i = 0; i < fields; ++i) {
    Rng rng = Rng::stream(seed, i);
    const auto f = random_packets(UniformGrid({ax}), rng, {num(s, "band")});
    const double t = rng.uniform(-1.0, 1.0);
    for (double R : dvec(s.at("R"))) {
      // f_R(x) = f(R x): the same samples on the grid with spacing h/R
      const UniformGrid gR({Axis(ax.m, ax.h / R)});
      const SpectralField fR(gR, Representation::spatial, f.values);
      const double d = max_rel_diff(evolve(fR, law, {t}), evolve(f, law, {t * std::pow(R, a)}));
      dev = std::max(dev, d);
      res.samples.add({0.0, double(i), R, d});
      if (i == 0) {
        // M** f_R(x) = M** f(R x) with the candidate times scaled by R^a
        std::vector<double> scaled;
        for (double tt : times.axes[0]) scaled.push_back(tt * std::pow(R, a));
        const auto m1 = maximal_field(fR, law, times);
        const auto m2 = maximal_field(f, law, TimeSearchGrid(TimeSearchGrid::Mode::doublestar, {scaled}));
        double md = 0.0, mx = 0.0;
        for (std::size_t p = 0; p < ax.m; ++p) {
          md = std::max(md, std::abs(m1.value[p] - m2.value[p]));
          mx = std::max(mx, m2.value[p]);
        }
        mdev = std::max(mdev, md / mx);
        res.samples.add({1.0, double(i), R, md / mx});
      }
    }
  }
  const double tol = num(s, "tol");
  res.reports.push_back(check_report("SCALING_COV", "S_t f_R = S_{tR^a} f(R.)", dev, 0.0, tol, BoundKind::upper));
  res.reports.push_back(check_report("SCALING_COV", "M** f_R = M** f(R.)", mdev, 0.0, tol, BoundKind::upper));
  return res;
}

// ---------------------------------------------------------------------------
// weighted oscillatory integrals

struct OscTask {
  PhaseSpec ph;
  WeightSpec w;
  OscResult r;
};

inline void run_tasks(std::vector<OscTask>& tasks, const QuadOptions& opt) {
  parallel_for(tasks.size(), [&](std::size_t i) { tasks[i].r = oscillatory_integral(tasks[i].ph, tasks[i].w, opt); });
}

inline ScenarioResult run_lemma1(const json& s, std::uint64_t) {
  ScenarioResult res;
  res.samples.columns = {"report", "x", "t", "N", "re", "im", "modulus", "panels_used", "est_error"};
  QuadOptions opt;
  opt.rel_tol = num(s, "rel_tol");
  const auto xs = geometric(num(s, "x_lo"), num(s, "x_hi"), count(s, "count"));
  const auto tf = dvec(s.at("t_factors_log2"));
  json consts = json::array();
  for (double a : dvec(s.at("a")))
    for (double sv : dvec(s.at("s"))) {
      std::vector<OscTask> tasks;
      for (double x : xs)
        for (double N : dvec(s.at("N")))
          for (double k = tf.at(0); k <= tf.at(1); k += 1.0)
            for (double sg : {-1.0, 1.0})
              tasks.push_back({{a, sg * std::pow(x, a) * std::exp2(k), x}, WeightSpec::lemma1(sv, N), {}});
      run_tasks(tasks, opt);
      std::map<double, double> env;
      for (const auto& t : tasks) {
        env[t.ph.x] = std::max(env[t.ph.x], std::abs(t.r.value));
        res.samples.add({double(res.reports.size()), t.ph.x, t.ph.d, t.w.N, t.r.value.real(), t.r.value.imag(),
                         std::abs(t.r.value), double(t.r.panels), t.r.est_error});
      }
      std::vector<double> ex, ey;
      double C = 0.0;
      for (auto [x, m] : env) {
        ex.push_back(x);
        ey.push_back(m);
        C = std::max(C, m * std::pow(x, 1.0 - sv));
      }
      auto rep = make_report("LEMMA1_DECAY", fit_loglog(ex, ey), sv - 1.0, num(s, "tol"), BoundKind::upper);
      rep.label = label("a", a) + "," + label("s", sv);
      rep.note = "sup over t of |I| against C|x|^{s-1}, C=" + format_double(C);
      consts.push_back({{"a", a}, {"s", sv}, {"C_hat", C}});
      res.reports.push_back(rep);
    }
  res.details["C_hat"] = consts;
  return res;
}

inline ScenarioResult run_lemma2(const json& s, std::uint64_t) {
  ScenarioResult res;
  res.samples.columns = {"report", "x", "d", "N", "re", "im", "modulus", "panels_used", "est_error"};
  QuadOptions opt;
  opt.rel_tol = num(s, "rel_tol") * std::pow(0.1, refine_level(s));
  const auto Ns = dvec(s.at("N"));
  const double Nmax = *std::max_element(Ns.begin(), Ns.end());
  for (const auto& c : s.at("cases")) {
    const double a = c.at(0).get<double>(), alpha = c.at(1).get<double>();
    const double beta = lemma2_beta(a, alpha);
    // x where the critical point of d|xi|^a - x xi (d = 0.9) sits in [xi_lo, frac * Nmax]
    const double x_lo = 0.9 * a * std::pow(num(s, "xi_lo"), a - 1.0);
    const double x_hi = 0.9 * a * std::pow(num(s, "xi_hi_frac") * Nmax, a - 1.0);
    std::vector<OscTask> tasks;
    for (double x : geometric(x_lo, x_hi, count(s, "count")))
      for (double N : Ns)
        for (double d : dvec(s.at("d"))) tasks.push_back({{a, d, x}, WeightSpec::lemma2(alpha, N), {}});
    run_tasks(tasks, opt);
    std::map<double, double> env;
    for (const auto& t : tasks) {
      env[t.ph.x] = std::max(env[t.ph.x], std::abs(t.r.value));
      res.samples.add({double(res.reports.size()), t.ph.x, t.ph.d, t.w.N, t.r.value.real(), t.r.value.imag(),
                       std::abs(t.r.value), double(t.r.panels), t.r.est_error});
    }
    std::vector<double> ex, ey;
    for (auto [x, m] : env) {
      ex.push_back(x);
      ey.push_back(m);
    }
    auto rep = make_report("LEMMA2_DECAY", fit_loglog(ex, ey), -beta, num(s, "tol"));
    rep.label = label("a", a) + "," + label("alpha", alpha);
    rep.note = "envelope over d and N";
    res.reports.push_back(rep);
  }
  return res;
}

inline ScenarioResult run_lemma3(const json& s, std::uint64_t) {
  ScenarioResult res;
  res.samples.columns = {"report", "region", "x", "modulus", "ratio"};
  QuadOptions opt;
  opt.rel_tol = num(s, "rel_tol");
  MajorantSettings st;
  st.d = dvec(s.at("d"));
  st.far_lo = num(s, "far_lo");
  st.far_hi = num(s, "far_hi");
  st.far_count = count(s, "far_count");
  st.near_lo = num(s, "near_lo");
  st.near_hi = num(s, "near_hi");
  st.near_count = count(s, "near_count");
  st.near_N = num(s, "near_N");
  st.slope_slack = num(s, "tol");
  json det = json::array();
  for (double a : dvec(s.at("a")))
    for (double eps : dvec(s.at("eps"))) {
      const auto m = lemma3_majorant_check(a, eps, st, opt);
      const std::string lab = label("a", a) + "," + label("eps", eps);
      const double idx = double(res.reports.size());
      for (std::size_t i = 0; i < m.far_x.size(); ++i) res.samples.add({idx, 0.0, m.far_x[i], m.far_modulus[i], m.far_ratio[i]});
      for (std::size_t i = 0; i < m.near_x.size(); ++i)
        res.samples.add({idx + 1, 1.0, m.near_x[i], m.near_modulus[i], m.near_modulus[i] * std::pow(m.near_x[i], 1.0 - m.alpha)});
      auto far = check_report("LEMMA3_MAJORANT", lab + " far ratio slope", m.far_ratio_slope, 0.0, st.slope_slack,
                              BoundKind::upper);
      far.note = "modulus |x| (log|x|)^{1+eps}, C_far=" + format_double(m.C_far);
      res.reports.push_back(far);
      if (m.alpha >= 1.0) {
        auto nr = check_report("LEMMA3_MAJORANT", lab + " near case (i)", m.C_near / m.amplitude_l1, 1.0, 1e-6,
                               BoundKind::upper);
        nr.note = "max modulus over the trivial L1 bound";
        res.reports.push_back(nr);
      } else {
        auto nr = check_report("LEMMA3_MAJORANT", lab + " near case (ii) slope", m.near_slope, -(1.0 - m.alpha),
                               st.slope_slack, BoundKind::lower);
        nr.note = "C_near=" + format_double(m.C_near);
        res.reports.push_back(nr);
      }
      det.push_back({{"a", a}, {"eps", eps}, {"C_far", m.C_far}, {"C_near", m.C_near}, {"l1_bound", m.l1_bound},
                     {"pass", m.pass}, {"note", m.note}});
    }
  res.details["majorants"] = det;
  return res;
}

inline ScenarioResult run_vdc(const json& s, std::uint64_t) {
  ScenarioResult res;
  res.samples.columns = {"report", "param", "modulus", "rhs", "ratio"};
  const auto lams = geometric(num(s, "lambda_lo"), num(s, "lambda_hi"), count(s, "count"));
  const double C = 10.0;
  // F = lambda xi on [0,1]
  double lin_ratio = 0.0, lin_err = 0.0;
  for (double lam : lams) {
    auto r = vdc_bound_check(
        [lam](double x, int k) { return k == 0 ? lam * x : (k == 1 ? lam : 0.0); }, [](double) { return 1.0; }, 0.0,
        1.0, lam, 1);
    const double exact = 2.0 * std::abs(std::sin(lam / 2.0)) / lam;
    lin_ratio = std::max(lin_ratio, r.ratio);
    lin_err = std::max(lin_err, std::abs(std::abs(r.value) - exact) / (1.0 / lam));
    res.samples.add({0.0, lam, std::abs(r.value), r.rhs, r.ratio});
  }
  res.reports.push_back(check_report("VDC", "linear phase ratio", lin_ratio, 2.0, 1e-9, BoundKind::upper));
  res.reports.push_back(check_report("VDC", "linear phase closed form", lin_err, 0.0, 1e-8, BoundKind::upper));
  // F = lambda xi^2 / 2 on [-1,1]
  std::vector<double> fr;
  double fr_max = 0.0;
  for (double lam : lams) {
    auto r = vdc_bound_check(
        [lam](double x, int k) { return k == 0 ? 0.5 * lam * x * x : (k == 1 ? lam * x : lam); },
        [](double) { return 1.0; }, -1.0, 1.0, lam, 2);
    fr.push_back(r.ratio);
    fr_max = std::max(fr_max, r.ratio);
    res.samples.add({2.0, lam, std::abs(r.value), r.rhs, r.ratio});
  }
  auto frs = make_report("VDC", fit_loglog(lams, fr), 0.0, num(s, "tol"), BoundKind::upper);
  frs.label = "quadratic phase ratio slope";
  res.reports.push_back(frs);
  res.reports.push_back(check_report("VDC", "quadratic phase ratio", fr_max, C, 0.0, BoundKind::upper));
  // the middle piece [delta rho, K rho] of the Lemma-2 integral, a = 2
  const double d = num(s, "d"), alpha = num(s, "alpha"), N = num(s, "N");
  const auto w = WeightSpec::lemma2(alpha, N);
  std::vector<double> xs = geometric(num(s, "x_lo"), num(s, "x_hi"), count(s, "count")), mods;
  double j2_ratio = 0.0;
  for (double x : xs) {
    const double rho = x / d;
    auto r = vdc_bound_check(
        [d, x](double e, int k) { return k == 0 ? d * e * e - x * e : (k == 1 ? 2.0 * d * e - x : 2.0 * d); },
        [w](double e) { return w(e); }, 0.1 * rho, 10.0 * rho, 2.0 * d, 2);
    mods.push_back(std::abs(r.value));
    j2_ratio = std::max(j2_ratio, r.ratio);
    res.samples.add({5.0, x, std::abs(r.value), r.rhs, r.ratio});
  }
  auto j2 = make_report("VDC", fit_loglog(xs, mods), -lemma2_beta(2.0, alpha), num(s, "tol"));
  j2.label = "middle piece decay";
  res.reports.push_back(j2);
  res.reports.push_back(check_report("VDC", "middle piece ratio", j2_ratio, C, 0.0, BoundKind::upper));
  return res;
}

// ---------------------------------------------------------------------------
// necessity families

inline ScenarioResult run_thm3(const json& s, std::uint64_t) {
  ScenarioResult res;
  res.samples.columns = {"report", "v", "value"};
  const double a = num(s, "a");
  const double lo = num(s, "v_log2_lo"), hi = num(s, "v_log2_hi");
  const int nodes = int(256 * std::pow(2, refine_level(s)));
  std::map<double, FamilyInstance> fams;
  for (double k = hi; k >= lo; k -= 1.0) {
    const double v = std::exp2(k);
    fams.emplace(v, gen_fv(v, 1, DispersionLaw({a}), 0.25, unit_bump,
                           Axis::for_frequency((2.0 / v) / nodes, 1.25 * (1.0 / (v * v) + 1.0 / v))));
  }
  for (const auto& c : s.at("cases")) {
    const std::size_t n = c.at(0).get<std::size_t>();
    const double sv = c.at(1).get<double>();
    std::vector<double> vs, ns;
    for (const auto& [v, fi] : fams) {
      const double nm = sobolev_norm_tensor(std::vector<SpectralField>(n, fi.factors[0]), SobolevWeight::homog(sv));
      vs.push_back(v);
      ns.push_back(nm * nm);
      res.samples.add({double(res.reports.size()), v, nm * nm});
    }
    auto rep = make_report("THM3_NECESSITY", fit_loglog(vs, ns), double(n) - 4.0 * sv, num(s, "tol"));
    rep.label = "||f_v||^2 homogeneous " + label("n", double(n)) + "," + label("s", sv);
    res.reports.push_back(rep);
  }
  // M** near the origin, adversarial over the doublestar candidates
  const auto times = TimeSearchGrid::doublestar(1, count(s, "times"), num(s, "T"), num(s, "tmin")).axes[0];
  const auto xs = [&] {
    std::vector<double> v;
    const std::size_t nx = count(s, "x_count");
    for (std::size_t i = 0; i < nx; ++i) v.push_back(num(s, "x_half") * (2.0 * double(i) / double(nx - 1) - 1.0));
    return v;
  }();
  std::vector<double> vs, cs;
  json cseq = json::array();
  for (const auto& [v, fi] : fams) {
    if (v < std::exp2(num(s, "near_v_log2_lo")) - 1e-300) continue;
    const SparseSpectrum1D sp(fi.factors[0], a);
    std::vector<double> best(xs.size(), 0.0);
    parallel_for(xs.size(), [&](std::size_t i) {
      for (double t : times) best[i] = std::max(best[i], std::abs(sp(xs[i], t)));
    });
    const double c1 = *std::min_element(best.begin(), best.end());
    vs.push_back(v);
    cs.push_back(c1);
    cseq.push_back({{"v", v}, {"c_1d", c1}, {"c_2d", c1 * c1}});
    res.samples.add({double(res.reports.size()), v, c1});
  }
  auto info = informational(make_report("THM3_NECESSITY", fit_loglog(vs, cs, 0.0, INFINITY, 4), 0.0, num(s, "tol")));
  info.label = "M** near-origin value vs v (1D; 2D is the square)";
  res.reports.push_back(info);
  res.details["near_origin_c"] = cseq;
  return res;
}

/// Per-axis M* of the N family on a 1D axis with the star candidates 8N uniform + geometric.
struct NFamilyAxis {
  std::vector<double> mstar;  // M* f_j on the axis nodes
  SpectralField factor;
};

inline NFamilyAxis nfamily_axis(double N, double a, const Axis& ax, std::size_t per_N, std::size_t geo, int refine) {
  const auto fam = gen_nfamily(N, DispersionLaw({a}), 0.0, 3.0, unit_bump, ax);
  std::vector<double> t;
  const std::size_t U = std::size_t(per_N * N);
  for (std::size_t k = 1; k < U; ++k) t.push_back(double(k) / double(U));
  for (double v : TimeSearchGrid::geometric(geo, 1e-4, 1.0 - 1e-4)) t.push_back(v);
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  TimeSearchGrid grid(TimeSearchGrid::Mode::star, {t});
  for (int r = 0; r < refine; ++r) grid = grid.refined();
  auto m = maximal_field(fam.factors[0], DispersionLaw({a}), grid);
  return {std::move(m.value), fam.factors[0]};
}

/// q-norm of an outer product of per-axis samples = product of the axis norms.
inline double tensor_lq(const std::vector<const std::vector<double>*>& axes, const Axis& ax, double q) {
  double out = 1.0;
  for (const auto* v : axes) out *= lq_norm(*v, UniformGrid({ax}), Lq(q));
  return out;
}

/// Measure of {prod_j m_j >= thr} for an outer product on equal axes.
inline double tensor_level_measure(const std::vector<const std::vector<double>*>& axes, double h, double thr) {
  if (axes.size() == 1) {
    double c = 0.0;
    for (double v : *axes[0]) c += v >= thr ? 1.0 : 0.0;
    return c * h;
  }
  if (axes.size() != 2) throw DimensionError("level-set measure implemented for n <= 2");
  std::vector<double> b = *axes[1];
  std::sort(b.begin(), b.end());
  double c = 0.0;
  for (double v : *axes[0]) {
    if (v <= 0.0) continue;
    c += double(b.end() - std::lower_bound(b.begin(), b.end(), thr / v));
  }
  return c * h * h;
}

inline ScenarioResult run_nfamily(const std::string& id, const json& s, bool probe) {
  ScenarioResult res;
  res.samples.columns = {"report", "N", "hs_norm", "mstar_lq", "level_measure"};
  const double q = num(s, "q");
  const int refine = refine_level(s);
  const Axis ax = Axis::symmetric(count(s, "m") << refine, num(s, "half_extent"));
  const auto Ns = dvec(s.at("N"));
  std::map<std::pair<double, double>, NFamilyAxis> cache;  // (N, a)
  auto axis_data = [&](double N, double a) -> const NFamilyAxis& {
    auto key = std::make_pair(N, a);
    auto it = cache.find(key);
    if (it == cache.end())
      it = cache.emplace(key, nfamily_axis(N, a, ax, count(s, "uniform_per_N"), count(s, "geometric"), refine)).first;
    return it->second;
  };
  json det = json::array();
  for (const auto& c : s.at("cases")) {
    const auto avec = dvec(c.at("a"));
    const DispersionLaw law(avec);
    const std::size_t n = law.dim();
    const double sth = probe ? law.abs() / 4.0 : predicted_threshold("thm4", n, law, q).s;
    const auto fam0 = gen_nfamily(Ns.front(), law, sth, q, unit_bump, ax);
    const std::string lab = "n=" + std::to_string(n) + ",a=" + [&] {
      std::string t;
      for (double v : avec) t += (t.empty() ? "" : "x") + format_double(v);
      return t;
    }();
    std::vector<double> norms, lqs, levels;
    for (double N : Ns) {
      std::vector<SpectralField> factors;
      std::vector<const std::vector<double>*> ms;
      for (double a : avec) {
        const auto& d = axis_data(N, a);
        factors.push_back(d.factor);
        ms.push_back(&d.mstar);
      }
      const double hs = sobolev_norm_tensor(factors, SobolevWeight::inhomogeneous(sth));
      const double lq = tensor_lq(ms, ax, q);
      double l1 = 1.0;
      for (const auto& F : factors) {
        double acc = 0.0;
        for (const auto& v : F.values) acc += std::abs(v);
        l1 *= acc * ax.dxi();
      }
      const double lev = tensor_level_measure(ms, ax.h, num(s, "level_c") * l1);
      norms.push_back(hs);
      lqs.push_back(lq);
      levels.push_back(lev);
      res.samples.add({double(res.reports.size()), N, hs, lq, lev});
    }
    const auto& P = fam0.predicted;
    if (probe) {
      std::vector<double> ratio;
      for (std::size_t i = 0; i < Ns.size(); ++i) ratio.push_back(lqs[i] / norms[i]);
      auto r = informational(make_report(id, fit_loglog(Ns, ratio), 0.0, num(s, "tol_norm")));
      r.label = lab + " ||M*f||_2 / ||f||_{H_{|a|/4}} slope";
      r.note = "borderline q=2, s=|a|/4; growth would indicate failure at equality";
      res.reports.push_back(r);
      continue;
    }
    auto rn = make_report(id, fit_loglog(Ns, norms), P.norm_exponent, num(s, "tol_norm"));
    rn.label = lab + " ||f_N||_{H_s} at s=" + format_double(sth);
    res.reports.push_back(rn);
    const auto lf = fit_loglog(Ns, lqs);
    auto rl = make_report(id, lf, P.lq_lower_exponent, num(s, "tol_lq"));
    rl.label = lab + " ||M*f_N||_q";
    res.reports.push_back(rl);
    const double s_emp = lf.slope - double(n) / 2.0 + law.abs() / 4.0;
    auto rs = informational(check_report(id, lab + " empirical s*", s_emp, sth, num(s, "tol_norm"), BoundKind::two_sided));
    rs.note = "s* = fitted ||M*f||_q slope - n/2 + |a|/4";
    res.reports.push_back(rs);
    auto rv = informational(make_report(id, fit_loglog(Ns, levels), P.level_set_exponent, num(s, "tol_lq")));
    rv.label = lab + " level-set measure";
    res.reports.push_back(rv);
    det.push_back({{"case", lab}, {"threshold_s", sth}, {"empirical_s", s_emp}});
  }
  res.details["thresholds"] = det;
  return res;
}

// ---------------------------------------------------------------------------
// section 5

inline ScenarioResult run_thm6(const json& s, std::uint64_t) {
  ScenarioResult res;
  res.samples.columns = {"report", "M", "sf_l2_sq", "hs_norm_sq", "min_modulus"};
  const auto Ms = dvec(s.at("M"));
  const auto ss = dvec(s.at("s"));
  const int refine = refine_level(s);
  std::vector<BoxRatio> base;
  std::vector<std::vector<double>> hs(ss.size());
  double min_mod = INFINITY, min_l2 = INFINITY;
  for (double M : Ms) {
    const Axis ax = Axis::for_frequency(kPi / (2.0 * M) / std::exp2(refine), 1.25 * (M + 2.0));
    const auto b = thm6_ratio(M, ss.front(), ax);
    base.push_back(b);
    const auto fam = gen_box(M, ss.front(), ax);
    for (std::size_t i = 0; i < ss.size(); ++i) {
      const double v = sobolev_norm(fam.factors[0], SobolevWeight::inhomogeneous(ss[i]));
      hs[i].push_back(v * v);
    }
    min_mod = std::min(min_mod, b.min_modulus);
    min_l2 = std::min(min_l2, b.sf_l2_sq / (std::pow(std::cos(0.5), 2) * (M - 2.0)));
  }
  for (std::size_t i = 0; i < ss.size(); ++i) {
    std::vector<double> ratio;
    for (std::size_t k = 0; k < Ms.size(); ++k) {
      ratio.push_back(base[k].sf_l2_sq / hs[i][k]);
      res.samples.add({double(i), Ms[k], base[k].sf_l2_sq, hs[i][k], base[k].min_modulus});
    }
    auto r = make_report("THM6_RATIO", fit_loglog(Ms, ratio), 1.0 - 2.0 * ss[i], num(s, "tol"));
    r.label = "ratio slope " + label("s", ss[i]);
    res.reports.push_back(r);
  }
  res.reports.push_back(check_report("THM6_RATIO", "min |Sf| on [-M,-2]", min_mod, std::cos(0.5), 0.0, BoundKind::lower));
  res.reports.push_back(check_report("THM6_RATIO", "int |Sf|^2 / (cos^2(1/2)(M-2))", min_l2, 1.0, 0.0, BoundKind::lower));
  return res;
}

inline ScenarioResult run_thm7(const json& s, std::uint64_t) {
  ScenarioResult res;
  res.samples.columns = {"report", "M", "ustar_l2", "min_scaled_lower", "clipped"};
  const auto Ms = dvec(s.at("M"));
  const double h = num(s, "h") / std::exp2(refine_level(s));
  for (double sv : dvec(s.at("s"))) {
    std::vector<double> l2s;
    double worst = INFINITY;
    for (double M : Ms) {
      std::size_t m = 4;
      while (double(m / 2) * h < M + 4.0) m *= 2;
      const Axis ax(m, h);
      // g = indicator of [M, M+1], sampled so its interpolant is exact on the window
      std::vector<double> g(m, 0.0);
      for (std::size_t k = 0; k < m; ++k)
        if (ax.x(k) >= M - 1e-12 && ax.x(k) <= M + 1.0 + 1e-12) g[k] = 1.0;
      const auto u = apply_Ustar_sup(g, ax, sv);
      const double gn = 1.0;
      double acc = 0.0, lower = INFINITY;
      for (std::size_t k = 0; k < m; ++k) {
        const double x = ax.x(k);
        if (x < 2.0) continue;
        acc += (x == 2.0 ? 0.5 : 1.0) * u.value[k] * u.value[k] * h;
        if (x <= M) lower = std::min(lower, u.value[k] * std::pow(M + 1.0, sv));
      }
      const double ratio = std::sqrt(acc / gn);
      l2s.push_back(ratio);
      worst = std::min(worst, lower);
      res.samples.add({double(res.reports.size()), M, ratio, lower, double(u.clipped)});
    }
    auto r = make_report("THM7_USTAR", fit_loglog(Ms, l2s), (1.0 - 2.0 * sv) / 2.0, num(s, "tol"));
    r.label = "||U*g||_2 / ||g||_2 slope " + label("s", sv);
    res.reports.push_back(r);
    res.reports.push_back(
        check_report("THM7_USTAR", "U*g (M+1)^s on [2,M], " + label("s", sv), worst, 1.0, 0.0, BoundKind::lower));
  }
  return res;
}

/// Piecewise-constant t(x) on unit cells, uniform in (lo, hi).
inline WindowMap random_cell_map(Rng& rng, double X, double lo, double hi) {
  const long n = long(std::ceil(X)) + 2;
  std::vector<double> vals(std::size_t(2 * n + 1));
  for (auto& v : vals) v = rng.uniform(lo, hi);
  return WindowMap([vals, n](double x) {
    const long k = std::clamp(long(std::floor(x)), -n, n);
    return vals[std::size_t(k + n)];
  });
}

inline ScenarioResult run_ttkernel(const json& s, std::uint64_t seed) {
  ScenarioResult res;
  res.samples.columns = {"report", "x", "y", "K", "bound", "slack"};
  const std::size_t ns = count(s, "samples");
  const double X = num(s, "x_max");
  double worst = 0.0, Chat = 0.0;
  std::size_t asym = 0;
  for (std::size_t i = 0; i < ns; ++i) {
    Rng rng = Rng::stream(seed, i);
    const auto w = random_cell_map(rng, X + 4.0, 0.05, 0.95);
    const double x = (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(2.0, X);
    double y;
    if (rng.uniform() < 0.5) {
      do y = x + rng.uniform(-3.0, 3.0);
      while (std::abs(y) < 2.0);
    } else {
      y = (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(2.0, X);
    }
    const double K = ttstar_kernel(x, y, w), b = ttstar_bound(x, y);
    if (K != ttstar_kernel(y, x, w)) ++asym;
    worst = std::max(worst, K / b);
    Chat = std::max(Chat, K * (std::abs(x) + std::abs(y)));
    res.samples.add({0.0, x, y, K, b, b - K});
  }
  res.reports.push_back(check_report("TT_KERNEL_BOUND", "K / 2min[log((|x|+1)/(|x|-1)),...]", worst, 1.0, 0.0,
                                     BoundKind::upper));
  res.reports.push_back(check_report("TT_KERNEL_BOUND", "K(x,y) = K(y,x) mismatches", double(asym), 0.0, 0.0,
                                     BoundKind::upper));
  auto ch = informational(check_report("TT_KERNEL_BOUND", "fitted C in K <= C/(|x|+|y|)", Chat, 0.0, 0.0,
                                       BoundKind::upper));
  res.reports.push_back(ch);

  // int_{|x|>=2} |Lf|^2 against int |f^|^2 |xi| over random band-limited f, once with
  // t(x) maximizing |Lf(x)| over a candidate set (the sup form of the bound) and
  // once with a random t(x)
  const double B = num(s, "band");
  const double dxi = kPi / num(s, "spatial_extent");
  const double Xl = 2.0 * (B + 4.0) + 2.0;
  const Axis ax = Axis::for_frequency(dxi, 1.25 * (Xl + 1.0) / (2.0 * 0.05));
  const std::size_t cases = count(s, "thm5_cases");
  std::vector<double> tcand = geometric(0.01, 0.999, count(s, "thm5_times"));
  for (std::size_t k = 1; k < 128; ++k) tcand.push_back(double(k) / 128.0);
  std::sort(tcand.begin(), tcand.end());
  const double hx = num(s, "thm5_dx");
  std::vector<double> xs;
  for (double x = 2.0; x <= Xl + 1e-12; x += hx) {
    xs.push_back(x);
    xs.push_back(-x);
  }
  std::vector<double> sup_ratio(cases), rnd_ratio(cases);
  parallel_for(cases, [&](std::size_t i) {
    Rng rng = Rng::stream(seed, 100000 + i);
    const std::size_t nb = 3 + rng.below(4);
    std::vector<std::tuple<double, double, cplx>> bumps;
    for (std::size_t k = 0; k < nb; ++k)
      bumps.emplace_back(rng.uniform(-B, B), rng.uniform(0.5, 4.0), std::polar(rng.uniform(0.5, 1.5), rng.uniform(0.0, kTwoPi)));
    SpectralField F(UniformGrid({ax}), Representation::frequency);
    for (std::size_t l = 0; l < ax.m; ++l)
      for (const auto& [c, wd, amp] : bumps) F[l] += amp * unit_bump((ax.xi(l) - c) / wd);
    const double den = std::pow(sobolev_norm(F, SobolevWeight::homog(0.5)), 2);
    const auto cum = cumulative_of(F);
    double acc = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      const double x = xs[k];
      double best = 0.0;
      for (double t : tcand) {
        const double a = std::max(cum.lo(), (x - 1.0) / (2.0 * t)), b = std::min(cum.hi(), (x + 1.0) / (2.0 * t));
        if (b > a) best = std::max(best, std::norm(cum.integral(a, b)));
      }
      const bool end = std::abs(std::abs(x) - 2.0) < 1e-12 || std::abs(x) + hx > Xl + 1e-12;
      acc += (end ? 0.5 : 1.0) * best * hx;
    }
    sup_ratio[i] = acc / den;
    const auto w = random_cell_map(rng, Xl + 2.0, 0.05, 0.95);
    const auto L = apply_L(F, w, std::make_pair(-Xl, Xl));
    double num_ = 0.0;
    for (const auto& v : L.values) num_ += std::norm(v) * ax.h;
    rnd_ratio[i] = num_ / den;
  });
  for (std::size_t i = 0; i < cases; ++i) res.samples.add({3.0, double(i), 0.0, sup_ratio[i], rnd_ratio[i], 0.0});
  const auto [smin, smax] = std::minmax_element(sup_ratio.begin(), sup_ratio.end());
  const auto [qmin, qmax] = std::minmax_element(rnd_ratio.begin(), rnd_ratio.end());
  auto r5 = check_report("TT_KERNEL_BOUND", "sup_t Lf ratio max/min over random f", *smax / *smin,
                         num(s, "spread_max"), 0.0, BoundKind::upper);
  r5.note = "max ratio " + format_double(*smax);
  res.reports.push_back(r5);
  auto r5r = informational(check_report("TT_KERNEL_BOUND", "random-t Lf ratio max/min", *qmax / *qmin, 0.0, 0.0,
                                        BoundKind::upper));
  r5r.note = "max ratio " + format_double(*qmax) + " (below the sup form by construction)";
  res.reports.push_back(r5r);
  res.details["thm5_sup_max_ratio"] = *smax;
  res.details["thm5_sup_min_ratio"] = *smin;
  res.details["thm5_random_max_ratio"] = *qmax;
  res.details["thm5_random_min_ratio"] = *qmin;
  res.details["C_hat"] = Chat;
  return res;
}

inline ScenarioResult run_majorization(const json& s, std::uint64_t seed) {
  ScenarioResult res;
  res.samples.columns = {"report", "x", "t", "value", "lower", "phase_variation"};
  const double dxi = num(s, "dxi");
  const std::size_t cases = count(s, "cases");
  double margin = INFINITY, rnd = INFINITY, var = 0.0;
  for (std::size_t i = 0; i < 2 * cases; ++i) {
    Rng rng = Rng::stream(seed, i);
    const double x = -rng.uniform(2.0, num(s, "x_max"));
    const double t = rng.uniform(0.05, 0.95);
    const double lo = (-x - 1.0) / (2.0 * t), hi = (-x + 1.0) / (2.0 * t);
    const Axis ax = Axis::for_frequency(dxi, 1.25 * hi);
    SpectralField F(UniformGrid({ax}), Representation::frequency);
    const bool half = i < cases;
    double a, b;
    if (half) {
      const double c = 0.5 * (lo + hi);
      a = c - 0.25;
      b = c + 0.25;
    } else {
      const double len = rng.uniform(0.1, std::min(1.0, hi - lo));
      a = rng.uniform(lo, hi - len);
      b = a + len;
    }
    // keep every nonzero node inside [a, b]
    const auto ind = indicator_cells(ax.m, ax.dxi(), a, b);
    for (std::size_t l = 0; l < ax.m; ++l) {
      const double xi = ax.xi(l);
      if (ind[l] == 0.0 || xi < a || xi > b) continue;
      F[l] = half ? 1.0 : cutoff(2.0 * (2.0 * (xi - a) / (b - a) - 1.0)) + 1e-3;
    }
    const auto r = majorization_check(F, x, t);
    const double mass = r.lower / std::cos(0.5);
    if (half) margin = std::min(margin, r.value / mass - std::cos(0.5));
    else rnd = std::min(rnd, r.value / r.lower);
    var = std::max(var, r.phase_variation);
    res.samples.add({half ? 0.0 : 1.0, x, t, r.value, r.lower, r.phase_variation});
  }
  res.reports.push_back(check_report("MAJORIZATION", "half-window margin", margin, std::cos(0.25) - std::cos(0.5), 0.0,
                                     BoundKind::lower));
  res.reports.push_back(check_report("MAJORIZATION", "random supports |Sf|/lower", rnd, 1.0, 0.0, BoundKind::lower));
  res.reports.push_back(check_report("MAJORIZATION", "phase variation", var, 0.5, 1e-12, BoundKind::upper));
  // the box family at M = 32, x = -16
  const double M = num(s, "box_M"), xb = num(s, "box_x");
  const auto fam = gen_box(M);
  const double tb = -xb / (2.0 * (M + 0.5));
  const auto r = majorization_check(fam.factors[0], xb, tb);
  res.samples.add({3.0, xb, tb, r.value, r.lower, r.phase_variation});
  res.reports.push_back(check_report("MAJORIZATION", "box |Sf(x)|", r.value, std::cos(0.5), 0.0, BoundKind::lower));
  return res;
}

// ---------------------------------------------------------------------------
// Riesz potential, corollary

inline ScenarioResult run_riesz(const json& s, std::uint64_t) {
  ScenarioResult res;
  res.samples.columns = {"report", "x", "value", "oracle"};
  const int refine = refine_level(s);
  const Axis ax = Axis::symmetric(count(s, "m") << refine, num(s, "half_extent"));
  const auto chi = indicator_cells(ax.m, ax.h, 0.0, 1.0);
  for (double r : dvec(s.at("r"))) {
    const auto I = riesz_potential(chi, ax, r);
    std::vector<double> xs, ys;
    for (std::size_t k = 0; k < ax.m; ++k) {
      const double x = ax.x(k);
      if (x < num(s, "far_lo") || x > num(s, "far_hi")) continue;
      xs.push_back(x);
      ys.push_back(I[k]);
      res.samples.add({double(res.reports.size()), x, I[k], (std::pow(x, r) - std::pow(x - 1.0, r)) / r});
    }
    auto rep = make_report("RIESZ_BOUND", fit_loglog(xs, ys), r - 1.0, num(s, "tol_slope"));
    rep.label = "far-field slope " + label("r", r);
    res.reports.push_back(rep);
  }
  // dilation covariance on scaled grids and even symmetry
  const double r = num(s, "q_r"), lam = num(s, "cov_lambda");
  const Axis a1 = Axis::symmetric(count(s, "cov_m"), num(s, "cov_half_extent"));
  const Axis a2(a1.m, a1.h / lam);
  std::vector<double> hv(a1.m);
  for (std::size_t k = 0; k < a1.m; ++k) hv[k] = std::exp(-a1.x(k) * a1.x(k));
  const auto I1 = riesz_potential(hv, a1, r), I2 = riesz_potential(hv, a2, r);
  double cov = 0.0, mx = 0.0, sym = 0.0;
  for (std::size_t k = 0; k < a1.m; ++k) {
    cov = std::max(cov, std::abs(I2[k] - std::pow(lam, -r) * I1[k]));
    mx = std::max(mx, std::abs(I1[k]));
    if (k > 0) sym = std::max(sym, std::abs(I1[k] - I1[a1.m - k]));
  }
  res.reports.push_back(check_report("RIESZ_BOUND", "dilation covariance", cov / (std::pow(lam, -r) * mx), 0.0,
                                     num(s, "tol_cov"), BoundKind::upper));
  res.reports.push_back(check_report("RIESZ_BOUND", "even symmetry", sym / mx, 0.0, 1e-12, BoundKind::upper));
  // ||I_r h_lambda||_q / ||h_lambda||_{q'} across dilations
  const double q = num(s, "q"), qp = q / (q - 1.0);
  if (std::abs(r - (1.0 / qp - 1.0 / q)) > 1e-12) throw ConfigError("q_r must equal 1/q' - 1/q");
  const Axis aq = Axis::symmetric(count(s, "q_m"), num(s, "q_half_extent"));
  const UniformGrid gq({aq});
  std::vector<double> ratios;
  for (double k = num(s, "lambda_log2_lo"); k <= num(s, "lambda_log2_hi"); k += 1.0) {
    const double l = std::exp2(k);
    std::vector<double> hl(aq.m);
    for (std::size_t j = 0; j < aq.m; ++j) hl[j] = std::exp(-std::pow(l * aq.x(j), 2));
    const auto Ih = riesz_potential(hl, aq, r);
    const double ratio = lq_norm(Ih, gq, Lq(q)) / lq_norm(hl, gq, Lq(qp));
    ratios.push_back(ratio);
    res.samples.add({double(res.reports.size()), l, ratio, 0.0});
  }
  const double spread = *std::max_element(ratios.begin(), ratios.end()) / *std::min_element(ratios.begin(), ratios.end());
  res.reports.push_back(check_report("RIESZ_BOUND", "L^q'->L^q ratio max/min over dilations", spread,
                                     num(s, "spread_max"), 0.0, BoundKind::upper));
  return res;
}

inline ScenarioResult run_corollary(const json& s, std::uint64_t) {
  ScenarioResult res;
  res.samples.columns = {"report", "k", "t", "deviation"};
  const double a = num(s, "a"), width = num(s, "width");
  const int k0 = int(num(s, "k_lo")), k1 = int(num(s, "k_hi"));
  for (std::size_t n : {1, 2}) {
    const auto g = n == 1 ? grid1(s) : grid2(s);
    const DispersionLaw law = DispersionLaw::uniform(n, a);
    const auto f = sample_spatial(g, [&](const std::vector<double>& x) {
      double v = 1.0;
      for (double xj : x) v *= cutoff(xj / width);
      return cplx(v);
    });
    std::vector<double> ts, devs;
    std::size_t rises = 0;
    for (int k = k0; k <= k1; ++k) {
      const double t = std::exp2(-k);
      const auto u = scale_to_Tt(evolve(f, law, TimeVector(n, t)));
      double d = 0.0;
      for (std::size_t p = 0; p < u.size(); ++p) d = std::max(d, std::abs(u[p] - f[p]));
      if (!devs.empty() && !(d < devs.back())) ++rises;
      ts.push_back(t);
      devs.push_back(d);
      res.samples.add({double(res.reports.size()), double(k), t, d});
    }
    const std::string lab = std::to_string(n) + "D";
    res.reports.push_back(check_report("CONVERGENCE_COROLLARY", lab + " deviation at t=2^-" + std::to_string(k1),
                                       devs.back(), 0.0, num(s, "tol"), BoundKind::upper));
    res.reports.push_back(
        check_report("CONVERGENCE_COROLLARY", lab + " non-decreasing steps", double(rises), 0.0, 0.0, BoundKind::upper));
    auto sl = informational(make_report("CONVERGENCE_COROLLARY", fit_loglog(ts, devs, 0.0, INFINITY, 4), 1.0, 0.1));
    sl.label = lab + " deviation slope vs t";
    res.reports.push_back(sl);
  }
  return res;
}

// ---------------------------------------------------------------------------
// probes

inline ScenarioResult run_onehalf(const json& s, std::uint64_t seed) {
  ScenarioResult res;
  res.samples.columns = {"report", "M", "ratio"};
  const std::size_t trials = count(s, "trials");
  std::vector<double> Ms(trials), ratios(trials);
  for (std::size_t i = 0; i < trials; ++i) {
    Rng rng = Rng::stream(seed, i);
    const double M = std::round(std::exp(rng.uniform(std::log(num(s, "M_lo")), std::log(num(s, "M_hi")))));
    const double len = rng.uniform(0.2, 1.0), off = rng.uniform(0.0, 1.0 - len);
    const Axis ax = box_axis(M);
    SpectralField F(UniformGrid({ax}), Representation::frequency);
    const auto ind = indicator_cells(ax.m, ax.dxi(), M + off, M + off + len);
    for (std::size_t l = 0; l < ax.m; ++l)
      if (ind[l] > 0.0) F[l] = ind[l] * (1.0 + 0.5 * std::sin(rng.uniform(0.0, kTwoPi)));
    const SparseSpectrum1D sp(F, 2.0);
    const double c = M + off + 0.5 * len;
    double acc = 0.0;
    for (std::size_t k = 0; k < ax.m; ++k) {
      const double x = ax.x(k);
      if (x < -M || x > -2.0) continue;
      acc += std::norm(sp(x, -x / (2.0 * c))) * ax.h;
    }
    const double hs = sobolev_norm(F, SobolevWeight::inhomogeneous(0.5));
    Ms[i] = M;
    ratios[i] = acc / (hs * hs);
    res.samples.add({0.0, M, ratios[i]});
  }
  auto r = informational(make_report("ONEHALF_PROBE", fit_loglog(Ms, ratios), 0.0, 0.05));
  r.label = "window-adapted search: int |Sf|^2 / ||f||^2_{H_1/2} vs M";
  r.note = "max ratio " + format_double(*std::max_element(ratios.begin(), ratios.end()));
  res.reports.push_back(r);
  return res;
}

// ---------------------------------------------------------------------------
// registry

inline json grid_defaults() {
  return {{"m1", 65536}, {"half_extent1", 256.0}, {"m2", 1024}, {"half_extent2", 64.0}};
}

inline std::vector<ScenarioInfo> build_registry() {
  std::vector<ScenarioInfo> r;
  auto with_grid = [](json j) {
    const json g = grid_defaults();
    for (auto it = g.begin(); it != g.end(); ++it) j[it.key()] = it.value();
    return j;
  };
  r.push_back({"UNITARITY", "t-isometry and S_0 f = (2pi)^n f on random fields", true,
               with_grid({{"fields", 20}, {"a", 2.0}, {"band1", 16.0}, {"band2", 4.0}, {"tol", 1e-8}, {"tol_s0", 1e-10}}),
               run_unitarity});
  r.push_back({"SEMIGROUP", "semigroup, conjugation and tensorization identities", true,
               with_grid({{"fields", 20}, {"a", 2.0}, {"band1", 16.0}, {"band2", 4.0}, {"tol", 1e-8}}), run_semigroup});
  r.push_back({"SCALING_COV", "S_t f_R = S_{tR^a} f(R.) and the M** analogue", true,
               {{"fields", 20}, {"a", 2.0}, {"m", 16384}, {"half_extent", 64.0}, {"band", 8.0}, {"R", {2.0, 0.5, 3.0}},
                {"maximal_times", 64}, {"tol", 1e-8}},
               run_scaling});
  r.push_back({"LEMMA1_DECAY", "sup over t of the |xi|^{-s} weighted integral against |x|^{s-1}", true,
               {{"a", {1.5, 2.0, 3.0}}, {"s", {0.5, 0.75}}, {"x_lo", 10.0}, {"x_hi", 1e4}, {"count", 13},
                {"N", {16.0, 256.0}}, {"t_factors_log2", {-4.0, 3.0}}, {"rel_tol", 1e-7}, {"tol", 0.05}},
               run_lemma1});
  r.push_back({"LEMMA2_DECAY", "far-field decay exponent beta = (alpha + a/2 - 1)/(a - 1)", true,
               {{"cases", {{2.0, 0.6}, {2.0, 0.8}, {2.0, 1.0}, {3.0, 1.0}, {3.0, 1.25}, {3.0, 1.5}, {1.5, 0.6}, {1.5, 0.75}}},
                {"d", {-0.9, -0.5, -0.1, 0.1, 0.5, 0.9}}, {"N", {16.0, 256.0}}, {"xi_lo", 6.0}, {"xi_hi_frac", 0.3},
                {"count", 12}, {"rel_tol", 1e-7}, {"tol", 0.05}, {"refine", 0}},
               run_lemma2});
  r.push_back({"LEMMA3_MAJORANT", "integrable majorant of the log-weighted integral", true,
               {{"a", {1.5, 2.0}}, {"eps", {0.25, 1.0}}, {"d", {-0.9, -0.5, -0.1, 0.1, 0.5, 0.9}}, {"far_lo", 1e2},
                {"far_hi", 1e5}, {"far_count", 13}, {"near_lo", 1e-3}, {"near_hi", 1.0}, {"near_count", 13},
                {"near_N", 256.0}, {"rel_tol", 1e-7}, {"tol", 0.05}},
               run_lemma3});
  r.push_back({"VDC", "van der Corput bounds with constant 10", true,
               {{"lambda_lo", 10.0}, {"lambda_hi", 1e5}, {"count", 9}, {"d", 0.5}, {"alpha", 0.8}, {"N", 1e4},
                {"x_lo", 10.0}, {"x_hi", 1e3}, {"tol", 0.05}},
               run_vdc});
  r.push_back({"THM3_NECESSITY", "f_v family: homogeneous norm slope n - 4s and M** near the origin", true,
               {{"cases", {{1, 0.25}, {2, 0.5}}}, {"a", 2.0}, {"v_log2_lo", -9.0}, {"v_log2_hi", -2.0},
                {"near_v_log2_lo", -7.0}, {"x_count", 9}, {"x_half", 0.5}, {"times", 400}, {"tmin", 1e-9}, {"T", 1e3},
                {"tol", 0.05}, {"refine", 0}},
               run_thm3});
  const json nfam = {{"cases", {{{"a", {2.0}}}, {{"a", {2.0, 2.0}}}}},
                     {"q", 3.0},
                     {"N", geometric_ints(16.0, 128.0, 8)},
                     {"m", 65536},
                     {"half_extent", 256.0},
                     {"uniform_per_N", 8},
                     {"geometric", 128},
                     {"level_c", 0.25},
                     {"tol_norm", 0.05},
                     {"tol_lq", 0.1},
                     {"refine", 0}};
  r.push_back({"THM4_NECESSITY", "N family: norm and ||M*f||_q slopes at the predicted threshold", true, nfam,
               [](const json& s, std::uint64_t) { return run_nfamily("THM4_NECESSITY", s, false); }});
  r.push_back({"THM6_RATIO", "box family: int |Sf|^2 / ||f||^2_{H_s} slope 1 - 2s", true,
               {{"s", {0.25, 0.5}}, {"M", {16.0, 23.0, 32.0, 45.0, 64.0, 91.0, 128.0, 181.0, 256.0, 362.0, 512.0}},
                {"tol", 0.05}, {"refine", 0}},
               run_thm6});
  r.push_back({"THM7_USTAR", "U* lower bound and L2 growth (1 - 2s)/2", true,
               {{"s", {0.25, 0.5}}, {"M", {16.0, 23.0, 32.0, 45.0, 64.0, 91.0, 128.0, 181.0, 256.0, 362.0, 512.0}},
                {"h", 0.125}, {"tol", 0.05}, {"refine", 0}},
               run_thm7});
  r.push_back({"TT_KERNEL_BOUND", "TT* kernel bound and the Lf ratio", true,
               {{"samples", 500}, {"x_max", 100.0}, {"band", 32.0}, {"spatial_extent", 128.0}, {"thm5_cases", 50}, {"thm5_times", 256}, {"thm5_dx", 0.0625},
                {"spread_max", 50.0}},
               run_ttkernel});
  r.push_back({"RIESZ_BOUND", "Riesz potential far field, covariance and L^q' -> L^q", true,
               {{"r", {0.25, 0.5}}, {"m", 16384}, {"half_extent", 1024.0}, {"far_lo", 10.0}, {"far_hi", 1000.0},
                {"cov_m", 16384}, {"cov_half_extent", 64.0}, {"cov_lambda", 2.0}, {"q", 3.0}, {"q_r", 1.0 / 3.0},
                {"q_m", 1048576}, {"q_half_extent", 4096.0}, {"lambda_log2_lo", -4.0}, {"lambda_log2_hi", 4.0},
                {"tol_slope", 0.02}, {"tol_cov", 1e-6}, {"spread_max", 2.0}, {"refine", 0}},
               run_riesz});
  r.push_back({"CONVERGENCE_COROLLARY", "T_t f -> f as t = 2^-k -> 0", true,
               with_grid({{"a", 2.0}, {"width", 4.0}, {"k_lo", 4}, {"k_hi", 12}, {"tol", 1e-3}}), run_corollary});
  r.push_back({"MAJORIZATION", "|Sf(x)| >= cos(1/2) int f^ for supports inside the window", true,
               {{"cases", 100}, {"x_max", 100.0}, {"dxi", 1.0 / 256.0}, {"box_M", 32.0}, {"box_x", -16.0}},
               run_majorization});
  json q2 = nfam;
  q2["q"] = 2.0;
  q2["cases"] = {{{"a", {2.0}}}};
  r.push_back({"OPEN_Q2_PROBE", "q = 2 at s = |a|/4 (open at equality)", false, q2,
               [](const json& s, std::uint64_t) { return run_nfamily("OPEN_Q2_PROBE", s, true); }});
  r.push_back({"ONEHALF_PROBE", "window-adapted search on the H_{1/2} ratio", false,
               {{"trials", 40}, {"M_lo", 8.0}, {"M_hi", 256.0}}, run_onehalf});
  return r;
}

}  // namespace scen

inline const std::vector<ScenarioInfo>& scenario_registry() {
  static const std::vector<ScenarioInfo> r = scen::build_registry();
  return r;
}

inline const ScenarioInfo& find_scenario(const std::string& id) {
  for (const auto& s : scenario_registry())
    if (s.id == id) return s;
  throw ConfigError("unknown scenario '" + id + "'");
}

/// Runs one scenario with overrides merged over its defaults. Accuracy errors
/// become an informational result carrying the message.
inline ScenarioResult run_scenario(const std::string& id, const json& overrides, std::uint64_t seed) {
  const auto& info = find_scenario(id);
  const json settings = merge_settings(info.defaults, overrides, id);
  ScenarioResult res;
  try {
    res = info.run(settings, seed);
  } catch (const AccuracyError& e) {
    res = ScenarioResult{};
    ExponentReport r;
    r.scenario = id;
    r.label = "accuracy failure";
    r.informational = true;
    r.verdict = Verdict::informational;
    r.note = e.what();
    res.reports.push_back(r);
    res.error = e.what();
  }
  res.id = id;
  res.settings = settings;
  res.seed = seed;
  for (auto& r : res.reports) {
    r.scenario = id;
    r.samples = "samples.csv";
    if (!info.graded && !r.informational) {
      r.informational = true;
      r.verdict = Verdict::informational;
    }
  }
  return res;
}

/// Fitted values at the base resolution and one refinement; a change beyond
/// the report's tolerance marks the run under-resolved.
struct ConvergenceReport {
  std::string id;
  std::vector<std::string> labels;
  std::vector<double> base, refined, tolerance;
  bool under_resolved = false;
};

inline ConvergenceReport converge(const std::string& id, const json& overrides, std::uint64_t seed) {
  const auto& info = find_scenario(id);
  if (!info.defaults.contains("refine")) throw ConfigError(id + " has no refinement setting");
  json o0 = overrides.is_null() ? json::object() : overrides, o1 = o0;
  o0["refine"] = 0;
  o1["refine"] = 1;
  const auto r0 = run_scenario(id, o0, seed), r1 = run_scenario(id, o1, seed);
  ConvergenceReport c;
  c.id = id;
  for (std::size_t i = 0; i < r0.reports.size() && i < r1.reports.size(); ++i) {
    const auto& a = r0.reports[i];
    const auto& b = r1.reports[i];
    c.labels.push_back(a.label);
    c.base.push_back(a.fitted);
    c.refined.push_back(b.fitted);
    c.tolerance.push_back(a.tolerance);
    if (!a.informational && std::abs(a.fitted - b.fitted) > a.tolerance) c.under_resolved = true;
  }
  return c;
}

}  // namespace oscimax

#endif  // OSCIMAX_SCENARIOS_HPP
