#ifndef OSCIMAX_COUNTEREXAMPLES_HPP
#define OSCIMAX_COUNTEREXAMPLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "oscimax/bump.hpp"
#include "oscimax/error.hpp"
#include "oscimax/maximal.hpp"
#include "oscimax/quadrature.hpp"
#include "oscimax/spectral.hpp"

namespace oscimax {

enum class FamilyKind { fv, nfamily, box };

inline const char* to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::fv:
      return "fv";
    case FamilyKind::nfamily:
      return "nfamily";
    default:
      return "box";
  }
}

struct PredictedExponents {
  double norm_exponent = 0.0;         // slope of the relevant (squared for fv/box) norm vs the parameter
  double lower_bound_exponent = 0.0;  // slope of the maximal-quantity lower bound
  double threshold_s = 0.0;
  double level_set_exponent = std::numeric_limits<double>::quiet_NaN();
  double lq_lower_exponent = std::numeric_limits<double>::quiet_NaN();  // ||M* f||_q lower bound slope
};

/// One member of a sharpness family. nD instances are outer products of the 1D factors.
struct FamilyInstance {
  FamilyKind kind = FamilyKind::fv;
  double parameter = 0.0;
  std::size_t n = 1;
  DispersionLaw law{std::vector<double>{2.0}};
  std::vector<SpectralField> factors;  // frequency side, one per axis
  std::vector<std::pair<double, double>> support;
  PredictedExponents predicted;
  std::optional<TimeSelection> selection;  // box only

  /// Full nD frequency field (outer product); only sensible for small grids.
  SpectralField tensor_field() const {
    std::vector<Axis> axes;
    for (const auto& f : factors) axes.push_back(f.grid.axis(0));
    UniformGrid g(axes);
    SpectralField F(g, Representation::frequency);
    for (std::size_t p = 0; p < g.size(); ++p) {
      auto idx = g.unravel(p);
      cplx v(1.0);
      for (std::size_t j = 0; j < n; ++j) v *= factors[j][idx[j]];
      F[p] = v;
    }
    return F;
  }
};

struct Threshold {
  double s = 0.0;
  bool open_at_equality = false;  // holds for s above, fails below, equality unresolved
  bool strict = false;            // holds iff s > threshold
  std::string regime;
};

/// Sharp s for the global (thm1/thm2, n = 1) and local (thm3/thm4, general n) estimates.
inline Threshold predicted_threshold(const std::string& scenario, std::size_t n, const DispersionLaw& law, double q) {
  const double A = law.abs(), nd = double(n);
  const bool inf = std::isinf(q);
  Threshold th;
  if (scenario == "thm1" || scenario == "thm3") {
    if (scenario == "thm1" && n != 1) throw RangeError("thm1 is the one-dimensional case");
    if (inf || q < 4.0) throw RangeError("the global maximal estimate holds only for 4 <= q < infinity");
    th.s = nd * (0.5 - 1.0 / q);
    th.regime = "4<=q<inf";
    return th;
  }
  if (scenario != "thm2" && scenario != "thm4") throw RangeError("unknown scenario " + scenario);
  if (scenario == "thm2" && n != 1) throw RangeError("thm2 is the one-dimensional case");
  if (!inf && q < 2.0) throw RangeError("for 1 <= q < 2 the local maximal estimate holds for no s");
  if (inf) {
    th.s = nd / 2.0;
    th.strict = true;
    th.regime = "q=inf";
  } else if (q == 2.0) {
    th.s = A / 4.0;
    th.open_at_equality = true;
    th.regime = "q=2: open at equality, holds for s>|a|/4";
  } else if (q < 4.0) {
    th.s = nd / 2.0 - A / 4.0 + A / q - nd / q;
    th.regime = "2<q<4";
  } else {
    th.s = nd * (0.5 - 1.0 / q);
    th.regime = "4<=q<inf";
  }
  return th;
}

using Bump = std::function<double(double)>;

namespace detail {

inline void check_bump(const Bump& g, double support_half) {
  for (double u : {1.0001, 1.01, 1.1, 1.5, 2.0, 3.0})
    if (g(u * support_half) != 0.0 || g(-u * support_half) != 0.0)
      throw PreconditionError("bump is not supported in the required interval");
}

inline SpectralField sample_axis(const Axis& ax, const std::function<double(double)>& fn) {
  SpectralField F(UniformGrid({ax}), Representation::frequency);
  for (std::size_t l = 0; l < ax.m; ++l) F[l] = fn(ax.xi(l));
  return F;
}

inline void check_margin(const Axis& ax, double lo, double hi) {
  const double need = 1.25 * std::max(std::abs(lo), std::abs(hi));
  if (ax.freq_extent() < need)
    throw RangeError("grid frequency extent " + std::to_string(ax.freq_extent()) + " does not cover the support " +
                     "with 25% margin (need " + std::to_string(need) + ")");
}

}  // namespace detail

/// f^_v(xi) = v g(v xi + 1/v) per axis; support [-1/v^2 - 1/v, -1/v^2 + 1/v].
/// Default axis: 256 nodes across the support and 25% extent margin.
inline FamilyInstance gen_fv(double v, std::size_t n, const DispersionLaw& law, double s = 0.25,
                             const Bump& g = unit_bump, std::optional<Axis> axis = std::nullopt) {
  if (!(v > 0.0 && v < 0.5)) throw RangeError("f_v needs 0 < v < 1/2");
  require_same_dim(law.dim(), n, "gen_fv");
  detail::check_bump(g, 1.0);
  if (std::abs(quad::integrate_smooth([&](double u) { return g(u); }, -1.0, 1.0)) < 1e-12)
    throw PreconditionError("bump must have nonzero integral");
  const double lo = -1.0 / (v * v) - 1.0 / v, hi = -1.0 / (v * v) + 1.0 / v;
  const Axis ax = axis ? *axis : Axis::for_frequency((2.0 / v) / 256.0, 1.25 * std::abs(lo));
  detail::check_margin(ax, lo, hi);
  FamilyInstance fi;
  fi.kind = FamilyKind::fv;
  fi.parameter = v;
  fi.n = n;
  fi.law = law;
  for (std::size_t j = 0; j < n; ++j) {
    fi.factors.push_back(detail::sample_axis(ax, [&](double xi) { return v * g(v * xi + 1.0 / v); }));
    fi.support.emplace_back(lo, hi);
  }
  fi.predicted.norm_exponent = double(n) - 4.0 * s;  // ||f||^2 in the homogeneous norm vs v
  fi.predicted.lower_bound_exponent = 0.0;
  fi.predicted.threshold_s = double(n) / 4.0;
  return fi;
}

/// f^_j(xi_j) = phi(N^{a_j/2-1} xi_j + N^{a_j/2}); support [-N - N^{1-a_j/2}, -N + N^{1-a_j/2}].
inline FamilyInstance gen_nfamily(double N, const DispersionLaw& law, double s, double q, const Bump& phi = unit_bump,
                                  std::optional<Axis> axis = std::nullopt) {
  if (!(N >= 4.0)) throw RangeError("N family needs N >= 4");
  detail::check_bump(phi, 1.0);
  const Axis ax = axis ? *axis : Axis::symmetric(std::size_t(1) << 16, 256.0);
  FamilyInstance fi;
  fi.kind = FamilyKind::nfamily;
  fi.parameter = N;
  fi.n = law.dim();
  fi.law = law;
  for (std::size_t j = 0; j < law.dim(); ++j) {
    const double aj = law[j];
    const double w = std::pow(N, 1.0 - aj / 2.0);
    detail::check_margin(ax, -N - w, -N + w);
    fi.factors.push_back(detail::sample_axis(
        ax, [&](double xi) { return phi(std::pow(N, aj / 2.0 - 1.0) * xi + std::pow(N, aj / 2.0)); }));
    fi.support.emplace_back(-N - w, -N + w);
  }
  const double nd = double(fi.n), A = law.abs();
  fi.predicted.norm_exponent = nd / 2.0 + s - A / 4.0;
  fi.predicted.lower_bound_exponent = nd - A / 2.0;
  fi.predicted.level_set_exponent = A - nd;
  fi.predicted.lq_lower_exponent = nd - A / 2.0 + (A - nd) / q;
  fi.predicted.threshold_s = nd / 2.0 - A / 4.0 + A / q - nd / q;
  return fi;
}

/// Default grid for the box family: spatial half-extent 2M, frequency extent >= 1.25 (M + 2).
inline Axis box_axis(double M) {
  const double dxi = kPi / (2.0 * M);
  return Axis::for_frequency(dxi, 1.25 * (M + 2.0));
}

/// f^ = indicator of [M, M+1] on the frequency grid (cell fractions), with the
/// selection t(x) = |x|/(2(M+1/2)) on [-M,-2] and t = 1/2 elsewhere.
inline FamilyInstance gen_box(double M, double s = 0.5, std::optional<Axis> axis = std::nullopt) {
  if (!(M >= 4.0)) throw RangeError("box family needs M >= 4");
  const Axis ax = axis ? *axis : box_axis(M);
  if (!(ax.freq_extent() > M + 2.0)) throw RangeError("grid frequency extent must exceed M + 2");
  if (!(ax.extent() > M)) throw RangeError("grid spatial extent must exceed M");
  FamilyInstance fi;
  fi.kind = FamilyKind::box;
  fi.parameter = M;
  fi.n = 1;
  fi.law = DispersionLaw({2.0});
  const auto ind = indicator_cells(ax.m, ax.dxi(), M, M + 1.0);
  SpectralField F(UniformGrid({ax}), Representation::frequency);
  for (std::size_t l = 0; l < ax.m; ++l) F[l] = ind[l];
  fi.factors.push_back(std::move(F));
  fi.support.emplace_back(M, M + 1.0);

  const double a = M + 0.5;
  std::vector<double> times;
  std::vector<std::size_t> inside;
  for (std::size_t k = 0; k < ax.m; ++k) {
    const double x = ax.x(k);
    if (x >= -M && x <= -2.0) {
      times.push_back(-x / (2.0 * a));
      inside.push_back(k);
    }
  }
  times.push_back(0.5);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  TimeSelection sel;
  sel.grid = UniformGrid({ax});
  sel.search = TimeSearchGrid(TimeSearchGrid::Mode::star, {times});
  const auto idx_of = [&](double t) {
    return std::uint32_t(std::lower_bound(times.begin(), times.end(), t) - times.begin());
  };
  sel.index.assign(ax.m, idx_of(0.5));
  for (std::size_t k : inside) sel.index[k] = idx_of(-ax.x(k) / (2.0 * a));
  fi.selection = std::move(sel);
  fi.predicted.norm_exponent = 2.0 * s;       // ||f||^2_{H_s}
  fi.predicted.lower_bound_exponent = 1.0;    // int |Sf|^2 over [-M,-2]
  fi.predicted.threshold_s = 0.5;
  return fi;
}

}  // namespace oscimax

#endif  // OSCIMAX_COUNTEREXAMPLES_HPP
