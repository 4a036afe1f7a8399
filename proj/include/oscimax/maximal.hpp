#ifndef OSCIMAX_MAXIMAL_HPP
#define OSCIMAX_MAXIMAL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "oscimax/error.hpp"
#include "oscimax/norms.hpp"
#include "oscimax/parallel.hpp"
#include "oscimax/spectral.hpp"

namespace oscimax {

/// Candidate times per axis. star: all candidates in (0,1); doublestar: any real times.
struct TimeSearchGrid {
  enum class Mode { star, doublestar };

  Mode mode = Mode::star;
  std::vector<std::vector<double>> axes;

  TimeSearchGrid() = default;
  TimeSearchGrid(Mode m, std::vector<std::vector<double>> candidates) : mode(m), axes(std::move(candidates)) {
    if (axes.empty()) throw PreconditionError("time search grid needs at least one axis");
    for (const auto& c : axes) {
      if (c.empty()) throw PreconditionError("empty candidate list");
      if (!std::is_sorted(c.begin(), c.end())) throw PreconditionError("candidate list must be sorted");
      if (mode == Mode::star)
        for (double t : c)
          if (!(t > 0.0 && t < 1.0)) throw PreconditionError("star candidates must lie in (0,1)");
    }
  }

  static std::vector<double> geometric(std::size_t count, double lo, double hi) {
    std::vector<double> v(count);
    if (count == 1) {
      v[0] = std::sqrt(lo * hi);
      return v;
    }
    for (std::size_t i = 0; i < count; ++i) v[i] = lo * std::pow(hi / lo, double(i) / double(count - 1));
    return v;
  }
  /// count geometric points in (lo, hi) per axis.
  static TimeSearchGrid star(std::size_t n, std::size_t count = 128, double lo = 1e-4, double hi = 1.0 - 1e-4) {
    return TimeSearchGrid(Mode::star, std::vector<std::vector<double>>(n, geometric(count, lo, hi)));
  }
  /// 0 plus +-(count geometric points in [tmin, T]) per axis.
  static TimeSearchGrid doublestar(std::size_t n, std::size_t count, double T, double tmin) {
    auto pos = geometric(count, tmin, T);
    std::vector<double> v;
    for (auto it = pos.rbegin(); it != pos.rend(); ++it) v.push_back(-*it);
    v.push_back(0.0);
    v.insert(v.end(), pos.begin(), pos.end());
    return TimeSearchGrid(Mode::doublestar, std::vector<std::vector<double>>(n, v));
  }
  static TimeSearchGrid single(const TimeVector& t) {
    std::vector<std::vector<double>> c;
    bool inside = true;
    for (double tj : t) {
      c.push_back({tj});
      inside = inside && tj > 0.0 && tj < 1.0;
    }
    return TimeSearchGrid(inside ? Mode::star : Mode::doublestar, c);
  }

  std::size_t dim() const { return axes.size(); }
  std::size_t product_size() const {
    std::size_t s = 1;
    for (const auto& c : axes) s *= c.size();
    return s;
  }

  /// Inserts one candidate between every neighbouring pair (geometric mean for
  /// same-signed neighbours, midpoint otherwise).
  TimeSearchGrid refined() const {
    std::vector<std::vector<double>> out;
    for (const auto& c : axes) {
      std::vector<double> r;
      for (std::size_t i = 0; i < c.size(); ++i) {
        r.push_back(c[i]);
        if (i + 1 < c.size()) {
          const double a = c[i], b = c[i + 1];
          r.push_back(a * b > 0.0 ? std::copysign(std::sqrt(a * b), a) : 0.5 * (a + b));
        }
      }
      out.push_back(std::move(r));
    }
    return TimeSearchGrid(mode, out);
  }
};

/// Per-point time vector t(x), stored as candidate indices into a search grid.
struct TimeSelection {
  UniformGrid grid;
  TimeSearchGrid search;
  std::vector<std::uint32_t> index;  // size() * dim entries

  double time(std::size_t p, std::size_t j) const { return search.axes[j][index[p * search.dim() + j]]; }
  TimeVector time(std::size_t p) const {
    TimeVector t(search.dim());
    for (std::size_t j = 0; j < t.size(); ++j) t[j] = time(p, j);
    return t;
  }
};

struct MaximalResult {
  std::vector<double> value;
  TimeSelection selection;
};

struct MaximalOptions {
  std::size_t cap = 128 * 128;  // largest candidate product searched exhaustively
  EvolveOptions evolve;
};

namespace detail {

inline std::vector<std::uint32_t> strided(std::size_t size, std::size_t keep) {
  keep = std::max<std::size_t>(1, std::min(keep, size));
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < keep; ++i)
    out.push_back(std::uint32_t(keep == 1 ? size / 2 : (i * (size - 1)) / (keep - 1)));
  return out;
}

// Candidate plans: each plan lists, per axis, the candidate indices to combine.
inline std::vector<std::vector<std::vector<std::uint32_t>>> search_plans(const TimeSearchGrid& s, std::size_t cap) {
  const std::size_t n = s.dim();
  std::vector<std::vector<std::vector<std::uint32_t>>> plans;
  if (s.product_size() <= cap) {
    std::vector<std::vector<std::uint32_t>> all;
    for (const auto& c : s.axes) all.push_back(strided(c.size(), c.size()));
    plans.push_back(all);
    return plans;
  }
  // thinned product, then one pass per axis with that axis at full density
  const auto k = std::size_t(std::floor(std::pow(double(cap), 1.0 / double(n))));
  std::vector<std::vector<std::uint32_t>> thin;
  for (const auto& c : s.axes) thin.push_back(strided(c.size(), k));
  plans.push_back(thin);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<std::uint32_t>> p;
    const std::size_t full = s.axes[j].size();
    const std::size_t rest =
        n > 1 ? std::size_t(std::floor(std::pow(double(cap) / double(full), 1.0 / double(n - 1)))) : 1;
    for (std::size_t i = 0; i < n; ++i) p.push_back(i == j ? strided(full, full) : strided(s.axes[i].size(), rest));
    plans.push_back(p);
  }
  return plans;
}

}  // namespace detail

/// Pointwise max of |S_t f(x)| over the candidate product, with the argmax.
/// Candidates are visited in lexicographic order and only a strict improvement
/// replaces the current choice, so ties go to the smallest t.
inline MaximalResult maximal_field(const SpectralField& f, const DispersionLaw& law, const TimeSearchGrid& search,
                                   const MaximalOptions& opt = {}) {
  require_same_dim(law.dim(), f.grid.dim(), "maximal_field");
  require_same_dim(search.dim(), f.grid.dim(), "maximal_field");
  const std::size_t n = f.grid.dim();
  const SpectralField F = to_frequency(f);
  check_aliasing(F, opt.evolve);
  const double c = std::pow(kTwoPi, double(n));

  MaximalResult res;
  res.value.assign(F.size(), -1.0);
  res.selection.grid = f.grid;
  res.selection.search = search;
  res.selection.index.assign(F.size() * n, 0);

  for (const auto& plan : detail::search_plans(search, opt.cap)) {
    std::vector<std::vector<std::uint32_t>> cands;
    std::vector<std::uint32_t> idx(n, 0);
    while (true) {
      std::vector<std::uint32_t> cand(n);
      for (std::size_t j = 0; j < n; ++j) cand[j] = plan[j][idx[j]];
      cands.push_back(cand);
      std::size_t j = n;
      while (j-- > 0) {
        if (++idx[j] < plan[j].size()) break;
        idx[j] = 0;
      }
      if (j == std::size_t(-1)) break;
    }
    const std::size_t batch = std::max<std::size_t>(1, worker_count());
    std::vector<std::vector<double>> mods(batch);
    for (std::size_t b0 = 0; b0 < cands.size(); b0 += batch) {
      const std::size_t nb = std::min(batch, cands.size() - b0);
      parallel_for(nb, [&](std::size_t i) {
        TimeVector t(n);
        for (std::size_t j = 0; j < n; ++j) t[j] = search.axes[j][cands[b0 + i][j]];
        SpectralField G = F;
        apply_multiplier(G, law, t);
        SpectralField u = inverse_transform(G);
        auto& m = mods[i];
        m.resize(u.size());
        for (std::size_t p = 0; p < u.size(); ++p) m[p] = std::abs(u[p]) * c;
      });
      for (std::size_t i = 0; i < nb; ++i) {
        const auto& m = mods[i];
        const auto& cand = cands[b0 + i];
        for (std::size_t p = 0; p < m.size(); ++p) {
          if (m[p] > res.value[p]) {
            res.value[p] = m[p];
            for (std::size_t j = 0; j < n; ++j) res.selection.index[p * n + j] = cand[j];
          }
        }
      }
    }
  }
  return res;
}

/// Maximal field of a tensor product f = f_1 x ... x f_n from its 1D factors.
/// |S_t f(x)| = prod_j |S_{t_j} f_j(x_j)|, so the sup over the candidate product
/// factorizes; the nD field is the outer product of the returned 1D fields.
inline std::vector<MaximalResult> maximal_field_tensor(const std::vector<SpectralField>& factors,
                                                       const DispersionLaw& law, const TimeSearchGrid& search,
                                                       const MaximalOptions& opt = {}) {
  require_same_dim(factors.size(), law.dim(), "maximal_field_tensor");
  require_same_dim(search.dim(), law.dim(), "maximal_field_tensor");
  std::vector<MaximalResult> out;
  for (std::size_t j = 0; j < factors.size(); ++j) {
    require_same_dim(factors[j].grid.dim(), 1, "maximal_field_tensor factor");
    out.push_back(maximal_field(factors[j], DispersionLaw({law[j]}),
                                TimeSearchGrid(search.mode, {search.axes[j]}), opt));
  }
  return out;
}

/// Outer product of per-axis real samples, row-major with axis 0 slowest.
inline std::vector<double> outer_product(const std::vector<std::vector<double>>& axes) {
  std::vector<double> out{1.0};
  for (const auto& v : axes) {
    std::vector<double> next;
    next.reserve(out.size() * v.size());
    for (double a : out)
      for (double b : v) next.push_back(a * b);
    out.swap(next);
  }
  return out;
}

/// The linearized operator Sf(x) = S_{t(x)} f(x) with a frozen selection.
/// Points sharing a time vector are evaluated with one FFT when that is cheaper
/// than direct summation over the nonzero spectrum.
inline SpectralField apply_linearized(const SpectralField& f, const DispersionLaw& law, const TimeSelection& sel,
                                      const EvolveOptions& opt = {}) {
  if (!(sel.grid == f.grid)) throw DimensionError("apply_linearized: selection grid does not match field grid");
  require_same_dim(law.dim(), f.grid.dim(), "apply_linearized");
  const std::size_t n = f.grid.dim();
  const SpectralField F = to_frequency(f);
  check_aliasing(F, opt);
  const auto& g = f.grid;

  struct Node {
    std::vector<double> xi, xip;
    cplx coef;
  };
  std::vector<Node> nz;
  for (std::size_t p = 0; p < F.size(); ++p) {
    if (F[p] == cplx(0.0)) continue;
    Node nd;
    nd.xi = g.frequency(p);
    for (std::size_t j = 0; j < n; ++j)
      nd.xip.push_back(nd.xi[j] == 0.0 ? 0.0 : std::pow(std::abs(nd.xi[j]), law[j]));
    nd.coef = F[p] * g.freq_cell_volume();
    nz.push_back(std::move(nd));
  }

  std::map<std::vector<std::uint32_t>, std::vector<std::size_t>> groups;
  for (std::size_t p = 0; p < F.size(); ++p) {
    std::vector<std::uint32_t> key(sel.index.begin() + std::ptrdiff_t(p * n),
                                   sel.index.begin() + std::ptrdiff_t((p + 1) * n));
    groups[key].push_back(p);
  }
  const double fft_cost = 5.0 * double(F.size()) * std::log2(double(F.size()));
  const double c = std::pow(kTwoPi, double(n));
  SpectralField out(g, Representation::spatial);
  std::vector<std::pair<const std::vector<std::uint32_t>*, const std::vector<std::size_t>*>> work;
  for (const auto& kv : groups) work.emplace_back(&kv.first, &kv.second);
  parallel_for(work.size(), [&](std::size_t w) {
    const auto& key = *work[w].first;
    const auto& pts = *work[w].second;
    TimeVector t(n);
    for (std::size_t j = 0; j < n; ++j) t[j] = sel.search.axes[j][key[j]];
    if (double(pts.size()) * double(nz.size()) * double(n + 1) > fft_cost) {
      SpectralField G = F;
      apply_multiplier(G, law, t);
      SpectralField u = inverse_transform(G);
      for (std::size_t p : pts) out[p] = u[p] * c;
    } else {
      for (std::size_t p : pts) {
        auto x = g.point(p);
        cplx acc(0.0);
        for (const auto& nd : nz) {
          double ph = 0.0;
          for (std::size_t j = 0; j < n; ++j) ph += x[j] * nd.xi[j] + t[j] * nd.xip[j];
          acc += std::polar(1.0, ph) * nd.coef;
        }
        out[p] = acc;
      }
    }
  });
  return out;
}

}  // namespace oscimax

#endif  // OSCIMAX_MAXIMAL_HPP
