#ifndef OSCIMAX_SPECTRAL_HPP
#define OSCIMAX_SPECTRAL_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "oscimax/error.hpp"
#include "oscimax/fft.hpp"
#include "oscimax/grid.hpp"

namespace oscimax {

using cplx = std::complex<double>;

enum class Representation { spatial, frequency };

inline const char* to_string(Representation r) { return r == Representation::spatial ? "spatial" : "frequency"; }

/// Samples of f (spatial) or of f^ (frequency) on a UniformGrid.
struct SpectralField {
  UniformGrid grid;
  Representation rep = Representation::spatial;
  std::vector<cplx> values;

  SpectralField() = default;
  SpectralField(UniformGrid g, Representation r) : grid(std::move(g)), rep(r), values(grid.size(), cplx(0.0)) {}
  SpectralField(UniformGrid g, Representation r, std::vector<cplx> v)
      : grid(std::move(g)), rep(r), values(std::move(v)) {
    if (values.size() != grid.size()) throw DimensionError("field value count does not match grid size");
  }

  std::size_t size() const { return values.size(); }
  cplx& operator[](std::size_t p) { return values[p]; }
  const cplx& operator[](std::size_t p) const { return values[p]; }
};

inline void require_rep(const SpectralField& f, Representation r, const char* what) {
  if (f.rep != r) {
    throw RepresentationError(std::string(what) + ": expected " + to_string(r) + " field, got " + to_string(f.rep));
  }
}

/// Sample fn(x) at every spatial node.
inline SpectralField sample_spatial(const UniformGrid& g, const std::function<cplx(const std::vector<double>&)>& fn) {
  SpectralField f(g, Representation::spatial);
  for (std::size_t p = 0; p < g.size(); ++p) f[p] = fn(g.point(p));
  return f;
}

/// Sample fn(xi) at every frequency node.
inline SpectralField sample_frequency(const UniformGrid& g,
                                      const std::function<cplx(const std::vector<double>&)>& fn) {
  SpectralField f(g, Representation::frequency);
  for (std::size_t p = 0; p < g.size(); ++p) f[p] = fn(g.frequency(p));
  return f;
}

namespace detail {

inline std::vector<int> fft_dims(const UniformGrid& g) {
  std::vector<int> d;
  for (const auto& ax : g.axes()) d.push_back(int(ax.m));
  return d;
}

// Multiply by (-1)^(k_1+...+k_n), the shift that centres the DFT on index m/2.
inline void checkerboard(std::vector<cplx>& v, const UniformGrid& g) {
  const std::size_t last = g.axis(g.dim() - 1).m;
  const std::size_t rows = v.size() / last;
  for (std::size_t r = 0; r < rows; ++r) {
    std::size_t par = 0;
    std::size_t q = r;
    for (std::size_t j = g.dim() - 1; j-- > 0;) {
      par += q % g.axis(j).m;
      q /= g.axis(j).m;
    }
    cplx* row = v.data() + r * last;
    for (std::size_t k = (par & 1) ? 0 : 1; k < last; k += 2) row[k] = -row[k];
  }
}

// (-1)^(m_j/2) per axis from the centred index offsets.
inline double centering_sign(const UniformGrid& g) {
  double s = 1.0;
  for (const auto& ax : g.axes())
    if ((ax.m / 2) % 2) s = -s;
  return s;
}

}  // namespace detail

/// f^(xi) = int e^{-i x.xi} f(x) dx, by the trapezoid rule on the grid.
inline SpectralField forward_transform(const SpectralField& f) {
  require_rep(f, Representation::spatial, "forward_transform");
  SpectralField out(f.grid, Representation::frequency, f.values);
  detail::checkerboard(out.values, f.grid);
  detail::dft_inplace(out.values, detail::fft_dims(f.grid), FFTW_FORWARD);
  detail::checkerboard(out.values, f.grid);
  const double scale = f.grid.cell_volume() * detail::centering_sign(f.grid);
  for (auto& v : out.values) v *= scale;
  return out;
}

/// f(x) = (2 pi)^{-n} int e^{i x.xi} F(xi) dxi.
inline SpectralField inverse_transform(const SpectralField& F) {
  require_rep(F, Representation::frequency, "inverse_transform");
  SpectralField out(F.grid, Representation::spatial, F.values);
  detail::checkerboard(out.values, F.grid);
  detail::dft_inplace(out.values, detail::fft_dims(F.grid), FFTW_BACKWARD);
  detail::checkerboard(out.values, F.grid);
  const double scale =
      F.grid.freq_cell_volume() / std::pow(kTwoPi, double(F.grid.dim())) * detail::centering_sign(F.grid);
  for (auto& v : out.values) v *= scale;
  return out;
}

inline SpectralField to_frequency(const SpectralField& f) {
  return f.rep == Representation::frequency ? f : forward_transform(f);
}
inline SpectralField to_spatial(const SpectralField& f) {
  return f.rep == Representation::spatial ? f : inverse_transform(f);
}

/// Fraction of sum |F|^2 sitting where some |xi_j| exceeds (1 - band) of that axis' extent.
inline double boundary_mass_fraction(const SpectralField& F, double band = 0.05) {
  require_rep(F, Representation::frequency, "boundary_mass_fraction");
  double total = 0.0, edge = 0.0;
  const auto& g = F.grid;
  for (std::size_t p = 0; p < F.size(); ++p) {
    const double w = std::norm(F[p]);
    total += w;
    auto xi = g.frequency(p);
    for (std::size_t j = 0; j < g.dim(); ++j) {
      if (std::abs(xi[j]) > (1.0 - band) * g.axis(j).freq_extent()) {
        edge += w;
        break;
      }
    }
  }
  return total > 0.0 ? edge / total : 0.0;
}

struct EvolveOptions {
  bool allow_aliasing = false;
  double boundary_band = 0.05;
  double boundary_limit = 1e-6;
};

namespace detail {

inline std::vector<std::vector<double>> axis_phases(const UniformGrid& g, const DispersionLaw& law,
                                                    const TimeVector& t) {
  std::vector<std::vector<double>> ph(g.dim());
  for (std::size_t j = 0; j < g.dim(); ++j) {
    const auto& ax = g.axis(j);
    ph[j].resize(ax.m);
    for (std::size_t l = 0; l < ax.m; ++l) {
      const double xi = std::abs(ax.xi(l));
      ph[j][l] = xi == 0.0 ? 0.0 : t[j] * std::pow(xi, law[j]);
    }
  }
  return ph;
}

}  // namespace detail

/// Multiply F by e^{i sum_j t_j |xi_j|^{a_j}} in place.
inline void apply_multiplier(SpectralField& F, const DispersionLaw& law, const TimeVector& t) {
  require_rep(F, Representation::frequency, "apply_multiplier");
  require_same_dim(law.dim(), F.grid.dim(), "apply_multiplier");
  require_same_dim(t.size(), F.grid.dim(), "apply_multiplier");
  const auto ph = detail::axis_phases(F.grid, law, t);
  const auto& g = F.grid;
  const std::size_t last = g.axis(g.dim() - 1).m;
  const std::size_t rows = F.size() / last;
  std::vector<std::size_t> idx(g.dim(), 0);
  for (std::size_t r = 0; r < rows; ++r) {
    double base = 0.0;
    std::size_t q = r;
    for (std::size_t j = g.dim() - 1; j-- > 0;) {
      base += ph[j][q % g.axis(j).m];
      q /= g.axis(j).m;
    }
    cplx* row = F.values.data() + r * last;
    const auto& pl = ph[g.dim() - 1];
    for (std::size_t k = 0; k < last; ++k) row[k] *= std::polar(1.0, base + pl[k]);
  }
}

inline void check_aliasing(const SpectralField& F, const EvolveOptions& opt) {
  if (opt.allow_aliasing) return;
  const double frac = boundary_mass_fraction(F, opt.boundary_band);
  if (frac > opt.boundary_limit) {
    throw AliasingError("spectral mass near the grid boundary is " + std::to_string(frac) + " of the total", frac);
  }
}

/// S_t f(x) = int e^{i x.xi} e^{i sum t_j |xi_j|^{a_j}} f^(xi) dxi on the spatial grid.
/// No (2 pi)^{-n} factor: S_0 f = (2 pi)^n f.
inline SpectralField evolve(const SpectralField& f, const DispersionLaw& law, const TimeVector& t,
                            const EvolveOptions& opt = {}) {
  require_same_dim(law.dim(), f.grid.dim(), "evolve");
  require_same_dim(t.size(), f.grid.dim(), "evolve");
  SpectralField F = to_frequency(f);
  check_aliasing(F, opt);
  apply_multiplier(F, law, t);
  SpectralField u = inverse_transform(F);
  const double c = std::pow(kTwoPi, double(f.grid.dim()));
  for (auto& v : u.values) v *= c;
  return u;
}

/// T_t f = (2 pi)^{-n} S_t f.
inline SpectralField scale_to_Tt(SpectralField s) {
  const double c = std::pow(kTwoPi, -double(s.grid.dim()));
  for (auto& v : s.values) v *= c;
  return s;
}

/// Trapezoid value of int e^{i x.xi} e^{i sum t_j|xi_j|^{a_j}} F(xi) dxi at an arbitrary point x.
inline cplx evaluate_offgrid(const SpectralField& F, const DispersionLaw& law, const TimeVector& t,
                             const std::vector<double>& x) {
  require_rep(F, Representation::frequency, "evaluate_offgrid");
  require_same_dim(law.dim(), F.grid.dim(), "evaluate_offgrid");
  require_same_dim(t.size(), F.grid.dim(), "evaluate_offgrid");
  require_same_dim(x.size(), F.grid.dim(), "evaluate_offgrid");
  const auto& g = F.grid;
  cplx acc(0.0);
  for (std::size_t p = 0; p < F.size(); ++p) {
    if (F[p] == cplx(0.0)) continue;
    auto idx = g.unravel(p);
    double ph = 0.0;
    for (std::size_t j = 0; j < g.dim(); ++j) {
      const double xi = g.axis(j).xi(idx[j]);
      const double ax = std::abs(xi);
      ph += x[j] * xi + (ax == 0.0 ? 0.0 : t[j] * std::pow(ax, law[j]));
    }
    acc += std::polar(1.0, ph) * F[p];
  }
  return acc * g.freq_cell_volume();
}

/// Nonzero frequency nodes of a 1D spectrum with |xi|^a precomputed; used for
/// repeated pointwise evaluation of S_t f at many (x, t) pairs.
struct SparseSpectrum1D {
  std::vector<double> xi;
  std::vector<double> xi_pow;
  std::vector<cplx> coef;  // F(xi) * dxi

  SparseSpectrum1D() = default;
  SparseSpectrum1D(const SpectralField& F, double a) {
    require_rep(F, Representation::frequency, "SparseSpectrum1D");
    require_same_dim(F.grid.dim(), 1, "SparseSpectrum1D");
    const auto& ax = F.grid.axis(0);
    for (std::size_t l = 0; l < ax.m; ++l) {
      if (F[l] == cplx(0.0)) continue;
      const double v = ax.xi(l);
      xi.push_back(v);
      xi_pow.push_back(v == 0.0 ? 0.0 : std::pow(std::abs(v), a));
      coef.push_back(F[l] * ax.dxi());
    }
  }
  cplx operator()(double x, double t) const {
    cplx acc(0.0);
    for (std::size_t i = 0; i < xi.size(); ++i) acc += std::polar(1.0, x * xi[i] + t * xi_pow[i]) * coef[i];
    return acc;
  }
};

}  // namespace oscimax

#endif  // OSCIMAX_SPECTRAL_HPP
