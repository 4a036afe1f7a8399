#ifndef OSCIMAX_FIT_HPP
#define OSCIMAX_FIT_HPP

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "oscimax/error.hpp"

namespace oscimax {

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
  std::size_t used = 0;
  std::size_t dropped = 0;  // nonpositive samples inside the window
  double window_lo = 0.0;
  double window_hi = 0.0;
};

/// Least squares of log y against log x over samples with x in [lo, hi].
/// Samples with x <= 0 or y <= 0 are dropped and counted.
inline LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y,
                            double lo = 0.0, double hi = std::numeric_limits<double>::infinity(),
                            std::size_t min_points = 8) {
  if (x.size() != y.size()) throw PreconditionError("fit_loglog: x and y differ in length");
  LogLogFit f;
  f.window_lo = lo;
  f.window_hi = hi;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= lo && x[i] <= hi)) continue;
    if (!(x[i] > 0.0) || !(y[i] > 0.0) || !std::isfinite(y[i])) {
      ++f.dropped;
      continue;
    }
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  f.used = lx.size();
  if (f.used < min_points) {
    throw PreconditionError("fit_loglog: need at least " + std::to_string(min_points) + " usable samples, have " +
                            std::to_string(f.used));
  }
  const double n = double(f.used);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw PreconditionError("fit_loglog: all abscissae coincide");
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - (f.intercept + f.slope * lx[i]);
    ss += r * r;
  }
  f.residual_rms = std::sqrt(ss / n);
  return f;
}

enum class Verdict { pass, fail, informational };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    default:
      return "informational";
  }
}

/// two_sided: |fitted - predicted| <= tol. upper: fitted <= predicted + tol
/// (a bound that may be beaten). lower: fitted >= predicted - tol.
enum class BoundKind { two_sided, upper, lower };

inline const char* to_string(BoundKind b) {
  switch (b) {
    case BoundKind::two_sided:
      return "two_sided";
    case BoundKind::upper:
      return "upper";
    default:
      return "lower";
  }
}

/// A fitted exponent (or checked quantity) compared against its predicted value.
struct ExponentReport {
  std::string scenario;
  std::string label;  // case within the scenario
  double fitted = 0.0;
  double predicted = 0.0;
  double tolerance = 0.05;
  double residual = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  std::size_t used = 0;
  std::size_t dropped = 0;
  bool informational = false;
  BoundKind bound = BoundKind::two_sided;
  Verdict verdict = Verdict::fail;
  std::string samples;  // where the raw table lives
  std::string note;
};

inline constexpr double kMaxResidualRms = 0.1;

/// pass iff the fitted value is within tol of the prediction (one-sided for
/// bounds) and residual RMS <= 0.1; probes are informational.
inline Verdict verdict(const ExponentReport& r, double tol) {
  if (r.informational) return Verdict::informational;
  if (!std::isfinite(r.fitted) || !(r.residual <= kMaxResidualRms)) return Verdict::fail;
  bool ok = false;
  switch (r.bound) {
    case BoundKind::two_sided:
      ok = std::abs(r.fitted - r.predicted) <= tol;
      break;
    case BoundKind::upper:
      ok = r.fitted <= r.predicted + tol;
      break;
    case BoundKind::lower:
      ok = r.fitted >= r.predicted - tol;
      break;
  }
  return ok ? Verdict::pass : Verdict::fail;
}

inline ExponentReport make_report(const std::string& scenario, const LogLogFit& fit, double predicted, double tol,
                                  BoundKind bound = BoundKind::two_sided) {
  ExponentReport r;
  r.scenario = scenario;
  r.bound = bound;
  r.fitted = fit.slope;
  r.predicted = predicted;
  r.tolerance = tol;
  r.residual = fit.residual_rms;
  r.window_lo = fit.window_lo;
  r.window_hi = fit.window_hi;
  r.used = fit.used;
  r.dropped = fit.dropped;
  r.verdict = verdict(r, tol);
  return r;
}

/// Report for a directly checked quantity (no regression).
inline ExponentReport check_report(const std::string& scenario, const std::string& label, double value,
                                   double predicted, double tol, BoundKind bound) {
  ExponentReport r;
  r.scenario = scenario;
  r.label = label;
  r.fitted = value;
  r.predicted = predicted;
  r.tolerance = tol;
  r.bound = bound;
  r.verdict = verdict(r, tol);
  return r;
}

}  // namespace oscimax

#endif  // OSCIMAX_FIT_HPP
