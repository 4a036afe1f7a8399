#include <gtest/gtest.h>

#include <cmath>

#include "oscimax.hpp"

using namespace oscimax;

namespace {

cplx brute(const std::function<cplx(double)>& f, double lo, double hi) {
  const double re = quad::integrate_smooth([&](double u) { return f(u).real(); }, lo, hi, 1e-13);
  const double im = quad::integrate_smooth([&](double u) { return f(u).imag(); }, lo, hi, 1e-13);
  return {re, im};
}

}  // namespace

TEST(Quadrature, GaussLegendreIsExactOnPolynomials) {
  EXPECT_NEAR(quad::integrate_smooth([](double u) { return u * u * u * u; }, -1.0, 2.0), 33.0 / 5.0, 1e-13);
  EXPECT_NEAR(quad::integrate_smooth([](double u) { return std::exp(u); }, 0.0, 1.0), std::exp(1.0) - 1.0, 1e-14);
}

TEST(Weights, RangeChecks) {
  EXPECT_THROW(oscillatory_integral({2.0, 0.5, 1.0}, WeightSpec::lemma2(1.2, 8.0)), RangeError);
  EXPECT_THROW(oscillatory_integral({2.0, 0.5, 1.0}, WeightSpec::lemma3(0.9, 1.0, 8.0)), RangeError);
  EXPECT_THROW(oscillatory_integral({2.0, 1.5, 1.0}, WeightSpec::lemma2(1.0, 8.0)), RangeError);
  EXPECT_THROW(oscillatory_integral({2.0, 0.5, 1.0}, WeightSpec::lemma1(0.3, 8.0)), RangeError);
  EXPECT_THROW(oscillatory_integral({2.0, 0.5, 0.0}, WeightSpec::lemma2(1.0, 8.0)), PreconditionError);
}

TEST(Weights, Lemma2Beta) {
  EXPECT_DOUBLE_EQ(lemma2_beta(3.0, 1.0), 0.75);
  EXPECT_DOUBLE_EQ(lemma2_beta(2.0, 0.6), 0.6);
}

// Smooth, compactly supported amplitude: direct adaptive Gauss-Legendre is the oracle.
TEST(OscillatoryIntegral, Lemma2AgainstDirectQuadrature) {
  for (auto [a, d, x] : {std::tuple{2.0, 0.5, 3.0}, {3.0, -0.3, 7.0}, {1.5, 0.9, -2.0}}) {
    const auto w = WeightSpec::lemma2(std::min(1.0, a / 2.0), 8.0);
    const auto r = oscillatory_integral({a, d, x}, w);
    const cplx ref = brute(
        [&](double e) { return std::polar(w(std::abs(e)), d * std::pow(std::abs(e), a) - x * e); }, -16.0, 16.0);
    EXPECT_NEAR(std::abs(r.value - ref), 0.0, 1e-8 * std::max(1.0, std::abs(ref))) << a << " " << d << " " << x;
  }
}

// |xi|^{-1/2} singularity removed by xi = u^2.
TEST(OscillatoryIntegral, Lemma1AgainstSubstitution) {
  const double a = 2.0, t = 0.3, x = 2.0, N = 8.0;
  const auto r = oscillatory_integral({a, t, x}, WeightSpec::lemma1(0.5, N));
  const cplx ref = brute(
      [&](double u) {
        const double e = u * u;
        return 2.0 * cutoff(e / N) * 2.0 * std::cos(x * e) * std::polar(1.0, t * std::pow(e, a));
      },
      0.0, std::sqrt(2.0 * N));
  EXPECT_NEAR(std::abs(r.value - ref), 0.0, 1e-8);
}

TEST(OscillatoryIntegral, Lemma3LogWeight) {
  const double a = 2.0, d = -0.5, x = 4.0;
  const auto w = WeightSpec::lemma3(1.0, 0.5, 6.0);
  const auto r = oscillatory_integral({a, d, x}, w);
  const cplx ref =
      brute([&](double e) { return std::polar(w(std::abs(e)), d * e * e - x * e); }, -12.0, 12.0);
  EXPECT_NEAR(std::abs(r.value - ref), 0.0, 1e-8);
}

// K_t(x) for a = 2: sqrt(pi / t) e^{i pi/4} e^{-i x^2 / (4t)}.
TEST(Kernel, FresnelClosedForm) {
  for (auto [t, x] : {std::pair{1.0, 0.0}, {1.0, 3.0}, {0.25, -2.0}}) {
    const auto r = kernel_value(2.0, t, x);
    const cplx ref = std::sqrt(kPi / t) * std::polar(1.0, kPi / 4.0 - x * x / (4.0 * t));
    EXPECT_NEAR(std::abs(r.value - ref), 0.0, 1e-6 * std::abs(ref)) << t << " " << x;
  }
}

TEST(Kernel, OriginAndSelfSimilarity) {
  for (double a : {1.5, 3.0}) {
    EXPECT_NEAR(std::abs(kernel_value(a, 1.0, 0.0).value - kernel_at_origin(a)), 0.0, 1e-6);
    EXPECT_NEAR(kernel_sigma(a, {0.25, 0.5, 1.0, 2.0}), 1.0 / a, 1e-6);
  }
  EXPECT_THROW(kernel_value(2.0, 0.0, 1.0), PreconditionError);
}

TEST(VanDerCorput, LinearPhaseRatio) {
  for (double lam : {10.0, 333.0, 1e4}) {
    const auto r = vdc_bound_check([lam](double s, int k) { return k == 0 ? lam * s : (k == 1 ? lam : 0.0); },
                                   [](double) { return 1.0; }, 0.0, 1.0, lam, 1);
    EXPECT_NEAR(std::abs(r.value), 2.0 * std::abs(std::sin(lam / 2.0)) / lam, 1e-10);
    EXPECT_LE(r.ratio, 2.0 + 1e-9);
    EXPECT_TRUE(r.pass);
  }
  EXPECT_THROW(vdc_bound_check([](double, int) { return 0.0; }, [](double) { return 1.0; }, 0.0, 1.0, 1.0, 3),
               PreconditionError);
}
