#include <gtest/gtest.h>

#include <cmath>

#include "oscimax.hpp"

using namespace oscimax;

TEST(WindowMap, WindowsAndDomain) {
  const auto w = WindowMap::constant(0.25);
  const auto [lo, hi] = w.window(3.0);
  EXPECT_DOUBLE_EQ(lo, 4.0);
  EXPECT_DOUBLE_EQ(hi, 8.0);
  const auto [slo, shi] = w.s_window(3.0);
  EXPECT_DOUBLE_EQ(slo, -8.0);
  EXPECT_DOUBLE_EQ(shi, -4.0);
  EXPECT_THROW(w.at(1.5), PreconditionError);
  EXPECT_THROW(WindowMap([](double) { return 1.5; }).at(3.0), RangeError);
  EXPECT_THROW(WindowMap::constant(0.0), RangeError);
}

TEST(CumulativeLinear, ExactOnLinearData) {
  std::vector<cplx> v;
  for (int k = 0; k < 9; ++k) v.push_back(2.0 * (-1.0 + 0.25 * k) + 1.0);
  const CumulativeLinear c(-1.0, 0.25, v);
  // int (2x + 1) = x^2 + x
  EXPECT_NEAR(c.integral(-0.3, 0.7).real(), 1.4, 1e-14);
  EXPECT_NEAR(c.integral(-1.0, 1.0).real(), 2.0, 1e-14);
  EXPECT_THROW(c.primitive(1.5), RangeError);
}

TEST(ApplyL, GaussianSpectrumMatchesErf) {
  const Axis ax = Axis::for_frequency(1.0 / 512.0, 40.0);
  SpectralField F(UniformGrid({ax}), Representation::frequency);
  for (std::size_t l = 0; l < ax.m; ++l) F[l] = std::exp(-ax.xi(l) * ax.xi(l));
  const auto w = WindowMap::constant(0.3);
  const auto L = apply_L(F, w, std::make_pair(-6.0, 6.0));
  for (std::size_t k = 0; k < ax.m; ++k) {
    const double x = ax.x(k);
    if (std::abs(x) < 2.0 || std::abs(x) > 6.0) {
      EXPECT_EQ(L[k], cplx(0.0));
      continue;
    }
    const auto [a, b] = w.window(x);
    EXPECT_NEAR(L[k].real(), 0.5 * std::sqrt(kPi) * (std::erf(b) - std::erf(a)), 1e-5);
  }
}

TEST(TTKernel, ConstantTimeClosedForm) {
  const auto w = WindowMap::constant(0.25);
  EXPECT_NEAR(ttstar_kernel(3.0, 4.0, w), std::log(8.0 / 6.0), 1e-15);
  EXPECT_NEAR(ttstar_kernel(-3.0, -4.0, w), std::log(8.0 / 6.0), 1e-15);
  EXPECT_EQ(ttstar_kernel(3.0, 5.0, w), 0.0);
  EXPECT_EQ(ttstar_kernel(3.0, -3.0, w), 0.0);
  // on the diagonal K(x,x) = log((x+1)/(x-1)), half the bound
  for (double x : {2.0, 3.5, 40.0}) EXPECT_NEAR(ttstar_kernel(x, x, w), 0.5 * ttstar_bound(x, x), 1e-14);
}

TEST(TTKernel, BoundHoldsForVaryingTime) {
  const WindowMap w([](double x) { return 0.05 + 0.9 * (0.5 + 0.5 * std::sin(3.7 * x)); });
  for (double x = -30.0; x <= 30.0; x += 0.37) {
    if (std::abs(x) < 2.0) continue;
    for (double y = -30.0; y <= 30.0; y += 0.41) {
      if (std::abs(y) < 2.0) continue;
      EXPECT_LE(ttstar_kernel(x, y, w), ttstar_bound(x, y) * (1.0 + 1e-14));
    }
  }
}

TEST(Riesz, WeightsSumToTheKernelIntegral) {
  const double h = 0.1, r = 0.4;
  const std::size_t n = 500;
  const auto w = riesz_weights(n, h, r);
  double s = w[0];
  for (std::size_t k = 1; k < n; ++k) s += 2.0 * w[k];
  EXPECT_NEAR(s, 2.0 * std::pow((double(n) - 0.5) * h, r) / r, 1e-10);
}

// I_r chi_[0,1](x) = (x^r - (x-1)^r) / r for x > 1.
TEST(Riesz, IndicatorFarField) {
  const Axis ax = Axis::symmetric(8192, 256.0);
  const auto chi = indicator_cells(ax.m, ax.h, 0.0, 1.0);
  for (double r : {0.25, 0.5}) {
    const auto I = riesz_potential(chi, ax, r);
    for (std::size_t k = 0; k < ax.m; ++k) {
      const double x = ax.x(k);
      if (x < 10.0 || x > 200.0) continue;
      const double ref = (std::pow(x, r) - std::pow(x - 1.0, r)) / r;
      EXPECT_NEAR(I[k] / ref, 1.0, 1e-4) << x;
    }
  }
  EXPECT_THROW(riesz_potential(chi, ax, 1.0), RangeError);
  EXPECT_THROW(riesz_potential(std::vector<double>(5, 1.0), ax, 0.5), DimensionError);
}

TEST(Riesz, FFTPathMatchesDirectSum) {
  const Axis ax = Axis::symmetric(1024, 16.0);
  std::vector<double> hv(ax.m);
  for (std::size_t k = 0; k < ax.m; ++k) hv[k] = std::exp(-ax.x(k) * ax.x(k)) * (1.0 + 0.3 * std::sin(ax.x(k)));
  const double r = 1.0 / 3.0;
  const auto I = riesz_potential(hv, ax, r);
  const auto w = riesz_weights(ax.m, ax.h, r);
  for (std::size_t k = 0; k < ax.m; k += 31) {
    double acc = 0.0;
    for (std::size_t j = 0; j < ax.m; ++j) acc += w[k > j ? k - j : j - k] * hv[j];
    EXPECT_NEAR(I[k], acc, 1e-12 * std::max(1.0, std::abs(acc)));
  }
}

TEST(Majorization, BoxAtItsWindow) {
  const double M = 32.0, x = -16.0, t = 16.0 / 65.0;
  const auto r = majorization_check(gen_box(M).factors[0], x, t);
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.phase_variation, 0.5);
  EXPECT_GE(r.value, std::cos(0.5));
}

TEST(Majorization, SingleNodeIsExact) {
  const Axis ax = Axis::for_frequency(1.0 / 64.0, 40.0);
  SpectralField F(UniformGrid({ax}), Representation::frequency);
  const double x = -10.0, t = 0.5;  // window [9, 11]
  std::size_t l = 0;
  while (ax.xi(l) < 10.0) ++l;
  F[l] = 3.0;
  const auto r = majorization_check(F, x, t);
  EXPECT_NEAR(r.value, 3.0 * ax.dxi(), 1e-14);
  EXPECT_EQ(r.phase_variation, 0.0);
}

TEST(Majorization, Preconditions) {
  const Axis ax = Axis::for_frequency(1.0 / 64.0, 40.0);
  SpectralField F(UniformGrid({ax}), Representation::frequency);
  std::size_t l = 0;
  while (ax.xi(l) < 10.0) ++l;
  F[l] = -1.0;
  EXPECT_THROW(majorization_check(F, -10.0, 0.5), PreconditionError);
  F[l] = 1.0;
  EXPECT_THROW(majorization_check(F, -30.0, 0.5), PreconditionError);  // outside [29, 31]
  EXPECT_THROW(majorization_check(SpectralField(UniformGrid({ax}), Representation::frequency), -10.0, 0.5),
               PreconditionError);
  EXPECT_THROW(majorization_check(F, -10.0, 1.0), RangeError);
}

TEST(Ustar, SupFormMatchesExplicitCandidates) {
  const Axis ax(512, 0.125);
  const double M = 16.0, s = 0.25;
  std::vector<double> g(ax.m, 0.0);
  for (std::size_t k = 0; k < ax.m; ++k)
    if (ax.x(k) >= M && ax.x(k) <= M + 1.0) g[k] = 1.0;
  const auto fast = apply_Ustar_sup(g, ax, s);
  for (std::size_t k = 0; k < ax.m; k += 5) {
    const double x = ax.x(k);
    if (x < 2.0 || x + 1.0 > ax.x(ax.m - 1)) continue;
    std::vector<double> R;
    // R -> 1+ recovers the window starting at x itself
    R.push_back(1.0 + 1e-14);
    for (std::size_t j = k + 1; j < ax.m; ++j)
      if (ax.x(j) + 1.0 <= ax.x(ax.m - 1)) R.push_back(ax.x(j) / x);
    if (R.empty()) continue;
    const auto brute = apply_Ustar(g, ax, s, R);
    EXPECT_NEAR(brute.value[k], fast.value[k], 1e-12) << x;
  }
  // lower bound (M+1)^{-s} on [2, M]
  for (std::size_t k = 0; k < ax.m; ++k)
    if (ax.x(k) >= 2.0 && ax.x(k) <= M) {
      EXPECT_GE(fast.value[k], std::pow(M + 1.0, -s));
    }
  EXPECT_THROW(apply_Ustar(g, ax, s, {1.0}), RangeError);
  EXPECT_THROW(apply_Ustar(g, ax, -0.1, {2.0}), RangeError);
}

TEST(BoxRatio, ModulusStaysAboveCosHalf) {
  const auto b = thm6_ratio(16.0, 0.5);
  EXPECT_GE(b.min_modulus, std::cos(0.5));
  EXPECT_GE(b.sf_l2_sq, 0.99 * std::pow(std::cos(0.5), 2) * 14.0);
  EXPECT_GT(b.hs_norm_sq, 0.0);
}
