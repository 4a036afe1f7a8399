#include <gtest/gtest.h>

#include <cmath>

#include "oscimax.hpp"

using namespace oscimax;

TEST(FitLogLog, ExactPowerLaw) {
  std::vector<double> x, y;
  for (int i = 0; i < 10; ++i) {
    x.push_back(std::exp2(i));
    y.push_back(3.0 * std::pow(x.back(), -0.75));
  }
  const auto f = fit_loglog(x, y);
  EXPECT_NEAR(f.slope, -0.75, 1e-13);
  EXPECT_NEAR(std::exp(f.intercept), 3.0, 1e-12);
  EXPECT_LT(f.residual_rms, 1e-13);
  EXPECT_EQ(f.used, 10u);
}

TEST(FitLogLog, ConstantDataHasZeroSlope) {
  std::vector<double> x{1, 2, 3, 4, 5, 6, 7, 8}, y(8, 4.2);
  EXPECT_NEAR(fit_loglog(x, y).slope, 0.0, 1e-14);
}

TEST(FitLogLog, WindowSelectsRegime) {
  std::vector<double> x, y;
  for (int i = 0; i < 20; ++i) {
    x.push_back(std::exp2(i));
    y.push_back(i < 10 ? std::pow(x.back(), 2.0) : std::pow(2.0, 27.0) * std::pow(x.back(), -0.7));
  }
  EXPECT_NEAR(fit_loglog(x, y, 1024.0, 1e9).slope, -0.7, 1e-12);
  EXPECT_NEAR(fit_loglog(x, y, 0.0, 512.0).slope, 2.0, 1e-12);
}

TEST(FitLogLog, DropsNonpositiveAndNeedsEnoughPoints) {
  std::vector<double> x{1, 2, 3, 4, 5, 6, 7, 8, 9}, y{1, 2, 3, 0, 5, 6, 7, 8, 9};
  const auto f = fit_loglog(x, y);
  EXPECT_EQ(f.dropped, 1u);
  EXPECT_NEAR(f.slope, 1.0, 1e-13);
  EXPECT_THROW(fit_loglog({1, 2, 3}, {1, 2, 3}), PreconditionError);
  EXPECT_THROW(fit_loglog({1, 2}, {1}), PreconditionError);
}

TEST(Verdict, TwoSided) {
  ExponentReport r;
  r.fitted = 0.51;
  r.predicted = 0.5;
  r.residual = 0.02;
  EXPECT_EQ(verdict(r, 0.05), Verdict::pass);
  r.fitted = 0.56;
  EXPECT_EQ(verdict(r, 0.05), Verdict::fail);
}

TEST(Verdict, LargeResidualFailsRegardlessOfSlope) {
  ExponentReport r;
  r.fitted = r.predicted = 1.0;
  r.residual = 0.3;
  EXPECT_EQ(verdict(r, 0.05), Verdict::fail);
}

TEST(Verdict, ProbeIsInformational) {
  ExponentReport r;
  r.informational = true;
  r.fitted = 100.0;
  r.residual = 5.0;
  EXPECT_EQ(verdict(r, 0.05), Verdict::informational);
}

TEST(Verdict, OneSidedBounds) {
  auto up = check_report("X", "upper", 0.3, 0.0, 0.05, BoundKind::upper);
  EXPECT_EQ(up.verdict, Verdict::fail);
  up = check_report("X", "upper", -3.0, 0.0, 0.05, BoundKind::upper);
  EXPECT_EQ(up.verdict, Verdict::pass);
  auto lo = check_report("X", "lower", 1.2, 1.0, 0.0, BoundKind::lower);
  EXPECT_EQ(lo.verdict, Verdict::pass);
  lo = check_report("X", "lower", 0.99, 1.0, 0.0, BoundKind::lower);
  EXPECT_EQ(lo.verdict, Verdict::fail);
  EXPECT_EQ(check_report("X", "nan", NAN, 0.0, 1.0, BoundKind::upper).verdict, Verdict::fail);
}
