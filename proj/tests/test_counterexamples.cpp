#include <gtest/gtest.h>

#include <cmath>

#include "oscimax.hpp"

using namespace oscimax;

TEST(Threshold, GlobalEstimate) {
  const DispersionLaw law({2.0});
  EXPECT_DOUBLE_EQ(predicted_threshold("thm1", 1, law, 4.0).s, 0.25);
  EXPECT_DOUBLE_EQ(predicted_threshold("thm3", 2, DispersionLaw({2.0, 2.0}), 8.0).s, 2.0 * (0.5 - 0.125));
  EXPECT_THROW(predicted_threshold("thm1", 1, law, 3.0), RangeError);
  EXPECT_THROW(predicted_threshold("thm1", 1, law, INFINITY), RangeError);
  EXPECT_THROW(predicted_threshold("thm1", 2, DispersionLaw({2.0, 2.0}), 4.0), RangeError);
}

TEST(Threshold, LocalEstimateRegimes) {
  const DispersionLaw a2({2.0}), a3({3.0});
  // 2 < q < 4: n/2 - |a|/4 + |a|/q - n/q
  EXPECT_NEAR(predicted_threshold("thm4", 1, a2, 3.0).s, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(predicted_threshold("thm2", 1, a3, 3.0).s, 0.5 - 0.75 + 1.0 - 1.0 / 3.0, 1e-15);
  const auto q2 = predicted_threshold("thm2", 1, a3, 2.0);
  EXPECT_DOUBLE_EQ(q2.s, 0.75);
  EXPECT_TRUE(q2.open_at_equality);
  const auto qi = predicted_threshold("thm4", 2, DispersionLaw({2.0, 3.0}), INFINITY);
  EXPECT_DOUBLE_EQ(qi.s, 1.0);
  EXPECT_TRUE(qi.strict);
  EXPECT_DOUBLE_EQ(predicted_threshold("thm4", 1, a2, 8.0).s, 0.375);
  EXPECT_THROW(predicted_threshold("thm4", 1, a2, 1.5), RangeError);
  EXPECT_THROW(predicted_threshold("thm9", 1, a2, 3.0), RangeError);
}

// The local threshold is continuous at q = 4 and matches |a|/4 at q = 2.
TEST(Threshold, ContinuityAcrossRegimes) {
  const DispersionLaw law({2.5, 3.0});
  EXPECT_NEAR(predicted_threshold("thm4", 2, law, 4.0 - 1e-9).s, predicted_threshold("thm4", 2, law, 4.0).s, 1e-8);
  EXPECT_NEAR(predicted_threshold("thm4", 2, law, 2.0 + 1e-9).s, law.abs() / 4.0, 1e-8);
}

TEST(FvFamily, SupportAndScaling) {
  const double v = 0.125;
  const auto f = gen_fv(v, 1, DispersionLaw({2.0}));
  EXPECT_NEAR(f.support[0].first, -64.0 - 8.0, 1e-12);
  EXPECT_NEAR(f.support[0].second, -64.0 + 8.0, 1e-12);
  const auto& F = f.factors[0];
  for (std::size_t l = 0; l < F.size(); ++l) {
    const double xi = F.grid.axis(0).xi(l);
    if (xi < f.support[0].first - 1e-9 || xi > f.support[0].second + 1e-9) {
      EXPECT_EQ(F[l], cplx(0.0));
    }
  }
  // ||f^_v||_2^2 = v int g^2
  const double g2 = quad::integrate_smooth([](double u) { return unit_bump(u) * unit_bump(u); }, -1.0, 1.0);
  EXPECT_NEAR(std::pow(sobolev_norm(F, SobolevWeight::inhomogeneous(0.0)), 2), v * g2, 1e-9);
  EXPECT_DOUBLE_EQ(f.predicted.norm_exponent, 0.0);
  EXPECT_THROW(gen_fv(0.6, 1, DispersionLaw({2.0})), RangeError);
  EXPECT_THROW(gen_fv(0.1, 1, DispersionLaw({2.0}), 0.25, [](double) { return 1.0; }), PreconditionError);
}

// Homogeneous norm of f_v scales like v^{n - 4s}: with n = 1, s = 1/2 the slope is -1.
TEST(FvFamily, NormSlopeOffThreshold) {
  std::vector<double> vs, ns;
  for (int k = 2; k <= 9; ++k) {
    const double v = std::exp2(-k);
    vs.push_back(v);
    ns.push_back(std::pow(sobolev_norm(gen_fv(v, 1, DispersionLaw({2.0})).factors[0], SobolevWeight::homog(0.5)), 2));
  }
  EXPECT_NEAR(fit_loglog(vs, ns).slope, -1.0, 0.01);
}

TEST(NFamily, SupportWidthAndPredictions) {
  const DispersionLaw law({3.0});
  const auto f = gen_nfamily(16.0, law, 0.3, 3.0);
  const double w = std::pow(16.0, 1.0 - 1.5);
  EXPECT_NEAR(f.support[0].first, -16.0 - w, 1e-12);
  EXPECT_NEAR(f.support[0].second, -16.0 + w, 1e-12);
  EXPECT_DOUBLE_EQ(f.predicted.norm_exponent, 0.5 + 0.3 - 0.75);
  EXPECT_DOUBLE_EQ(f.predicted.lq_lower_exponent, 1.0 - 1.5 + 2.0 / 3.0);
  EXPECT_THROW(gen_nfamily(2.0, law, 0.3, 3.0), RangeError);
  EXPECT_THROW(gen_nfamily(400.0, law, 0.3, 3.0), RangeError);  // no 25% margin on the default grid
}

TEST(BoxFamily, MassAndSelection) {
  const double M = 16.0;
  const auto f = gen_box(M);
  const auto& F = f.factors[0];
  double mass = 0.0;
  for (const auto& v : F.values) mass += v.real() * F.grid.axis(0).dxi();
  EXPECT_NEAR(mass, 1.0, 1e-12);
  ASSERT_TRUE(f.selection.has_value());
  const auto& ax = F.grid.axis(0);
  for (std::size_t k = 0; k < ax.m; ++k) {
    const double x = ax.x(k), t = f.selection->time(k, 0);
    if (x >= -M && x <= -2.0)
      EXPECT_NEAR(t, -x / (2.0 * (M + 0.5)), 1e-15);
    else
      EXPECT_EQ(t, 0.5);
  }
  EXPECT_THROW(gen_box(2.0), RangeError);
}

TEST(BoxFamily, TensorFieldIsOuterProduct) {
  const Axis ax = Axis::symmetric(64, 8.0);
  const auto f = gen_nfamily(4.0, DispersionLaw({2.0, 2.0}), 0.5, 3.0, unit_bump, ax);
  const auto T = f.tensor_field();
  EXPECT_EQ(T.grid.dim(), 2u);
  for (std::size_t p = 0; p < T.size(); p += 97) {
    const auto idx = T.grid.unravel(p);
    EXPECT_EQ(T[p], f.factors[0][idx[0]] * f.factors[1][idx[1]]);
  }
}
