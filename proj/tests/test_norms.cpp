#include <gtest/gtest.h>

#include <cmath>

#include "oscimax.hpp"

using namespace oscimax;

namespace {

SpectralField gaussian_spectrum(const UniformGrid& g) {
  return sample_frequency(g, [](const std::vector<double>& xi) {
    double r2 = 0.0;
    for (double v : xi) r2 += v * v;
    return cplx(std::exp(-0.5 * r2));
  });
}

}  // namespace

// int (1 + xi^2)^s e^{-xi^2} dxi: sqrt(pi) at s = 0, (3/2) sqrt(pi) at s = 1.
TEST(Sobolev, InhomogeneousGaussian) {
  const auto g = UniformGrid::line(1024, 64.0);
  const auto F = gaussian_spectrum(g);
  EXPECT_NEAR(std::pow(sobolev_norm(F, SobolevWeight::inhomogeneous(0.0)), 2), std::sqrt(kPi), 1e-12);
  EXPECT_NEAR(std::pow(sobolev_norm(F, SobolevWeight::inhomogeneous(1.0)), 2), 1.5 * std::sqrt(kPi), 1e-12);
}

// int |xi|^{2s} e^{-xi^2} dxi = Gamma(s + 1/2).
TEST(Sobolev, HomogeneousGaussian) {
  const auto g = UniformGrid::line(4096, 256.0);
  const auto F = gaussian_spectrum(g);
  for (double s : {0.25, 0.5, 1.0}) {
    const double v = std::pow(sobolev_norm(F, SobolevWeight::homog(s)), 2);
    EXPECT_NEAR(v, std::tgamma(s + 0.5), 2e-3 * std::tgamma(s + 0.5)) << "s=" << s;
  }
}

// int_{R^2} |xi|^{2s} e^{-|xi|^2} = pi Gamma(s + 1).
TEST(Sobolev, TensorMatchesClosedForm) {
  const Axis ax = Axis::symmetric(512, 128.0);
  const auto F1 = gaussian_spectrum(UniformGrid({ax}));
  const double v = std::pow(sobolev_norm_tensor({F1, F1}, SobolevWeight::homog(0.5)), 2);
  EXPECT_NEAR(v, kPi * std::tgamma(1.5), 1e-3);
  const double w = std::pow(sobolev_norm_tensor({F1, F1}, SobolevWeight::inhomogeneous(1.0)), 2);
  EXPECT_NEAR(w, kPi * 2.0, 1e-10);  // int (1 + |xi|^2) e^{-|xi|^2} = pi + pi
}

TEST(Sobolev, TensorAgreesWithDenseGrid) {
  const Axis ax = Axis::symmetric(64, 16.0);
  const auto F1 = gaussian_spectrum(UniformGrid({ax}));
  const auto F2 = gaussian_spectrum(UniformGrid({ax, ax}));
  for (auto w : {SobolevWeight::inhomogeneous(0.7), SobolevWeight::homog(0.3)})
    EXPECT_NEAR(sobolev_norm_tensor({F1, F1}, w), sobolev_norm(F2, w), 1e-12);
}

TEST(Sobolev, RejectsDivergentOrigin) {
  const auto F = gaussian_spectrum(UniformGrid::line(64, 8.0));
  EXPECT_THROW(sobolev_norm(F, SobolevWeight::homog(-0.5)), DivergenceError);
  EXPECT_THROW(SobolevWeight(0.5, true, 1.0), PreconditionError);
  EXPECT_THROW(sobolev_norm(to_spatial(F), SobolevWeight::homog(0.5)), RepresentationError);
}

// ||e^{-x^2}||_q = (pi / q)^{1/(2q)}
TEST(Lebesgue, GaussianNorms) {
  const auto g = UniformGrid::line(2048, 16.0);
  const auto f = sample_spatial(g, [](const std::vector<double>& x) { return cplx(std::exp(-x[0] * x[0])); });
  for (double q : {1.0, 1.5, 2.0, 3.0}) EXPECT_NEAR(lq_norm(f, Lq(q)), std::pow(kPi / q, 0.5 / q), 1e-12) << q;
  EXPECT_NEAR(lq_norm(f, Lq::infinity()), 1.0, 1e-15);
  EXPECT_THROW(Lq(0.5), RangeError);
}

TEST(Lebesgue, BoxRestriction) {
  const auto g = UniformGrid::line(1024, 8.0);
  const auto one = sample_spatial(g, [](const std::vector<double>&) { return cplx(1.0); });
  EXPECT_NEAR(lq_norm(one, Lq(1.0), Box{{-1.0}, {1.0}}), 2.0, 1e-12);
  const auto g2 = UniformGrid::square(2, 128, 4.0);
  std::vector<double> ones(g2.size(), 1.0);
  EXPECT_NEAR(lq_norm(ones, g2, Lq(2.0), Box{{0.0, 0.0}, {1.0, 2.0}}), std::sqrt(2.0), 1e-12);
}
