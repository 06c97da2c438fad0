#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ivg/polynomial.hpp"

using namespace ivg;

namespace {

Polynomial from_roots(const std::vector<double>& roots) {
  Polynomial p({1.0});
  for (double r : roots) p = p * Polynomial({-r, 1.0});
  return p;
}

}  // namespace

TEST(Polynomial, ArithmeticAndEvaluation) {
  const Polynomial p({1.0, -3.0, 2.0});  // 2x^2 - 3x + 1
  EXPECT_EQ(p.degree(), 2);
  EXPECT_DOUBLE_EQ(p(2.0), 3.0);
  EXPECT_EQ(p.derivative().coefficients(), (std::vector<double>{-3.0, 4.0}));
  EXPECT_EQ((p - p).degree(), -1);
  EXPECT_EQ(Polynomial({1.0, 2.0, 0.0, 0.0}).degree(), 1);
  const Polynomial q = p * Polynomial({0.0, 1.0}) + p * 2.0;
  EXPECT_DOUBLE_EQ(q(1.5), p(1.5) * 3.5);
  EXPECT_DOUBLE_EQ(p.magnitude(-1.0), 6.0);
}

TEST(Polynomial, LinearPowerMatchesRepeatedProduct) {
  for (int k = 0; k <= 6; ++k) {
    Polynomial direct({1.0});
    for (int i = 0; i < k; ++i) direct = direct * Polynomial({2.5, -0.5});
    const Polynomial lp = Polynomial::linear_power(2.5, -0.5, k);
    ASSERT_EQ(lp.degree(), direct.degree());
    for (std::size_t i = 0; i < lp.coefficients().size(); ++i) {
      EXPECT_NEAR(lp.coefficients()[i], direct.coefficients()[i],
                  1e-12 * std::abs(direct.coefficients()[i]));
    }
  }
}

TEST(RootIsolation, SimpleRoots) {
  const std::vector<double> roots{-2.0, 0.5, 1.0, 7.0};
  const Polynomial p = from_roots(roots);
  const std::vector<double> found = real_roots(p, -10.0, 10.0);
  ASSERT_EQ(found.size(), roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) EXPECT_NEAR(found[i], roots[i], 1e-14);
  EXPECT_EQ(sturm_count(p, -10.0, 10.0), 4);
  EXPECT_EQ(positive_roots(p).size(), 3u);
}

TEST(RootIsolation, NoRealRoots) {
  const Polynomial p({1.0, 0.0, 1.0});
  EXPECT_TRUE(real_roots(p, -100.0, 100.0).empty());
  EXPECT_EQ(sturm_count(p, -100.0, 100.0), 0);
}

TEST(RootIsolation, DoubleRootIsFoundOnce) {
  const Polynomial p = from_roots({3.0, 3.0, -1.0});
  const std::vector<double> found = real_roots(p, -5.0, 5.0);
  ASSERT_EQ(found.size(), 2u);
  EXPECT_NEAR(found[1], 3.0, 1e-12);
  EXPECT_EQ(sturm_count(p, -5.0, 5.0), 2);
}

TEST(RootIsolation, TouchBandIsSymmetricAroundZero) {
  // (x - 2)^2 -/+ eps: two close crossings or none, one double root inside the band.
  for (double eps : {1e-13, -1e-13}) {
    const Polynomial p({4.0 - eps, -4.0, 1.0});
    RootOptions wide;
    wide.touch_tolerance = 1e-12;
    const std::vector<double> merged = real_roots(p, 0.0, 5.0, wide);
    ASSERT_EQ(merged.size(), 1u) << eps;
    EXPECT_NEAR(merged[0], 2.0, 1e-12);
    RootOptions narrow;
    narrow.touch_tolerance = 1e-16;
    narrow.dedupe_relative = 0.0;
    EXPECT_EQ(real_roots(p, 0.0, 5.0, narrow).size(), eps > 0.0 ? 2u : 0u) << eps;
  }
}

TEST(RootIsolation, TrivialCubicHasOnePositiveRoot) {
  // u^3 - u^2 + u - 1 = (u - 1)(u^2 + 1)
  const Polynomial p({-1.0, 1.0, -1.0, 1.0});
  const std::vector<double> found = positive_roots(p);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_DOUBLE_EQ(found[0], 1.0);
}

TEST(RootIsolation, WidelySeparatedScales) {
  const std::vector<double> roots{1e-4, 3.0, 2e4};
  const Polynomial p = from_roots(roots);
  const std::vector<double> found = positive_roots(p);
  ASSERT_EQ(found.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(found[i], roots[i], 1e-10 * roots[i]);
}

TEST(RootIsolation, RandomPolynomialsAgreeWithSturm) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int deg = 1 + trial % 6;
    std::vector<double> c(static_cast<std::size_t>(deg + 1));
    for (double& x : c) x = coef(rng);
    const Polynomial p(c);
    const double bound = cauchy_bound(p);
    const std::vector<double> found = real_roots(p, -bound, bound);
    EXPECT_EQ(static_cast<int>(found.size()), sturm_count(p, -bound, bound)) << "trial " << trial;
    for (double r : found) EXPECT_LE(std::abs(p(r)), 1e-9 * p.magnitude(r));
  }
}

TEST(RootIsolation, CauchyBoundEnclosesRoots) {
  const Polynomial p = from_roots({-40.0, 0.1, 12.0});
  const double b = cauchy_bound(p);
  EXPECT_GT(b, 40.0);
}
