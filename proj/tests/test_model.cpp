#include <gtest/gtest.h>

#include <cmath>

#include "ivg/lattice.hpp"
#include "ivg/model.hpp"

using namespace ivg;

TEST(Energy, AllPlusAndAllMinus) {
  const FiniteTree t(2, 2);
  const ModelParams p{1.0, 0.5, 1.0, 2};
  EXPECT_DOUBLE_EQ(energy(t, Configuration::all_plus(t.ball(2)), p), -8.0);
  EXPECT_DOUBLE_EQ(energy(t, Configuration::all_minus(t.ball(2)), p), -8.0);
}

TEST(Energy, FlippingOneLeaf) {
  const FiniteTree t(2, 2);
  const ModelParams p{1.0, 0.5, 1.0, 2};
  const Configuration s = Configuration::all_plus(t.ball(2)).flipped(6);
  // One nearest-neighbour and one prolonged bond change sign.
  EXPECT_DOUBLE_EQ(energy(t, s, p), -5.0);
}

TEST(Energy, GlobalFlipInvariance) {
  const ModelParams p{0.7, -1.3, 1.0, 2};
  for (int n = 0; n <= 3; ++n) {
    const FiniteTree t(2, n);
    const std::uint64_t all = (std::uint64_t{1} << t.vertex_count()) - 1;
    for (const Configuration& s : enumerate_configs(t, Region::full)) {
      const Configuration f(s.domain(), s.mask() ^ all);
      ASSERT_DOUBLE_EQ(energy(t, s, p), energy(t, f, p));
    }
  }
}

TEST(Energy, SingleSiteFlipChangesByBrokenBonds) {
  const FiniteTree t(2, 3);
  const double J = 0.9;
  const double Jp = -0.4;
  const ModelParams p{J, Jp, 1.0, 2};
  for (std::uint64_t mask : {0ULL, 0x1234ULL, 0x7fffULL, 0x5555ULL}) {
    const Configuration s(t.ball(3), mask);
    for (Vertex v = 0; v < t.vertex_count(); ++v) {
      double expected = 0.0;
      for (const Edge& e : t.nn_edges()) {
        if (e.from == v || e.to == v) expected += 2.0 * J * s.spin(e.from) * s.spin(e.to);
      }
      for (const Edge& e : t.prolonged_pairs()) {
        if (e.from == v || e.to == v) expected += 2.0 * Jp * s.spin(e.from) * s.spin(e.to);
      }
      EXPECT_NEAR(energy(t, s.flipped(v), p) - energy(t, s, p), expected, 1e-12);
    }
  }
}

TEST(Energy, BondSumsOnSubBall) {
  const FiniteTree t(2, 3);
  const BondSums b = bond_sums(t, Configuration::all_plus(t.ball(2)));
  EXPECT_EQ(b.nearest, 6);
  EXPECT_EQ(b.prolonged, 4);
  EXPECT_THROW(bond_sums(t, Configuration::all_plus(t.shell(2))), DomainError);
}

TEST(Weights, TrivialCouplings) {
  const ReducedWeights w = weights({0.0, 0.0, 3.0, 2});
  EXPECT_EQ(w.a, 1.0);
  EXPECT_EQ(w.b, 1.0);
  EXPECT_EQ(w.c, 1.0);
  EXPECT_EQ(w.d, 1.0);
}

TEST(Weights, ConventionsAgree) {
  for (const ModelParams& p : {ModelParams{-1.85, 4.5, 2.6, 2}, ModelParams{0.3, -2.0, 0.7, 3}}) {
    const ReducedWeights w = weights(p);
    EXPECT_DOUBLE_EQ(w.A, w.c);
    EXPECT_DOUBLE_EQ(w.B, w.d);
    EXPECT_NEAR(w.A, w.a * w.a, 1e-14 * w.A);
    EXPECT_NEAR(w.B, w.b * w.b, 1e-14 * w.B);
    EXPECT_NEAR(std::log(w.A), w.log_A, 1e-14);
    EXPECT_NEAR(std::log(w.B), w.log_B, 1e-14);
  }
}

TEST(Weights, ReferenceExampleValues) {
  const ReducedWeights w = weights({-1.85, 4.5, 2.6, 2});
  EXPECT_NEAR(w.c, std::exp(-3.7 / 2.6), 1e-15);
  EXPECT_NEAR(w.c, 0.24098, 1e-4);
  EXPECT_NEAR(w.d, std::exp(9.0 / 2.6), 1e-12);
  EXPECT_NEAR(w.d, 31.8705, 1e-2);
}

TEST(Weights, TransitionBoundaryGivesThree) {
  const ReducedWeights w = weights(ModelParams::from_beta(0.0, std::log(3.0) / 2.0, 1.0));
  EXPECT_NEAR(w.d, 3.0, 1e-15);
}

TEST(Params, Validation) {
  EXPECT_THROW(validate({1.0, 1.0, 0.0, 2}), DomainError);
  EXPECT_THROW(validate({1.0, 1.0, -1.0, 2}), DomainError);
  EXPECT_THROW(validate({1.0, 1.0, 1.0, 0}), DomainError);
  EXPECT_THROW(validate({NAN, 1.0, 1.0, 2}), DomainError);
  EXPECT_NO_THROW(validate({-5.0, -5.0, 0.1, 1}));
  const ModelParams p = ModelParams::from_beta(1.0, 2.0, 0.25, 3);
  EXPECT_DOUBLE_EQ(p.T, 4.0);
  EXPECT_EQ(p.k, 3);
}
