#include <gtest/gtest.h>

#include <set>

#include "ivg/lattice.hpp"

using namespace ivg;

namespace {

std::size_t ipow(std::size_t base, int e) {
  std::size_t r = 1;
  while (e-- > 0) r *= base;
  return r;
}

std::size_t ball_size(int k, int n) {
  return k == 1 ? static_cast<std::size_t>(n + 1) : (ipow(k, n + 1) - 1) / (k - 1);
}

}  // namespace

TEST(Lattice, SmallTreeCounts) {
  const FiniteTree t22(2, 2);
  EXPECT_EQ(t22.vertex_count(), 7u);
  EXPECT_EQ(t22.nn_edges().size(), 6u);
  EXPECT_EQ(t22.prolonged_pairs().size(), 4u);

  const FiniteTree t23(2, 3);
  EXPECT_EQ(t23.vertex_count(), 15u);
  EXPECT_EQ(t23.nn_edges().size(), 14u);
  EXPECT_EQ(t23.prolonged_pairs().size(), 12u);

  const FiniteTree t32(3, 2);
  EXPECT_EQ(t32.vertex_count(), 13u);
  EXPECT_EQ(t32.nn_edges().size(), 12u);
  EXPECT_EQ(t32.prolonged_pairs().size(), 9u);
}

TEST(Lattice, ClosedFormCountsForAllSmallTrees) {
  for (int k = 1; k <= 3; ++k) {
    for (int n = 0; n <= 4; ++n) {
      const FiniteTree t(k, n);
      SCOPED_TRACE("k=" + std::to_string(k) + " n=" + std::to_string(n));
      for (int m = 0; m <= n; ++m) {
        EXPECT_EQ(t.shell(m).count, ipow(k, m));
        EXPECT_EQ(t.ball(m).count, ball_size(k, m));
      }
      EXPECT_EQ(t.vertex_count(), ball_size(k, n));
      EXPECT_EQ(t.nn_edges().size(), t.vertex_count() - 1);
      const std::size_t expected_prolonged = n >= 2 ? ball_size(k, n - 2) * k * k : 0;
      EXPECT_EQ(t.prolonged_pairs().size(), expected_prolonged);
    }
  }
}

TEST(Lattice, PredecessorsAndSuccessors) {
  for (int k = 1; k <= 3; ++k) {
    const FiniteTree t(k, 3);
    EXPECT_EQ(t.successors(0).size(), static_cast<std::size_t>(k));
    std::vector<int> in_degree(t.vertex_count(), 0);
    for (Vertex v = 0; v < t.vertex_count(); ++v) {
      for (Vertex c : t.successors(v)) {
        EXPECT_EQ(t.parent(c), v);
        EXPECT_EQ(t.level(c), t.level(v) + 1);
        ++in_degree[c];
      }
    }
    EXPECT_EQ(in_degree[0], 0);
    for (std::size_t v = 1; v < in_degree.size(); ++v) EXPECT_EQ(in_degree[v], 1);
    // Leaves have no successors.
    for (Vertex v = t.shell(3).first; v < t.vertex_count(); ++v) {
      EXPECT_TRUE(t.successors(v).empty());
    }
  }
}

TEST(Lattice, EdgeListsAreConsistent) {
  const FiniteTree t(2, 3);
  for (const Edge& e : t.nn_edges()) EXPECT_EQ(t.parent(e.to), e.from);
  for (const Edge& e : t.prolonged_pairs()) EXPECT_EQ(t.parent(t.parent(e.to)), e.from);
  std::set<Vertex> targets;
  for (const Edge& e : t.shell_edges(3)) {
    EXPECT_EQ(t.level(e.to), 3);
    targets.insert(e.to);
  }
  EXPECT_EQ(targets.size(), 8u);
  EXPECT_TRUE(t.shell_edges(0).empty());
  EXPECT_EQ(t.nn_edges_within(2).size(), 6u);
  EXPECT_EQ(t.prolonged_within(2).size(), 4u);
  EXPECT_TRUE(t.prolonged_within(1).empty());
}

TEST(Lattice, RejectsInvalidShapes) {
  EXPECT_THROW(FiniteTree(0, 2), DomainError);
  EXPECT_THROW(FiniteTree(-1, 2), DomainError);
  EXPECT_THROW(FiniteTree(2, -1), DomainError);
  EXPECT_THROW(FiniteTree(2, 40), SizeError);
  EXPECT_THROW(FiniteTree(2, 2).shell(3), DomainError);
}

TEST(Lattice, BuildTreeIsDeterministic) {
  const FiniteTree a = build_tree(3, 3);
  const FiniteTree b = build_tree(3, 3);
  ASSERT_EQ(a.vertex_count(), b.vertex_count());
  for (std::size_t i = 0; i < a.nn_edges().size(); ++i) EXPECT_EQ(a.nn_edges()[i], b.nn_edges()[i]);
}

TEST(Configurations, EnumerationCounts) {
  EXPECT_EQ(std::ranges::distance(enumerate_configs(FiniteTree(2, 2), Region::full)), 128);
  EXPECT_EQ(std::ranges::distance(enumerate_configs(FiniteTree(2, 1), Region::boundary_shell)), 4);
  EXPECT_EQ(std::ranges::distance(enumerate_configs(FiniteTree(2, 3), Region::full)), 32768);
}

TEST(Configurations, EnumerationYieldsEachConfigurationOnce) {
  std::set<std::uint64_t> seen;
  for (const Configuration& c : enumerate_configs(FiniteTree(2, 2), Region::full)) {
    EXPECT_TRUE(seen.insert(c.mask()).second);
  }
  EXPECT_EQ(seen.size(), 128u);
}

TEST(Configurations, EnumerationCapIsEnforced) {
  EXPECT_THROW(enumerate_configs(FiniteTree(2, 4), Region::full), SizeError);
  EXPECT_THROW(enumerate_configs(FiniteTree(2, 3), Region::full, 14), SizeError);
  EXPECT_NO_THROW(enumerate_configs(FiniteTree(2, 4), Region::boundary_shell));
}

TEST(Configurations, SpinsAndFlips) {
  const FiniteTree t(2, 2);
  const Configuration plus = Configuration::all_plus(t.ball(2));
  const Configuration minus = Configuration::all_minus(t.ball(2));
  for (Vertex v = 0; v < 7; ++v) {
    EXPECT_EQ(plus.spin(v), 1);
    EXPECT_EQ(minus.spin(v), -1);
    EXPECT_EQ(plus.flipped(v).spin(v), -1);
    EXPECT_EQ(plus.flipped(v).flipped(v), plus);
  }
  EXPECT_THROW(plus.spin(7), DomainError);
  EXPECT_THROW(Configuration(t.shell(1), 0b100), DomainError);
}

TEST(Configurations, ConcatExamples) {
  const FiniteTree t(2, 3);
  const Configuration s = Configuration::all_plus(t.ball(1));
  const Configuration joined = concat(t, s, Configuration::all_plus(t.shell(2)));
  EXPECT_EQ(joined, Configuration::all_plus(t.ball(2)));

  const Configuration mixed = concat(t, s, Configuration::all_minus(t.shell(2)));
  EXPECT_EQ(mixed.restrict_to(t.ball(1)), s);
  EXPECT_EQ(mixed.restrict_to(t.shell(2)), Configuration::all_minus(t.shell(2)));
  EXPECT_EQ(mixed.domain(), t.ball(2));
}

TEST(Configurations, ConcatRoundTripIsExhaustive) {
  const FiniteTree t(2, 3);
  for (int m = 1; m <= 3; ++m) {
    const VertexRange inner = t.ball(m - 1);
    const VertexRange outer = t.shell(m);
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << inner.count); ++a) {
      for (std::uint64_t b = 0; b < (std::uint64_t{1} << outer.count); ++b) {
        const Configuration s(inner, a);
        const Configuration w(outer, b);
        const Configuration j = concat(t, s, w);
        ASSERT_EQ(j.restrict_to(inner), s);
        ASSERT_EQ(j.restrict_to(outer), w);
      }
    }
  }
}

TEST(Configurations, ConcatRejectsMismatchedDomains) {
  const FiniteTree t(2, 3);
  const Configuration s = Configuration::all_plus(t.ball(1));
  EXPECT_THROW(concat(t, s, Configuration::all_plus(t.shell(3))), DomainError);
  EXPECT_THROW(concat(t, Configuration::all_plus(t.shell(1)), Configuration::all_plus(t.shell(2))),
               DomainError);
}
