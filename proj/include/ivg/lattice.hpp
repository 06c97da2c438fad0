#pragma once

// Finite truncations V_n of the semi-infinite Cayley tree of order k.
//
// Vertices are numbered breadth-first with the root at 0, so every level W_m
// and every ball V_m occupies a contiguous index range. A configuration is a
// bitmask over such a range: bit i (relative to the range start) set means
// spin -1, clear means spin +1.

#include <cstddef>
#include <cstdint>
#include <ranges>
#include <span>
#include <string>
#include <vector>

#include "ivg/error.hpp"

namespace ivg {

using Vertex = std::uint32_t;

/// Ordered pair (ancestor, descendant).
struct Edge {
  Vertex from;
  Vertex to;
  bool operator==(const Edge&) const = default;
};

/// Contiguous block of vertex indices [first, first + count).
struct VertexRange {
  Vertex first = 0;
  std::size_t count = 0;
  bool contains(Vertex v) const { return v >= first && v < first + count; }
  bool operator==(const VertexRange&) const = default;
};

class FiniteTree {
 public:
  FiniteTree(int k, int n);

  int order() const { return k_; }
  int depth() const { return n_; }
  std::size_t vertex_count() const { return level_.size(); }

  int level(Vertex v) const { return level_.at(v); }
  /// Predecessor of v; the root has none (returns the root itself).
  Vertex parent(Vertex v) const { return parent_.at(v); }
  std::span<const Vertex> successors(Vertex v) const;

  /// W_m, the vertices at distance m from the root.
  VertexRange shell(int m) const;
  /// V_m, the vertices at distance at most m from the root.
  VertexRange ball(int m) const;

  /// Nearest-neighbour pairs (parent, child), ordered by child index.
  std::span<const Edge> nn_edges() const { return nn_edges_; }
  /// Prolonged next-nearest pairs (grandparent, grandchild), ordered by
  /// grandchild index.
  std::span<const Edge> prolonged_pairs() const { return prolonged_; }

  /// Edges with the child in W_m (parent in W_{m-1}); empty for m = 0.
  std::span<const Edge> shell_edges(int m) const;
  /// Nearest-neighbour edges inside V_m.
  std::span<const Edge> nn_edges_within(int m) const;
  /// Prolonged pairs inside V_m.
  std::span<const Edge> prolonged_within(int m) const;

 private:
  int k_;
  int n_;
  std::vector<int> level_;
  std::vector<Vertex> parent_;
  std::vector<std::size_t> level_start_;  // size n + 2
  std::vector<Edge> nn_edges_;
  std::vector<Edge> prolonged_;
  std::vector<Vertex> non_root_;  // 1, 2, ..., |V_n| - 1
};

FiniteTree build_tree(int k, int n);

class Configuration {
 public:
  Configuration() = default;
  Configuration(VertexRange domain, std::uint64_t mask);

  static Configuration all_plus(VertexRange domain) { return {domain, 0}; }
  static Configuration all_minus(VertexRange domain);

  const VertexRange& domain() const { return domain_; }
  std::uint64_t mask() const { return mask_; }

  /// Spin in {-1, +1}; throws DomainError outside the domain.
  int spin(Vertex v) const;
  Configuration flipped(Vertex v) const;
  /// Restriction to a sub-range of the domain.
  Configuration restrict_to(VertexRange sub) const;

  bool operator==(const Configuration&) const = default;

 private:
  VertexRange domain_;
  std::uint64_t mask_ = 0;
};

enum class Region { full, boundary_shell };

inline constexpr std::size_t kDefaultEnumerationCap = 25;

/// V_n for Region::full, W_n for Region::boundary_shell.
VertexRange region_range(const FiniteTree& tree, Region region);

/// Lazily yields each of the 2^|region| configurations once, in mask order.
inline auto enumerate_configs(const FiniteTree& tree, Region region,
                              std::size_t cap = kDefaultEnumerationCap) {
  const VertexRange range = region_range(tree, region);
  if (range.count > cap || range.count > 62) {
    throw SizeError("enumeration over " + std::to_string(range.count) +
                    " vertices exceeds cap of " + std::to_string(cap));
  }
  const std::uint64_t total = std::uint64_t{1} << range.count;
  return std::views::iota(std::uint64_t{0}, total) |
         std::views::transform([range](std::uint64_t m) { return Configuration(range, m); });
}

/// sigma on V_{m-1} joined with omega on W_m; m is inferred from the domains.
Configuration concat(const FiniteTree& tree, const Configuration& sigma,
                     const Configuration& omega);

}  // namespace ivg
