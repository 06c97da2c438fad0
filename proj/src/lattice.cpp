#include "ivg/lattice.hpp"

#include <string>

namespace ivg {

namespace {

constexpr std::size_t kMaxVertices = std::size_t{1} << 26;

}  // namespace

FiniteTree::FiniteTree(int k, int n) : k_(k), n_(n) {
  if (k < 1) throw DomainError("tree order k must be >= 1, got " + std::to_string(k));
  if (n < 0) throw DomainError("tree depth n must be >= 0, got " + std::to_string(n));

  level_start_.assign(1, 0);
  std::size_t width = 1;
  std::size_t total = 0;
  for (int m = 0; m <= n; ++m) {
    total += width;
    if (total > kMaxVertices) {
      throw SizeError("tree with k=" + std::to_string(k) + ", n=" + std::to_string(n) +
                      " is too large");
    }
    level_start_.push_back(total);
    width *= static_cast<std::size_t>(k);
  }

  level_.resize(total);
  parent_.resize(total);
  for (int m = 0; m <= n; ++m) {
    for (std::size_t v = level_start_[m]; v < level_start_[m + 1]; ++v) level_[v] = m;
  }
  parent_[0] = 0;
  // Children of consecutive parents form consecutive blocks of k.
  for (int m = 1; m <= n; ++m) {
    for (std::size_t v = level_start_[m]; v < level_start_[m + 1]; ++v) {
      const std::size_t offset = v - level_start_[m];
      parent_[v] = static_cast<Vertex>(level_start_[m - 1] + offset / k);
    }
  }
  nn_edges_.reserve(total - 1);
  non_root_.reserve(total - 1);
  for (std::size_t v = 1; v < total; ++v) {
    nn_edges_.push_back({parent_[v], static_cast<Vertex>(v)});
    non_root_.push_back(static_cast<Vertex>(v));
    if (level_[v] >= 2) prolonged_.push_back({parent_[parent_[v]], static_cast<Vertex>(v)});
  }
}

std::span<const Vertex> FiniteTree::successors(Vertex v) const {
  const int m = level(v);
  if (m >= n_) return {};
  const std::size_t first_child =
      level_start_[m + 1] + (v - level_start_[m]) * static_cast<std::size_t>(k_);
  return std::span<const Vertex>(non_root_).subspan(first_child - 1, k_);
}

VertexRange FiniteTree::shell(int m) const {
  if (m < 0 || m > n_) {
    throw DomainError("level " + std::to_string(m) + " outside tree of depth " +
                      std::to_string(n_));
  }
  return {static_cast<Vertex>(level_start_[m]), level_start_[m + 1] - level_start_[m]};
}

VertexRange FiniteTree::ball(int m) const {
  if (m < 0 || m > n_) {
    throw DomainError("level " + std::to_string(m) + " outside tree of depth " +
                      std::to_string(n_));
  }
  return {0, level_start_[m + 1]};
}

std::span<const Edge> FiniteTree::shell_edges(int m) const {
  const VertexRange w = shell(m);
  if (m == 0) return {};
  return std::span<const Edge>(nn_edges_).subspan(w.first - 1, w.count);
}

std::span<const Edge> FiniteTree::nn_edges_within(int m) const {
  return std::span<const Edge>(nn_edges_).first(ball(m).count - 1);
}

std::span<const Edge> FiniteTree::prolonged_within(int m) const {
  const std::size_t size = ball(m).count;
  if (m < 2) return {};
  // Prolonged pairs start with the first grandchild, i.e. the start of W_2.
  return std::span<const Edge>(prolonged_).first(size - level_start_[2]);
}

FiniteTree build_tree(int k, int n) { return FiniteTree(k, n); }

Configuration::Configuration(VertexRange domain, std::uint64_t mask)
    : domain_(domain), mask_(mask) {
  if (domain.count > 63) throw SizeError("configuration domain larger than 63 vertices");
  if ((mask >> domain.count) != 0) {
    throw DomainError("configuration mask has bits outside its domain");
  }
}

Configuration Configuration::all_minus(VertexRange domain) {
  const std::uint64_t mask =
      domain.count == 0 ? 0 : (~std::uint64_t{0} >> (64 - domain.count));
  return {domain, mask};
}

int Configuration::spin(Vertex v) const {
  if (!domain_.contains(v)) {
    throw DomainError("vertex " + std::to_string(v) + " outside configuration domain");
  }
  return ((mask_ >> (v - domain_.first)) & 1U) != 0 ? -1 : 1;
}

Configuration Configuration::flipped(Vertex v) const {
  if (!domain_.contains(v)) {
    throw DomainError("vertex " + std::to_string(v) + " outside configuration domain");
  }
  return {domain_, mask_ ^ (std::uint64_t{1} << (v - domain_.first))};
}

Configuration Configuration::restrict_to(VertexRange sub) const {
  if (sub.count > 0 &&
      (!domain_.contains(sub.first) || !domain_.contains(sub.first + sub.count - 1))) {
    throw DomainError("restriction range is not inside the configuration domain");
  }
  const std::uint64_t shifted = mask_ >> (sub.first - domain_.first);
  const std::uint64_t keep = sub.count == 0 ? 0 : (~std::uint64_t{0} >> (64 - sub.count));
  return {sub, shifted & keep};
}

VertexRange region_range(const FiniteTree& tree, Region region) {
  return region == Region::full ? tree.ball(tree.depth()) : tree.shell(tree.depth());
}

Configuration concat(const FiniteTree& tree, const Configuration& sigma,
                     const Configuration& omega) {
  for (int m = 1; m <= tree.depth(); ++m) {
    if (sigma.domain() != tree.ball(m - 1)) continue;
    if (omega.domain() != tree.shell(m)) {
      throw DomainError("concat: second argument must live on W_" + std::to_string(m));
    }
    return {tree.ball(m), sigma.mask() | (omega.mask() << sigma.domain().count)};
  }
  throw DomainError("concat: first argument must live on some V_{m-1} with m <= depth");
}

}  // namespace ivg
