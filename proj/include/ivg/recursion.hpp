#pragma once

// Boundary-field functional equations.
//
// A field lives on directed parent->child edges and is stored by child vertex
// (every non-root vertex has exactly one incoming edge). The edge-level
// quadruple h = (h++, h+-, h-+, h--) enters the finite-volume weight as
// sigma(x)sigma(y) h_{xy, sigma(x) sigma(y)}; the reduced triple
//   u1 = A e^{h++ + h-+},  u2 = A e^{h-- + h-+},  u3 = A e^{h++ + h+-}
// with A = e^{2 beta J} is what the compatibility recursion acts on.

#include <array>
#include <vector>

#include "ivg/lattice.hpp"
#include "ivg/model.hpp"

namespace ivg {

struct HQuad {
  double pp = 0.0;  // h_{++}
  double pm = 0.0;  // h_{+-}
  double mp = 0.0;  // h_{-+}
  double mm = 0.0;  // h_{--}

  /// h_{s t} for spins s, t in {-1, +1}.
  double at(int s, int t) const;
  bool operator==(const HQuad&) const = default;
};

struct UTriple {
  double u1 = 1.0;
  double u2 = 1.0;
  double u3 = 1.0;

  static UTriple symmetric(double u) { return {u, u, u}; }
  std::array<double, 3> as_array() const { return {u1, u2, u3}; }
  bool operator==(const UTriple&) const = default;
};

/// Per-edge storage keyed by the child vertex; slot 0 (the root) is unused.
template <typename Value>
class PerEdge {
 public:
  PerEdge() = default;
  PerEdge(const FiniteTree& tree, Value fill) : values_(tree.vertex_count(), fill) {}

  std::size_t size() const { return values_.size(); }
  const Value& at(Vertex child) const { return values_.at(checked(child)); }
  Value& at(Vertex child) { return values_.at(checked(child)); }
  const Value& operator[](const Edge& e) const { return at(e.to); }

 private:
  std::size_t checked(Vertex child) const {
    if (child == 0) throw DomainError("the root has no incoming edge");
    return child;
  }
  std::vector<Value> values_;
};

using EdgeField = PerEdge<HQuad>;
using UField = PerEdge<UTriple>;

UTriple u_from_h(const HQuad& h, const ReducedWeights& w);

/// One member of the gauge family mapping to u: h++ is free.
HQuad h_from_u(const UTriple& u, const ReducedWeights& w, double gauge_h_pp = 0.0);

/// h++ = h-+ = h1 and h-- = h+- = h2.
HQuad restricted_field(double h1, double h2);

/// Right-hand side of the recursion for one parent edge given the child-edge
/// triples below it. Products are accumulated in log space.
UTriple recursion_rhs(std::span<const UTriple> children, const ReducedWeights& w);

/// max over edges (x, y) with y not a leaf, and over the three components, of
/// |lhs - rhs| / (1 + |rhs|).
double canonic_residual(const FiniteTree& tree, const UField& u, const ReducedWeights& w);

/// One application of the translation-invariant recursion (k children, all
/// carrying the same triple).
UTriple ti_map(const UTriple& u, const ReducedWeights& w, int k);

/// Same metric as canonic_residual, for a translation-invariant triple.
double ti_residual(const UTriple& u, const ReducedWeights& w, int k);

/// The TI system in the variables x_i = u_i^{1/k}, a~ = A^{1/k}:
///   x1 = a~ (B x3^k + 1)/(x3^k + B)
///   x2 = a~ (B x2^k + 1) x3^k / ((x3^k + B) x1^k)
///   x3 = a~ (B x3^k + 1) x1^k / ((x2^k + B) x3^k)
std::array<double, 3> xyz_rhs(const std::array<double, 3>& x, double a_tilde, double B, int k);
double xyz_residual(const std::array<double, 3>& x, double a_tilde, double B, int k);

}  // namespace ivg
