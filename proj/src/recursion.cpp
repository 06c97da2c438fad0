#include "ivg/recursion.hpp"

#include <algorithm>
#include <cmath>

namespace ivg {

namespace {

void require_positive(const UTriple& u) {
  if (!(u.u1 > 0.0) || !(u.u2 > 0.0) || !(u.u3 > 0.0)) {
    throw DomainError("u-triple entries must be strictly positive");
  }
}

// log(B x + 1) and log(x + B) without forming B when it overflows.
double log_b_times_plus_one(double log_B, double x) {
  const double lhs = log_B + std::log(x);
  return lhs > 0.0 ? lhs + std::log1p(std::exp(-lhs)) : std::log1p(std::exp(lhs));
}

double log_plus_b(double log_B, double x) {
  const double lx = std::log(x);
  const double hi = std::max(lx, log_B);
  const double lo = std::min(lx, log_B);
  return hi + std::log1p(std::exp(lo - hi));
}

// |lhs - rhs| / (1 + rhs) for positive values given log rhs.
double relative_gap(double lhs, double log_rhs) {
  const double ratio = std::exp(std::log(lhs) - log_rhs);
  const double weight = 1.0 / (1.0 + std::exp(-log_rhs));  // rhs / (1 + rhs)
  return std::abs(ratio - 1.0) * weight;
}

struct LogTriple {
  double l1, l2, l3;
};

LogTriple log_rhs(std::span<const UTriple> children, const ReducedWeights& w) {
  LogTriple r{w.log_A, w.log_A, w.log_A};
  for (const UTriple& c : children) {
    require_positive(c);
    const double bu3 = log_b_times_plus_one(w.log_B, c.u3);
    const double bu2 = log_b_times_plus_one(w.log_B, c.u2);
    const double u3b = log_plus_b(w.log_B, c.u3);
    const double u2b = log_plus_b(w.log_B, c.u2);
    const double l1 = std::log(c.u1);
    const double l3 = std::log(c.u3);
    r.l1 += bu3 - u3b;
    r.l2 += bu2 + l3 - u3b - l1;
    r.l3 += bu3 + l1 - u2b - l3;
  }
  return r;
}

double triple_gap(const UTriple& lhs, const LogTriple& rhs) {
  return std::max({relative_gap(lhs.u1, rhs.l1), relative_gap(lhs.u2, rhs.l2),
                   relative_gap(lhs.u3, rhs.l3)});
}

}  // namespace

double HQuad::at(int s, int t) const {
  if (s > 0) return t > 0 ? pp : pm;
  return t > 0 ? mp : mm;
}

UTriple u_from_h(const HQuad& h, const ReducedWeights& w) {
  return {std::exp(w.log_A + h.pp + h.mp), std::exp(w.log_A + h.mm + h.mp),
          std::exp(w.log_A + h.pp + h.pm)};
}

HQuad h_from_u(const UTriple& u, const ReducedWeights& w, double gauge_h_pp) {
  require_positive(u);
  HQuad h;
  h.pp = gauge_h_pp;
  h.pm = std::log(u.u3) - w.log_A - gauge_h_pp;
  h.mp = std::log(u.u1) - w.log_A - gauge_h_pp;
  h.mm = std::log(u.u2) - std::log(u.u1) + gauge_h_pp;
  return h;
}

HQuad restricted_field(double h1, double h2) { return {h1, h2, h1, h2}; }

UTriple recursion_rhs(std::span<const UTriple> children, const ReducedWeights& w) {
  const LogTriple r = log_rhs(children, w);
  return {std::exp(r.l1), std::exp(r.l2), std::exp(r.l3)};
}

double canonic_residual(const FiniteTree& tree, const UField& u, const ReducedWeights& w) {
  if (u.size() != tree.vertex_count()) throw DomainError("u-field does not match the tree");
  double worst = 0.0;
  std::vector<UTriple> children;
  for (const Edge& e : tree.nn_edges()) {
    const auto succ = tree.successors(e.to);
    if (succ.empty()) continue;
    children.clear();
    for (Vertex z : succ) children.push_back(u.at(z));
    const UTriple& lhs = u.at(e.to);
    require_positive(lhs);
    worst = std::max(worst, triple_gap(lhs, log_rhs(children, w)));
  }
  return worst;
}

UTriple ti_map(const UTriple& u, const ReducedWeights& w, int k) {
  if (k < 1) throw DomainError("k must be >= 1");
  const std::vector<UTriple> children(static_cast<std::size_t>(k), u);
  return recursion_rhs(children, w);
}

double ti_residual(const UTriple& u, const ReducedWeights& w, int k) {
  if (k < 1) throw DomainError("k must be >= 1");
  require_positive(u);
  const std::vector<UTriple> children(static_cast<std::size_t>(k), u);
  return triple_gap(u, log_rhs(children, w));
}

std::array<double, 3> xyz_rhs(const std::array<double, 3>& x, double a_tilde, double B, int k) {
  const double p1 = std::pow(x[0], k);
  const double p2 = std::pow(x[1], k);
  const double p3 = std::pow(x[2], k);
  return {a_tilde * (B * p3 + 1.0) / (p3 + B),
          a_tilde * (B * p2 + 1.0) * p3 / ((p3 + B) * p1),
          a_tilde * (B * p3 + 1.0) * p1 / ((p2 + B) * p3)};
}

double xyz_residual(const std::array<double, 3>& x, double a_tilde, double B, int k) {
  const auto rhs = xyz_rhs(x, a_tilde, B, k);
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    worst = std::max(worst, std::abs(x[i] - rhs[i]) / (1.0 + std::abs(rhs[i])));
  }
  return worst;
}

}  // namespace ivg
