#include "ivg/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

namespace ivg {

namespace {

inline int spin_of(std::uint64_t mask, Vertex v) { return ((mask >> v) & 1U) != 0 ? -1 : 1; }

struct ShellTerm {
  Vertex parent;
  Vertex child;
  HQuad h;
};

// Precomputed log-weight evaluator on the ball V_n. Balls start at vertex 0,
// so vertex ids are bit positions.
class WeightKernel {
 public:
  WeightKernel(const FiniteTree& tree, int n, const ModelParams& params, const EdgeField& field)
      : beta_(weights(params).beta), J_(params.J), Jp_(params.Jp) {
    if (n < 0 || n > tree.depth()) {
      throw DomainError("level " + std::to_string(n) + " outside tree of depth " +
                        std::to_string(tree.depth()));
    }
    if (field.size() != tree.vertex_count()) throw DomainError("field does not match the tree");
    size_ = tree.ball(n).count;
    for (const Edge& e : tree.nn_edges_within(n)) nn_.push_back(e);
    for (const Edge& e : tree.prolonged_within(n)) pp_.push_back(e);
    for (const Edge& e : tree.shell_edges(n)) {
      const HQuad& h = field.at(e.to);
      for (double v : {h.pp, h.pm, h.mp, h.mm}) {
        if (!std::isfinite(v)) throw DomainError("boundary field has a non-finite entry");
      }
      shell_.push_back({e.from, e.to, h});
    }
  }

  std::size_t size() const { return size_; }

  double operator()(std::uint64_t mask) const {
    int nn = 0;
    for (const Edge& e : nn_) nn += spin_of(mask, e.from) * spin_of(mask, e.to);
    int pp = 0;
    for (const Edge& e : pp_) pp += spin_of(mask, e.from) * spin_of(mask, e.to);
    double boundary = 0.0;
    for (const ShellTerm& t : shell_) {
      const int s = spin_of(mask, t.parent);
      const int u = spin_of(mask, t.child);
      boundary += s * u * t.h.at(s, u);
    }
    return beta_ * (J_ * nn + Jp_ * pp) + boundary;
  }

 private:
  double beta_;
  double J_;
  double Jp_;
  std::size_t size_ = 0;
  std::vector<Edge> nn_;
  std::vector<Edge> pp_;
  std::vector<ShellTerm> shell_;
};

std::uint64_t checked_total(std::size_t vertices, std::size_t cap) {
  if (vertices > cap || vertices > 62) {
    throw SizeError("exact enumeration over " + std::to_string(vertices) +
                    " vertices exceeds cap of " + std::to_string(cap));
  }
  return std::uint64_t{1} << vertices;
}

// Runs body(begin, end, partition_index) over fixed partitions of [0, total).
template <typename Body>
void for_partitions(std::uint64_t total, const OracleOptions& opts, Body&& body) {
  const unsigned parts = std::max(1U, opts.partitions);
  auto bounds = [&](unsigned p) {
    return std::pair{total * p / parts, total * (p + 1) / parts};
  };
  const unsigned threads = std::clamp(opts.threads, 1U, parts);
  if (threads == 1) {
    for (unsigned p = 0; p < parts; ++p) {
      auto [b, e] = bounds(p);
      body(b, e, p);
    }
    return;
  }
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (unsigned p = t; p < parts; p += threads) {
        auto [b, e] = bounds(p);
        body(b, e, p);
      }
    });
  }
}

double max_log_weight(const WeightKernel& kernel, std::uint64_t total, const OracleOptions& opts) {
  std::vector<double> maxima(std::max(1U, opts.partitions),
                             -std::numeric_limits<double>::infinity());
  for_partitions(total, opts, [&](std::uint64_t b, std::uint64_t e, unsigned p) {
    double m = -std::numeric_limits<double>::infinity();
    for (std::uint64_t i = b; i < e; ++i) m = std::max(m, kernel(i));
    maxima[p] = m;
  });
  return *std::max_element(maxima.begin(), maxima.end());
}

// Pairwise merge of per-partition sums in a fixed tree order.
CompensatedSum merge_pairwise(std::vector<CompensatedSum> parts) {
  while (parts.size() > 1) {
    std::vector<CompensatedSum> next;
    for (std::size_t i = 0; i + 1 < parts.size(); i += 2) {
      CompensatedSum s = parts[i];
      s.merge(parts[i + 1]);
      next.push_back(s);
    }
    if (parts.size() % 2 == 1) next.push_back(parts.back());
    parts = std::move(next);
  }
  return parts.empty() ? CompensatedSum{} : parts.front();
}

struct ShiftedSum {
  double shift;
  double sum;
  double log_value() const { return shift + std::log(sum); }
};

ShiftedSum shifted_partition_sum(const WeightKernel& kernel, const OracleOptions& opts) {
  const std::uint64_t total = checked_total(kernel.size(), opts.cap);
  const double shift = max_log_weight(kernel, total, opts);
  std::vector<CompensatedSum> sums(std::max(1U, opts.partitions));
  for_partitions(total, opts, [&](std::uint64_t b, std::uint64_t e, unsigned p) {
    CompensatedSum s;
    for (std::uint64_t i = b; i < e; ++i) s.add(std::exp(kernel(i) - shift));
    sums[p] = s;
  });
  return {shift, merge_pairwise(std::move(sums)).value()};
}

}  // namespace

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

void CompensatedSum::merge(const CompensatedSum& other) {
  add(other.sum_);
  add(other.compensation_);
}

double log_weight(const FiniteTree& tree, int n, const Configuration& sigma,
                  const ModelParams& params, const EdgeField& field) {
  const WeightKernel kernel(tree, n, params, field);
  if (sigma.domain() != tree.ball(n)) throw DomainError("configuration is not on V_n");
  return kernel(sigma.mask());
}

double log_partition_function(const FiniteTree& tree, int n, const ModelParams& params,
                              const EdgeField& field, const OracleOptions& opts) {
  const WeightKernel kernel(tree, n, params, field);
  return shifted_partition_sum(kernel, opts).log_value();
}

double partition_function(const FiniteTree& tree, int n, const ModelParams& params,
                          const EdgeField& field, const OracleOptions& opts) {
  return std::exp(log_partition_function(tree, n, params, field, opts));
}

double FiniteGibbs::partition() const { return std::exp(log_partition); }

FiniteGibbs finite_gibbs(const FiniteTree& tree, int n, const ModelParams& params,
                         const EdgeField& field, const OracleOptions& opts) {
  const WeightKernel kernel(tree, n, params, field);
  const ShiftedSum z = shifted_partition_sum(kernel, opts);
  const std::uint64_t total = std::uint64_t{1} << kernel.size();
  FiniteGibbs g;
  g.depth = n;
  g.log_partition = z.log_value();
  g.probabilities.resize(total);
  for_partitions(total, opts, [&](std::uint64_t b, std::uint64_t e, unsigned) {
    for (std::uint64_t i = b; i < e; ++i) {
      g.probabilities[i] = std::exp(kernel(i) - z.shift) / z.sum;
    }
  });
  return g;
}

double check_compatibility(const FiniteTree& tree, int n, const ModelParams& params,
                           const EdgeField& field, const OracleOptions& opts) {
  if (n < 2) throw DomainError("compatibility check needs n >= 2");
  const FiniteGibbs outer = finite_gibbs(tree, n, params, field, opts);
  const FiniteGibbs inner = finite_gibbs(tree, n - 1, params, field, opts);
  const std::uint64_t inner_total = inner.probabilities.size();
  const std::uint64_t low_mask = inner_total - 1;

  std::vector<CompensatedSum> marginal(inner_total);
  for (std::uint64_t i = 0; i < outer.probabilities.size(); ++i) {
    marginal[i & low_mask].add(outer.probabilities[i]);
  }
  double worst = 0.0;
  for (std::uint64_t s = 0; s < inner_total; ++s) {
    worst = std::max(worst, std::abs(marginal[s].value() - inner.probabilities[s]));
  }
  return worst;
}

double EdgeFactor::sector_spread() const {
  double worst = 0.0;
  for (int s = 1; s < 4; ++s) {
    worst = std::max(worst, std::abs(std::expm1(log_sector[s] - log_sector[0])));
  }
  return worst;
}

EdgeFactor edge_factor(const FiniteTree& tree, const Edge& edge, const ModelParams& params,
                       const EdgeField& field) {
  const double beta = weights(params).beta;
  const auto children = tree.successors(edge.to);
  if (children.empty()) throw DomainError("edge factor needs a child edge below the edge");
  EdgeFactor f;
  f.edge = edge;
  constexpr std::array<std::array<int, 2>, 4> sectors{{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
  for (std::size_t s = 0; s < 4; ++s) {
    const int sx = sectors[s][0];
    const int sy = sectors[s][1];
    double log_product = 0.0;
    for (Vertex z : children) {
      const HQuad& h = field.at(z);
      // log-sum-exp over eta in {-1, +1}
      const double plus = sy * h.at(sy, 1) + beta * (params.J * sy + params.Jp * sx);
      const double minus = -sy * h.at(sy, -1) - beta * (params.J * sy + params.Jp * sx);
      const double hi = std::max(plus, minus);
      log_product += hi + std::log1p(std::exp(std::min(plus, minus) - hi));
    }
    f.log_sector[s] = log_product - sx * sy * field.at(edge.to).at(sx, sy);
  }
  return f;
}

TelescopingReport telescoping_check(const FiniteTree& tree, int n, const ModelParams& params,
                                    const EdgeField& field, const OracleOptions& opts) {
  if (n < 2) throw DomainError("telescoping check needs n >= 2");
  TelescopingReport r;
  r.log_Z_n = log_partition_function(tree, n, params, field, opts);
  const double log_Z_prev = log_partition_function(tree, n - 1, params, field, opts);
  double log_U = 0.0;
  for (const Edge& e : tree.shell_edges(n - 1)) {
    EdgeFactor f = edge_factor(tree, e, params, field);
    log_U += f.log_value();
    r.max_sector_spread = std::max(r.max_sector_spread, f.sector_spread());
    r.factors.push_back(f);
  }
  r.log_U_times_Z_prev = log_U + log_Z_prev;
  r.relative_gap = std::abs(std::expm1(r.log_U_times_Z_prev - r.log_Z_n));
  return r;
}

double finite_free_energy(const FiniteTree& tree, int n, const ModelParams& params,
                          const EdgeField& field, SignConvention sign,
                          const OracleOptions& opts) {
  const double log_Z = log_partition_function(tree, n, params, field, opts);
  const double per_site = log_Z / (params.beta() * static_cast<double>(tree.ball(n).count));
  return sign == SignConvention::paper ? per_site : -per_site;
}

}  // namespace ivg
