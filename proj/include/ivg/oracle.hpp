#pragma once

// Brute-force ground truth on finite balls V_n: partition functions, the
// memory-2 finite-volume Gibbs distributions, the Kolmogorov compatibility
// defect between consecutive levels, and the telescoping Z_n = U_{n-1} Z_{n-1}.
//
// All sums run over every configuration on V_n, so n is limited by
// OracleOptions::cap (number of vertices). Summation is compensated and split
// into a fixed number of index partitions, so results do not depend on the
// number of worker threads.

#include <array>
#include <cstddef>
#include <vector>

#include "ivg/lattice.hpp"
#include "ivg/model.hpp"
#include "ivg/recursion.hpp"

namespace ivg {

struct OracleOptions {
  std::size_t cap = kDefaultEnumerationCap;
  unsigned partitions = 16;
  unsigned threads = 1;
};

/// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x);
  void merge(const CompensatedSum& other);
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// exp[-beta H_n(sigma) + sum over shell edges into W_n of
///     sigma(x)sigma(y) h_{xy, sigma(x)sigma(y)}], in log form.
double log_weight(const FiniteTree& tree, int n, const Configuration& sigma,
                  const ModelParams& params, const EdgeField& field);

/// ln Z_n on the ball V_n of `tree` (n <= tree.depth()).
double log_partition_function(const FiniteTree& tree, int n, const ModelParams& params,
                              const EdgeField& field, const OracleOptions& opts = {});
double partition_function(const FiniteTree& tree, int n, const ModelParams& params,
                          const EdgeField& field, const OracleOptions& opts = {});

struct FiniteGibbs {
  int depth = 0;
  std::vector<double> probabilities;  // indexed by configuration mask on V_n
  double log_partition = 0.0;

  double partition() const;
};

FiniteGibbs finite_gibbs(const FiniteTree& tree, int n, const ModelParams& params,
                         const EdgeField& field, const OracleOptions& opts = {});

/// max over sigma on V_{n-1} of |sum_omega mu_n(sigma v omega) - mu_{n-1}(sigma)|.
/// Requires n >= 2 so both levels carry a boundary field.
double check_compatibility(const FiniteTree& tree, int n, const ModelParams& params,
                           const EdgeField& field, const OracleOptions& opts = {});

/// D(x, y) measured in each of the four (sigma(x), sigma(y)) sectors, as
///   prod_{z in S(y)} sum_eta exp[sigma(y) eta h_{yz, sigma(y) eta}
///                               + beta eta (J sigma(y) + Jp sigma(x))]
///   / exp[sigma(x) sigma(y) h_{xy, sigma(x) sigma(y)}].
/// Sector order: (+,+), (+,-), (-,+), (-,-).
struct EdgeFactor {
  Edge edge;
  std::array<double, 4> log_sector{};

  double log_value() const { return log_sector[0]; }
  /// max_s |D_s / D_{++} - 1|.
  double sector_spread() const;
};

EdgeFactor edge_factor(const FiniteTree& tree, const Edge& edge, const ModelParams& params,
                       const EdgeField& field);

struct TelescopingReport {
  double log_Z_n = 0.0;
  double log_U_times_Z_prev = 0.0;  // ln(U_{n-1} Z_{n-1})
  double relative_gap = 0.0;        // |Z_n - U_{n-1} Z_{n-1}| / Z_n
  double max_sector_spread = 0.0;
  std::vector<EdgeFactor> factors;  // edges x in W_{n-2}, y in S(x)
};

TelescopingReport telescoping_check(const FiniteTree& tree, int n, const ModelParams& params,
                                    const EdgeField& field, const OracleOptions& opts = {});

enum class SignConvention {
  paper,    // +(1 / (beta |V_n|)) ln Z_n
  physics,  // -(1 / (beta |V_n|)) ln Z_n
};

double finite_free_energy(const FiniteTree& tree, int n, const ModelParams& params,
                          const EdgeField& field, SignConvention sign,
                          const OracleOptions& opts = {});

}  // namespace ivg
