#include "ivg/model.hpp"

#include <cmath>
#include <string>

namespace ivg {

ModelParams ModelParams::from_beta(double J, double Jp, double beta, int k) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw DomainError("beta must be positive and finite, got " + std::to_string(beta));
  }
  return {J, Jp, 1.0 / beta, k};
}

void validate(const ModelParams& params) {
  if (!(params.T > 0.0) || !std::isfinite(params.T)) {
    throw DomainError("temperature must be positive and finite, got T=" +
                      std::to_string(params.T));
  }
  if (!std::isfinite(params.beta())) throw DomainError("beta = 1/T is not finite");
  if (!std::isfinite(params.J) || !std::isfinite(params.Jp)) {
    throw DomainError("couplings must be finite");
  }
  if (params.k < 1) throw DomainError("branching order k must be >= 1");
}

ReducedWeights weights(const ModelParams& params) {
  validate(params);
  ReducedWeights w;
  w.beta = params.beta();
  w.log_A = 2.0 * w.beta * params.J;
  w.log_B = 2.0 * w.beta * params.Jp;
  w.a = std::exp(w.beta * params.J);
  w.b = std::exp(w.beta * params.Jp);
  w.A = std::exp(w.log_A);
  w.B = std::exp(w.log_B);
  w.c = w.A;
  w.d = w.B;
  return w;
}

BondSums bond_sums(const FiniteTree& tree, const Configuration& sigma) {
  const VertexRange dom = sigma.domain();
  int level = -1;
  for (int m = 0; m <= tree.depth(); ++m) {
    if (tree.ball(m) == dom) {
      level = m;
      break;
    }
  }
  if (level < 0) throw DomainError("energy needs a configuration on some ball V_n");
  BondSums sums;
  for (const Edge& e : tree.nn_edges_within(level)) sums.nearest += sigma.spin(e.from) * sigma.spin(e.to);
  for (const Edge& e : tree.prolonged_within(level)) {
    sums.prolonged += sigma.spin(e.from) * sigma.spin(e.to);
  }
  return sums;
}

double energy(const FiniteTree& tree, const Configuration& sigma, const ModelParams& params) {
  const BondSums s = bond_sums(tree, sigma);
  return -params.Jp * s.prolonged - params.J * s.nearest;
}

}  // namespace ivg
