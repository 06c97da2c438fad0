#pragma once

// Ising-Vannimenus couplings and Boltzmann weights.
//
// Three weight conventions coexist in the boundary-field literature for this
// model; ReducedWeights carries all of them, derived from one beta:
//   a = e^{beta J},   b = e^{beta Jp}     (edge-level h equations)
//   A = e^{2 beta J}, B = e^{2 beta Jp}   (u-level recursion)
//   c = a^2,          d = b^2             (scalar fixed-point form)

#include "ivg/lattice.hpp"

namespace ivg {

/// Couplings and temperature with k_B = 1. Either coupling may have any sign.
struct ModelParams {
  double J = 0.0;
  double Jp = 0.0;
  double T = 1.0;
  int k = 2;

  double beta() const { return 1.0 / T; }
  static ModelParams from_beta(double J, double Jp, double beta, int k = 2);
};

/// Throws DomainError unless T > 0, beta is finite and k >= 1.
void validate(const ModelParams& params);

struct ReducedWeights {
  double beta = 1.0;
  double a = 1.0;
  double b = 1.0;
  double A = 1.0;
  double B = 1.0;
  double c = 1.0;
  double d = 1.0;
  // ln A and ln B, usable when A or B overflow.
  double log_A = 0.0;
  double log_B = 0.0;
};

ReducedWeights weights(const ModelParams& params);

/// H(sigma) = -Jp * sum_prolonged sigma(x)sigma(z) - J * sum_nn sigma(x)sigma(y)
/// over the pairs inside V_n, where sigma lives on V_n.
double energy(const FiniteTree& tree, const Configuration& sigma, const ModelParams& params);

/// Bond sums (sum_nn, sum_prolonged) of sigma(x)sigma(y) inside the ball
/// that sigma lives on.
struct BondSums {
  int nearest = 0;
  int prolonged = 0;
};
BondSums bond_sums(const FiniteTree& tree, const Configuration& sigma);

}  // namespace ivg
