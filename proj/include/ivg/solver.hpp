#pragma once

// Translation-invariant solutions of the boundary-field recursion.
//
// Symmetric solutions u1 = u2 = u3 = U solve U = A ((B U + 1)/(U + B))^k.
// For k = 2 with the restricted field h++ = h-+ = h-- = h+- = ln u this is
// the scalar fixed point u = g(u) = (c d u^2 + 1)/(c u^2 + d), i.e. the cubic
// c u^3 - c d u^2 + d u - 1 = 0, and U = A u^2.
//
// Non-symmetric solutions for k = 2 are parametrised as x = (x, m x, t x) in
// the variables x_i = u_i^{1/2} and found by multistart Newton on the reduced
// (m, t) system.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ivg/model.hpp"
#include "ivg/polynomial.hpp"
#include "ivg/recursion.hpp"

namespace ivg {

enum class Stability { attracting, repelling, marginal };
std::string to_string(Stability s);

struct TiRoot {
  double u = 1.0;         // scalar fixed point, h = ln u
  double h = 0.0;
  double U = 1.0;         // u-triple entry, U = A u^2
  double residual = 0.0;  // |u - g(u)| / (1 + u), or the U-form analogue
  double slope = 0.0;     // derivative of the TI map at the fixed point
  Stability stability = Stability::marginal;
};

struct SolutionSet {
  ModelParams params;
  std::vector<TiRoot> roots;  // ascending in u
  int sturm_count = -1;       // independent count of distinct positive roots
  std::size_t count() const { return roots.size(); }
};

/// Coefficient in the z = B U form ((z + 1)/(z + B^2))^k = kappa z:
/// derived gives kappa = 1/(A B^{k+1}); printed gives kappa = B^{k-1}/A.
enum class UuCoefficient { derived, printed };

enum class SymmetricForm {
  automatic,    // scalar cubic for k = 2, U-polynomial otherwise
  scalar_cubic, // k = 2 only
  u_polynomial,
};

struct SymmetricOptions {
  SymmetricForm form = SymmetricForm::automatic;
  UuCoefficient coefficient = UuCoefficient::derived;
  double residual_tolerance = 1e-9;
};

inline constexpr double kMarginalBand = 1e-8;
inline constexpr double kDedupeRelative = 1e-7;

SolutionSet solve_ti_symmetric(const ModelParams& params, const SymmetricOptions& opts = {});

/// g(u) = (c d u^2 + 1)/(c u^2 + d).
double scalar_map(double u, const ReducedWeights& w);
double scalar_map_derivative(double u, const ReducedWeights& w);

/// U (U + B)^k - A_eff (B U + 1)^k with A_eff = A (derived) or A / B^{2k}.
Polynomial symmetric_u_polynomial(const ReducedWeights& w, int k, UuCoefficient coefficient);

// ---------------------------------------------------------------- Preston

enum class PrestonRegime { unique, boundary, three };
std::string to_string(PrestonRegime r);

/// Root-count classification of ((1 + x)/(B + x))^{m-1} = a x on x >= 0.
struct PrestonClassification {
  PrestonRegime regime = PrestonRegime::unique;
  std::optional<double> eta1;
  std::optional<double> eta2;
  std::optional<double> x1;
  std::optional<double> x2;

  /// Predicted number of solutions for a given a; `band` is the relative
  /// distance to eta_i below which a counts as on the boundary.
  int predicted_count(double a, double band = 0.0) const;
};

/// B-level classification: unique when m = 2 or B <= (m/(m-2))^2, otherwise
/// three (a window (eta1, eta2) with three solutions exists).
PrestonClassification preston_classify(double B, int m);
/// a-level classification: three inside the window, boundary at eta_i
/// (within `band`), unique elsewhere.
PrestonClassification preston_classify(double B, int m, double a, double band);

/// (1 + x)^{m-1} - a x (B + x)^{m-1}.
Polynomial preston_polynomial(double B, int m, double a);
/// Empirical count of solutions x > 0 by root isolation.
int count_preston_roots(double B, int m, double a, double touch_tolerance = 1e-12);

// ---------------------------------------------------------- solution count

/// What the literal scalar-equation count rule asserts for k = 2: exactly
/// one solution if c <= 1 or d < 3; otherwise 1, 2 or 3 depending on
/// unspecified eta(d) bounds.
struct LiteralPrediction {
  int min_count = 1;
  int max_count = 3;
  std::string rule;
  bool definite() const { return min_count == max_count; }
};

struct SolutionCount {
  int empirical = 0;
  std::optional<LiteralPrediction> literal;  // k = 2 only
  std::optional<bool> agree;
  /// Count predicted by the Preston criterion applied to the z = B U form
  /// with the derived coefficient.
  int preston_prediction = 0;
  double preston_B = 0.0;
  double preston_a = 0.0;
};

LiteralPrediction literal_prediction(const ReducedWeights& w);
SolutionCount count_solutions(const ModelParams& params);

// ------------------------------------------------------------ symmetry sets

enum class SymmetryClass { A1, A2, A3, A, none };
std::string to_string(SymmetryClass s);

/// A1: x1 = x2, A2: x1 = x3, A3: x2 = x3, A: all equal (relative tol).
SymmetryClass classify_symmetry(const std::array<double, 3>& x, double tol);

// ------------------------------------------------------------ non-symmetric

struct NonSymSolution {
  double x = 0.0;
  double m = 0.0;
  double t = 0.0;
  double residual = 0.0;  // max relative residual of the (x, m x, t x) system

  std::array<double, 3> triple() const { return {x, m * x, t * x}; }
};

struct NonSymOptions {
  int grid = 60;
  double lo = 0.02;
  double hi = 12.0;
  double tube = 0.05;           // starts this close to m=1, t=1, mt=1 are skipped
  double degenerate = 1e-6;     // converged points this close are rejected
  int max_iterations = 100;
  double residual_tolerance = 1e-9;
};

/// Residuals of the three equations of the (x, m x, t x) system (k = 2),
/// each as |lhs - rhs| / (1 + |rhs|).
std::array<double, 3> xmt_residuals(double x, double m, double t, double a_tilde, double B);

/// The reduced pair
///   B^2 (m^2 - m)(1 - t^3) - (m - t^2)(m^2 t - 1)
///   a~^2 (m^2 t - 1)^2 - B (m^2 - m)(m - t^2)
std::array<double, 2> mt_system(double m, double t, double a_tilde, double B);

/// x recovered from (m, t): a~ B^{-1} (m^2 t - 1) / (t (m^2 - m)).
double x_from_mt(double m, double t, double a_tilde, double B);

/// 1 < t < m^{-2} or m^{-2} < t < 1.
bool admissible_band(double m, double t);

/// a~ = A^{1/2} = e^{beta J}, B = e^{2 beta Jp}.
std::vector<NonSymSolution> solve_nonsymmetric_k2(const ModelParams& params,
                                                  const NonSymOptions& opts = {});
std::vector<NonSymSolution> solve_nonsymmetric_k2(double a_tilde, double B,
                                                  const NonSymOptions& opts = {});

// ---------------------------------------------------- general TI search

struct GeneralTiOptions {
  int grid = 7;             // starts per axis in log space
  double log_span = 6.0;    // starts cover ln u_i in [ln A - span, ln A + span]
  int max_iterations = 80;
  double residual_tolerance = 1e-10;
};

/// All triples found by multistart damped Newton on the full TI system in
/// log coordinates; no symmetry is assumed. Deduplicated, sorted.
std::vector<UTriple> solve_ti_general(const ModelParams& params, const GeneralTiOptions& opts = {});

}  // namespace ivg
