#include "ivg/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ivg/error.hpp"

namespace ivg {

namespace {

Stability classify_slope(double slope) {
  const double mag = std::abs(slope);
  if (std::abs(mag - 1.0) <= kMarginalBand) return Stability::marginal;
  return mag < 1.0 ? Stability::attracting : Stability::repelling;
}

// Newton steps on p that are kept only while |p| decreases.
double polish(const Polynomial& p, double x) {
  const Polynomial dp = p.derivative();
  for (int i = 0; i < 4; ++i) {
    const double f = p(x);
    const double df = dp(x);
    if (f == 0.0 || df == 0.0) break;
    const double next = x - f / df;
    if (!(next > 0.0) || std::abs(p(next)) >= std::abs(f)) break;
    x = next;
  }
  return x;
}

double scalar_residual(double u, const ReducedWeights& w) {
  return std::abs(u - scalar_map(u, w)) / (1.0 + u);
}

SolutionSet solve_scalar_cubic(const ModelParams& params, const ReducedWeights& w,
                               const SymmetricOptions& opts) {
  const Polynomial cubic({-1.0, w.d, -w.c * w.d, w.c});
  SolutionSet set;
  set.params = params;
  set.sturm_count = sturm_count(cubic, 0.0, cauchy_bound(cubic));
  for (double u : positive_roots(cubic)) {
    u = polish(cubic, u);
    TiRoot r;
    r.u = u;
    r.h = std::log(u);
    r.U = std::exp(w.log_A + 2.0 * r.h);
    r.residual = scalar_residual(u, w);
    r.slope = scalar_map_derivative(u, w);
    r.stability = classify_slope(r.slope);
    if (r.residual <= opts.residual_tolerance) set.roots.push_back(r);
  }
  return set;
}

SolutionSet solve_u_polynomial(const ModelParams& params, const ReducedWeights& w,
                               const SymmetricOptions& opts) {
  const int k = params.k;
  const Polynomial p = symmetric_u_polynomial(w, k, opts.coefficient);
  const double log_A_eff =
      opts.coefficient == UuCoefficient::derived ? w.log_A : w.log_A - 2.0 * k * w.log_B;
  SolutionSet set;
  set.params = params;
  set.sturm_count = sturm_count(p, 0.0, cauchy_bound(p));
  for (double U : positive_roots(p)) {
    U = polish(p, U);
    const double log_rhs =
        log_A_eff + k * (std::log(w.B * U + 1.0) - std::log(U + w.B));
    TiRoot r;
    r.U = U;
    r.h = 0.5 * (std::log(U) - w.log_A);
    r.u = std::exp(r.h);
    r.residual = std::abs(U - std::exp(log_rhs)) / (1.0 + U);
    r.slope = k * U * (w.B * w.B - 1.0) / ((w.B * U + 1.0) * (U + w.B));
    r.stability = classify_slope(r.slope);
    if (r.residual <= opts.residual_tolerance) set.roots.push_back(r);
  }
  std::sort(set.roots.begin(), set.roots.end(),
            [](const TiRoot& a, const TiRoot& b) { return a.u < b.u; });
  return set;
}

}  // namespace

std::string to_string(Stability s) {
  switch (s) {
    case Stability::attracting: return "attracting";
    case Stability::repelling: return "repelling";
    case Stability::marginal: return "marginal";
  }
  return "unknown";
}

double scalar_map(double u, const ReducedWeights& w) {
  return (w.c * w.d * u * u + 1.0) / (w.c * u * u + w.d);
}

double scalar_map_derivative(double u, const ReducedWeights& w) {
  const double den = w.c * u * u + w.d;
  return 2.0 * w.c * u * (w.d * w.d - 1.0) / (den * den);
}

Polynomial symmetric_u_polynomial(const ReducedWeights& w, int k, UuCoefficient coefficient) {
  if (k < 1) throw DomainError("k must be >= 1");
  const double A_eff =
      coefficient == UuCoefficient::derived ? w.A : std::exp(w.log_A - 2.0 * k * w.log_B);
  return Polynomial({0.0, 1.0}) * Polynomial::linear_power(w.B, 1.0, k) -
         Polynomial::linear_power(1.0, w.B, k) * A_eff;
}

SolutionSet solve_ti_symmetric(const ModelParams& params, const SymmetricOptions& opts) {
  const ReducedWeights w = weights(params);
  SymmetricForm form = opts.form;
  if (form == SymmetricForm::automatic) {
    form = (params.k == 2 && opts.coefficient == UuCoefficient::derived)
               ? SymmetricForm::scalar_cubic
               : SymmetricForm::u_polynomial;
  }
  if (form == SymmetricForm::scalar_cubic) {
    if (params.k != 2) throw DomainError("the scalar cubic form requires k = 2");
    if (opts.coefficient != UuCoefficient::derived) {
      throw DomainError("the printed coefficient variant is only available in U form");
    }
    return solve_scalar_cubic(params, w, opts);
  }
  return solve_u_polynomial(params, w, opts);
}

// ---------------------------------------------------------------- Preston

std::string to_string(PrestonRegime r) {
  switch (r) {
    case PrestonRegime::unique: return "unique";
    case PrestonRegime::boundary: return "boundary";
    case PrestonRegime::three: return "three";
  }
  return "unknown";
}

int PrestonClassification::predicted_count(double a, double band) const {
  if (!eta1 || !eta2) return 1;
  if (std::abs(a - *eta1) <= band * *eta1 || std::abs(a - *eta2) <= band * *eta2) return 2;
  return (a > *eta1 && a < *eta2) ? 3 : 1;
}

PrestonClassification preston_classify(double B, int m) {
  if (!(B > 0.0)) throw DomainError("Preston classification needs B > 0");
  if (m < 2) throw DomainError("Preston classification needs m >= 2");
  PrestonClassification cls;
  if (m == 2) return cls;
  const double threshold = std::pow(static_cast<double>(m) / (m - 2), 2);
  if (B <= threshold) return cls;

  const double p = 2.0 - (B - 1.0) * (m - 2);
  const double disc = p * p - 4.0 * B;
  const double sq = std::sqrt(std::max(disc, 0.0));
  // Stable pair: the larger root directly, the smaller from x1 x2 = B.
  const double big = (-p + sq) / 2.0;
  const double small = B / big;
  auto eta = [&](double x) { return std::pow((1.0 + x) / (B + x), m - 1) / x; };
  double e_small = eta(small);
  double e_big = eta(big);
  double x_small = small;
  double x_big = big;
  if (e_small > e_big) {
    std::swap(e_small, e_big);
    std::swap(x_small, x_big);
  }
  cls.regime = PrestonRegime::three;
  cls.eta1 = e_small;
  cls.eta2 = e_big;
  cls.x1 = x_small;
  cls.x2 = x_big;
  return cls;
}

PrestonClassification preston_classify(double B, int m, double a, double band) {
  PrestonClassification cls = preston_classify(B, m);
  switch (cls.predicted_count(a, band)) {
    case 3: cls.regime = PrestonRegime::three; break;
    case 2: cls.regime = PrestonRegime::boundary; break;
    default: cls.regime = PrestonRegime::unique; break;
  }
  return cls;
}

Polynomial preston_polynomial(double B, int m, double a) {
  if (m < 2) throw DomainError("Preston polynomial needs m >= 2");
  return Polynomial::linear_power(1.0, 1.0, m - 1) -
         Polynomial({0.0, a}) * Polynomial::linear_power(B, 1.0, m - 1);
}

int count_preston_roots(double B, int m, double a, double touch_tolerance) {
  RootOptions opts;
  opts.touch_tolerance = touch_tolerance;
  return static_cast<int>(positive_roots(preston_polynomial(B, m, a), opts).size());
}

// ---------------------------------------------------------- solution count

LiteralPrediction literal_prediction(const ReducedWeights& w) {
  if (w.c <= 1.0 || w.d < 3.0) return {1, 1, "c <= 1 or d < 3: exactly one solution"};
  return {1, 3, "c > 1 and d >= 3: one, two or three solutions depending on eta(d)"};
}

SolutionCount count_solutions(const ModelParams& params) {
  const ReducedWeights w = weights(params);
  SolutionCount out;
  out.empirical = static_cast<int>(solve_ti_symmetric(params).count());
  if (params.k == 2) {
    out.literal = literal_prediction(w);
    out.agree = out.empirical >= out.literal->min_count && out.empirical <= out.literal->max_count;
  }
  const int k = params.k;
  out.preston_B = std::exp(2.0 * w.log_B);
  out.preston_a = std::exp(-w.log_A - (k + 1) * w.log_B);
  out.preston_prediction =
      k >= 1 ? preston_classify(out.preston_B, k + 1).predicted_count(out.preston_a) : 0;
  return out;
}

// ------------------------------------------------------------ symmetry sets

std::string to_string(SymmetryClass s) {
  switch (s) {
    case SymmetryClass::A1: return "A1";
    case SymmetryClass::A2: return "A2";
    case SymmetryClass::A3: return "A3";
    case SymmetryClass::A: return "A";
    case SymmetryClass::none: return "none";
  }
  return "unknown";
}

SymmetryClass classify_symmetry(const std::array<double, 3>& x, double tol) {
  auto eq = [tol](double p, double q) {
    return std::abs(p - q) <= tol * std::max(std::abs(p), std::abs(q));
  };
  const bool e12 = eq(x[0], x[1]);
  const bool e13 = eq(x[0], x[2]);
  const bool e23 = eq(x[1], x[2]);
  const int pairs = e12 + e13 + e23;
  if (pairs >= 2) return SymmetryClass::A;
  if (e12) return SymmetryClass::A1;
  if (e13) return SymmetryClass::A2;
  if (e23) return SymmetryClass::A3;
  return SymmetryClass::none;
}

}  // namespace ivg
