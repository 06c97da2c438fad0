#pragma once

// Dense real polynomials and certified real-root isolation.
//
// real_roots() isolates roots recursively: the critical points of p (roots
// of p', found the same way) split the search interval into pieces on which
// p is monotone, and each piece with a sign change is bisected down to
// adjacent doubles. A critical point where |p| is within the touch tolerance
// of zero is reported as a single multiple root, absorbing the pair of
// crossings that rounding may put on either side of it. sturm_count() gives an independent count of distinct roots,
// computed exactly over the rationals.

#include <vector>

namespace ivg {

class Polynomial {
 public:
  Polynomial() = default;
  /// Coefficients in ascending order: c[0] + c[1] x + ... ; trailing zeros are
  /// trimmed.
  explicit Polynomial(std::vector<double> ascending);

  /// (c0 + c1 x)^k by binomial expansion.
  static Polynomial linear_power(double c0, double c1, int k);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coefficients() const { return coeffs_; }
  double leading() const { return coeffs_.empty() ? 0.0 : coeffs_.back(); }

  double operator()(double x) const;
  /// sum |c_i| |x|^i, the scale of rounding error in evaluating p(x).
  double magnitude(double x) const;
  Polynomial derivative() const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator*(double s) const;

 private:
  std::vector<double> coeffs_;
};

struct RootOptions {
  /// |p(c)| <= touch_tolerance * magnitude(c) at a critical point c counts
  /// as one root of even multiplicity.
  double touch_tolerance = 16.0 * 2.220446049250313e-16;
  /// Roots closer than this (relative) are merged.
  double dedupe_relative = 1e-7;
};

/// Distinct real roots in [lo, hi], ascending.
std::vector<double> real_roots(const Polynomial& p, double lo, double hi,
                               const RootOptions& opts = {});

/// Distinct roots in (0, cauchy_bound(p)].
std::vector<double> positive_roots(const Polynomial& p, const RootOptions& opts = {});

/// Slightly above 1 + max_i |c_i / c_n|, so every root has modulus below it.
double cauchy_bound(const Polynomial& p);

/// Number of distinct real roots in (lo, hi] from a Sturm sequence.
int sturm_count(const Polynomial& p, double lo, double hi);

}  // namespace ivg
