#include "ivg/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include <gmpxx.h>

#include "ivg/error.hpp"

namespace ivg {

namespace {

void trim(std::vector<double>& c) {
  while (!c.empty() && c.back() == 0.0) c.pop_back();
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// Shrinks [lo, hi] with p(lo), p(hi) of opposite sign to adjacent doubles.
double bisect(const Polynomial& p, double lo, double hi) {
  double flo = p(lo);
  for (int iter = 0; iter < 4000; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = p(mid);
    if (fm == 0.0) return mid;
    if (sign_of(fm) == sign_of(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return std::abs(p(lo)) <= std::abs(p(hi)) ? lo : hi;
}

bool close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300});
}

std::vector<double> dedupe(std::vector<double> roots, double rel) {
  std::sort(roots.begin(), roots.end());
  std::vector<double> out;
  for (double r : roots) {
    if (out.empty() || !close(out.back(), r, rel)) out.push_back(r);
  }
  return out;
}

// Sturm chains are built in exact rational arithmetic from the (exactly
// representable) double coefficients, so the count does not depend on how
// badly the polynomial is scaled.
using Exact = std::vector<mpq_class>;

void trim(Exact& c) {
  while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
}

Exact remainder(Exact r, const Exact& d) {
  const std::size_t db = d.size() - 1;
  while (!r.empty() && r.size() - 1 >= db) {
    const mpq_class q = r.back() / d.back();
    const std::size_t shift = r.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) r[shift + i] -= q * d[i];
    r.pop_back();
    trim(r);
  }
  return r;
}

int sign_at(const Exact& q, const mpq_class& x) {
  mpq_class acc = 0;
  for (auto it = q.rbegin(); it != q.rend(); ++it) acc = acc * x + *it;
  return sgn(acc);
}

int sign_changes(const std::vector<Exact>& chain, const mpq_class& x) {
  int changes = 0;
  int last = 0;
  for (const Exact& q : chain) {
    const int s = sign_at(q, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

Polynomial::Polynomial(std::vector<double> ascending) : coeffs_(std::move(ascending)) {
  for (double v : coeffs_) {
    if (!std::isfinite(v)) throw DomainError("polynomial coefficient is not finite");
  }
  trim(coeffs_);
}

Polynomial Polynomial::linear_power(double c0, double c1, int k) {
  if (k < 0) throw DomainError("negative power");
  std::vector<double> c(static_cast<std::size_t>(k) + 1);
  double binom = 1.0;
  for (int i = 0; i <= k; ++i) {
    c[i] = binom * std::pow(c0, k - i) * std::pow(c1, i);
    binom = binom * (k - i) / (i + 1);
  }
  return Polynomial(std::move(c));
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Polynomial::magnitude(double x) const {
  double acc = 0.0;
  const double ax = std::abs(x);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * ax + std::abs(*it);
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial();
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<double>(i);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<double> r(std::max(coeffs_.size(), o.coeffs_.size()), 0.0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) r[i] += o.coeffs_[i];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * -1.0; }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (coeffs_.empty() || o.coeffs_.empty()) return Polynomial();
  std::vector<double> r(coeffs_.size() + o.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) r[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator*(double s) const {
  std::vector<double> r = coeffs_;
  for (double& v : r) v *= s;
  return Polynomial(std::move(r));
}

std::vector<double> real_roots(const Polynomial& p, double lo, double hi,
                               const RootOptions& opts) {
  if (!(lo <= hi)) throw DomainError("real_roots: empty interval");
  const int deg = p.degree();
  if (deg <= 0) return {};
  if (deg == 1) {
    const double r = -p.coefficients()[0] / p.coefficients()[1];
    if (r >= lo && r <= hi) return {r};
    return {};
  }
  // Only critical points strictly inside matter for splitting.
  RootOptions crit_opts = opts;
  crit_opts.touch_tolerance = 0.0;
  std::vector<double> crit = real_roots(p.derivative(), lo, hi, crit_opts);

  std::vector<double> knots;
  knots.push_back(lo);
  for (double c : crit) {
    if (c > lo && c < hi) knots.push_back(c);
  }
  knots.push_back(hi);

  // found[i]: the root in [knots[i], knots[i+1]], where p is monotone
  std::vector<std::optional<double>> found(knots.size() - 1);
  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = knots[i];
    const double b = knots[i + 1];
    const double fa = p(a);
    const double fb = p(b);
    if (fa == 0.0) {
      found[i] = a;
    } else if (fb == 0.0) {
      found[i] = b;
    } else if (sign_of(fa) != sign_of(fb)) {
      found[i] = bisect(p, a, b);
    }
  }
  // A critical value inside the touch band is one even-multiplicity root,
  // whether it grazes zero from above or from below.
  std::vector<bool> merged(found.size(), false);
  for (std::size_t i = 1; i + 1 < knots.size(); ++i) {
    const double c = knots[i];
    if (!(std::abs(p(c)) <= opts.touch_tolerance * p.magnitude(c))) continue;
    if (found[i - 1].has_value() != found[i].has_value()) continue;
    roots.push_back(c);
    merged[i - 1] = merged[i] = true;
  }
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (found[i] && !merged[i]) roots.push_back(*found[i]);
  }
  return dedupe(std::move(roots), opts.dedupe_relative);
}

double cauchy_bound(const Polynomial& p) {
  if (p.degree() < 1) return 1.0;
  double m = 0.0;
  const auto& c = p.coefficients();
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, std::abs(c[i] / c.back()));
  // Widened so that rounding in m cannot put a root just outside.
  return (1.0 + m) * (1.0 + 1e-12);
}

std::vector<double> positive_roots(const Polynomial& p, const RootOptions& opts) {
  std::vector<double> all = real_roots(p, 0.0, cauchy_bound(p), opts);
  std::erase_if(all, [](double r) { return !(r > 0.0); });
  return all;
}

int sturm_count(const Polynomial& p, double lo, double hi) {
  if (p.degree() < 1) return 0;
  Exact p0(p.coefficients().begin(), p.coefficients().end());
  Exact p1;
  for (std::size_t i = 1; i < p0.size(); ++i) p1.push_back(p0[i] * static_cast<long>(i));
  std::vector<Exact> chain{p0, p1};
  while (chain.back().size() > 1) {
    Exact r = remainder(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (mpq_class& v : r) v = -v;
    chain.push_back(std::move(r));
  }
  return sign_changes(chain, mpq_class(lo)) - sign_changes(chain, mpq_class(hi));
}

}  // namespace ivg
