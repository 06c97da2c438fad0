#include <algorithm>
#include <cmath>
#include <tuple>

#include "ivg/error.hpp"
#include "ivg/solver.hpp"

namespace ivg {

namespace {

double rel_gap(double lhs, double rhs) { return std::abs(lhs - rhs) / (1.0 + std::abs(rhs)); }

bool near(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300});
}

struct MtJacobian {
  double f1m, f1t, f2m, f2t;
};

MtJacobian mt_jacobian(double m, double t, double a_tilde, double B) {
  const double a2 = a_tilde * a_tilde;
  const double B2 = B * B;
  const double q = m * m * t - 1.0;  // m^2 t - 1
  const double r = m - t * t;        // m - t^2
  const double s = m * m - m;        // m^2 - m
  MtJacobian j;
  j.f1m = B2 * (2.0 * m - 1.0) * (1.0 - t * t * t) - (q + r * 2.0 * m * t);
  j.f1t = B2 * s * (-3.0 * t * t) - (-2.0 * t * q + r * m * m);
  j.f2m = a2 * 2.0 * q * 2.0 * m * t - B * ((2.0 * m - 1.0) * r + s);
  j.f2t = a2 * 2.0 * q * m * m + B * s * 2.0 * t;
  return j;
}

double norm2(const std::array<double, 2>& f) { return f[0] * f[0] + f[1] * f[1]; }

// Damped Newton from (m, t); returns the final iterate.
std::pair<double, double> newton_mt(double m, double t, double a_tilde, double B, int max_iter) {
  auto f = mt_system(m, t, a_tilde, B);
  for (int it = 0; it < max_iter; ++it) {
    const double fn = norm2(f);
    if (fn == 0.0) break;
    const MtJacobian j = mt_jacobian(m, t, a_tilde, B);
    const double det = j.f1m * j.f2t - j.f1t * j.f2m;
    if (det == 0.0 || !std::isfinite(det)) break;
    const double dm = -(f[0] * j.f2t - f[1] * j.f1t) / det;
    const double dt = -(j.f1m * f[1] - j.f2m * f[0]) / det;
    double lambda = 1.0;
    bool moved = false;
    for (int halving = 0; halving < 40; ++halving, lambda *= 0.5) {
      const double mn = m + lambda * dm;
      const double tn = t + lambda * dt;
      if (!(mn > 0.0) || !(tn > 0.0)) continue;
      const auto fnew = mt_system(mn, tn, a_tilde, B);
      if (norm2(fnew) < fn) {
        m = mn;
        t = tn;
        f = fnew;
        moved = true;
        break;
      }
    }
    if (!moved) break;
    if (std::abs(lambda * dm) <= 1e-15 * m && std::abs(lambda * dt) <= 1e-15 * t) break;
  }
  return {m, t};
}

}  // namespace

std::array<double, 2> mt_system(double m, double t, double a_tilde, double B) {
  const double q = m * m * t - 1.0;
  const double r = m - t * t;
  const double s = m * m - m;
  return {B * B * s * (1.0 - t * t * t) - r * q, a_tilde * a_tilde * q * q - B * s * r};
}

double x_from_mt(double m, double t, double a_tilde, double B) {
  return a_tilde / B * (m * m * t - 1.0) / (t * (m * m - m));
}

bool admissible_band(double m, double t) {
  const double inv2 = 1.0 / (m * m);
  return (1.0 < t && t < inv2) || (inv2 < t && t < 1.0);
}

std::array<double, 3> xmt_residuals(double x, double m, double t, double a_tilde, double B) {
  const double tx2 = t * t * x * x;
  const double mx2 = m * m * x * x;
  return {rel_gap(x, a_tilde * (B * tx2 + 1.0) / (tx2 + B)),
          rel_gap(m * x, a_tilde * t * t * (B * mx2 + 1.0) / (tx2 + B)),
          rel_gap(t * t * t * x, a_tilde * (B * tx2 + 1.0) / (mx2 + B))};
}

std::vector<NonSymSolution> solve_nonsymmetric_k2(const ModelParams& params,
                                                  const NonSymOptions& opts) {
  if (params.k != 2) throw DomainError("the non-symmetric search is implemented for k = 2");
  const ReducedWeights w = weights(params);
  return solve_nonsymmetric_k2(std::exp(0.5 * w.log_A), w.B, opts);
}

std::vector<NonSymSolution> solve_nonsymmetric_k2(double a_tilde, double B,
                                                  const NonSymOptions& opts) {
  if (!(a_tilde > 0.0) || !(B > 0.0)) throw DomainError("a~ and B must be positive");
  if (opts.grid < 2) throw DomainError("multistart grid needs at least 2 points per axis");
  std::vector<NonSymSolution> found;
  const double step = (opts.hi - opts.lo) / (opts.grid - 1);
  for (int i = 0; i < opts.grid; ++i) {
    for (int j = 0; j < opts.grid; ++j) {
      const double m0 = opts.lo + step * i;
      const double t0 = opts.lo + step * j;
      if (std::abs(m0 - 1.0) < opts.tube || std::abs(t0 - 1.0) < opts.tube ||
          std::abs(m0 * t0 - 1.0) < opts.tube) {
        continue;
      }
      const auto [m, t] = newton_mt(m0, t0, a_tilde, B, opts.max_iterations);
      if (near(m, 1.0, opts.degenerate) || near(t, 1.0, opts.degenerate) ||
          near(m * t, 1.0, opts.degenerate) || near(m, t, opts.degenerate)) {
        continue;
      }
      if (!admissible_band(m, t)) continue;
      const double x = x_from_mt(m, t, a_tilde, B);
      if (!(x > 0.0) || !std::isfinite(x)) continue;
      const auto res = xmt_residuals(x, m, t, a_tilde, B);
      const double worst = std::max({res[0], res[1], res[2]});
      if (!(worst <= opts.residual_tolerance)) continue;
      found.push_back({x, m, t, worst});
    }
  }
  std::sort(found.begin(), found.end(), [](const NonSymSolution& a, const NonSymSolution& b) {
    return std::tie(a.m, a.t) < std::tie(b.m, b.t);
  });
  std::vector<NonSymSolution> unique;
  for (const NonSymSolution& s : found) {
    const bool dup = std::any_of(unique.begin(), unique.end(), [&](const NonSymSolution& u) {
      return near(u.m, s.m, kDedupeRelative) && near(u.t, s.t, kDedupeRelative);
    });
    if (!dup) unique.push_back(s);
  }
  return unique;
}

// ------------------------------------------------------- general TI search

namespace {

using Vec3 = std::array<double, 3>;

double log1p_exp(double v) { return v > 0.0 ? v + std::log1p(std::exp(-v)) : std::log1p(std::exp(v)); }

// G(v) = v - log rhs(v) for v = ln u, and its Jacobian.
struct LogSystem {
  double log_A;
  double log_B;
  int k;

  // ln(B e^v + 1) and ln(e^v + B)
  double lb(double v) const { return log1p_exp(log_B + v); }
  double lp(double v) const { return log_B + log1p_exp(v - log_B); }
  // their derivatives in v
  double sb(double v) const { return 1.0 / (1.0 + std::exp(-(log_B + v))); }
  double sp(double v) const { return 1.0 / (1.0 + std::exp(log_B - v)); }

  Vec3 residual(const Vec3& v) const {
    const double L1 = log_A + k * (lb(v[2]) - lp(v[2]));
    const double L2 = log_A + k * (lb(v[1]) + v[2] - lp(v[2]) - v[0]);
    const double L3 = log_A + k * (lb(v[2]) + v[0] - lp(v[1]) - v[2]);
    return {v[0] - L1, v[1] - L2, v[2] - L3};
  }

  std::array<Vec3, 3> jacobian(const Vec3& v) const {
    const double s2 = sb(v[1]), s3 = sb(v[2]);
    const double r2 = sp(v[1]), r3 = sp(v[2]);
    std::array<Vec3, 3> dL{};
    dL[0] = {0.0, 0.0, k * (s3 - r3)};
    dL[1] = {-1.0 * k, k * s2, k * (1.0 - r3)};
    dL[2] = {1.0 * k, -k * r2, k * (s3 - 1.0)};
    std::array<Vec3, 3> J{};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) J[i][j] = (i == j ? 1.0 : 0.0) - dL[i][j];
    }
    return J;
  }
};

double sq(const Vec3& f) { return f[0] * f[0] + f[1] * f[1] + f[2] * f[2]; }

bool solve3(const std::array<Vec3, 3>& M, const Vec3& rhs, Vec3& out) {
  const double det = M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
                     M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
                     M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
  if (det == 0.0 || !std::isfinite(det)) return false;
  for (int c = 0; c < 3; ++c) {
    std::array<Vec3, 3> Mc = M;
    for (int r = 0; r < 3; ++r) Mc[r][c] = rhs[r];
    out[c] = (Mc[0][0] * (Mc[1][1] * Mc[2][2] - Mc[1][2] * Mc[2][1]) -
              Mc[0][1] * (Mc[1][0] * Mc[2][2] - Mc[1][2] * Mc[2][0]) +
              Mc[0][2] * (Mc[1][0] * Mc[2][1] - Mc[1][1] * Mc[2][0])) /
             det;
  }
  return true;
}

}  // namespace

std::vector<UTriple> solve_ti_general(const ModelParams& params, const GeneralTiOptions& opts) {
  const ReducedWeights w = weights(params);
  const LogSystem sys{w.log_A, w.log_B, params.k};
  const double span = std::max(opts.log_span, params.k * std::abs(w.log_B) + 1.0);
  std::vector<UTriple> found;
  const int g = std::max(opts.grid, 2);
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) {
      for (int l = 0; l < g; ++l) {
        auto coord = [&](int idx) { return w.log_A - span + 2.0 * span * idx / (g - 1); };
        Vec3 v{coord(i), coord(j), coord(l)};
        Vec3 f = sys.residual(v);
        for (int it = 0; it < opts.max_iterations; ++it) {
          const double fn = sq(f);
          if (fn < 1e-30) break;
          Vec3 step{};
          const Vec3 neg{-f[0], -f[1], -f[2]};
          if (!solve3(sys.jacobian(v), neg, step)) break;
          double lambda = 1.0;
          bool moved = false;
          for (int h = 0; h < 40; ++h, lambda *= 0.5) {
            const Vec3 vn{v[0] + lambda * step[0], v[1] + lambda * step[1],
                          v[2] + lambda * step[2]};
            const Vec3 fnew = sys.residual(vn);
            if (sq(fnew) < fn) {
              v = vn;
              f = fnew;
              moved = true;
              break;
            }
          }
          if (!moved) break;
        }
        const UTriple u{std::exp(v[0]), std::exp(v[1]), std::exp(v[2])};
        if (!(u.u1 > 0.0 && u.u2 > 0.0 && u.u3 > 0.0)) continue;
        if (!std::isfinite(u.u1) || !std::isfinite(u.u2) || !std::isfinite(u.u3)) continue;
        if (!(ti_residual(u, w, params.k) <= opts.residual_tolerance)) continue;
        found.push_back(u);
      }
    }
  }
  std::sort(found.begin(), found.end(), [](const UTriple& a, const UTriple& b) {
    return std::tie(a.u1, a.u2, a.u3) < std::tie(b.u1, b.u2, b.u3);
  });
  std::vector<UTriple> unique;
  for (const UTriple& u : found) {
    const bool dup = std::any_of(unique.begin(), unique.end(), [&](const UTriple& q) {
      return near(q.u1, u.u1, kDedupeRelative) && near(q.u2, u.u2, kDedupeRelative) &&
             near(q.u3, u.u3, kDedupeRelative);
    });
    if (!dup) unique.push_back(u);
  }
  return unique;
}

}  // namespace ivg
