#include "ivg/thermo.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "ivg/format.hpp"
#include "ivg/lattice.hpp"
#include "ivg/oracle.hpp"
#include "ivg/recursion.hpp"
#include "ivg/solver.hpp"

namespace ivg {

namespace {

// ln cosh(x) without overflow.
double log_cosh(double x) {
  const double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

constexpr double kMinDifferencingT = 1e-6;

}  // namespace

double free_energy_ti(const ModelParams& params, double h) {
  validate(params);
  const double beta = params.beta();
  const double log_arg = std::numbers::ln2 + log_cosh(h + beta * (params.J + params.Jp)) +
                         log_cosh(h + beta * (params.J - params.Jp));
  return -log_arg / beta;
}

double free_energy_general(const ModelParams& params, double h1, double h2) {
  validate(params);
  const double beta = params.beta();
  const double mid = 0.5 * (h1 + h2);
  const double log_arg = std::numbers::ln2 + (h1 - h2) +
                         log_cosh(mid + beta * (params.J + params.Jp)) +
                         log_cosh(mid + beta * (params.J - params.Jp));
  return -log_arg / beta;
}

double entropy_numeric(const ModelParams& params, double h) {
  validate(params);
  if (params.T < kMinDifferencingT) {
    throw DomainError("temperature too small for numerical differentiation");
  }
  auto F = [&](double T) {
    ModelParams p = params;
    p.T = T;
    return free_energy_ti(p, h);
  };
  const double step = 1e-5 * params.T;
  auto central = [&](double s) { return (F(params.T + s) - F(params.T - s)) / (2.0 * s); };
  const double richardson = (4.0 * central(0.5 * step) - central(step)) / 3.0;
  return -richardson;
}

double entropy_paper_formula(const ModelParams& params, double h) {
  validate(params);
  const double beta = params.beta();
  const double xm = h + beta * (params.J - params.Jp);
  const double xp = h + beta * (params.J + params.Jp);
  const double b4 = beta * beta * beta * beta;
  const double log_term = std::numbers::ln2 + log_cosh(xm) + log_cosh(xp);
  return -(-log_term) / b4 -
         (beta * (params.J - params.Jp) * std::tanh(xm) +
          beta * (params.J + params.Jp) * std::tanh(xp)) /
             b4;
}

EntropyResult entropy_ti(const ModelParams& params, double h) {
  EntropyResult r;
  r.numeric = entropy_numeric(params, h);
  r.closed_form = entropy_paper_formula(params, h);
  r.gap = std::abs(r.closed_form - r.numeric);
  return r;
}

double b_factor(const ModelParams& params, double h1, double h2) {
  validate(params);
  const double beta = params.beta();
  const double half = 0.5 * (h1 - h2);
  return std::exp(half + 0.5 * (log_cosh(half + beta * (params.J + params.Jp)) +
                                log_cosh(half + beta * (params.J - params.Jp))));
}

double b_factor_midpoint(const ModelParams& params, double h1, double h2) {
  validate(params);
  const double beta = params.beta();
  const double half = 0.5 * (h1 - h2);
  const double mid = 0.5 * (h1 + h2);
  return std::exp(half + 0.5 * (log_cosh(mid + beta * (params.J + params.Jp)) +
                                log_cosh(mid + beta * (params.J - params.Jp))));
}

ThermoResult evaluate_thermo(const ModelParams& params, double h, int max_oracle_depth) {
  ThermoResult r;
  r.params = params;
  r.h = h;
  r.F = free_energy_ti(params, h);
  const EntropyResult s = entropy_ti(params, h);
  r.S = s.numeric;
  r.S_paper_formula = s.closed_form;
  r.dF_dT_numeric = -s.numeric;
  if (max_oracle_depth >= 1) {
    const FiniteTree tree(params.k, max_oracle_depth);
    const EdgeField field(tree, restricted_field(h, h));
    for (int n = 1; n <= max_oracle_depth; ++n) {
      r.finite_sequence.emplace_back(
          n, finite_free_energy(tree, n, params, field, SignConvention::physics));
    }
  }
  return r;
}

std::vector<double> linspace(double lo, double hi, int steps) {
  if (steps < 1) throw DomainError("grid needs at least one step");
  if (!(lo <= hi)) throw DomainError("grid needs min <= max");
  std::vector<double> v(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    v[i] = steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1);
  }
  return v;
}

std::vector<CurveRow> thermo_curve(const ModelParams& base, std::span<const double> temperatures,
                                   std::optional<int> root_index) {
  if (base.k != 2) throw DomainError("free-energy curves use the k = 2 closed form");
  std::vector<CurveRow> rows;
  for (double T : temperatures) {
    ModelParams p = base;
    p.T = T;
    const SolutionSet set = solve_ti_symmetric(p);
    for (std::size_t i = 0; i < set.roots.size(); ++i) {
      if (root_index && static_cast<int>(i) + 1 != *root_index) continue;
      const double h = set.roots[i].h;
      const EntropyResult s = entropy_ti(p, h);
      rows.push_back({T, p.beta(), h, free_energy_ti(p, h), s.numeric, s.closed_form});
    }
  }
  return rows;
}

void write_curve_csv(std::ostream& out, std::span<const CurveRow> rows, int precision) {
  out << "T,beta,h,F,S_numeric,S_paper_formula\n";
  for (const CurveRow& r : rows) {
    out << format_number(r.T, precision) << ',' << format_number(r.beta, precision) << ','
        << format_number(r.h, precision) << ',' << format_number(r.F, precision) << ','
        << format_number(r.S_numeric, precision) << ',' << format_number(r.S_paper, precision)
        << '\n';
  }
}

}  // namespace ivg
