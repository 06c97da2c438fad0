#include "ivg/findings.hpp"

#include <cmath>
#include <fstream>

#include "ivg/error.hpp"
#include "ivg/lattice.hpp"
#include "ivg/oracle.hpp"
#include "ivg/scan.hpp"
#include "ivg/solver.hpp"
#include "ivg/thermo.hpp"

namespace ivg {

namespace {

using Json = nlohmann::ordered_json;

const ModelParams kExample{-1.85, 4.5, 2.6, 2};

Json params_json(const ModelParams& p) {
  return Json{{"J", p.J}, {"Jp", p.Jp}, {"T", p.T}, {"k", p.k}};
}

// Parameters with the requested c and d at T = 1.
ModelParams from_cd(double c, double d) {
  return ModelParams{0.5 * std::log(c), 0.5 * std::log(d), 1.0, 2};
}

// Smallest d on a log grid over [1, 100] at which three roots appear.
Json threshold_probe(double c) {
  constexpr int kSteps = 4000;
  Json j{{"c", c}};
  for (int i = 0; i <= kSteps; ++i) {
    const double d = std::exp(std::log(100.0) * i / kSteps);
    const ModelParams p = from_cd(c, d);
    if (solve_ti_symmetric(p).count() == 3) {
      j["first_d_with_three_roots"] = d;
      j["literal_prediction"] = literal_prediction(weights(p)).rule;
      return j;
    }
  }
  j["first_d_with_three_roots"] = nullptr;
  return j;
}

Json solution_count_section() {
  const ReducedWeights w = weights(kExample);
  const SolutionSet set = solve_ti_symmetric(kExample);
  const SolutionCount cnt = count_solutions(kExample);
  const LiteralPrediction lit = *cnt.literal;
  Json roots = Json::array();
  double sum = 0.0;
  double product = 1.0;
  for (const TiRoot& r : set.roots) {
    roots.push_back(r.u);
    sum += r.u;
    product *= r.u;
  }
  const PrestonClassification pc = preston_classify(cnt.preston_B, kExample.k + 1);
  Json j;
  j["params"] = params_json(kExample);
  j["c"] = w.c;
  j["d"] = w.d;
  j["literal_rule"] = lit.rule;
  j["literal_min"] = lit.min_count;
  j["literal_max"] = lit.max_count;
  j["empirical"] = cnt.empirical;
  j["agree"] = *cnt.agree;
  j["roots"] = roots;
  j["vieta_sum"] = sum;
  j["vieta_sum_expected"] = w.d;
  j["vieta_product"] = product;
  j["vieta_product_expected"] = 1.0 / w.c;
  j["preston"] = {{"B", cnt.preston_B},
                  {"a", cnt.preston_a},
                  {"eta1", pc.eta1 ? Json(*pc.eta1) : Json(nullptr)},
                  {"eta2", pc.eta2 ? Json(*pc.eta2) : Json(nullptr)},
                  {"predicted", cnt.preston_prediction}};
  j["threshold_probes"] = Json::array({threshold_probe(2.0), threshold_probe(0.5)});
  j["note"] =
      "the literal rule predicts a unique solution since c <= 1, yet three roots exist; the "
      "Preston-derived count matches the empirical one";
  return j;
}

Json free_energy_section() {
  const SolutionSet set = solve_ti_symmetric(kExample);
  const double beta = kExample.beta();
  const int k = kExample.k;
  Json branches = Json::array();
  const FiniteTree tree(k, 3);
  for (const TiRoot& r : set.roots) {
    const EdgeField field(tree, restricted_field(r.h, r.h));
    Json seq = Json::array();
    for (int n = 1; n <= 3; ++n) {
      seq.push_back({{"n", n},
                     {"paper_sign", finite_free_energy(tree, n, kExample, field,
                                                       SignConvention::paper)},
                     {"physics_sign", finite_free_energy(tree, n, kExample, field,
                                                         SignConvention::physics)}});
    }
    const EdgeFactor D = edge_factor(tree, tree.shell_edges(1).front(), kExample, field);
    const double F_closed = free_energy_ti(kExample, r.h);
    const double F_limit = -D.log_value() / (k * beta);
    // ln Z_n = ln Z_1 + ln D * (k + k^2 + ... + k^{n-1}).
    const double log_Z1 = log_partition_function(tree, 1, kExample, field);
    auto telescoped = [&](int n) {
      const double kn = std::pow(static_cast<double>(k), n);
      const double volume = (kn * k - 1.0) / (k - 1.0);
      return -(log_Z1 + D.log_value() * (kn - k) / (k - 1.0)) / (beta * volume);
    };
    branches.push_back({{"u", r.u},
                        {"h", r.h},
                        {"F_closed_form", F_closed},
                        {"finite_volume", seq},
                        {"log_D", D.log_value()},
                        {"D_sector_spread", D.sector_spread()},
                        {"F_telescoped_n3", telescoped(3)},
                        {"F_telescoped_n40", telescoped(40)},
                        {"F_telescoping_limit", F_limit},
                        {"closed_form_over_limit", F_closed / F_limit}});
  }
  Json j;
  j["params"] = params_json(kExample);
  j["branches"] = branches;
  j["note"] =
      "the defining display uses +(1/(beta |V_n|)) ln Z_n while the closed form carries a "
      "leading minus; the finite-volume values under the minus convention share the sign of "
      "the closed form; extrapolating ln Z_n exactly through Z_n = U_{n-1} Z_{n-1} converges to "
      "-(1/(k beta)) ln D, which differs from the closed form by the factor "
      "closed_form_over_limit";
  return j;
}

Json uu_entry(const ModelParams& p) {
  Json j{{"params", params_json(p)}};
  for (UuCoefficient c : {UuCoefficient::derived, UuCoefficient::printed}) {
    SymmetricOptions opts;
    opts.form = SymmetricForm::u_polynomial;
    opts.coefficient = c;
    const SolutionSet set = solve_ti_symmetric(p, opts);
    Json us = Json::array();
    Json residuals = Json::array();
    for (const TiRoot& r : set.roots) {
      us.push_back(r.U);
      residuals.push_back(ti_residual(UTriple::symmetric(r.U), weights(p), p.k));
    }
    const char* key = c == UuCoefficient::derived ? "derived" : "printed";
    j[key] = {{"count", set.count()}, {"U_roots", us}, {"recursion_residuals", residuals}};
  }
  return j;
}

Json uu_section() {
  const ReducedWeights w = weights(kExample);
  Json j;
  j["example_coefficients"] = {
      {"derived", std::exp(-w.log_A - (kExample.k + 1) * w.log_B)},
      {"printed", std::exp((kExample.k - 1) * w.log_B - w.log_A)}};
  j["cases"] = Json::array({uu_entry(kExample), uu_entry({0.0, 1.0, 1.0, 2}),
                            uu_entry({0.3, 1.2, 1.0, 3})});
  j["note"] =
      "recursion_residuals evaluate each symmetric root in the unreduced recursion; roots of "
      "the printed variant are generally not fixed points of it";
  return j;
}

Json b_factor_section() {
  const SolutionSet set = solve_ti_symmetric(kExample);
  const FiniteTree tree(kExample.k, 2);
  Json rows = Json::array();
  for (const TiRoot& r : set.roots) {
    const EdgeField field(tree, restricted_field(r.h, r.h));
    const EdgeFactor D = edge_factor(tree, tree.shell_edges(1).front(), kExample, field);
    const double shown = b_factor(kExample, r.h, r.h);
    const double mid = b_factor_midpoint(kExample, r.h, r.h);
    rows.push_back({{"u", r.u},
                    {"D_oracle", std::exp(D.log_value())},
                    {"four_b_squared_displayed", 4.0 * shown * shown},
                    {"four_b_squared_midpoint", 4.0 * mid * mid}});
  }
  return Json{{"params", params_json(kExample)}, {"rows", rows}};
}

Json entropy_section() {
  const SolutionSet set = solve_ti_symmetric(kExample);
  Json rows = Json::array();
  for (const TiRoot& r : set.roots) {
    const EntropyResult s = entropy_ti(kExample, r.h);
    rows.push_back(
        {{"u", r.u}, {"numeric", s.numeric}, {"paper_formula", s.closed_form}, {"gap", s.gap}});
  }
  return Json{{"params", params_json(kExample)}, {"rows", rows}};
}

Json monotone_boundary_section() {
  ScanGrid grid;
  grid.axes.push_back(Axis{AxisName::Jp, 0.0, 3.0, 601});
  const ModelParams base{0.5, 0.0, 1.0, 2};
  const std::vector<PhasePoint> points = run_scan(grid, base);
  int decreases = 0;
  int changes = 0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].n_roots < points[i - 1].n_roots) ++decreases;
    if (points[i].n_roots != points[i - 1].n_roots) ++changes;
  }
  return Json{{"J", base.J},
              {"T", base.T},
              {"Jp_range", {0.0, 3.0}},
              {"points", points.size()},
              {"count_changes", changes},
              {"count_decreases", decreases}};
}

}  // namespace

nlohmann::ordered_json findings_report() {
  Json j;
  j["solution_count"] = solution_count_section();
  j["free_energy_sign"] = free_energy_section();
  j["uu_coefficient"] = uu_section();
  j["b_factor"] = b_factor_section();
  j["entropy_formula"] = entropy_section();
  j["monotone_boundary"] = monotone_boundary_section();
  return j;
}

void write_findings(const std::filesystem::path& destination) {
  std::ofstream file(destination, std::ios::binary);
  if (!file) throw IoError("cannot open '" + destination.string() + "' for writing");
  file << findings_report().dump(2) << '\n';
  if (!file) throw IoError("failed writing '" + destination.string() + "'");
}

}  // namespace ivg
