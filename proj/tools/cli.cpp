#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ivg/error.hpp"
#include "ivg/format.hpp"
#include "ivg/lattice.hpp"
#include "ivg/oracle.hpp"
#include "ivg/recursion.hpp"
#include "ivg/scan.hpp"
#include "ivg/solver.hpp"
#include "ivg/thermo.hpp"

namespace ivg::cli {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr int kDefaultCurvePoints = 64;

struct Common {
  double J = 0.0;
  double Jp = 0.0;
  double T = 1.0;
  double beta = 1.0;
  int k = 2;
  bool json = false;
  int precision = 9;

  CLI::Option* opt_J = nullptr;
  CLI::Option* opt_Jp = nullptr;
  CLI::Option* opt_T = nullptr;
  CLI::Option* opt_beta = nullptr;

  /// Model parameters; J, Jp and one of T / beta are required unless
  /// `defaults_ok`, in which case missing values fall back to 0, 0, 1.
  ModelParams params(bool defaults_ok = false, bool temperature_optional = false) const {
    if (!defaults_ok) {
      if (opt_J->count() == 0) throw UsageError("--J is required");
      if (opt_Jp->count() == 0) throw UsageError("--Jp is required");
      if (!temperature_optional && opt_T->count() == 0 && opt_beta->count() == 0) {
        throw UsageError("one of --T or --beta is required");
      }
    }
    ModelParams p;
    p.J = J;
    p.Jp = Jp;
    p.k = k;
    if (opt_beta->count() > 0) {
      if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("beta must be positive");
      p.T = 1.0 / beta;
    } else {
      p.T = T;
    }
    validate(p);
    return p;
  }

  std::string num(double x) const { return format_number(x, precision); }
};

Json params_json(const ModelParams& p) {
  return Json{{"J", p.J}, {"Jp", p.Jp}, {"T", p.T}, {"beta", p.beta()}, {"k", p.k}};
}

std::string params_line(const Common& c, const ModelParams& p) {
  const ReducedWeights w = weights(p);
  return "J=" + c.num(p.J) + " Jp=" + c.num(p.Jp) + " T=" + c.num(p.T) + " beta=" +
         c.num(p.beta()) + " k=" + std::to_string(p.k) + " c=" + c.num(w.c) + " d=" + c.num(w.d);
}

template <typename Fn>
void with_output(const std::string& path, std::ostream& fallback, Fn&& fn) {
  if (path.empty()) {
    fn(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  fn(file);
  file.flush();
  if (!file) throw IoError("failed writing '" + path + "'");
}

std::vector<double> temperature_grid(const Common& c, const std::string& range) {
  if (range.empty()) return {c.params().T};
  std::string spec = range;
  if (std::count(spec.begin(), spec.end(), ':') == 1) {
    spec += ":" + std::to_string(kDefaultCurvePoints);
  }
  return parse_axis("T=" + spec).values();
}

std::optional<int> root_option(const CLI::Option* opt, int value) {
  if (opt->count() == 0) return std::nullopt;
  return value;
}

// ------------------------------------------------------------------ solve

int cmd_solve(const Common& c, std::ostream& out) {
  const ModelParams p = c.params();
  const SolutionSet set = solve_ti_symmetric(p);
  const SolutionCount cnt = count_solutions(p);
  std::vector<NonSymSolution> nonsym;
  if (p.k == 2) nonsym = solve_nonsymmetric_k2(p);

  if (c.json) {
    Json roots = Json::array();
    for (const TiRoot& r : set.roots) {
      roots.push_back({{"u", r.u},
                       {"h", r.h},
                       {"U", r.U},
                       {"residual", r.residual},
                       {"slope", r.slope},
                       {"stability", to_string(r.stability)}});
    }
    Json ns = Json::array();
    for (const NonSymSolution& s : nonsym) {
      ns.push_back({{"x", s.x}, {"m", s.m}, {"t", s.t}, {"residual", s.residual}});
    }
    Json prop;
    if (cnt.literal) {
      prop["prediction"] = {{"min", cnt.literal->min_count},
                            {"max", cnt.literal->max_count},
                            {"rule", cnt.literal->rule}};
      prop["empirical"] = cnt.empirical;
      prop["agree"] = *cnt.agree;
    } else {
      prop["prediction"] = nullptr;
      prop["empirical"] = cnt.empirical;
      prop["agree"] = nullptr;
    }
    prop["preston_prediction"] = cnt.preston_prediction;
    Json doc;
    doc["params"] = params_json(p);
    doc["convention_note"] =
        p.k == 2 ? "u solves u = (c d u^2 + 1)/(c u^2 + d) with c = exp(2 beta J), "
                   "d = exp(2 beta Jp); h = ln u; the recursion triple is U = c u^2"
                 : "U solves U = A ((B U + 1)/(U + B))^k with A = exp(2 beta J), "
                   "B = exp(2 beta Jp); u = (U/A)^(1/2), h = ln u";
    doc["roots"] = roots;
    doc["nonsym"] = ns;
    doc["prop51"] = prop;
    out << doc.dump(2) << '\n';
    return kExitOk;
  }

  out << params_line(c, p) << '\n';
  out << "roots: " << set.count() << '\n';
  for (std::size_t i = 0; i < set.roots.size(); ++i) {
    const TiRoot& r = set.roots[i];
    out << "  " << i + 1 << "  u=" << c.num(r.u) << "  h=" << c.num(r.h)
        << "  residual=" << c.num(r.residual) << "  stability=" << to_string(r.stability)
        << '\n';
  }
  if (p.k == 2) {
    out << "non-symmetric: " << nonsym.size() << '\n';
    for (const NonSymSolution& s : nonsym) {
      out << "  x=" << c.num(s.x) << "  m=" << c.num(s.m) << "  t=" << c.num(s.t)
          << "  residual=" << c.num(s.residual) << '\n';
    }
    out << "scalar criterion: predicts " << cnt.literal->min_count;
    if (!cnt.literal->definite()) out << ".." << cnt.literal->max_count;
    out << " (" << cnt.literal->rule << "), found " << cnt.empirical
        << (*cnt.agree ? ", agree" : ", DISAGREE") << '\n';
  }
  out << "Preston prediction: " << cnt.preston_prediction << '\n';
  return kExitOk;
}

// ----------------------------------------------------------------- nonsym

int cmd_nonsym(const Common& c, std::ostream& out) {
  const ModelParams p = c.params();
  if (p.k != 2) throw DomainError("the non-symmetric search is implemented for k = 2 only");
  const std::vector<NonSymSolution> sols = solve_nonsymmetric_k2(p);
  if (c.json) {
    Json arr = Json::array();
    for (const NonSymSolution& s : sols) {
      const auto x = s.triple();
      arr.push_back({{"x", s.x},
                     {"m", s.m},
                     {"t", s.t},
                     {"residual", s.residual},
                     {"triple", {x[0], x[1], x[2]}}});
    }
    out << Json{{"params", params_json(p)}, {"solutions", arr}}.dump(2) << '\n';
    return kExitOk;
  }
  out << params_line(c, p) << '\n';
  out << "solutions: " << sols.size() << '\n';
  for (const NonSymSolution& s : sols) {
    out << "  x=" << c.num(s.x) << "  m=" << c.num(s.m) << "  t=" << c.num(s.t)
        << "  residual=" << c.num(s.residual) << '\n';
  }
  return kExitOk;
}

// ----------------------------------------------------------------- verify

int cmd_verify(const Common& c, int n, double gauge, std::ostream& out) {
  const ModelParams p = c.params();
  if (n < 2) throw DomainError("verify needs --n >= 2");
  const ReducedWeights w = weights(p);
  const SolutionSet set = solve_ti_symmetric(p);
  const FiniteTree tree(p.k, n);
  Json roots = Json::array();
  for (const TiRoot& r : set.roots) {
    const UTriple u = UTriple::symmetric(r.U);
    const EdgeField field(tree, h_from_u(u, w, gauge));
    const TelescopingReport tel = telescoping_check(tree, n, p, field);
    roots.push_back({{"u", r.u},
                     {"U", r.U},
                     {"canonic_residual", canonic_residual(tree, UField(tree, u), w)},
                     {"compat_max_error", check_compatibility(tree, n, p, field)},
                     {"telescoping_gap", tel.relative_gap},
                     {"max_sector_spread", tel.max_sector_spread}});
  }
  if (c.json) {
    out << Json{{"params", params_json(p)}, {"n", n}, {"gauge", gauge}, {"roots", roots}}.dump(2)
        << '\n';
    return kExitOk;
  }
  out << params_line(c, p) << " n=" << n << " gauge=" << c.num(gauge) << '\n';
  for (const auto& r : roots) {
    out << "  u=" << c.num(r["u"].get<double>())
        << "  canonic=" << c.num(r["canonic_residual"].get<double>())
        << "  compat=" << c.num(r["compat_max_error"].get<double>())
        << "  telescoping=" << c.num(r["telescoping_gap"].get<double>())
        << "  sector_spread=" << c.num(r["max_sector_spread"].get<double>()) << '\n';
  }
  return kExitOk;
}

// ------------------------------------------------------ free-energy / entropy

int cmd_free_energy(const Common& c, const std::string& range, std::optional<int> root,
                    const std::string& path, std::ostream& out) {
  const ModelParams base = c.params(false, !range.empty());
  const std::vector<double> temps = temperature_grid(c, range);
  const std::vector<CurveRow> rows = thermo_curve(base, temps, root);
  with_output(path, out, [&](std::ostream& os) {
    if (c.json) {
      Json arr = Json::array();
      for (const CurveRow& r : rows) {
        arr.push_back({{"T", r.T},
                       {"beta", r.beta},
                       {"h", r.h},
                       {"F", r.F},
                       {"S_numeric", r.S_numeric},
                       {"S_paper_formula", r.S_paper}});
      }
      os << arr.dump(2) << '\n';
    } else {
      write_curve_csv(os, rows, c.precision);
    }
  });
  return kExitOk;
}

int cmd_entropy(const Common& c, const std::string& range, std::optional<int> root,
                const std::string& path, std::ostream& out) {
  const ModelParams base = c.params(false, !range.empty());
  const std::vector<double> temps = temperature_grid(c, range);
  const std::vector<CurveRow> rows = thermo_curve(base, temps, root);
  with_output(path, out, [&](std::ostream& os) {
    if (c.json) {
      Json arr = Json::array();
      for (const CurveRow& r : rows) {
        arr.push_back({{"T", r.T},
                       {"beta", r.beta},
                       {"h", r.h},
                       {"S_numeric", r.S_numeric},
                       {"S_paper_formula", r.S_paper},
                       {"gap", std::abs(r.S_paper - r.S_numeric)}});
      }
      os << arr.dump(2) << '\n';
      return;
    }
    os << "T,beta,h,S_numeric,S_paper_formula,gap\n";
    for (const CurveRow& r : rows) {
      os << c.num(r.T) << ',' << c.num(r.beta) << ',' << c.num(r.h) << ','
         << c.num(r.S_numeric) << ',' << c.num(r.S_paper) << ','
         << c.num(std::abs(r.S_paper - r.S_numeric)) << '\n';
    }
  });
  return kExitOk;
}

// ------------------------------------------------------------------- scan

int cmd_scan(const Common& c, const std::vector<std::string>& axes, const std::string& format,
             const std::string& path, unsigned threads, std::ostream& out) {
  ScanGrid grid;
  grid.k = c.k;
  for (const std::string& a : axes) grid.axes.push_back(parse_axis(a));
  const ModelParams base = c.params(true);
  const std::vector<PhasePoint> points = run_scan(grid, base, threads);
  const OutputFormat fmt = format == "json" ? OutputFormat::json : OutputFormat::csv;
  if (path.empty()) {
    emit(points, fmt, out, c.precision);
  } else {
    emit(points, fmt, std::filesystem::path(path), c.precision);
  }
  return kExitOk;
}

// ----------------------------------------------------------------- oracle

EdgeField oracle_field(const FiniteTree& tree, const ModelParams& p, const std::string& spec,
                       double gauge) {
  if (spec == "zero") return EdgeField(tree, HQuad{});
  const std::string prefix = "ti-root=";
  if (spec.rfind(prefix, 0) != 0) {
    throw UsageError("--field must be 'zero' or 'ti-root=<i>'");
  }
  int index = 0;
  try {
    std::size_t used = 0;
    index = std::stoi(spec.substr(prefix.size()), &used);
    if (used != spec.size() - prefix.size()) throw std::invalid_argument(spec);
  } catch (const std::logic_error&) {
    throw UsageError("cannot parse root index in '" + spec + "'");
  }
  const SolutionSet set = solve_ti_symmetric(p);
  if (index < 1 || index > static_cast<int>(set.count())) {
    throw DomainError("root " + std::to_string(index) + " does not exist (" +
                      std::to_string(set.count()) + " roots)");
  }
  const double U = set.roots[static_cast<std::size_t>(index - 1)].U;
  return EdgeField(tree, h_from_u(UTriple::symmetric(U), weights(p), gauge));
}

int cmd_oracle(const Common& c, int n, const std::string& field_spec, double gauge,
               std::ostream& out) {
  const ModelParams p = c.params();
  if (n < 1) throw DomainError("oracle needs --n >= 1");
  const FiniteTree tree(p.k, n);
  const EdgeField field = oracle_field(tree, p, field_spec, gauge);
  const double log_Z = log_partition_function(tree, n, p, field);
  Json doc;
  doc["n"] = n;
  doc["field"] = field_spec;
  doc["Z_n"] = std::exp(log_Z);
  doc["log_Z_n"] = log_Z;
  if (n >= 2) {
    doc["compat_max_error"] = check_compatibility(tree, n, p, field);
    doc["telescoping_gap"] = telescoping_check(tree, n, p, field).relative_gap;
  } else {
    doc["compat_max_error"] = nullptr;
    doc["telescoping_gap"] = nullptr;
  }
  doc["free_energy_paper"] = finite_free_energy(tree, n, p, field, SignConvention::paper);
  doc["free_energy_physics"] = finite_free_energy(tree, n, p, field, SignConvention::physics);
  out << doc.dump(2) << '\n';
  return kExitOk;
}

void add_common(CLI::App& app, Common& c) {
  c.opt_J = app.add_option("--J", c.J, "nearest-neighbour coupling");
  c.opt_Jp = app.add_option("--Jp", c.Jp, "prolonged next-nearest-neighbour coupling");
  c.opt_T = app.add_option("--T", c.T, "temperature (k_B = 1)");
  c.opt_beta = app.add_option("--beta", c.beta, "inverse temperature");
  c.opt_T->excludes(c.opt_beta);
  app.add_option("--k", c.k, "branching order")->capture_default_str();
  app.add_flag("--json", c.json, "JSON output");
  app.add_option("--precision", c.precision, "significant digits in text and CSV output")
      ->check(CLI::Range(1, 17))
      ->capture_default_str();
  app.set_config("--config", "", "key=value file; command-line flags override its entries");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gibbs measures of the Ising-Vannimenus model on Cayley trees", "ivg"};
  app.fallthrough();
  app.require_subcommand(1);
  Common common;
  add_common(app, common);

  auto* solve = app.add_subcommand("solve", "translation-invariant solutions");
  auto* nonsym = app.add_subcommand("nonsym", "non-symmetric solutions (k = 2)");

  auto* verify = app.add_subcommand("verify", "oracle checks for every symmetric root");
  int verify_n = 3;
  double verify_gauge = 0.0;
  verify->add_option("--n", verify_n, "tree depth")->capture_default_str();
  verify->add_option("--gauge", verify_gauge, "free h++ value")->capture_default_str();

  std::string fe_range;
  int fe_root = 0;
  std::string fe_out;
  auto* fe = app.add_subcommand("free-energy", "free energy per root");
  fe->add_option("--T-range", fe_range, "a:b or a:b:steps");
  auto* fe_root_opt = fe->add_option("--root", fe_root, "root index, ascending u")
                          ->check(CLI::Range(1, 3));
  fe->add_option("--out", fe_out, "output file (default stdout)");

  std::string en_range;
  int en_root = 0;
  std::string en_out;
  auto* en = app.add_subcommand("entropy", "entropy per root");
  en->add_option("--T-range", en_range, "a:b or a:b:steps");
  auto* en_root_opt = en->add_option("--root", en_root, "root index, ascending u")
                          ->check(CLI::Range(1, 3));
  en->add_option("--out", en_out, "output file (default stdout)");

  std::vector<std::string> scan_axes;
  std::string scan_format = "csv";
  std::string scan_out;
  unsigned scan_threads = 1;
  auto* scan = app.add_subcommand("scan", "parameter sweep");
  scan->add_option("--axis", scan_axes, "NAME=a:b:n with NAME in J, Jp, T")->required();
  scan->add_option("--format", scan_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  scan->add_option("--out", scan_out, "output file (default stdout)");
  scan->add_option("--threads", scan_threads, "worker threads")
      ->check(CLI::Range(1U, 256U))
      ->capture_default_str();

  int oracle_n = 2;
  std::string oracle_field_spec = "zero";
  double oracle_gauge = 0.0;
  auto* oracle = app.add_subcommand("oracle", "exact enumeration report (JSON)");
  oracle->add_option("--n", oracle_n, "tree depth")->capture_default_str();
  oracle->add_option("--field", oracle_field_spec, "zero or ti-root=<i>")->capture_default_str();
  oracle->add_option("--gauge", oracle_gauge, "free h++ value")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::FileError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve) return cmd_solve(common, out);
    if (*nonsym) return cmd_nonsym(common, out);
    if (*verify) return cmd_verify(common, verify_n, verify_gauge, out);
    if (*fe) return cmd_free_energy(common, fe_range, root_option(fe_root_opt, fe_root), fe_out, out);
    if (*en) return cmd_entropy(common, en_range, root_option(en_root_opt, en_root), en_out, out);
    if (*scan) return cmd_scan(common, scan_axes, scan_format, scan_out, scan_threads, out);
    if (*oracle) return cmd_oracle(common, oracle_n, oracle_field_spec, oracle_gauge, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\nRun with --help for more information.\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace ivg::cli
