#include "ivg/scan.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <thread>

#include "json.hpp"

#include "ivg/error.hpp"
#include "ivg/format.hpp"
#include "ivg/solver.hpp"
#include "ivg/thermo.hpp"

namespace ivg {

namespace {

double parse_double(std::string_view text, const std::string& context) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw DomainError("cannot parse number '" + std::string(text) + "' in " + context);
  }
  return v;
}

int parse_int(std::string_view text, const std::string& context) {
  int v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw DomainError("cannot parse integer '" + std::string(text) + "' in " + context);
  }
  return v;
}

const char* axis_label(AxisName n) {
  switch (n) {
    case AxisName::J: return "J";
    case AxisName::Jp: return "Jp";
    case AxisName::T: return "T";
  }
  return "?";
}

void validate_axis(const Axis& a) {
  const std::string label = axis_label(a.name);
  if (a.steps < 1) throw DomainError("axis " + label + " needs steps >= 1");
  if (!(a.min <= a.max)) throw DomainError("axis " + label + " needs min <= max");
  if (a.name == AxisName::T && !(a.min > 0.0)) {
    throw DomainError("axis T must be strictly positive");
  }
}

constexpr const char* kColumns[] = {"J",  "Jp", "T",  "beta", "c",  "d",
                                    "n_roots", "u1", "u2", "u3", "F1", "F2",
                                    "F3", "S1", "S2", "S3", "transition", "prop51_agree"};

}  // namespace

std::vector<double> Axis::values() const {
  validate_axis(*this);
  return linspace(min, max, steps);
}

Axis parse_axis(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos) throw DomainError("axis spec '" + spec + "' must be NAME=a:b:n");
  const std::string name = spec.substr(0, eq);
  Axis a;
  if (name == "J") {
    a.name = AxisName::J;
  } else if (name == "Jp") {
    a.name = AxisName::Jp;
  } else if (name == "T") {
    a.name = AxisName::T;
  } else {
    throw DomainError("unknown axis '" + name + "' (expected J, Jp or T)");
  }
  const std::string rest = spec.substr(eq + 1);
  const auto c1 = rest.find(':');
  const auto c2 = c1 == std::string::npos ? c1 : rest.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) {
    throw DomainError("axis spec '" + spec + "' must be NAME=a:b:n");
  }
  a.min = parse_double(std::string_view(rest).substr(0, c1), spec);
  a.max = parse_double(std::string_view(rest).substr(c1 + 1, c2 - c1 - 1), spec);
  a.steps = parse_int(std::string_view(rest).substr(c2 + 1), spec);
  validate_axis(a);
  return a;
}

std::size_t ScanGrid::size() const {
  std::size_t total = 1;
  for (const Axis& a : axes) {
    validate_axis(a);
    total *= static_cast<std::size_t>(a.steps);
    if (total > kMaxScanPoints) throw DomainError("scan grid exceeds 10^7 points");
  }
  return total;
}

PhasePoint classify_point(const ModelParams& params) {
  const ReducedWeights w = weights(params);
  PhasePoint p;
  p.J = params.J;
  p.Jp = params.Jp;
  p.T = params.T;
  p.beta = w.beta;
  p.c = w.c;
  p.d = w.d;
  const SolutionSet set = solve_ti_symmetric(params);
  p.n_roots = static_cast<int>(set.count());
  for (const TiRoot& r : set.roots) {
    p.roots.push_back(r.u);
    if (params.k == 2) {
      p.F.push_back(free_energy_ti(params, r.h));
      p.S.push_back(entropy_numeric(params, r.h));
    }
  }
  p.transition = w.beta * params.Jp > std::log(3.0) / 2.0;
  if (params.k == 2) {
    const LiteralPrediction lit = literal_prediction(w);
    p.prop51_agree = p.n_roots >= lit.min_count && p.n_roots <= lit.max_count;
  }
  return p;
}

std::vector<PhasePoint> run_scan(const ScanGrid& grid, const ModelParams& base,
                                 unsigned threads) {
  if (grid.k < 1) throw DomainError("k must be >= 1");
  std::vector<int> seen(3, 0);
  for (const Axis& a : grid.axes) {
    if (seen[static_cast<int>(a.name)]++ > 0) {
      throw DomainError(std::string("axis ") + axis_label(a.name) + " given twice");
    }
  }
  const std::size_t total = grid.size();
  std::vector<std::vector<double>> values;
  for (const Axis& a : grid.axes) values.push_back(a.values());

  auto params_at = [&](std::size_t index) {
    ModelParams p = base;
    p.k = grid.k;
    for (std::size_t ax = grid.axes.size(); ax-- > 0;) {
      const std::size_t n = values[ax].size();
      const double v = values[ax][index % n];
      index /= n;
      switch (grid.axes[ax].name) {
        case AxisName::J: p.J = v; break;
        case AxisName::Jp: p.Jp = v; break;
        case AxisName::T: p.T = v; break;
      }
    }
    return p;
  };
  validate(params_at(0));

  std::vector<PhasePoint> points(total);
  const unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(total)));
  if (workers == 1) {
    for (std::size_t i = 0; i < total; ++i) points[i] = classify_point(params_at(i));
    return points;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < total; i += workers) points[i] = classify_point(params_at(i));
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return points;
}

void emit(const std::vector<PhasePoint>& points, OutputFormat format, std::ostream& out,
          int precision) {
  auto slot = [](const std::vector<double>& v, std::size_t i) -> std::optional<double> {
    return i < v.size() ? std::optional<double>(v[i]) : std::nullopt;
  };
  if (format == OutputFormat::csv) {
    for (std::size_t i = 0; i < std::size(kColumns); ++i) out << (i ? "," : "") << kColumns[i];
    out << '\n';
    auto cell = [&](std::optional<double> v) { return v ? format_number(*v, precision) : ""; };
    for (const PhasePoint& p : points) {
      out << format_number(p.J, precision) << ',' << format_number(p.Jp, precision) << ','
          << format_number(p.T, precision) << ',' << format_number(p.beta, precision) << ','
          << format_number(p.c, precision) << ',' << format_number(p.d, precision) << ','
          << p.n_roots;
      for (const auto* v : {&p.roots, &p.F, &p.S}) {
        for (std::size_t i = 0; i < 3; ++i) out << ',' << cell(slot(*v, i));
      }
      out << ',' << (p.transition ? "true" : "false") << ',';
      if (p.prop51_agree) out << (*p.prop51_agree ? "true" : "false");
      out << '\n';
    }
    return;
  }
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const PhasePoint& p : points) {
    nlohmann::ordered_json o;
    o["J"] = p.J;
    o["Jp"] = p.Jp;
    o["T"] = p.T;
    o["beta"] = p.beta;
    o["c"] = p.c;
    o["d"] = p.d;
    o["n_roots"] = p.n_roots;
    const char* names[3][3] = {{"u1", "u2", "u3"}, {"F1", "F2", "F3"}, {"S1", "S2", "S3"}};
    const std::vector<double>* series[3] = {&p.roots, &p.F, &p.S};
    for (int s = 0; s < 3; ++s) {
      for (std::size_t i = 0; i < 3; ++i) {
        const auto v = slot(*series[s], i);
        o[names[s][i]] = v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
      }
    }
    o["transition"] = p.transition;
    o["prop51_agree"] =
        p.prop51_agree ? nlohmann::ordered_json(*p.prop51_agree) : nlohmann::ordered_json(nullptr);
    arr.push_back(std::move(o));
  }
  out << arr.dump(2) << '\n';
}

void emit(const std::vector<PhasePoint>& points, OutputFormat format,
          const std::filesystem::path& destination, int precision) {
  std::ofstream file(destination, std::ios::binary);
  if (!file) throw IoError("cannot open '" + destination.string() + "' for writing");
  emit(points, format, file, precision);
  file.flush();
  if (!file) throw IoError("failed writing '" + destination.string() + "'");
}

}  // namespace ivg
