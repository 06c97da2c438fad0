#pragma once

// Parameter sweeps over (J, Jp, T) grids with per-point classification.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ivg/model.hpp"

namespace ivg {

enum class AxisName { J, Jp, T };

struct Axis {
  AxisName name = AxisName::J;
  double min = 0.0;
  double max = 0.0;
  int steps = 1;

  std::vector<double> values() const;
};

/// Parses "J=a:b:n", "Jp=a:b:n" or "T=a:b:n".
Axis parse_axis(const std::string& spec);

struct ScanGrid {
  std::vector<Axis> axes;  // first axis varies slowest
  int k = 2;

  std::size_t size() const;
};

inline constexpr std::size_t kMaxScanPoints = 10'000'000;

struct PhasePoint {
  double J = 0.0;
  double Jp = 0.0;
  double T = 1.0;
  double beta = 1.0;
  double c = 1.0;
  double d = 1.0;
  int n_roots = 0;
  std::vector<double> roots;  // ascending, at most three for k = 2
  std::vector<double> F;      // per root; empty for k != 2
  std::vector<double> S;
  bool transition = false;    // beta Jp > (ln 3)/2
  std::optional<bool> prop51_agree;
};

/// One point per grid cell in row-major axis order. Throws DomainError on an
/// invalid or oversized grid. Output does not depend on `threads`.
std::vector<PhasePoint> run_scan(const ScanGrid& grid, const ModelParams& base,
                                 unsigned threads = 1);

PhasePoint classify_point(const ModelParams& params);

enum class OutputFormat { csv, json };

/// CSV columns J,Jp,T,beta,c,d,n_roots,u1,u2,u3,F1,F2,F3,S1,S2,S3,transition,prop51_agree;
/// absent values are empty cells (null in JSON).
void emit(const std::vector<PhasePoint>& points, OutputFormat format, std::ostream& out,
          int precision = 9);
/// Writes to a file; throws IoError with the path on failure.
void emit(const std::vector<PhasePoint>& points, OutputFormat format,
          const std::filesystem::path& destination, int precision = 9);

}  // namespace ivg
