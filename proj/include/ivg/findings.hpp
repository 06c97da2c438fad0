#pragma once

// Numerical evidence for the places where the stated closed forms and
// the computed behaviour disagree. Every entry carries the numbers it rests on.

#include <filesystem>

#include "json.hpp"

namespace ivg {

/// Sections: solution_count, free_energy_sign, uu_coefficient, b_factor,
/// entropy_formula, monotone_boundary.
nlohmann::ordered_json findings_report();

/// Throws IoError on failure.
void write_findings(const std::filesystem::path& destination);

}  // namespace ivg
