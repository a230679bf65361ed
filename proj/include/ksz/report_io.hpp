#pragma once

// JSON and CSV serialization of experiment specs and reports.

#include <string>
#include <string_view>

#include "ksz/harness.hpp"

namespace ksz {

/// Parses {"id": ..., "family": {"kind": ...}, "r": ..., "sizes": [...],
/// "trials": ..., "seed": ...}. r, trials and seed are optional. Throws
/// InvalidArgument on malformed input.
ExperimentSpec spec_from_json(std::string_view text);
std::string spec_to_json(const ExperimentSpec& spec);

/// Deterministic for a given report: no timestamps or host data.
std::string report_to_json(const Report& report);

/// Columns size, lhs, rhs, ratio, stderr with 17 significant digits.
std::string report_to_csv(const Report& report);

}  // namespace ksz
