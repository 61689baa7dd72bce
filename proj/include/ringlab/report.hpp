#pragma once

#include <string>

#include "ringlab/theorems.hpp"

namespace ringlab {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

// Canonical JSON (sorted keys, integers only): byte-identical across runs
// with the same inputs and tool version. Wall-clock timing is therefore kept
// out of the default report; pass with_timing_ms >= 0 to embed a measured
// duration when reproducibility does not matter.
std::string suite_report_json(const SuiteRun& run, long long with_timing_ms = -1);

std::string search_report_json(const SearchResult& res, const std::string& formula);

// Invariant report for one ring (cmd_invariants --json).
std::string invariants_report_json(const FiniteRing& r);

}  // namespace ringlab
