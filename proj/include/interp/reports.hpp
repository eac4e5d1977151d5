#pragma once

// JSON request/report layer shared by the C API and the command-line tool.
// Every report carries "schema": 1 and the full parameter set it was built
// from, so any verdict can be replayed from the report alone.

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "interp/intsets.hpp"
#include "interp/words.hpp"

namespace interp {

inline constexpr int kReportSchema = 1;

/// Request fields (all optional except where a predicate needs them):
///   "N", "syndetic": {"g"}, "thick": {"L"}, "pw_syndetic": {"g", "L"},
///   "gap_syndetic": {"n", "max_spacing"?}, "banach": {"n_max"?}, "gaps": true.
/// Without "N" the set must be periodic; the window is then derived from the
/// period and the verdicts are marked exact.
nlohmann::json analyze_report(const IntegerSetModel& set, const nlohmann::json& request);

/// Request: {"m": [..ascending..], "delta": "p/q", "k": 2, "oracle": false}.
nlohmann::json count_report(const nlohmann::json& request);

/// Request: {"N", "depth", "n_min", "n_max", "inject": [..], "oracle_bound"}.
nlohmann::json verify_f_report(const nlohmann::json& request);

/// Request: {"n_max": 64, "full_length": false}.
nlohmann::json word_stats_report(const SymbolWord& w, const nlohmann::json& request);

struct ConstructionOutput {
  nlohmann::json report;
  nlohmann::json trace;
  /// (file name, word) pairs: x_u.word and, for leveled kinds, w_<k>.word.
  std::vector<std::pair<std::string, SymbolWord>> words;
  bool passed = false;
};

/// options: {"kind": "zero|sturmian|mixing|minimal|ergodic", "levels",
/// "sample_cap", "cover_length", "seed"}; problem: the problem-file JSON.
ConstructionOutput construct_report(const nlohmann::json& problem, const nlohmann::json& options);

/// true iff every verdict recorded in a report holds.
bool report_passed(const nlohmann::json& report);

}  // namespace interp
