#pragma once

// Text formats shared by the library and the CLI: set files, word files and
// interpolation problem files.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "interp/constructors.hpp"
#include "interp/words.hpp"

namespace interp {

/// One decimal integer per line, ascending, LF terminated.
std::string format_set_file(const std::vector<std::int64_t>& elements);
std::vector<std::int64_t> parse_set_file(std::string_view text);
std::vector<std::int64_t> read_set_file(const std::filesystem::path& path);

/// "k=<alphabet>\n" followed by the symbols on one line.
std::string format_word_file(const SymbolWord& w);
SymbolWord parse_word_file(std::string_view text);
SymbolWord read_word_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

/// Interpolation problem file (JSON):
///   { "set_spec": "...", "k": 2, "N": 4096,
///     "f": { "pairs": [[s, v], ...] }
///        | { "distribution": "uniform", "seed": 7 }
///        | { "distribution": "constant", "value": 1 }
///        | { "distribution": "alternating" } }
/// Optional construction parameters may sit next to these fields
/// ("levels", "sample_cap", "cover_length").
struct ProblemFile {
  InterpolationProblem problem;
  std::optional<std::uint64_t> seed;
  nlohmann::json extra = nlohmann::json::object();
};

ProblemFile parse_problem(const nlohmann::json& j);

}  // namespace interp
