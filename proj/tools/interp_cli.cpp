// Command-line front end. Talks to the library only through interp.h.

#include <algorithm>
#include <chrono>
#include <memory>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "interp/interp.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct CliError {
  int exit_code;
  std::string message;
  json details;
};

// Owns a string handed out by the C API.
class CString {
 public:
  CString() = default;
  CString(const CString&) = delete;
  CString& operator=(const CString&) = delete;
  ~CString() { interp_string_free(p_); }
  char** out() { return &p_; }
  std::string str() const { return p_ ? p_ : ""; }

 private:
  char* p_ = nullptr;
};

int exit_for(interp_status s) {
  switch (s) {
    case INTERP_OK:
      return kExitOk;
    case INTERP_PRECONDITION:
    case INTERP_CONSTRUCTION_FAILED:
    case INTERP_INTERNAL:
      return kExitFailed;
    default:
      return kExitUsage;
  }
}

void check(interp_status s) {
  if (s == INTERP_OK) return;
  json details = json::parse(interp_last_error_details(), nullptr, false);
  if (details.is_discarded()) details = nullptr;
  throw CliError{exit_for(s), std::string(interp_status_name(s)) + ": " + interp_last_error(), details};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{kExitUsage, "cannot read " + path, nullptr};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes through a sibling temporary so readers never see a partial file.
void write_atomic(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CliError{kExitUsage, "cannot write " + tmp.string(), nullptr};
    out << text;
    if (!out.flush()) throw CliError{kExitUsage, "cannot write " + tmp.string(), nullptr};
  }
  fs::rename(tmp, path);
}

// key=value tokens such as `g=3 L=10` into a JSON object of integers.
json key_values(const std::vector<std::string>& tokens, const std::vector<std::string>& allowed) {
  json out = json::object();
  for (const auto& t : tokens) {
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw CliError{kExitUsage, "expected key=value, got \"" + t + "\"", nullptr};
    const std::string key = t.substr(0, eq);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw CliError{kExitUsage, "unknown parameter \"" + key + "\"", nullptr};
    try {
      std::size_t used = 0;
      const long long v = std::stoll(t.substr(eq + 1), &used);
      if (used != t.size() - eq - 1) throw std::invalid_argument(t);
      out[key] = v;
    } catch (const std::logic_error&) {
      throw CliError{kExitUsage, "parameter \"" + key + "\" is not an integer", nullptr};
    }
  }
  return out;
}

// "25,50,100" or "a:b[:step]".
std::vector<long long> parse_m_list(const std::string& text) {
  std::vector<long long> out;
  try {
    if (text.find(':') != std::string::npos) {
      std::vector<long long> parts;
      std::stringstream ss(text);
      for (std::string p; std::getline(ss, p, ':');) parts.push_back(std::stoll(p));
      if (parts.size() < 2 || parts.size() > 3 || (parts.size() == 3 && parts[2] < 1))
        throw CliError{kExitUsage, "range must be a:b or a:b:step", nullptr};
      const long long step = parts.size() == 3 ? parts[2] : 1;
      for (long long m = parts[0]; m <= parts[1]; m += step) out.push_back(m);
    } else {
      std::stringstream ss(text);
      for (std::string p; std::getline(ss, p, ',');) out.push_back(std::stoll(p));
    }
  } catch (const std::logic_error&) {
    throw CliError{kExitUsage, "cannot parse m list \"" + text + "\"", nullptr};
  }
  if (out.empty()) throw CliError{kExitUsage, "empty m list", nullptr};
  return out;
}

struct Common {
  bool with_timing = false;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void finish(json& report) const {
    if (with_timing) {
      const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      report["timing"] = {{"wall_ms", std::to_string(ms)}};
    } else {
      report["timing"] = nullptr;
    }
  }
};

int emit_report(json report, const std::string& out_path, const Common& common) {
  if (!out_path.empty()) report["outputs"] = json::array({fs::path(out_path).filename().string()});
  common.finish(report);
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    write_atomic(out_path, text);
  return report.value("passed", false) ? kExitOk : kExitFailed;
}

json parse_report(const CString& s) { return json::parse(s.str()); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interpolation sets: certificates, constructions and exact counts"};
  app.require_subcommand(1);
  app.set_version_flag("--version", interp_version());
  Common common;
  app.add_flag("--with-timing", common.with_timing, "Record wall time in reports (breaks byte reproducibility)");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Certificates and density profile of an integer set");
  std::string set_spec, analyze_out;
  std::optional<long long> window_n;
  std::vector<std::string> syndetic, thick, pw_syndetic, gap_syndetic;
  std::optional<long long> banach_n_max;
  bool banach = false, gaps = false;
  analyze->add_option("--set", set_spec, "Set specification, e.g. \"kind=powers base=2\"")->required();
  analyze->add_option("--n,-N", window_n, "Window bound N (optional for periodic sets)");
  analyze->add_option("--syndetic", syndetic, "g=<gap>")->expected(1);
  analyze->add_option("--thick", thick, "L=<run length>")->expected(1);
  analyze->add_option("--pw-syndetic", pw_syndetic, "g=<gap> L=<interval length>")->expected(2);
  analyze->add_option("--gap-syndetic", gap_syndetic, "n=<gap length> [max_spacing=<s>]")->expected(1, 2);
  analyze->add_flag("--banach", banach, "Upper Banach density profile at power-of-two scales");
  analyze->add_option("--banach-n-max", banach_n_max, "Banach profile at every scale up to n");
  analyze->add_flag("--gaps", gaps, "Gap sequence summary");
  analyze->add_option("--out,-o", analyze_out, "Write the JSON report here instead of stdout");

  // construct
  auto* construct = app.add_subcommand("construct", "Build an interpolating sequence and verify it");
  std::string kind, problem_path, out_dir;
  std::optional<long long> seed, levels, sample_cap, cover_length;
  construct->add_option("--kind", kind, "zero | sturmian | mixing | minimal | ergodic")
      ->required()
      ->check(CLI::IsMember({"zero", "sturmian", "mixing", "minimal", "ergodic"}));
  construct->add_option("--problem", problem_path, "Problem file (JSON)")->required();
  construct->add_option("--out,-o", out_dir, "Output directory")->required();
  construct->add_option("--seed", seed, "Sampling seed (required for minimal and ergodic)");
  construct->add_option("--levels", levels, "Number of levels K");
  construct->add_option("--sample-cap", sample_cap, "Sample cap B per level");
  construct->add_option("--cover-length", cover_length, "Target word length L for mixing");

  // count
  auto* count = app.add_subcommand("count", "Exact counts of low-weight words");
  std::string m_text, delta, count_out, count_report_path;
  long long k = 2;
  bool oracle = false;
  count->add_option("--m", m_text, "m list \"25,50\" or range \"1:16[:step]\"")->required();
  count->add_option("--delta", delta, "Weight fraction p/q")->required();
  count->add_option("--k", k, "Alphabet size")->required();
  count->add_flag("--oracle", oracle, "Cross-check by brute-force enumeration");
  count->add_option("--out,-o", count_out, "Write the CSV here instead of stdout");
  count->add_option("--report", count_report_path, "Also write the JSON report");

  // verify-f
  auto* verify = app.add_subcommand("verify-f", "Build the sum-free recurrence set F and verify it");
  long long f_bound = 1'000'000, depth = 3;
  std::string n_range = "1:3", verify_out;
  std::vector<long long> inject;
  std::optional<long long> oracle_bound;
  bool extended = false;
  verify->add_option("--n,-N", f_bound, "Bound N")->capture_default_str();
  verify->add_flag("--extended", extended, "Use N = 10^7");
  verify->add_option("--depth", depth, "Finite-sum depth for the shift check")->capture_default_str();
  verify->add_option("--n-range", n_range, "Index range a:b for the shift check")->capture_default_str();
  verify->add_option("--inject", inject, "Extra members (fault injection)");
  verify->add_option("--oracle-bound", oracle_bound, "Compare membership oracles on [1, bound]");
  verify->add_option("--out,-o", verify_out, "Write the JSON report here instead of stdout");

  // word-stats
  auto* stats = app.add_subcommand("word-stats", "Complexity profile and entropy estimate of a word file");
  std::string word_path, stats_out;
  long long n_max = 64;
  bool full_length = false;
  stats->add_option("--word", word_path, "Word file")->required();
  stats->add_option("--n-max", n_max, "Largest factor length")->capture_default_str();
  stats->add_flag("--full-length", full_length, "Allow n up to the word length");
  stats->add_option("--out,-o", stats_out, "Write the JSON report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*analyze) {
      json request = json::object();
      if (window_n) request["N"] = *window_n;
      if (!syndetic.empty()) request["syndetic"] = key_values(syndetic, {"g"});
      if (!thick.empty()) request["thick"] = key_values(thick, {"L"});
      if (!pw_syndetic.empty()) request["pw_syndetic"] = key_values(pw_syndetic, {"g", "L"});
      if (!gap_syndetic.empty()) request["gap_syndetic"] = key_values(gap_syndetic, {"n", "max_spacing"});
      if (banach_n_max)
        request["banach"] = {{"n_max", *banach_n_max}};
      else if (banach)
        request["banach"] = true;
      if (gaps) request["gaps"] = true;
      interp_set* raw = nullptr;
      check(interp_set_parse(set_spec.c_str(), &raw));
      std::unique_ptr<interp_set, decltype(&interp_set_free)> set(raw, interp_set_free);
      CString out;
      check(interp_analyze(set.get(), request.dump().c_str(), out.out(), nullptr));
      json report = parse_report(out);
      report["seed"] = nullptr;
      return emit_report(std::move(report), analyze_out, common);
    }

    if (*construct) {
      if ((kind == "minimal" || kind == "ergodic") && !seed)
        throw CliError{kExitUsage, "--seed is required for kind " + kind, nullptr};
      json problem = json::parse(read_file(problem_path), nullptr, false);
      if (problem.is_discarded()) throw CliError{kExitUsage, problem_path + " is not valid JSON", nullptr};
      json options = {{"kind", kind}};
      if (seed) options["seed"] = *seed;
      if (levels) options["levels"] = *levels;
      if (sample_cap) options["sample_cap"] = *sample_cap;
      if (cover_length) options["cover_length"] = *cover_length;
      interp_construction* raw = nullptr;
      const interp_status s = interp_construct(problem.dump().c_str(), options.dump().c_str(), &raw);
      const fs::path dir(out_dir);
      if (s != INTERP_OK) {
        // A refusal still leaves a report naming the blocking evidence.
        json details = json::parse(interp_last_error_details(), nullptr, false);
        json report = {{"schema", 1},
                       {"command", "construct"},
                       {"kind", kind},
                       {"problem", problem},
                       {"options", options},
                       {"seed", seed ? json(*seed) : json(nullptr)},
                       {"passed", false},
                       {"error", {{"status", interp_status_name(s)},
                                  {"message", interp_last_error()},
                                  {"details", details.is_discarded() ? json(nullptr) : details}}}};
        const int rc = exit_for(s);
        if (rc == kExitFailed) {
          report["outputs"] = json::array({"report.json"});
          common.finish(report);
          write_atomic(dir / "report.json", report.dump(2) + "\n");
        }
        std::cerr << "interp: " << interp_status_name(s) << ": " << interp_last_error() << "\n";
        return rc;
      }
      std::unique_ptr<interp_construction, decltype(&interp_construction_free)> c(raw, interp_construction_free);
      json files = json::array();
      for (std::size_t i = 0; i < interp_construction_word_count(c.get()); ++i) {
        CString name, text;
        check(interp_construction_word(c.get(), i, name.out(), text.out()));
        write_atomic(dir / name.str(), text.str());
        files.push_back(name.str());
      }
      CString trace_text, report_text;
      check(interp_construction_trace(c.get(), trace_text.out()));
      check(interp_construction_report(c.get(), report_text.out()));
      write_atomic(dir / "trace.json", trace_text.str());
      files.push_back("trace.json");
      files.push_back("report.json");
      json report = parse_report(report_text);
      report["outputs"] = files;
      common.finish(report);
      write_atomic(dir / "report.json", report.dump(2) + "\n");
      const bool passed = interp_construction_passed(c.get()) != 0;
      if (!passed) std::cerr << "interp: verification failed; see " << (dir / "report.json").string() << "\n";
      return passed ? kExitOk : kExitFailed;
    }

    if (*count) {
      json request = {{"m", parse_m_list(m_text)}, {"delta", delta}, {"k", k}, {"oracle", oracle}};
      CString out;
      check(interp_count(request.dump().c_str(), out.out(), nullptr));
      json report = parse_report(out);
      report["seed"] = nullptr;
      const std::string csv = report.at("csv").get<std::string>();
      if (count_out.empty())
        std::cout << csv;
      else
        write_atomic(count_out, csv);
      if (!count_report_path.empty()) {
        json outputs = json::array();
        if (!count_out.empty()) outputs.push_back(fs::path(count_out).filename().string());
        outputs.push_back(fs::path(count_report_path).filename().string());
        report["outputs"] = outputs;
        common.finish(report);
        write_atomic(count_report_path, report.dump(2) + "\n");
      }
      return report.value("passed", false) ? kExitOk : kExitFailed;
    }

    if (*verify) {
      const auto colon = n_range.find(':');
      json request = {{"N", extended ? 10'000'000LL : f_bound}, {"depth", depth}, {"inject", inject}};
      try {
        request["n_min"] = std::stoll(n_range.substr(0, colon));
        request["n_max"] = colon == std::string::npos ? request["n_min"].get<long long>()
                                                       : std::stoll(n_range.substr(colon + 1));
      } catch (const std::logic_error&) {
        throw CliError{kExitUsage, "cannot parse --n-range \"" + n_range + "\"", nullptr};
      }
      if (oracle_bound) request["oracle_bound"] = *oracle_bound;
      CString out;
      check(interp_verify_f(request.dump().c_str(), out.out(), nullptr));
      json report = parse_report(out);
      report["seed"] = nullptr;
      return emit_report(std::move(report), verify_out, common);
    }

    if (*stats) {
      const std::string text = read_file(word_path);
      json request = {{"n_max", n_max}, {"full_length", full_length}};
      CString out;
      check(interp_word_stats(text.c_str(), request.dump().c_str(), out.out()));
      json report = parse_report(out);
      report["seed"] = nullptr;
      report["word"] = word_path;
      return emit_report(std::move(report), stats_out, common);
    }
  } catch (const CliError& e) {
    std::cerr << "interp: " << e.message << "\n";
    if (!e.details.is_null()) std::cerr << e.details.dump(2) << "\n";
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "interp: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitUsage;
}
