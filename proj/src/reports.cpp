#include "interp/reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "interp/constructors.hpp"
#include "interp/entropy_count.hpp"
#include "interp/error.hpp"
#include "interp/io.hpp"
#include "interp/recurrence.hpp"

namespace interp {

namespace {

using nlohmann::json;

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

std::int64_t get_int(const json& j, const char* key) {
  if (!j.contains(key)) fail(ErrorCode::InvalidArgument, std::string("missing parameter \"") + key + "\"");
  const auto& v = j.at(key);
  if (v.is_string()) {
    auto parsed = parse_int_list(v.get<std::string>());
    if (parsed.size() != 1) fail(ErrorCode::InvalidArgument, std::string("parameter \"") + key + "\" is not an integer");
    return parsed[0];
  }
  if (!v.is_number_integer()) fail(ErrorCode::InvalidArgument, std::string("parameter \"") + key + "\" is not an integer");
  return v.get<std::int64_t>();
}

Rational get_rational(const json& j, const char* key) {
  if (!j.contains(key)) fail(ErrorCode::InvalidArgument, std::string("missing parameter \"") + key + "\"");
  const auto& v = j.at(key);
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  fail(ErrorCode::InvalidArgument, std::string("parameter \"") + key + "\" must be an exact rational string");
}

json density_json(const Rational& r) { return {{"exact", to_string(r)}, {"value", fixed(to_double(r))}}; }

json checks_json(const std::vector<CheckResult>& checks) {
  json out = json::array();
  for (const auto& c : checks) out.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return out;
}

bool all_passed(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

}  // namespace

json analyze_report(const IntegerSetModel& set, const json& request) {
  std::int64_t scale = 1;
  for (const char* key : {"syndetic", "thick", "pw_syndetic", "gap_syndetic", "banach"}) {
    if (!request.contains(key) || !request.at(key).is_object()) continue;
    for (auto& [k, v] : request.at(key).items())
      if (v.is_number_integer()) scale = std::max(scale, v.get<std::int64_t>());
  }
  json report = {{"schema", kReportSchema}, {"command", "analyze"}, {"set", set.describe()}, {"parameters", request}};
  std::int64_t N;
  bool exact = false;
  if (request.contains("N")) {
    N = get_int(request, "N");
  } else {
    auto p = set.period();
    if (!p)
      fail(ErrorCode::InvalidArgument, "a window bound N is required for sets that are not periodic",
           {{"set", set.describe()}});
    N = *p * (2 + (2 * scale + *p - 1) / *p);
    exact = true;
  }
  if (N < 1) fail(ErrorCode::InvalidArgument, "N must be >= 1");
  report["N"] = N;
  report["exact"] = exact;
  SetWindow window(set, N);
  report["members_in_window"] = window.elements().size();

  json verdicts = json::array();
  if (request.contains("syndetic"))
    verdicts.push_back(syndetic_certificate(window, get_int(request.at("syndetic"), "g")).to_json());
  if (request.contains("thick"))
    verdicts.push_back(thick_certificate(window, get_int(request.at("thick"), "L")).to_json());
  if (request.contains("pw_syndetic")) {
    const auto& q = request.at("pw_syndetic");
    verdicts.push_back(piecewise_syndetic_certificate(window, get_int(q, "g"), get_int(q, "L")).to_json());
  }
  if (request.contains("gap_syndetic")) {
    const auto& q = request.at("gap_syndetic");
    std::optional<std::int64_t> spacing;
    if (q.contains("max_spacing")) spacing = get_int(q, "max_spacing");
    verdicts.push_back(gap_syndeticity_table(window, get_int(q, "n"), spacing).to_json());
  }
  report["verdicts"] = verdicts;

  if (request.contains("gaps") && request.at("gaps") != false) {
    auto gaps = gap_sequence(window);
    json g = {{"count", gaps.size()}};
    if (!gaps.empty()) {
      g["min"] = *std::min_element(gaps.begin(), gaps.end());
      g["max"] = *std::max_element(gaps.begin(), gaps.end());
    }
    const std::size_t shown = std::min<std::size_t>(gaps.size(), 1000);
    g["values"] = std::vector<std::int64_t>(gaps.begin(), gaps.begin() + static_cast<std::ptrdiff_t>(shown));
    g["truncated"] = shown < gaps.size();
    report["gaps"] = g;
  }
  if (request.contains("banach") && request.at("banach") != false) {
    const json& q = request.at("banach");
    BanachProfile prof;
    if (q.is_object() && q.contains("n_max")) {
      prof = banach_density_profile(window, get_int(q, "n_max"));
    } else {
      std::vector<std::int64_t> scales;
      for (std::int64_t n = 1; 2 * n <= N; n *= 2) scales.push_back(n);
      prof = banach_density_profile(window, scales);
    }
    json entries = json::array();
    for (const auto& e : prof.entries)
      entries.push_back({{"n", e.n}, {"max_count", e.max_count}, {"density", to_string(e.density())}});
    json b = {{"entries", entries}};
    b["exact_density"] = prof.exact ? density_json(*prof.exact) : json(nullptr);
    report["banach"] = b;
  }
  report["passed"] = report_passed(report);
  return report;
}

json count_report(const json& request) {
  const Rational delta = get_rational(request, "delta");
  const auto k = get_int(request, "k");
  if (k < 2 || k > 1'000'000) fail(ErrorCode::InvalidArgument, "k must lie in [2, 10^6]");
  if (!request.contains("m") || !request.at("m").is_array() || request.at("m").empty())
    fail(ErrorCode::InvalidArgument, "missing m list");
  std::vector<std::int64_t> ms = request.at("m").get<std::vector<std::int64_t>>();
  const bool oracle = request.value("oracle", false);
  if (oracle)
    for (auto m : ms)
      if (std::pow(static_cast<double>(k), static_cast<double>(m)) > static_cast<double>(kBruteForceCap))
        fail(ErrorCode::OutOfRange, "oracle refused: k^m exceeds 10^8 for m = " + std::to_string(m),
             {{"m", m}, {"k", k}});
  auto rows = growth_rate_profile(delta, static_cast<unsigned>(k), ms);
  json out_rows = json::array();
  bool agree = true;
  for (const auto& r : rows) {
    const auto b = sandwich_bounds(r.result.m, delta, static_cast<unsigned>(k));
    json row = {{"m", r.result.m},
                {"count", r.result.count.get_str()},
                {"log_rate", fixed(r.result.log_rate)},
                {"analytic_limit", fixed(r.result.analytic_limit)},
                {"inf_so_far", fixed(r.running_inf)},
                {"sup_so_far", fixed(r.running_sup)},
                {"sandwich_lower", b.lower.get_str()},
                {"sandwich_upper", b.upper.get_str()},
                {"sandwich_holds", b.lower <= r.result.count && r.result.count <= b.upper}};
    if (!row["sandwich_holds"].get<bool>()) agree = false;
    if (oracle) {
      auto o = brute_force_count(r.result.m, delta, static_cast<unsigned>(k));
      row["oracle_count"] = o.get_str();
      row["oracle_agrees"] = o == r.result.count;
      if (o != r.result.count) agree = false;
    }
    out_rows.push_back(std::move(row));
  }
  return {{"schema", kReportSchema},
          {"command", "count"},
          {"parameters", {{"m", ms}, {"delta", to_string(delta)}, {"k", k}, {"oracle", oracle}}},
          {"rows", out_rows},
          {"csv", growth_csv(rows)},
          {"passed", agree}};
}

json verify_f_report(const json& request) {
  const auto N = get_int(request, "N");
  if (N < 1 || static_cast<std::uint64_t>(N) > kMaxRecurrenceBound) fail(ErrorCode::InvalidArgument, "N must lie in [1, 10^18]");
  const auto depth = request.contains("depth") ? get_int(request, "depth") : 3;
  const auto n_min = request.contains("n_min") ? get_int(request, "n_min") : 1;
  const auto n_max = request.contains("n_max") ? get_int(request, "n_max") : 3;
  if (depth < 1 || n_min < 1 || n_max < n_min) fail(ErrorCode::InvalidArgument, "need depth >= 1 and 1 <= n_min <= n_max");
  const auto bound = static_cast<std::uint64_t>(N);
  FSetModel F = build_F(bound);
  std::vector<std::uint64_t> members = F.values();
  std::vector<std::uint64_t> injected;
  if (request.contains("inject")) injected = request.at("inject").get<std::vector<std::uint64_t>>();
  if (!injected.empty()) {
    members.insert(members.end(), injected.begin(), injected.end());
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
  }
  auto sum_free = verify_sum_free(members, bound);
  json shift = json::array();
  bool shift_ok = true;
  for (auto n = n_min; n <= n_max; ++n) {
    auto v = verify_shift_ip(F, static_cast<unsigned>(n), static_cast<unsigned>(depth), bound);
    shift_ok = shift_ok && v.holds;
    shift.push_back(v.to_json());
  }
  const std::uint64_t oracle_bound =
      request.contains("oracle_bound") ? static_cast<std::uint64_t>(get_int(request, "oracle_bound"))
                                       : std::min<std::uint64_t>(bound, 10'000'000);
  if (oracle_bound > bound) fail(ErrorCode::InvalidArgument, "oracle_bound exceeds N");
  json agreement = {{"bound", oracle_bound}, {"agrees", true}, {"first_mismatch", nullptr}};
  for (std::uint64_t x = 1; x <= oracle_bound; ++x) {
    if (F.contains(x) != digit_oracle_member(x)) {
      agreement["agrees"] = false;
      agreement["first_mismatch"] = x;
      break;
    }
  }
  json report = {{"schema", kReportSchema},
                 {"command", "verify-f"},
                 {"parameters", {{"N", N}, {"depth", depth}, {"n_min", n_min}, {"n_max", n_max}, {"inject", injected},
                                 {"oracle_bound", oracle_bound}}},
                 {"F", F.to_json()},
                 {"sum_free", sum_free.to_json()},
                 {"shift_ip", shift},
                 {"oracle_agreement", agreement}};
  report["passed"] = sum_free.sum_free && shift_ok && agreement["agrees"].get<bool>();
  return report;
}

json word_stats_report(const SymbolWord& w, const json& request) {
  const auto n_max = request.contains("n_max") ? get_int(request, "n_max") : 64;
  const bool full = request.value("full_length", false);
  if (n_max < 1) fail(ErrorCode::InvalidArgument, "n_max must be >= 1");
  auto prof = complexity_profile(w, static_cast<std::size_t>(n_max), full);
  json p = json::array(), h = json::array();
  for (std::size_t i = 0; i < prof.n_max(); ++i) {
    p.push_back(prof.p[i]);
    h.push_back(fixed(prof.h_est[i]));
  }
  json report = {{"schema", kReportSchema},
                 {"command", "word-stats"},
                 {"parameters", {{"n_max", n_max}, {"full_length", full}}},
                 {"alphabet", w.alphabet_size()},
                 {"length", w.size()},
                 {"n_max", prof.n_max()},
                 {"p", p},
                 {"h_est", h}};
  if (prof.n_max() > 0) {
    auto e = entropy_estimate(prof);
    report["entropy"] = {{"at_n_max", fixed(e.at_n_max)}, {"infimum", fixed(e.infimum)}, {"infimum_n", e.infimum_n}};
  }
  report["passed"] = true;
  return report;
}

namespace {

std::vector<CheckResult> restriction_check(const SymbolWord& x, const Coloring& f, std::int64_t upto) {
  for (const auto& [s, v] : f) {
    if (s > upto) break;
    if (x[static_cast<std::size_t>(s - 1)] != v)
      return {{"restriction_identity", false, "x(" + std::to_string(s) + ") != f(" + std::to_string(s) + ")"}};
  }
  return {{"restriction_identity", true, "checked through " + std::to_string(upto)}};
}

json profile_json(const SymbolWord& x, std::size_t n_max) {
  auto prof = complexity_profile(x, n_max);
  json p = json::array();
  for (auto v : prof.p) p.push_back(v);
  json out = {{"n_max", prof.n_max()}, {"p", p}};
  if (prof.n_max() > 0) out["h_est_at_n_max"] = fixed(prof.h_est.back());
  return out;
}

}  // namespace

ConstructionOutput construct_report(const json& problem_json, const json& options) {
  ProblemFile pf = parse_problem(problem_json);
  const InterpolationProblem& problem = pf.problem;
  json merged = pf.extra;
  for (auto& [k, v] : options.items()) merged[k] = v;
  const std::string kind = merged.value("kind", "");

  ConstructionOutput out;
  std::vector<CheckResult> checks;
  json report = {{"schema", kReportSchema}, {"command", "construct"}, {"kind", kind}, {"problem", problem_json}};
  report["seed"] = pf.seed ? json(*pf.seed) : json(nullptr);
  SetWindow window(problem.set, problem.bound);

  if (kind == "zero") {
    SymbolWord x = extend_zero(problem);
    auto r = restriction_check(x, problem.f, problem.bound);
    checks.insert(checks.end(), r.begin(), r.end());
    // Factor counts of the zero extension against the low-weight word counts
    // at the certified density of S at each scale.
    json control = json::array();
    for (std::int64_t m : {16, 32, 64}) {
      if (2 * m > problem.bound) continue;
      const std::int64_t count = max_window_count(window, m);
      const Rational eta(count, m);
      json row = {{"m", m}, {"eta", to_string(eta)}};
      if (eta > Rational(1, 2)) {
        row["applicable"] = false;
        control.push_back(row);
        continue;
      }
      const auto p = factor_count(x.symbols(), static_cast<std::size_t>(m));
      const auto bound = count_low_weight(m, eta, problem.k).count;
      row["applicable"] = true;
      row["p"] = p;
      row["bound"] = bound.get_str();
      const bool ok = mpz_class(std::to_string(p)) <= bound;
      row["holds"] = ok;
      checks.push_back({"entropy_control_m" + std::to_string(m), ok, "p(m) <= |S(m, eta, k)|"});
      control.push_back(row);
    }
    report["entropy_control"] = control;
    report["complexity"] = profile_json(x, 64);
    out.words.emplace_back("x_u.word", std::move(x));
  } else if (kind == "sturmian") {
    auto delta = problem.set.sturmian_delta();
    if (!delta) fail(ErrorCode::InvalidArgument, "kind sturmian needs a set of the form kind=sturmian cf=...");
    SymbolWord x = sturmian_interpolate(*delta, problem.f, problem.k, problem.bound);
    auto r = restriction_check(x, problem.f, problem.bound);
    checks.insert(checks.end(), r.begin(), r.end());
    std::string bad;
    const std::int64_t top = std::min<std::int64_t>(20, problem.bound / 2);
    for (std::int64_t m = 1; m <= top && bad.empty(); ++m) {
      const auto p = factor_count(x.symbols(), static_cast<std::size_t>(m));
      const std::int64_t ones = ceil_mul(*delta, m);
      const long double limit = static_cast<long double>(m + 1) * std::pow(static_cast<long double>(problem.k), ones);
      if (static_cast<long double>(p) > limit) bad = "p(" + std::to_string(m) + ") exceeds (m+1) k^ceil(m delta)";
    }
    checks.push_back({"factor_bound", bad.empty(), bad.empty() ? "m <= " + std::to_string(top) : bad});
    report["delta"] = to_string(*delta);
    report["complexity"] = profile_json(x, 64);
    out.words.emplace_back("x_u.word", std::move(x));
  } else if (kind == "mixing") {
    const auto L = merged.contains("cover_length") ? get_int(merged, "cover_length") : 4;
    if (L < 1) fail(ErrorCode::InvalidArgument, "cover_length must be >= 1");
    MixingResult res = mixing_extend(problem, static_cast<std::size_t>(L));
    auto r = restriction_check(res.sequence, problem.f, problem.bound);
    checks.insert(checks.end(), r.begin(), r.end());
    checks.push_back({"covers_target", res.cover_length >= static_cast<std::size_t>(L),
                      "cover length " + std::to_string(res.cover_length)});
    json placements = json::array();
    for (const auto& iv : res.placements) placements.push_back({iv.start, iv.length});
    report["cover_length"] = res.cover_length;
    report["universal_length"] = res.universal.size();
    report["placements"] = placements;
    out.words.emplace_back("x_u.word", std::move(res.sequence));
    out.words.emplace_back("y.word", std::move(res.universal));
  } else if (kind == "minimal" || kind == "ergodic") {
    LevelOptions opt;
    if (merged.contains("levels")) opt.levels = static_cast<unsigned>(get_int(merged, "levels"));
    if (merged.contains("sample_cap")) opt.sample_cap = static_cast<std::size_t>(get_int(merged, "sample_cap"));
    if (merged.contains("seed")) opt.sample_seed = static_cast<std::uint64_t>(get_int(merged, "seed"));
    ConstructionTrace trace = kind == "minimal" ? totally_minimal_construct(problem, opt)
                                                : strictly_ergodic_construct(problem, opt);
    checks = check_trace(trace, problem);
    out.trace = trace_summary(trace);
    out.trace["schema"] = kReportSchema;
    out.trace["options"] = {{"levels", opt.levels}, {"sample_cap", opt.sample_cap}, {"seed", opt.sample_seed}};
    for (const auto& lv : trace.levels) {
      out.trace["levels"][static_cast<std::size_t>(lv.level)]["anchor_file"] = "w_" + std::to_string(lv.level) + ".word";
    }
    const std::size_t prefix = std::min<std::size_t>(trace.result.size(), 10'000);
    report["complexity"] = profile_json(trace.result.slice(0, prefix), 64);
    report["coverage"] = trace.coverage;
    out.words.emplace_back("x_u.word", trace.result);
    for (const auto& lv : trace.levels) out.words.emplace_back("w_" + std::to_string(lv.level) + ".word", lv.anchor);
  } else {
    fail(ErrorCode::InvalidArgument, "construction kind must be zero, sturmian, mixing, minimal or ergodic");
  }
  if (out.trace.is_null()) out.trace = {{"schema", kReportSchema}, {"kind", kind}};
  report["options"] = options;
  report["checks"] = checks_json(checks);
  json files = json::array();
  for (const auto& [name, w] : out.words) files.push_back(name);
  report["outputs"] = files;
  out.passed = all_passed(checks);
  report["passed"] = out.passed;
  out.report = std::move(report);
  return out;
}

bool report_passed(const json& report) {
  if (report.contains("verdicts"))
    for (const auto& v : report.at("verdicts"))
      if (v.at("verdict") != "holds-at-scale") return false;
  if (report.contains("checks"))
    for (const auto& c : report.at("checks"))
      if (!c.at("passed").get<bool>()) return false;
  if (report.contains("passed") && report.at("passed").is_boolean() && report.contains("command") &&
      report.at("command") != "analyze")
    return report.at("passed").get<bool>();
  return true;
}

}  // namespace interp
