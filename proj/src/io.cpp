#include "interp/io.hpp"

#include <fstream>
#include <sstream>

#include "interp/error.hpp"

namespace interp {

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open " + path.string(), {{"path", path.string()}});
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_set_file(const std::vector<std::int64_t>& elements) {
  std::string out;
  for (auto v : elements) out += std::to_string(v) + "\n";
  return out;
}

std::vector<std::int64_t> parse_set_file(std::string_view text) {
  std::vector<std::int64_t> out;
  std::size_t line_no = 0, pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    std::int64_t v = 0;
    try {
      auto parsed = parse_int_list(line);
      if (parsed.size() != 1) throw std::invalid_argument("one integer per line");
      v = parsed[0];
    } catch (const std::exception&) {
      fail(ErrorCode::InvalidArgument, "set file line " + std::to_string(line_no) + ": not an integer");
    }
    if (v < 1) fail(ErrorCode::InvalidArgument, "set file line " + std::to_string(line_no) + ": members must be >= 1");
    if (!out.empty() && v <= out.back())
      fail(ErrorCode::InvalidArgument, "set file line " + std::to_string(line_no) + ": values must ascend strictly");
    out.push_back(v);
  }
  return out;
}

std::vector<std::int64_t> read_set_file(const std::filesystem::path& path) {
  return parse_set_file(read_text_file(path));
}

std::string format_word_file(const SymbolWord& w) {
  return "k=" + std::to_string(w.alphabet_size()) + "\n" + w.to_string() + "\n";
}

SymbolWord parse_word_file(std::string_view text) {
  std::size_t nl = text.find('\n');
  std::string_view head = text.substr(0, nl);
  if (head.substr(0, 2) != "k=") fail(ErrorCode::InvalidArgument, "word file must start with k=<alphabet>");
  auto kv = parse_int_list(head.substr(2));
  if (kv.size() != 1 || kv[0] < 1 || kv[0] > static_cast<std::int64_t>(kMaxAlphabet))
    fail(ErrorCode::InvalidArgument, "word file has an invalid alphabet size");
  const auto k = static_cast<unsigned>(kv[0]);
  std::string_view body = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
  while (!body.empty() && (body.back() == '\n' || body.back() == '\r')) body.remove_suffix(1);
  std::vector<Symbol> symbols;
  if (k <= 10) {
    symbols.reserve(body.size());
    for (char c : body) {
      if (c < '0' || c > '9') fail(ErrorCode::InvalidArgument, "word file contains a non-digit symbol");
      symbols.push_back(static_cast<Symbol>(c - '0'));
    }
  } else if (!body.empty()) {
    for (auto v : parse_int_list(body)) {
      if (v < 0 || v >= static_cast<std::int64_t>(k)) fail(ErrorCode::InvalidArgument, "symbol outside alphabet");
      symbols.push_back(static_cast<Symbol>(v));
    }
  }
  return SymbolWord(k, std::move(symbols));
}

SymbolWord read_word_file(const std::filesystem::path& path) { return parse_word_file(read_text_file(path)); }

ProblemFile parse_problem(const nlohmann::json& j) {
  auto need = [&](const char* key) -> const nlohmann::json& {
    if (!j.contains(key)) fail(ErrorCode::InvalidArgument, std::string("problem file lacks \"") + key + "\"");
    return j.at(key);
  };
  if (!need("set_spec").is_string()) fail(ErrorCode::InvalidArgument, "set_spec must be a string");
  ProblemFile pf{InterpolationProblem{IntegerSetModel::parse(j.at("set_spec").get<std::string>()), 2, 0, {}},
                 std::nullopt, nlohmann::json::object()};
  try {
    const auto k = need("k").get<std::int64_t>();
    if (k < 1 || k > static_cast<std::int64_t>(kMaxAlphabet)) fail(ErrorCode::InvalidArgument, "k out of range");
    pf.problem.k = static_cast<unsigned>(k);
    pf.problem.bound = need("N").get<std::int64_t>();
    if (pf.problem.bound < 1) fail(ErrorCode::InvalidArgument, "N must be >= 1");
    const auto& f = need("f");
    SetWindow window(pf.problem.set, pf.problem.bound);
    if (f.contains("pairs")) {
      for (const auto& p : f.at("pairs")) {
        const auto s = p.at(0).get<std::int64_t>();
        const auto v = p.at(1).get<std::int64_t>();
        if (v < 0 || v >= k) fail(ErrorCode::Domain, "f value outside the alphabet at " + std::to_string(s));
        if (!pf.problem.f.emplace(s, static_cast<Symbol>(v)).second)
          fail(ErrorCode::InvalidArgument, "f assigns " + std::to_string(s) + " twice");
      }
    } else {
      const std::string dist = f.value("distribution", "");
      if (dist == "uniform") {
        if (!f.contains("seed")) fail(ErrorCode::InvalidArgument, "uniform f needs a seed");
        pf.seed = f.at("seed").get<std::uint64_t>();
        pf.problem.f = uniform_coloring(window, pf.problem.k, *pf.seed);
      } else if (dist == "constant") {
        const auto v = f.value("value", 0);
        if (v < 0 || v >= k) fail(ErrorCode::Domain, "constant f value outside the alphabet");
        pf.problem.f = constant_coloring(window, static_cast<Symbol>(v));
      } else if (dist == "alternating") {
        pf.problem.f = alternating_coloring(window, pf.problem.k);
      } else {
        fail(ErrorCode::InvalidArgument, "f needs \"pairs\" or a distribution of uniform, constant or alternating");
      }
    }
    validate_problem(pf.problem, window);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidArgument, std::string("malformed problem file: ") + e.what());
  }
  for (const char* key : {"levels", "sample_cap", "cover_length"})
    if (j.contains(key)) pf.extra[key] = j.at(key);
  return pf;
}

}  // namespace interp
