#include "interp/constructors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

#include "interp/error.hpp"

namespace interp {

namespace {

std::int64_t factorial(int n) {
  if (n > 20) fail(ErrorCode::OutOfRange, "factorial overflows 64 bits");
  std::int64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  __int128 p = static_cast<__int128>(a) * b;
  if (p > std::numeric_limits<std::int64_t>::max()) return std::numeric_limits<std::int64_t>::max();
  return static_cast<std::int64_t>(p);
}

SymbolWord repeat(const SymbolWord& w, std::size_t times) {
  std::vector<Symbol> out;
  out.reserve(w.size() * times);
  for (std::size_t i = 0; i < times; ++i) out.insert(out.end(), w.symbols().begin(), w.symbols().end());
  return SymbolWord(w.alphabet_size(), std::move(out));
}

void write_at(PartialWord& x, std::size_t pos, std::span<const Symbol> w) {
  std::copy(w.begin(), w.end(), x.begin() + static_cast<std::ptrdiff_t>(pos));
}

PartialWord initial_filling(const InterpolationProblem& p) {
  PartialWord x(static_cast<std::size_t>(p.bound), kUnfilled);
  for (const auto& [s, v] : p.f) x[static_cast<std::size_t>(s - 1)] = v;
  return x;
}

std::vector<SymbolWord> all_symbols(unsigned k) {
  std::vector<SymbolWord> out;
  for (unsigned a = 0; a < k; ++a) out.emplace_back(k, std::vector<Symbol>{static_cast<Symbol>(a)});
  return out;
}

std::vector<SymbolWord> all_pairs(unsigned k) {
  std::vector<SymbolWord> out;
  for (unsigned a = 0; a < k; ++a)
    for (unsigned b = 0; b < k; ++b)
      out.emplace_back(k, std::vector<Symbol>{static_cast<Symbol>(a), static_cast<Symbol>(b)});
  return out;
}

void check_leveled_problem(const InterpolationProblem& problem, const SetWindow& window,
                           const LevelOptions& options) {
  validate_problem(problem, window);
  if (problem.k < 2) fail(ErrorCode::InvalidArgument, "leveled constructions need k >= 2");
  if (options.levels < 1) fail(ErrorCode::InvalidArgument, "levels must be >= 1");
  if (options.levels > 8) fail(ErrorCode::InvalidArgument, "levels must be <= 8");
  if (options.sample_cap < 1) fail(ErrorCode::InvalidArgument, "sample cap must be >= 1");
}

/// Fills the unassigned top-level blocks with w_K and cuts x^(K) to whole blocks.
void finish_result(ConstructionTrace& trace) {
  const auto& top = trace.levels.back();
  const std::int64_t M = top.m;
  trace.coverage = trace.bound / M * M;
  PartialWord x(trace.filling.back().begin(),
                trace.filling.back().begin() + static_cast<std::ptrdiff_t>(trace.coverage));
  for (std::int64_t i = 0; i < trace.coverage; i += M)
    if (x[static_cast<std::size_t>(i)] == kUnfilled) write_at(x, static_cast<std::size_t>(i), top.anchor.symbols());
  if (std::find(x.begin(), x.end(), kUnfilled) != x.end())
    fail(ErrorCode::Internal, "unfilled position left inside the covered prefix");
  trace.result = SymbolWord(trace.alphabet, std::move(x));
}

}  // namespace

void validate_problem(const InterpolationProblem& problem, const SetWindow& window) {
  if (problem.k < 1 || problem.k > kMaxAlphabet)
    fail(ErrorCode::InvalidArgument, "alphabet size must lie in [1, " + std::to_string(kMaxAlphabet) + "]");
  if (problem.bound != window.bound()) fail(ErrorCode::InvalidArgument, "window bound differs from problem bound");
  for (std::int64_t s : window.elements()) {
    auto it = problem.f.find(s);
    if (it == problem.f.end()) fail(ErrorCode::Domain, "f is undefined at member " + std::to_string(s), {{"s", s}});
    if (it->second >= problem.k)
      fail(ErrorCode::Domain, "f(" + std::to_string(s) + ") is outside the alphabet", {{"s", s}});
  }
  if (problem.f.size() != window.elements().size()) {
    for (const auto& [s, v] : problem.f)
      if (!window.contains(s))
        fail(ErrorCode::Domain, "f is defined at " + std::to_string(s) + ", which is not a member of S in [1, N]",
             {{"s", s}});
  }
}

Coloring uniform_coloring(const SetWindow& window, unsigned k, std::uint64_t seed) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "k must be >= 1");
  std::mt19937_64 rng(seed);
  Coloring f;
  for (std::int64_t s : window.elements()) f[s] = static_cast<Symbol>(rng() % k);
  return f;
}

Coloring constant_coloring(const SetWindow& window, Symbol value) {
  Coloring f;
  for (std::int64_t s : window.elements()) f[s] = value;
  return f;
}

Coloring alternating_coloring(const SetWindow& window, unsigned k) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "k must be >= 1");
  Coloring f;
  std::size_t i = 0;
  for (std::int64_t s : window.elements()) f[s] = static_cast<Symbol>(i++ % k);
  return f;
}

SymbolWord extend_zero(const InterpolationProblem& problem) {
  SetWindow window(problem.set, problem.bound);
  validate_problem(problem, window);
  std::vector<Symbol> x(static_cast<std::size_t>(problem.bound), 0);
  for (const auto& [s, v] : problem.f) x[static_cast<std::size_t>(s - 1)] = v;
  return SymbolWord(problem.k, std::move(x));
}

SymbolWord sturmian_interpolate(const Rational& delta, const Coloring& f, unsigned k, std::int64_t bound) {
  if (delta <= 0 || delta > Rational(1, 2)) fail(ErrorCode::Domain, "delta must lie in (0, 1/2]");
  if (k < 1 || k > kMaxAlphabet) fail(ErrorCode::InvalidArgument, "alphabet size out of range");
  if (bound < 1) fail(ErrorCode::InvalidArgument, "bound must be >= 1");
  SymbolWord indicator = mechanical_word(delta, static_cast<std::size_t>(bound));
  std::vector<Symbol> x(static_cast<std::size_t>(bound), 0);
  for (const auto& [s, v] : f) {
    if (s < 1 || s > bound || indicator[static_cast<std::size_t>(s - 1)] == 0)
      fail(ErrorCode::Domain, "f is defined at " + std::to_string(s) + ", which is not in the floor set",
           {{"s", s}});
    if (v >= k) fail(ErrorCode::Domain, "f(" + std::to_string(s) + ") is outside the alphabet", {{"s", s}});
    x[static_cast<std::size_t>(s - 1)] = v;
  }
  for (std::size_t i = 0; i < indicator.size(); ++i)
    if (indicator[i] == 1 && !f.count(static_cast<std::int64_t>(i + 1)))
      fail(ErrorCode::Domain, "f is undefined at member " + std::to_string(i + 1),
           {{"s", static_cast<std::int64_t>(i + 1)}});
  return SymbolWord(k, std::move(x));
}

MixingResult mixing_extend(const InterpolationProblem& problem, std::size_t target_length) {
  if (target_length < 1) fail(ErrorCode::InvalidArgument, "target length must be >= 1");
  SetWindow window(problem.set, problem.bound);
  validate_problem(problem, window);
  MixingResult res;
  res.universal = universal_word(problem.k, target_length);
  const std::size_t y_len = res.universal.size();

  auto runs = empty_runs(window);
  std::vector<std::int64_t> cursor;
  for (const auto& r : runs) cursor.push_back(r.start);
  for (std::size_t n = 1; n <= y_len; ++n) {
    bool placed = false;
    for (std::size_t i = 0; i < runs.size() && !placed; ++i) {
      if (runs[i].start + runs[i].length - cursor[i] >= static_cast<std::int64_t>(n)) {
        res.placements.push_back({cursor[i], static_cast<std::int64_t>(n)});
        cursor[i] += static_cast<std::int64_t>(n);
        placed = true;
      }
    }
    if (!placed) {
      nlohmann::json details = {{"interval_length", n}, {"placed", n - 1}, {"bound", problem.bound}};
      if (!window.empty()) {
        auto gaps = gap_sequence(window);
        std::int64_t g = window.elements().front();
        for (auto d : gaps) g = std::max(g, d);
        details["certificate"] = syndetic_certificate(window, g).to_json();
      }
      fail(ErrorCode::ConstructionFailed,
           "no room for a gap interval of length " + std::to_string(n) + ": S has no free run that long in [1, " +
               std::to_string(problem.bound) + "]",
           details);
    }
  }

  std::vector<Symbol> x(static_cast<std::size_t>(problem.bound), 0);
  for (const auto& [s, v] : problem.f) x[static_cast<std::size_t>(s - 1)] = v;
  for (std::size_t n = 1; n <= res.placements.size(); ++n) {
    const auto& iv = res.placements[n - 1];
    std::copy_n(res.universal.symbols().begin(), n, x.begin() + (iv.start - 1));
  }
  res.sequence = SymbolWord(problem.k, std::move(x));

  double words = 1;
  for (std::size_t L = 1;; ++L) {
    words *= problem.k;
    if (words > static_cast<double>(res.sequence.size())) break;
    if (factor_count(res.sequence.symbols(), L) != static_cast<std::uint64_t>(words)) break;
    res.cover_length = L;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Totally minimal construction

namespace {

/// w^(k)_1 ... w^(k)_|T| w'^(k)_1 ... w'^(k)_|T'| v.
SymbolWord witness_block(const LevelData& lv) {
  std::vector<SymbolWord> parts(lv.samples);
  parts.insert(parts.end(), lv.primed_samples.begin(), lv.primed_samples.end());
  parts.push_back(lv.primed_anchor);
  return concat(parts);
}

struct Sampler {
  std::mt19937_64 rng;
  std::uint64_t below(std::uint64_t n) { return rng() % n; }
};

/// Random level-(k+1) member: aligned T_k blocks with R^{m_k} at a random
/// aligned offset; the primed variant starts with a T'_k element.
SymbolWord random_tm_member(const LevelData& lv, const SymbolWord& R, std::int64_t M, bool primed, Sampler& s) {
  const std::int64_t m = lv.m;
  const std::int64_t slots = (M / m) - (primed ? 1 : 0);
  const std::int64_t r_slots = static_cast<std::int64_t>(R.size());  // R^m spans |R| blocks of length m
  const std::int64_t offset = static_cast<std::int64_t>(s.below(static_cast<std::uint64_t>(slots - r_slots + 1)));
  std::vector<Symbol> out;
  out.reserve(static_cast<std::size_t>(M + 1));
  if (primed) {
    const auto& p = lv.primed_samples[s.below(lv.primed_samples.size())];
    out.insert(out.end(), p.symbols().begin(), p.symbols().end());
  }
  for (std::int64_t j = 0; j < slots;) {
    if (j == offset) {
      for (std::int64_t c = 0; c < m; ++c) out.insert(out.end(), R.symbols().begin(), R.symbols().end());
      j += r_slots;
      continue;
    }
    const auto& t = lv.samples[s.below(lv.samples.size())];
    out.insert(out.end(), t.symbols().begin(), t.symbols().end());
    ++j;
  }
  return SymbolWord(R.alphabet_size(), std::move(out));
}

std::vector<SymbolWord> sample_family(SymbolWord anchor, std::size_t target, std::int64_t modulus,
                                      const std::function<SymbolWord()>& draw) {
  std::vector<SymbolWord> out{anchor};
  std::set<SymbolWord> seen{std::move(anchor)};
  for (std::size_t attempt = 0; out.size() < target && attempt < 50 * target; ++attempt) {
    SymbolWord w = draw();
    if (seen.insert(w).second) out.push_back(std::move(w));
  }
  std::size_t keep = out.size() / static_cast<std::size_t>(modulus) * static_cast<std::size_t>(modulus);
  if (keep == 0) fail(ErrorCode::Internal, "could not draw enough distinct level words");
  out.resize(keep);
  return out;
}

}  // namespace

ConstructionTrace totally_minimal_construct(const InterpolationProblem& problem, const LevelOptions& options) {
  SetWindow window(problem.set, problem.bound);
  check_leveled_problem(problem, window, options);
  const unsigned k = problem.k;
  const std::int64_t N = problem.bound;
  const int K = static_cast<int>(options.levels);

  ConstructionTrace trace;
  trace.kind = ConstructionKind::TotallyMinimal;
  trace.alphabet = k;
  trace.bound = N;
  trace.sample_cap = options.sample_cap;
  trace.reserved.resize(static_cast<std::size_t>(K) + 1);

  LevelData l0;
  l0.level = 0;
  l0.m = 1;
  l0.anchor = SymbolWord(k, {0});
  l0.samples = all_symbols(k);
  l0.primed_samples = all_pairs(k);
  l0.primed_anchor = l0.primed_samples.front();
  trace.levels.push_back(std::move(l0));
  trace.filling.push_back(initial_filling(problem));

  const auto runs = empty_runs(window);
  Sampler sampler{std::mt19937_64(options.sample_seed)};

  for (int lvl = 0; lvl < K; ++lvl) {
    LevelData& cur = trace.levels.back();
    const std::int64_t m = cur.m;
    const SymbolWord R = witness_block(cur);
    const std::int64_t T = static_cast<std::int64_t>(cur.samples.size());
    const std::int64_t Tp = static_cast<std::int64_t>(cur.primed_samples.size());
    const std::int64_t G = checked_mul(checked_mul(4 * m, m), T + Tp);
    cur.required_gap = G;
    const std::int64_t j_len = checked_mul(m, static_cast<std::int64_t>(R.size()));

    auto refuse = [&](const std::string& why, std::optional<std::int64_t> window_bound) {
      nlohmann::json d = {{"level", lvl + 1}, {"required_gap", G}, {"bound", N}};
      d["window_bound"] = window_bound ? nlohmann::json(*window_bound) : nlohmann::json(nullptr);
      if (G <= N) d["certificate"] = gap_syndeticity_table(window, G, N).to_json();
      fail(ErrorCode::ConstructionFailed, "level " + std::to_string(lvl + 1) + ": " + why, d);
    };
    if (G > N) refuse("required gap length " + std::to_string(G) + " exceeds the window", std::nullopt);
    auto L = gap_window_bound(window, G);
    if (!L) refuse("S has no gap of length " + std::to_string(G) + " in the window", std::nullopt);
    const std::int64_t step = checked_mul(m, factorial(lvl + 1));
    const std::int64_t need = std::max(*L, j_len + m);
    const std::int64_t M = (need + step - 1) / step * step;
    if (M > N)
      refuse("block length " + std::to_string(M) + " needed for gaps of length " + std::to_string(G) +
                 " exceeds the window",
             *L);

    const std::size_t a = static_cast<std::size_t>((M - j_len) / m);
    const SymbolWord Rm = repeat(R, static_cast<std::size_t>(m));
    LevelData next;
    next.level = lvl + 1;
    next.m = M;
    {
      std::vector<SymbolWord> parts{repeat(cur.anchor, a), Rm};
      next.anchor = concat(parts);
      std::vector<SymbolWord> primed{cur.primed_anchor, repeat(cur.anchor, a - 1), Rm};
      next.primed_anchor = concat(primed);
    }

    if (lvl + 1 < K) {
      // The next level needs gaps of 4 M^2 (|T| + |T'|); refuse before sampling
      // when even that length cannot fit.
      const std::int64_t mod = factorial(lvl + 1);
      const std::int64_t target =
          std::max<std::int64_t>(mod, static_cast<std::int64_t>(options.sample_cap) / mod * mod);
      const std::int64_t next_gap = checked_mul(checked_mul(4 * M, M), 2 * target);
      if (next_gap > N) {
        nlohmann::json d = {{"level", lvl + 2}, {"required_gap", next_gap}, {"bound", N}};
        fail(ErrorCode::ConstructionFailed,
             "level " + std::to_string(lvl + 2) + ": required gap length " + std::to_string(next_gap) +
                 " exceeds the window",
             d);
      }
      next.samples = sample_family(next.anchor, static_cast<std::size_t>(target), mod,
                                   [&] { return random_tm_member(cur, R, M, false, sampler); });
      next.primed_samples = sample_family(next.primed_anchor, static_cast<std::size_t>(target), mod,
                                          [&] { return random_tm_member(cur, R, M, true, sampler); });
    } else {
      next.samples = {next.anchor};
      next.primed_samples = {next.primed_anchor};
    }
    next.samples_capped = true;
    next.primed_capped = true;
    next.primed_anchor = *std::min_element(next.primed_samples.begin(), next.primed_samples.end());

    // x^(lvl+1): every M-block meeting S gets R^m in its first long gap,
    // keeps the filled m-blocks of x^(lvl) and takes w_lvl elsewhere.
    PartialWord x = trace.filling.back();
    auto& reserved = trace.reserved[static_cast<std::size_t>(lvl + 1)];
    for (std::int64_t lo = 0; lo + M <= N; lo += M) {
      const std::int64_t hi = lo + M;
      if (window.count_in(lo + 1, hi + 1) == 0) continue;
      std::optional<std::int64_t> js;
      auto it = std::lower_bound(runs.begin(), runs.end(), lo, [](const EmptyRun& r, std::int64_t v) {
        return r.start - 1 + r.length <= v;
      });
      for (; it != runs.end() && it->start - 1 < hi && !js; ++it) {
        const std::int64_t c_lo = std::max(lo, it->start - 1);
        const std::int64_t c_hi = std::min(hi, it->start - 1 + it->length);
        if (c_hi - c_lo < G) continue;
        const std::int64_t start = (c_lo + m - 1) / m * m;
        if (start + j_len <= c_hi) js = start;
      }
      if (!js) fail(ErrorCode::Internal, "gap guarantee violated inside block at " + std::to_string(lo + 1));
      write_at(x, static_cast<std::size_t>(*js), Rm.symbols());
      reserved.push_back({*js + 1, j_len});
      for (std::int64_t j = lo; j < hi; j += m) {
        if (j + m > *js && j < *js + j_len) continue;
        if (x[static_cast<std::size_t>(j)] != kUnfilled) continue;
        write_at(x, static_cast<std::size_t>(j), cur.anchor.symbols());
      }
    }
    trace.filling.push_back(std::move(x));
    trace.levels.push_back(std::move(next));
  }
  finish_result(trace);
  return trace;
}

// ---------------------------------------------------------------------------
// Membership in the level families of a totally minimal trace

namespace {

constexpr std::uint64_t kHashMod = (1ULL << 61) - 1;
constexpr std::uint64_t kHashBase = 911'382'323;

std::uint64_t hmul(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  std::uint64_t r = static_cast<std::uint64_t>(p & kHashMod) + static_cast<std::uint64_t>(p >> 61);
  return r >= kHashMod ? r - kHashMod : r;
}

std::uint64_t hash_of(std::span<const Symbol> w) {
  std::uint64_t h = 0;
  for (Symbol c : w) h = (hmul(h, kHashBase) + c + 1) % kHashMod;
  return h;
}

using Mask = std::vector<std::uint64_t>;

bool subset_of(const Mask& a, const Mask& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

}  // namespace

struct LevelMembership::Impl {
  /// Item catalogue for checking words of level L: the T_{L-1} and T'_{L-1}
  /// elements, counted separately for each start residue mod (L-1)!.
  struct Catalogue {
    std::int64_t piece = 1;  // m_{L-1}
    std::int64_t modulus = 1;
    std::size_t per_residue = 0;
    std::size_t total = 0;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_hash;
    std::vector<const SymbolWord*> words;
  };

  const ConstructionTrace& trace;
  unsigned bits = 1;
  std::vector<Catalogue> catalogues;  // indexed by L >= 1
  std::vector<std::unordered_map<std::uint64_t, bool>> memo;
  std::vector<std::uint64_t> pow_base;

  explicit Impl(const ConstructionTrace& t) : trace(t) {
    if (t.kind != ConstructionKind::TotallyMinimal)
      fail(ErrorCode::InvalidArgument, "level membership applies to totally minimal traces");
    bits = std::max(1u, static_cast<unsigned>(std::bit_width(t.alphabet - 1)));
    const std::size_t levels = t.levels.size();
    catalogues.resize(levels);
    memo.resize(levels);
    for (std::size_t L = 1; L < levels; ++L) {
      const LevelData& lower = t.levels[L - 1];
      Catalogue& c = catalogues[L];
      c.piece = lower.m;
      c.modulus = factorial(static_cast<int>(L) - 1);
      for (const auto& w : lower.samples) c.words.push_back(&w);
      for (const auto& w : lower.primed_samples) c.words.push_back(&w);
      c.per_residue = c.words.size();
      c.total = c.per_residue * static_cast<std::size_t>(c.modulus);
      for (std::size_t i = 0; i < c.words.size(); ++i) c.by_hash[hash_of(c.words[i]->symbols())].push_back(i);
    }
  }

  bool packable(std::size_t len) const { return len * bits <= 62; }

  std::uint64_t pack(std::span<const Symbol> w) const {
    std::uint64_t key = 1;
    for (Symbol c : w) key = (key << bits) | c;
    return key;
  }

  bool accepts(std::span<const Symbol> w, int L) {
    if (L < 0 || L >= static_cast<int>(trace.levels.size()))
      fail(ErrorCode::OutOfRange, "level " + std::to_string(L) + " is not part of the trace");
    const auto m = static_cast<std::size_t>(trace.levels[static_cast<std::size_t>(L)].m);
    if (w.size() != m && w.size() != m + 1)
      fail(ErrorCode::OutOfRange, "word length " + std::to_string(w.size()) + " is neither m_" + std::to_string(L) +
                                      " nor m_" + std::to_string(L) + " + 1");
    for (Symbol c : w)
      if (c >= trace.alphabet) return false;
    if (L == 0) return true;
    if (packable(w.size())) {
      const std::uint64_t key = pack(w);
      auto& table = memo[static_cast<std::size_t>(L)];
      if (auto it = table.find(key); it != table.end()) return it->second;
      bool r = decide(w, L);
      table.emplace(key, r);
      return r;
    }
    return decide(w, L);
  }

  bool decide(std::span<const Symbol> w, int L) {
    const Catalogue& cat = catalogues[static_cast<std::size_t>(L)];
    const std::size_t n = w.size();
    const std::size_t a = static_cast<std::size_t>(cat.piece), b = a + 1;

    // Prefix hashes for O(1) substring lookup in the catalogue.
    if (pow_base.size() < b + 1) {
      pow_base.assign(b + 1, 1);
      for (std::size_t i = 1; i <= b; ++i) pow_base[i] = hmul(pow_base[i - 1], kHashBase);
    }
    std::vector<std::uint64_t> H(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) H[i + 1] = (hmul(H[i], kHashBase) + w[i] + 1) % kHashMod;
    auto sub_hash = [&](std::size_t p, std::size_t len) {
      return (H[p + len] + kHashMod - hmul(H[p], pow_base[len])) % kHashMod;
    };
    auto item = [&](std::size_t p, std::size_t len) -> std::optional<std::size_t> {
      auto it = cat.by_hash.find(sub_hash(p, len));
      if (it == cat.by_hash.end()) return std::nullopt;
      for (std::size_t idx : it->second) {
        const SymbolWord& t = *cat.words[idx];
        if (t.size() == len && std::equal(t.symbols().begin(), t.symbols().end(), w.begin() + static_cast<std::ptrdiff_t>(p)))
          return (p % static_cast<std::size_t>(cat.modulus)) * cat.per_residue + idx;
      }
      return std::nullopt;
    };

    // Piece validity, with packed sliding keys when pieces fit a machine word.
    const bool fast = L - 1 >= 1 && packable(b);
    std::vector<std::uint64_t> key_a, key_b;
    if (fast) {
      key_a.assign(n, 0);
      key_b.assign(n, 0);
      const std::uint64_t mask_a = (1ULL << (a * bits)) - 1, mask_b = (1ULL << (b * bits)) - 1;
      std::uint64_t reg = 0;
      for (std::size_t i = 0; i < n; ++i) {
        reg = (reg << bits) | w[i];
        if (i + 1 >= a) key_a[i + 1 - a] = (reg & mask_a) | (1ULL << (a * bits));
        if (i + 1 >= b) key_b[i + 1 - b] = (reg & mask_b) | (1ULL << (b * bits));
      }
    }
    auto valid = [&](std::size_t p, std::size_t len) -> bool {
      if (L - 1 == 0) return true;
      auto piece = w.subspan(p, len);
      if (!fast) return accepts(piece, L - 1);
      const std::uint64_t key = len == a ? key_a[p] : key_b[p];
      auto& table = memo[static_cast<std::size_t>(L - 1)];
      if (auto it = table.find(key); it != table.end()) return it->second;
      bool r = decide(piece, L - 1);
      table.emplace(key, r);
      return r;
    };

    // suffix[q]: w[q..n) splits into valid pieces.
    std::vector<char> suffix(n + 1, 0);
    suffix[n] = 1;
    for (std::size_t q = n; q-- > 0;) {
      suffix[q] = (q + a <= n && suffix[q + a] && valid(q, a)) || (q + b <= n && suffix[q + b] && valid(q, b));
    }
    if (!suffix[0]) return false;

    // Forward pass keeping, per position, the inclusion-maximal coverage sets.
    const std::size_t words = (cat.total + 63) / 64;
    auto full = [&](const Mask& m) {
      std::size_t c = 0;
      for (auto x : m) c += static_cast<std::size_t>(std::popcount(x));
      return c == cat.total;
    };
    std::vector<std::vector<Mask>> ring(b + 1);
    ring[0].push_back(Mask(words, 0));
    if (cat.total == 0) return true;
    for (std::size_t p = 0; p < n; ++p) {
      auto& here = ring[p % (b + 1)];
      if (here.empty()) continue;
      std::vector<Mask> states;
      states.swap(here);
      for (std::size_t len : {a, b}) {
        const std::size_t q = p + len;
        if (q > n || !suffix[q] || !valid(p, len)) continue;
        auto id = item(p, len);
        auto& there = ring[q % (b + 1)];
        for (const Mask& s : states) {
          Mask nm = s;
          if (id) nm[*id / 64] |= 1ULL << (*id % 64);
          if (full(nm)) return true;
          bool dominated = std::any_of(there.begin(), there.end(), [&](const Mask& o) { return subset_of(nm, o); });
          if (dominated) continue;
          there.erase(std::remove_if(there.begin(), there.end(), [&](const Mask& o) { return subset_of(o, nm); }),
                      there.end());
          there.push_back(std::move(nm));
        }
      }
    }
    return false;
  }
};

LevelMembership::LevelMembership(const ConstructionTrace& trace) : impl_(std::make_unique<Impl>(trace)) {}
LevelMembership::~LevelMembership() = default;

bool LevelMembership::accepts(std::span<const Symbol> w, int level) { return impl_->accepts(w, level); }

bool is_member_level(const SymbolWord& w, int level, const ConstructionTrace& trace) {
  LevelMembership lm(trace);
  return lm.accepts(w.symbols(), level);
}

// ---------------------------------------------------------------------------
// Strictly ergodic construction

namespace {

class ErgodicChecker {
 public:
  explicit ErgodicChecker(const std::vector<LevelData>& levels) : levels_(levels) {
    for (const auto& lv : levels) {
      std::map<std::vector<Symbol>, std::size_t> idx;
      for (std::size_t i = 0; i < lv.samples.size(); ++i)
        idx.emplace(std::vector<Symbol>(lv.samples[i].symbols().begin(), lv.samples[i].symbols().end()), i);
      index_.push_back(std::move(idx));
    }
  }

  bool member(std::span<const Symbol> w, int L) const {
    if (L == 0) return w.size() == 1;
    const auto& lv = levels_[static_cast<std::size_t>(L)];
    if (static_cast<std::int64_t>(w.size()) != lv.m) return false;
    const auto& lower = levels_[static_cast<std::size_t>(L - 1)];
    const auto sub = static_cast<std::size_t>(lower.m);
    const std::size_t r = w.size() / sub;
    const auto& idx = index_[static_cast<std::size_t>(L - 1)];
    std::vector<char> seen(lower.samples.size(), 0);
    std::size_t other = 0;
    for (std::size_t j = 0; j < r; ++j) {
      auto piece = w.subspan(j * sub, sub);
      if (!member(piece, L - 1)) return false;
      if (!std::equal(piece.begin(), piece.end(), lower.anchor.symbols().begin())) ++other;
      auto it = idx.find(std::vector<Symbol>(piece.begin(), piece.end()));
      if (it != idx.end()) seen[it->second] = 1;
    }
    if (other * static_cast<std::size_t>(L) > r) return false;
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
  }

 private:
  const std::vector<LevelData>& levels_;
  std::vector<std::map<std::vector<Symbol>, std::size_t>> index_;
};

}  // namespace

ConstructionTrace strictly_ergodic_construct(const InterpolationProblem& problem, const LevelOptions& options) {
  SetWindow window(problem.set, problem.bound);
  check_leveled_problem(problem, window, options);
  const unsigned k = problem.k;
  const std::int64_t N = problem.bound;
  const int K = static_cast<int>(options.levels);

  ConstructionTrace trace;
  trace.kind = ConstructionKind::StrictlyErgodic;
  trace.alphabet = k;
  trace.bound = N;
  trace.sample_cap = options.sample_cap;

  LevelData l0;
  l0.level = 0;
  l0.m = 1;
  l0.anchor = SymbolWord(k, {0});
  l0.samples = all_symbols(k);
  trace.levels.push_back(std::move(l0));
  trace.filling.push_back(initial_filling(problem));
  std::mt19937_64 rng(options.sample_seed);

  for (int lvl = 0; lvl < K; ++lvl) {
    LevelData& cur = trace.levels.back();
    const std::int64_t m = cur.m;
    const std::int64_t T = static_cast<std::int64_t>(cur.samples.size());
    const std::int64_t c = checked_mul(2 * lvl + 2, m);
    cur.density_threshold = Rational(1, c);

    std::int64_t M = checked_mul(c, T + 1);
    for (; M <= N; M += c)
      if (checked_mul(max_window_count(window, M), c) < M) break;
    if (M > N) {
      nlohmann::json d = {{"level", lvl + 1}, {"density_threshold", to_string(Rational(1, c))}, {"bound", N}};
      const std::int64_t probe = std::min(N, checked_mul(c, T + 1));
      d["window"] = probe;
      d["max_count"] = max_window_count(window, probe);
      fail(ErrorCode::ConstructionFailed,
           "level " + std::to_string(lvl + 1) + ": no block length in the window has every block with density below 1/" +
               std::to_string(c),
           d);
    }
    const std::int64_t r = M / m;

    LevelData next;
    next.level = lvl + 1;
    next.m = M;
    {
      std::vector<SymbolWord> parts{cur.anchor};
      parts.insert(parts.end(), cur.samples.begin(), cur.samples.end());
      parts.push_back(repeat(cur.anchor, static_cast<std::size_t>(r - 1 - T)));
      next.anchor = concat(parts);
    }

    if (lvl + 1 < K) {
      std::vector<LevelData> upto(trace.levels.begin(), trace.levels.end());
      upto.push_back(next);
      ErgodicChecker checker(upto);
      const double space = std::pow(static_cast<double>(k), static_cast<double>(M));
      if (space <= static_cast<double>(1 << 20)) {
        std::vector<SymbolWord> members;
        std::vector<Symbol> w(static_cast<std::size_t>(M), 0);
        while (true) {
          if (checker.member(w, lvl + 1)) members.emplace_back(k, w);
          std::size_t i = w.size();
          while (i > 0 && w[i - 1] == k - 1) w[--i] = 0;
          if (i == 0) break;
          ++w[i - 1];
        }
        std::vector<SymbolWord> chosen{next.anchor};
        std::vector<SymbolWord> rest;
        for (auto& x : members)
          if (x != next.anchor) rest.push_back(std::move(x));
        if (rest.size() + 1 <= options.sample_cap) {
          chosen.insert(chosen.end(), rest.begin(), rest.end());
          next.samples_capped = false;
        } else {
          std::shuffle(rest.begin(), rest.end(), rng);
          rest.resize(options.sample_cap - 1);
          std::sort(rest.begin(), rest.end());
          chosen.insert(chosen.end(), rest.begin(), rest.end());
          next.samples_capped = true;
        }
        next.samples = std::move(chosen);
      } else {
        std::vector<SymbolWord> out{next.anchor};
        std::set<SymbolWord> seen{next.anchor};
        const std::int64_t extra_cap = r / (lvl + 1) - T;
        for (std::size_t attempt = 0; out.size() < options.sample_cap && attempt < 50 * options.sample_cap; ++attempt) {
          std::vector<std::int64_t> slots(static_cast<std::size_t>(r));
          std::iota(slots.begin(), slots.end(), 0);
          std::shuffle(slots.begin(), slots.end(), rng);
          std::vector<const SymbolWord*> fill(static_cast<std::size_t>(r), &cur.anchor);
          for (std::int64_t i = 0; i < T; ++i) fill[static_cast<std::size_t>(slots[i])] = &cur.samples[i];
          const std::int64_t extra = extra_cap > 0 ? static_cast<std::int64_t>(rng() % (extra_cap + 1)) : 0;
          for (std::int64_t i = 0; i < extra; ++i)
            fill[static_cast<std::size_t>(slots[T + i])] = &cur.samples[rng() % cur.samples.size()];
          std::vector<SymbolWord> parts;
          for (auto* p : fill) parts.push_back(*p);
          SymbolWord cand = concat(parts);
          if (seen.insert(cand).second) out.push_back(std::move(cand));
        }
        next.samples = std::move(out);
        next.samples_capped = true;
      }
    } else {
      next.samples = {next.anchor};
      next.samples_capped = true;
    }

    // x^(lvl+1): per M-block meeting S, the first ceil(r lvl/(lvl+1)) free
    // subblocks take w, the next |T| take T in order, the rest take w.
    PartialWord x = trace.filling.back();
    const std::int64_t lead = (r * lvl + lvl) / (lvl + 1);
    for (std::int64_t lo = 0; lo + M <= N; lo += M) {
      if (window.count_in(lo + 1, lo + M + 1) == 0) continue;
      std::vector<std::int64_t> free;
      for (std::int64_t j = lo; j < lo + M; j += m)
        if (x[static_cast<std::size_t>(j)] == kUnfilled) free.push_back(j);
      if (static_cast<std::int64_t>(free.size()) < lead + T)
        fail(ErrorCode::Internal, "density guarantee violated inside block at " + std::to_string(lo + 1));
      for (std::size_t i = 0; i < free.size(); ++i) {
        const auto ii = static_cast<std::int64_t>(i);
        const SymbolWord& w = (ii >= lead && ii < lead + T) ? cur.samples[static_cast<std::size_t>(ii - lead)] : cur.anchor;
        write_at(x, static_cast<std::size_t>(free[i]), w.symbols());
      }
    }
    trace.filling.push_back(std::move(x));
    trace.levels.push_back(std::move(next));
  }
  finish_result(trace);
  return trace;
}

bool is_ergodic_member(std::span<const Symbol> w, int level, const ConstructionTrace& trace) {
  if (trace.kind != ConstructionKind::StrictlyErgodic)
    fail(ErrorCode::InvalidArgument, "ergodic membership applies to strictly ergodic traces");
  if (level < 0 || level >= static_cast<int>(trace.levels.size()))
    fail(ErrorCode::OutOfRange, "level " + std::to_string(level) + " is not part of the trace");
  if (static_cast<std::int64_t>(w.size()) != trace.levels[static_cast<std::size_t>(level)].m)
    fail(ErrorCode::OutOfRange, "word length differs from m_" + std::to_string(level));
  for (Symbol c : w)
    if (c >= trace.alphabet) return false;
  return ErgodicChecker(trace.levels).member(w, level);
}

// ---------------------------------------------------------------------------
// Trace verification

std::vector<CheckResult> check_trace(const ConstructionTrace& trace, const InterpolationProblem& problem) {
  std::vector<CheckResult> out;
  auto add = [&](std::string name, bool ok, std::string detail = {}) {
    out.push_back({std::move(name), ok, std::move(detail)});
  };
  const auto& lv = trace.levels;
  const bool tm = trace.kind == ConstructionKind::TotallyMinimal;

  {
    std::string bad;
    for (std::size_t i = 0; i + 1 < lv.size() && bad.empty(); ++i)
      if (!lv[i + 1].anchor.has_prefix(lv[i].anchor)) bad = "w_" + std::to_string(i) + " is not a prefix of w_" + std::to_string(i + 1);
    add("prefix_chain", bad.empty(), bad);
  }
  {
    std::string bad;
    for (std::size_t i = 0; i < lv.size() && bad.empty(); ++i) {
      if (static_cast<std::int64_t>(lv[i].anchor.size()) != lv[i].m) bad = "|w_" + std::to_string(i) + "| != m";
      if (i + 1 < lv.size() && lv[i + 1].m % lv[i].m != 0) bad = "m_" + std::to_string(i) + " does not divide the next";
      if (tm && lv[i].m % factorial(static_cast<int>(i)) != 0) bad = std::to_string(i) + "! does not divide m_" + std::to_string(i);
      if (!tm && i + 1 < lv.size() && lv[i + 1].m % ((2 * static_cast<std::int64_t>(i) + 2) * lv[i].m) != 0)
        bad = "(2k+2) m_k does not divide m_" + std::to_string(i + 1);
    }
    add("divisibility", bad.empty(), bad);
  }
  {
    std::string bad;
    for (std::size_t i = 0; i + 1 < trace.filling.size() && bad.empty(); ++i) {
      const auto& a = trace.filling[i];
      const auto& b = trace.filling[i + 1];
      for (std::size_t p = 0; p < a.size(); ++p)
        if (a[p] != kUnfilled && a[p] != b[p]) {
          bad = "x^(" + std::to_string(i + 1) + ") changes position " + std::to_string(p + 1);
          break;
        }
    }
    if (bad.empty() && !trace.filling.empty()) {
      const auto& top = trace.filling.back();
      for (std::int64_t p = 0; p < trace.coverage; ++p)
        if (top[static_cast<std::size_t>(p)] != kUnfilled && top[static_cast<std::size_t>(p)] != trace.result[static_cast<std::size_t>(p)]) {
          bad = "result differs from x^(K) at " + std::to_string(p + 1);
          break;
        }
    }
    add("monotone_filling", bad.empty(), bad);
  }
  add("complete_prefix",
      !lv.empty() && static_cast<std::int64_t>(trace.result.size()) == trace.coverage && trace.coverage >= lv.back().m,
      "coverage " + std::to_string(trace.coverage));
  {
    std::string bad;
    for (const auto& [s, v] : problem.f) {
      if (s > trace.coverage) break;
      if (trace.result[static_cast<std::size_t>(s - 1)] != v) {
        bad = "x_u(" + std::to_string(s) + ") != f(" + std::to_string(s) + ")";
        break;
      }
    }
    add("restriction_identity", bad.empty(), bad);
  }

  if (tm) {
    LevelMembership lm(trace);
    std::string bad;
    for (std::size_t L = 1; L < lv.size() && bad.empty(); ++L) {
      if (!lm.accepts(lv[L].anchor.symbols(), static_cast<int>(L))) bad = "w_" + std::to_string(L);
      else if (!lm.accepts(lv[L].primed_anchor.symbols(), static_cast<int>(L))) bad = "v_" + std::to_string(L);
    }
    add("anchor_membership", bad.empty(), bad.empty() ? "" : bad + " rejected");
    bad.clear();
    for (std::size_t L = 1; L < lv.size() && bad.empty(); ++L) {
      for (std::size_t i = 0; i < lv[L].samples.size() && bad.empty(); ++i)
        if (!lm.accepts(lv[L].samples[i].symbols(), static_cast<int>(L))) bad = "T_" + std::to_string(L) + "[" + std::to_string(i) + "]";
      for (std::size_t i = 0; i < lv[L].primed_samples.size() && bad.empty(); ++i)
        if (!lm.accepts(lv[L].primed_samples[i].symbols(), static_cast<int>(L)))
          bad = "T'_" + std::to_string(L) + "[" + std::to_string(i) + "]";
    }
    add("sample_membership", bad.empty(), bad.empty() ? "" : bad + " rejected");
    bad.clear();
    std::size_t checked = 0;
    for (std::size_t L = 1; L < lv.size() && bad.empty(); ++L) {
      const auto m = static_cast<std::size_t>(lv[L].m);
      const bool top = L + 1 == lv.size();
      const std::size_t limit = top ? static_cast<std::size_t>(trace.coverage) : trace.filling[L].size() / m * m;
      for (std::size_t p = 0; p + m <= limit && bad.empty(); p += m) {
        std::span<const Symbol> block;
        if (top) block = trace.result.symbols().subspan(p, m);
        else if (trace.filling[L][p] != kUnfilled) block = std::span<const Symbol>(trace.filling[L]).subspan(p, m);
        else continue;
        ++checked;
        if (!lm.accepts(block, static_cast<int>(L)))
          bad = "level-" + std::to_string(L) + " block at " + std::to_string(p + 1) + " rejected";
      }
    }
    add("block_membership", bad.empty(), bad.empty() ? std::to_string(checked) + " blocks" : bad);
  } else {
    ErgodicChecker ec(trace.levels);
    std::string bad;
    for (std::size_t L = 1; L < lv.size() && bad.empty(); ++L)
      if (!ec.member(lv[L].anchor.symbols(), static_cast<int>(L))) bad = "w_" + std::to_string(L) + " rejected";
    add("anchor_membership", bad.empty(), bad);
    bad.clear();
    for (std::size_t L = 1; L < lv.size() && bad.empty(); ++L)
      for (std::size_t i = 0; i < lv[L].samples.size() && bad.empty(); ++i)
        if (!ec.member(lv[L].samples[i].symbols(), static_cast<int>(L)))
          bad = "T_" + std::to_string(L) + "[" + std::to_string(i) + "] rejected";
    add("sample_membership", bad.empty(), bad);
    bad.clear();
    const auto M = static_cast<std::size_t>(lv.back().m);
    std::size_t checked = 0;
    for (std::size_t p = 0; p + M <= static_cast<std::size_t>(trace.coverage) && bad.empty(); p += M, ++checked)
      if (!ec.member(trace.result.symbols().subspan(p, M), trace.top_level()))
        bad = "top block at " + std::to_string(p + 1) + " rejected";
    add("block_membership", bad.empty(), bad.empty() ? std::to_string(checked) + " blocks" : bad);
  }
  return out;
}

nlohmann::json trace_summary(const ConstructionTrace& trace) {
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& lv : trace.levels) {
    nlohmann::json j = {{"level", lv.level},
                        {"m", lv.m},
                        {"samples", lv.samples.size()},
                        {"samples_capped", lv.samples_capped}};
    if (trace.kind == ConstructionKind::TotallyMinimal) {
      j["primed_samples"] = lv.primed_samples.size();
      j["primed_capped"] = lv.primed_capped;
      j["required_gap"] = lv.required_gap;
    } else {
      j["density_threshold"] = lv.level < trace.top_level() ? nlohmann::json(to_string(lv.density_threshold)) : nlohmann::json(nullptr);
    }
    levels.push_back(std::move(j));
  }
  nlohmann::json reserved = nlohmann::json::array();
  for (const auto& lvl : trace.reserved) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& iv : lvl) r.push_back({iv.start, iv.length});
    reserved.push_back(std::move(r));
  }
  return {{"kind", trace.kind == ConstructionKind::TotallyMinimal ? "totally-minimal" : "strictly-ergodic"},
          {"alphabet", trace.alphabet},
          {"bound", trace.bound},
          {"sample_cap", trace.sample_cap},
          {"coverage", trace.coverage},
          {"levels", std::move(levels)},
          {"reserved", std::move(reserved)}};
}

// ---------------------------------------------------------------------------
// Adversarial coloring witnesses

bool PartitionWitness::covering_holds() const {
  return std::all_of(uncovered.begin(), uncovered.end(), [](const auto& u) { return !u.has_value(); });
}

PartitionWitness syndetic_partition_witness(const SetWindow& window, std::int64_t g, std::int64_t h) {
  if (g < 1) fail(ErrorCode::InvalidArgument, "g must be >= 1");
  if (h <= g) fail(ErrorCode::InvalidArgument, "h must exceed g");
  if (checked_mul(h, h) >= window.bound()) fail(ErrorCode::InvalidArgument, "h^2 must be below the window bound");
  auto cert = syndetic_certificate(window, g);
  if (!cert.holds())
    fail(ErrorCode::Precondition, "S is not syndetic with gap bound " + std::to_string(g) + " in the window",
         {{"certificate", cert.to_json()}});
  PartitionWitness pw;
  pw.g = g;
  pw.h = h;
  pw.bound = window.bound();
  const std::int64_t h2 = h * h;
  pw.pieces.resize(static_cast<std::size_t>(h));
  for (std::int64_t s : window.elements()) {
    const auto i = static_cast<std::size_t>((s % h2) / h);
    pw.pieces[i].push_back(s);
    pw.coloring[s] = static_cast<Symbol>(i);
  }
  std::size_t total = 0;
  for (const auto& p : pw.pieces) {
    total += p.size();
    if (p.empty()) pw.all_nonempty = false;
  }
  pw.disjoint = total == window.elements().size();
  for (std::int64_t i = 0; i < h; ++i) {
    const auto& piece = pw.pieces[static_cast<std::size_t>(i)];
    std::optional<std::int64_t> miss;
    for (std::int64_t t = i * h; t <= window.bound() - h2 && !miss; t += h2) {
      if (t < 1) continue;
      bool hit = false;
      for (std::int64_t d = 0; d < g && !hit; ++d) hit = std::binary_search(piece.begin(), piece.end(), t + d);
      if (!hit) miss = t;
    }
    pw.uncovered.push_back(miss);
  }
  return pw;
}

Coloring density_coloring_witness(const SetWindow& window, std::span<const Interval> intervals, unsigned k) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "k must be >= 1");
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (intervals[i].length < 1) fail(ErrorCode::InvalidArgument, "intervals must be nonempty");
    if (i > 0 && intervals[i].start < intervals[i - 1].end())
      fail(ErrorCode::InvalidArgument, "intervals must be disjoint and ascending");
  }
  Coloring f;
  for (std::int64_t s : window.elements()) {
    auto it = std::upper_bound(intervals.begin(), intervals.end(), s,
                               [](std::int64_t v, const Interval& iv) { return v < iv.start; });
    Symbol value = 0;
    if (it != intervals.begin()) {
      --it;
      if (s < it->end()) value = static_cast<Symbol>(static_cast<std::size_t>(it - intervals.begin() + 1) % k);
    }
    f[s] = value;
  }
  return f;
}

}  // namespace interp
