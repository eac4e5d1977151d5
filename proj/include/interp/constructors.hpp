#pragma once

// Interpolating sequences for a coloring f of S: zero extension, Sturmian
// extension, mixing extension, the leveled totally minimal and strictly
// ergodic constructions, and two adversarial coloring witnesses.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "interp/intsets.hpp"
#include "interp/words.hpp"

namespace interp {

/// f : S ∩ [1, N] -> {0..k-1}.
using Coloring = std::map<std::int64_t, Symbol>;

struct InterpolationProblem {
  IntegerSetModel set;
  unsigned k = 2;
  std::int64_t bound = 0;
  Coloring f;
};

/// Throws Domain if f is not defined exactly on S ∩ [1, N] or a value is >= k.
void validate_problem(const InterpolationProblem& problem, const SetWindow& window);

Coloring uniform_coloring(const SetWindow& window, unsigned k, std::uint64_t seed);
Coloring constant_coloring(const SetWindow& window, Symbol value);
/// f(s_i) = i mod k along the members s_0 < s_1 < ...
Coloring alternating_coloring(const SetWindow& window, unsigned k);

/// [start, start + length) in 1-based positions.
struct Interval {
  std::int64_t start = 0;
  std::int64_t length = 0;
  std::int64_t end() const { return start + length; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// x(s) = f(s) on S and 0 elsewhere, on [1, N].
SymbolWord extend_zero(const InterpolationProblem& problem);

/// Same extension for the floor set S = { floor(n / delta) }; f must be
/// defined only on members of S (Domain error otherwise).
SymbolWord sturmian_interpolate(const Rational& delta, const Coloring& f, unsigned k,
                                std::int64_t bound);

struct MixingResult {
  SymbolWord sequence;
  SymbolWord universal;
  /// placements[n-1] hosts the length-n prefix of `universal`.
  std::vector<Interval> placements;
  /// Largest L such that every word of length L occurs in `sequence`.
  std::size_t cover_length = 0;
};

/// Fills gap intervals I_1, I_2, ..., I_|y| of S (first fit, ascending) with
/// the prefixes of y = universal_word(k, target_length); zero elsewhere off S.
/// Throws ConstructionFailed, carrying a syndetic certificate, when the gaps
/// of S cannot host the intervals.
MixingResult mixing_extend(const InterpolationProblem& problem, std::size_t target_length);

inline constexpr Symbol kUnfilled = 0xFFFF;
using PartialWord = std::vector<Symbol>;

enum class ConstructionKind { TotallyMinimal, StrictlyErgodic };

struct LevelData {
  int level = 0;
  std::int64_t m = 1;
  /// w_k.
  SymbolWord anchor;
  /// T_k: anchor family plus a deterministic sample of level-k words.
  std::vector<SymbolWord> samples;
  bool samples_capped = false;
  /// Totally minimal only: T'_k (length m_k + 1) and v, its least element.
  std::vector<SymbolWord> primed_samples;
  bool primed_capped = false;
  SymbolWord primed_anchor;
  /// Totally minimal: gap length 4 m_k^2 (|T_k| + |T'_k|) demanded of m_{k+1}.
  std::int64_t required_gap = 0;
  /// Strictly ergodic: density bound 1 / ((2k+2) m_k) demanded of m_{k+1}.
  Rational density_threshold{0};
};

struct ConstructionTrace {
  ConstructionKind kind = ConstructionKind::TotallyMinimal;
  unsigned alphabet = 2;
  std::int64_t bound = 0;
  std::size_t sample_cap = 0;
  std::vector<LevelData> levels;
  /// x^(0), ..., x^(K) on [1, N]; kUnfilled marks unassigned positions.
  std::vector<PartialWord> filling;
  /// Totally minimal: reserved[k] lists the intervals J written with the
  /// repeated witness string while building x^(k).
  std::vector<std::vector<Interval>> reserved;
  /// x_u on [1, coverage]; top-level blocks left unassigned hold w_K.
  SymbolWord result;
  std::int64_t coverage = 0;

  int top_level() const { return static_cast<int>(levels.size()) - 1; }
};

struct LevelOptions {
  unsigned levels = 3;
  std::size_t sample_cap = 64;
  std::uint64_t sample_seed = 0x5eed;
};

/// Requires S to have the gap structure of a non-piecewise-syndetic set at
/// every level; throws ConstructionFailed naming the level and gap length.
ConstructionTrace totally_minimal_construct(const InterpolationProblem& problem,
                                            const LevelOptions& options);

/// Requires the per-level density bound; throws ConstructionFailed otherwise.
ConstructionTrace strictly_ergodic_construct(const InterpolationProblem& problem,
                                             const LevelOptions& options);

/// Decides membership in the level-k word families of a totally minimal
/// trace by dynamic programming over split points. Results for short pieces
/// are memoized, so reuse one instance for many queries.
class LevelMembership {
 public:
  explicit LevelMembership(const ConstructionTrace& trace);
  ~LevelMembership();
  LevelMembership(const LevelMembership&) = delete;
  LevelMembership& operator=(const LevelMembership&) = delete;

  /// |w| must be m_level or m_level + 1 (OutOfRange otherwise).
  bool accepts(std::span<const Symbol> w, int level);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

bool is_member_level(const SymbolWord& w, int level, const ConstructionTrace& trace);

/// Block condition of a strictly ergodic trace: |w| = m_level, every aligned
/// m_{level-1} subblock is itself a member, all but a 1/level fraction are
/// w_{level-1}, and every element of T_{level-1} occurs.
bool is_ergodic_member(std::span<const Symbol> w, int level, const ConstructionTrace& trace);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Structural verification of a finished trace: prefix chain, divisibility,
/// monotone filling, completeness, restriction identity and membership.
std::vector<CheckResult> check_trace(const ConstructionTrace& trace,
                                     const InterpolationProblem& problem);

nlohmann::json trace_summary(const ConstructionTrace& trace);

struct PartitionWitness {
  std::int64_t g = 0;
  std::int64_t h = 0;
  std::int64_t bound = 0;
  /// pieces[i] = S ∩ (h^2 N_0 + [ih, (i+1)h)) within the window.
  std::vector<std::vector<std::int64_t>> pieces;
  Coloring coloring;
  bool disjoint = true;
  bool all_nonempty = true;
  /// First target t = h^2 j + ih in [1, N - h^2] not covered by
  /// S_i ∪ (S_i - 1) ∪ ... ∪ (S_i - (g-1)), per piece.
  std::vector<std::optional<std::int64_t>> uncovered;
  bool covering_holds() const;
};

PartitionWitness syndetic_partition_witness(const SetWindow& window, std::int64_t g,
                                            std::int64_t h);

/// f = (index mod k) on S ∩ F_index (index starting at 1), 0 elsewhere on S.
Coloring density_coloring_witness(const SetWindow& window, std::span<const Interval> intervals,
                                  unsigned k);

}  // namespace interp
