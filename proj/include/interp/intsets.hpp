#pragma once

// Subsets of N = {1, 2, ...}: generator models, materialized windows, and
// the finite-scale certificates for syndetic / thick / piecewise syndetic
// behaviour together with upper Banach density profiles.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "interp/certificate.hpp"
#include "interp/rational.hpp"

namespace interp {

namespace detail {
struct SetNode;
}

enum class BlockStart { Square, Factorial };

/// Immutable description of a subset of N. Copies share the generator tree.
class IntegerSetModel {
 public:
  /// { n >= 1 : n = b (mod a) }.
  static IntegerSetModel arithmetic_progression(std::int64_t a, std::int64_t b);
  /// { base^j : j >= first_exponent }; the default starts at base^1.
  static IntegerSetModel powers(std::int64_t base, int first_exponent = 1);
  /// { n^exponent : n >= 1 }.
  static IntegerSetModel polynomial(int exponent);
  /// { floor(n / delta) : n >= 1 } with delta = [cf0; cf1, ...].
  static IntegerSetModel sturmian(std::vector<std::int64_t> continued_fraction);
  /// Union over n >= 1 of [start_n, start_n + n + extra).
  static IntegerSetModel blocks(BlockStart start, std::int64_t extra = 0);
  /// Sums of at most `depth` distinct generators.
  static IntegerSetModel finite_sums(std::vector<std::int64_t> generators, unsigned depth);
  static IntegerSetModel explicit_set(std::vector<std::int64_t> values);
  static IntegerSetModel union_of(std::vector<IntegerSetModel> parts);

  /// S + t, restricted to N.
  IntegerSetModel shifted(std::int64_t t) const;
  /// N \ S.
  IntegerSetModel complement() const;

  /// Parses the generator grammar: terms joined by '|' (union); each term is
  /// whitespace separated key=value pairs with a mandatory `kind` and the
  /// optional modifiers `shift=<t>` and `not=1`.
  ///   kind=ap a=3 b=0 | kind=explicit values=1
  ///   kind=sturmian cf=0,2,2,2
  ///   kind=powers base=2
  static IntegerSetModel parse(std::string_view spec);

  bool contains(std::int64_t n) const;
  /// Members of [1, bound], ascending.
  std::vector<std::int64_t> elements(std::int64_t bound) const;

  /// Upper Banach density when a closed form is known.
  std::optional<Rational> exact_density() const;
  /// Least period when the set is periodic on N.
  std::optional<std::int64_t> period() const;
  /// Sturmian rotation parameter, for floor-set models.
  std::optional<Rational> sturmian_delta() const;

  /// Canonical generator spec; parse(describe()) describes the same set.
  std::string describe() const;

 private:
  explicit IntegerSetModel(std::shared_ptr<const detail::SetNode> node);
  std::shared_ptr<const detail::SetNode> node_;
};

/// A set materialized on the window [1, bound].
class SetWindow {
 public:
  SetWindow(const IntegerSetModel& model, std::int64_t bound);
  /// Window built from explicit members; values outside [1, bound] are rejected.
  static SetWindow from_elements(std::vector<std::int64_t> elements, std::int64_t bound);

  std::int64_t bound() const { return bound_; }
  const std::vector<std::int64_t>& elements() const { return elements_; }
  bool empty() const { return elements_.empty(); }
  bool contains(std::int64_t n) const;
  /// |S ∩ [lo, hi)|.
  std::int64_t count_in(std::int64_t lo, std::int64_t hi) const;
  const std::optional<IntegerSetModel>& model() const { return model_; }

 private:
  SetWindow() = default;
  std::int64_t bound_ = 0;
  std::vector<std::int64_t> elements_;
  std::optional<IntegerSetModel> model_;
};

/// Maximal run of consecutive non-members [start, start + length).
struct EmptyRun {
  std::int64_t start = 0;
  std::int64_t length = 0;
  friend bool operator==(const EmptyRun&, const EmptyRun&) = default;
};

/// All maximal runs of non-members in [1, bound], including the leading run
/// before the first member and the trailing run after the last.
std::vector<EmptyRun> empty_runs(const SetWindow& window);

/// Differences between consecutive members in [1, N].
std::vector<std::int64_t> gap_sequence(const SetWindow& window);
std::vector<std::int64_t> gap_sequence(const IntegerSetModel& set, std::int64_t bound);

/// Holds iff the first member is <= g and every gap between consecutive
/// members inside the window is <= g. Witness: location of the largest gap.
Certificate syndetic_certificate(const SetWindow& window, std::int64_t g);

/// Holds iff the window contains a run of `run_length` consecutive members.
Certificate thick_certificate(const SetWindow& window, std::int64_t run_length);

/// Smallest L such that every length-L subinterval of [1, bound] contains an
/// interval of `gap_length` consecutive non-members; nullopt if none does.
std::optional<std::int64_t> gap_window_bound(const SetWindow& window, std::int64_t gap_length);

/// "Gaps of length n occur syndetically": holds iff gap_window_bound exists
/// and is at most `max_spacing` (default bound/2). Witness: the bound, or the
/// longest stretch containing no n-gap.
Certificate gap_syndeticity_table(const SetWindow& window, std::int64_t gap_length,
                                  std::optional<std::int64_t> max_spacing = std::nullopt);

/// Holds iff some length-L subinterval has every length-g window meeting S.
Certificate piecewise_syndetic_certificate(const SetWindow& window, std::int64_t g,
                                           std::int64_t interval_length);

/// max over windows [m, m+n) inside [1, bound] of |S ∩ [m, m+n)|.
std::int64_t max_window_count(const SetWindow& window, std::int64_t n);

struct DensityEntry {
  std::int64_t n = 0;
  std::int64_t max_count = 0;
  Rational density() const { return Rational(max_count, n); }
};

struct BanachProfile {
  std::int64_t bound = 0;
  std::vector<DensityEntry> entries;
  std::optional<Rational> exact;
};

/// d_n for n = 1..n_max (requires n_max <= bound/2).
BanachProfile banach_density_profile(const SetWindow& window, std::int64_t n_max);
/// d_n for an explicit list of scales.
BanachProfile banach_density_profile(const SetWindow& window, std::span<const std::int64_t> scales);

/// Re-derives the verdict of a certificate from its own scale parameters and
/// independently checks the witness against the set.
bool replay_certificate(const Certificate& cert, const IntegerSetModel& set);

}  // namespace interp
