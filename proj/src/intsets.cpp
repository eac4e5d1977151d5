#include "interp/intsets.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "interp/error.hpp"
#include "interp/io.hpp"
#include "interp/recurrence.hpp"

namespace interp {

namespace detail {

struct SetNode {
  virtual ~SetNode() = default;
  virtual bool contains(std::int64_t n) const = 0;
  /// Appends members of [1, bound] in ascending order.
  virtual void enumerate(std::int64_t bound, std::vector<std::int64_t>& out) const = 0;
  virtual std::optional<Rational> density() const { return std::nullopt; }
  virtual std::optional<std::int64_t> period() const { return std::nullopt; }
  virtual std::optional<Rational> sturmian() const { return std::nullopt; }
  virtual bool is_union() const { return false; }
  virtual std::string describe() const = 0;
};

}  // namespace detail

namespace {

using detail::SetNode;
using NodePtr = std::shared_ptr<const SetNode>;

constexpr std::int64_t kMaxPeriod = 10'000'000;

Rational periodic_density(const SetNode& node, std::int64_t period) {
  std::int64_t count = 0;
  for (std::int64_t n = 1; n <= period; ++n) count += node.contains(n) ? 1 : 0;
  return Rational(count, period);
}

class ApNode final : public SetNode {
 public:
  ApNode(std::int64_t a, std::int64_t b) : a_(a), b_(((b % a) + a) % a) {}
  bool contains(std::int64_t n) const override { return n >= 1 && n % a_ == b_; }
  void enumerate(std::int64_t bound, std::vector<std::int64_t>& out) const override {
    for (std::int64_t n = b_ == 0 ? a_ : b_; n <= bound; n += a_) out.push_back(n);
  }
  std::optional<Rational> density() const override { return Rational(1, a_); }
  std::optional<std::int64_t> period() const override { return a_; }
  std::string describe() const override {
    return "kind=ap a=" + std::to_string(a_) + " b=" + std::to_string(b_);
  }

 private:
  std::int64_t a_, b_;
};

class PowersNode final : public SetNode {
 public:
  PowersNode(std::int64_t base, int first) : base_(base), first_(first) {}
  bool contains(std::int64_t n) const override {
    if (n < 1) return false;
    int e = 0;
    while (n % base_ == 0) {
      n /= base_;
      ++e;
    }
    return n == 1 && e >= first_;
  }
  void enumerate(std::int64_t bound, std::vector<std::int64_t>& out) const override {
    __int128 v = 1;
    for (int e = 0; v <= bound; ++e, v *= base_)
      if (e >= first_) out.push_back(static_cast<std::int64_t>(v));
  }
  std::optional<Rational> density() const override { return Rational(0); }
  std::string describe() const override {
    std::string s = "kind=powers base=" + std::to_string(base_);
    if (first_ != 1) s += " from=" + std::to_string(first_);
    return s;
  }

 private:
  std::int64_t base_;
  int first_;
};

__int128 ipow(std::int64_t base, int exp) {
  __int128 v = 1;
  for (int i = 0; i < exp; ++i) {
    v *= base;
    if (v > std::numeric_limits<std::int64_t>::max()) return v;
  }
  return v;
}

class PolyNode final : public SetNode {
 public:
  explicit PolyNode(int exp) : exp_(exp) {}
  bool contains(std::int64_t n) const override {
    if (n < 1) return false;
    auto r = static_cast<std::int64_t>(std::llround(std::pow(static_cast<double>(n), 1.0 / exp_)));
    for (std::int64_t c = std::max<std::int64_t>(1, r - 1); c <= r + 1; ++c)
      if (ipow(c, exp_) == n) return true;
    return false;
  }
  void enumerate(std::int64_t bound, std::vector<std::int64_t>& out) const override {
    for (std::int64_t c = 1;; ++c) {
      __int128 v = ipow(c, exp_);
      if (v > bound) break;
      out.push_back(static_cast<std::int64_t>(v));
    }
  }
  std::optional<Rational> density() const override {
    return exp_ == 1 ? Rational(1) : Rational(0);
  }
  std::optional<std::int64_t> period() const override {
    if (exp_ == 1) return 1;
    return std::nullopt;
  }
  std::string describe() const override { return "kind=poly exp=" + std::to_string(exp_); }

 private:
  int exp_;
};

class SturmianNode final : public SetNode {
 public:
  explicit SturmianNode(std::vector<std::int64_t> cf) : cf_(std::move(cf)), delta_(continued_fraction_value(cf_)) {
    if (delta_ <= 0 || delta_ > 1)
      fail(ErrorCode::Domain, "sturmian parameter must lie in (0, 1], got " + to_string(delta_));
  }
  bool contains(std::int64_t s) const override {
    if (s < 1) return false;
    // s = floor(n/delta) for some n  <=>  ceil(s*delta) < (s+1)*delta.
    const __int128 p = delta_.numerator(), q = delta_.denominator();
    __int128 n = (static_cast<__int128>(s) * p + q - 1) / q;
    return n * q < static_cast<__int128>(s + 1) * p;
  }
  void enumerate(std::int64_t bound, std::vector<std::int64_t>& out) const override {
    const __int128 p = delta_.numerator(), q = delta_.denominator();
    for (__int128 n = 1;; ++n) {
      __int128 s = n * q / p;
      if (s > bound) break;
      out.push_back(static_cast<std::int64_t>(s));
    }
  }
  std::optional<Rational> density() const override { return delta_; }
  std::optional<std::int64_t> period() const override {
    if (delta_ == 1) return 1;
    return std::nullopt;
  }
  std::optional<Rational> sturmian() const override { return delta_; }
  std::string describe() const override {
    std::string s = "kind=sturmian cf=";
    for (std::size_t i = 0; i < cf_.size(); ++i) s += (i ? "," : "") + std::to_string(cf_[i]);
    return s;
  }

 private:
  std::vector<std::int64_t> cf_;
  Rational delta_;
};

class BlocksNode final : public SetNode {
 public:
  BlocksNode(BlockStart start, std::int64_t extra) : start_(start), extra_(extra) {}
  bool contains(std::int64_t x) const override {
    if (x < 1) return false;
    if (start_ == BlockStart::Square) {
      auto n = static_cast<std::int64_t>(std::sqrt(static_cast<double>(x)));
      while ((n + 1) * (n + 1) <= x) ++n;
      while (n * n > x) --n;
      for (; n >= 1; --n) {
        if (n * n + n + extra_ <= x) break;
        if (n * n <= x) return true;
      }
      return false;
    }
    std::int64_t f = 1;
    for (std::int64_t n = 1; n <= 20; ++n) {
      f *= n;
      if (f > x) break;
      if (x < f + n + extra_) return true;
    }
    return false;
  }
  void enumerate(std::int64_t bound, std::vector<std::int64_t>& out) const override {
    std::int64_t last = 0;
    __int128 f = 1;
    for (std::int64_t n = 1;; ++n) {
      __int128 s;
      if (start_ == BlockStart::Square) {
        s = static_cast<__int128>(n) * n;
      } else {
        f *= n;
        s = f;
      }
      if (s > bound) break;
      auto begin = std::max<std::int64_t>(static_cast<std::int64_t>(s), last + 1);
      auto end = std::min<__int128>(s + n + extra_, static_cast<__int128>(bound) + 1);
      for (std::int64_t v = begin; v < end; ++v) out.push_back(v);
      if (end - 1 > last) last = static_cast<std::int64_t>(end - 1);
    }
  }
  std::optional<Rational> density() const override { return Rational(1); }
  std::string describe() const override {
    std::string s = std::string("kind=blocks start=") + (start_ == BlockStart::Square ? "square" : "factorial");
    if (extra_ != 0) s += " extra=" + std::to_string(extra_);
    return s;
  }

 private:
  BlockStart start_;
  std::int64_t extra_;
};

class SortedNode : public SetNode {
 public:
  explicit SortedNode(std::vector<std::int64_t> values) : values_(std::move(values)) {
    std::sort(values_.begin(), values_.end());
    values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
    values_.erase(values_.begin(), std::lower_bound(values_.begin(), values_.end(), 1));
  }
  bool contains(std::int64_t n) const override {
    return std::binary_search(values_.begin(), values_.end(), n);
  }
  void enumerate(std::int64_t bound, std::vector<std::int64_t>& out) const override {
    for (std::int64_t v : values_) {
      if (v > bound) break;
      out.push_back(v);
    }
  }
  std::optional<Rational> density() const override { return Rational(0); }

 protected:
  std::vector<std::int64_t> values_;
};

std::string join_ints(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

class ExplicitNode final : public SortedNode {
 public:
  using SortedNode::SortedNode;
  std::string describe() const override {
    if (values_.empty()) return "kind=explicit values=";
    return "kind=explicit values=" + join_ints(values_);
  }
};

std::vector<std::int64_t> all_finite_sums(const std::vector<std::int64_t>& gens, unsigned depth) {
  std::vector<std::uint64_t> g;
  for (auto v : gens) {
    if (v <= 0) fail(ErrorCode::InvalidArgument, "finite-sums generators must be positive");
    g.push_back(static_cast<std::uint64_t>(v));
  }
  std::sort(g.begin(), g.end());
  std::uint64_t total = 0;
  for (auto v : g) total += v;
  auto sums = ip_closure(g, depth, total);
  if (sums.size() > 10'000'000) fail(ErrorCode::OutOfRange, "finite-sums set too large to materialize");
  return {sums.begin(), sums.end()};
}

class FiniteSumsNode final : public SortedNode {
 public:
  FiniteSumsNode(std::vector<std::int64_t> gens, unsigned depth)
      : SortedNode(all_finite_sums(gens, depth)), gens_(std::move(gens)), depth_(depth) {}
  std::string describe() const override {
    return "kind=finite-sums gens=" + join_ints(gens_) + " depth=" + std::to_string(depth_);
  }

 private:
  std::vector<std::int64_t> gens_;
  unsigned depth_;
};

class UnionNode final : public SetNode {
 public:
  explicit UnionNode(std::vector<NodePtr> parts) : parts_(std::move(parts)) {}
  bool contains(std::int64_t n) const override {
    return std::any_of(parts_.begin(), parts_.end(), [n](const NodePtr& p) { return p->contains(n); });
  }
  void enumerate(std::int64_t bound, std::vector<std::int64_t>& out) const override {
    std::vector<std::int64_t> acc;
    for (const auto& p : parts_) {
      std::vector<std::int64_t> part, merged;
      p->enumerate(bound, part);
      std::set_union(acc.begin(), acc.end(), part.begin(), part.end(), std::back_inserter(merged));
      acc.swap(merged);
    }
    out.insert(out.end(), acc.begin(), acc.end());
  }
  std::optional<std::int64_t> period() const override {
    std::int64_t l = 1;
    for (const auto& p : parts_) {
      auto q = p->period();
      if (!q) return std::nullopt;
      l = std::lcm(l, *q);
      if (l > kMaxPeriod) return std::nullopt;
    }
    return l;
  }
  std::optional<Rational> density() const override {
    if (auto p = period()) return periodic_density(*this, *p);
    bool all_zero = true;
    for (const auto& p : parts_) {
      auto d = p->density();
      if (d && *d == 1) return Rational(1);
      if (!d || *d != 0) all_zero = false;
    }
    if (all_zero) return Rational(0);
    return std::nullopt;
  }
  bool is_union() const override { return true; }
  std::string describe() const override {
    std::string s;
    for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? " | " : "") + parts_[i]->describe();
    return s;
  }
  const std::vector<NodePtr>& parts() const { return parts_; }

 private:
  std::vector<NodePtr> parts_;
};

class ShiftNode final : public SetNode {
 public:
  ShiftNode(NodePtr base, std::int64_t t) : base_(std::move(base)), t_(t) {}
  bool contains(std::int64_t n) const override { return n >= 1 && base_->contains(n - t_); }
  void enumerate(std::int64_t bound, std::vector<std::int64_t>& out) const override {
    std::vector<std::int64_t> b;
    base_->enumerate(bound - t_, b);
    for (auto v : b)
      if (v + t_ >= 1 && v + t_ <= bound) out.push_back(v + t_);
  }
  std::optional<Rational> density() const override { return base_->density(); }
  std::string describe() const override { return base_->describe() + " shift=" + std::to_string(t_); }

 private:
  NodePtr base_;
  std::int64_t t_;
};

class ComplementNode final : public SetNode {
 public:
  explicit ComplementNode(NodePtr base) : base_(std::move(base)) {}
  bool contains(std::int64_t n) const override { return n >= 1 && !base_->contains(n); }
  void enumerate(std::int64_t bound, std::vector<std::int64_t>& out) const override {
    std::vector<std::int64_t> b;
    base_->enumerate(bound, b);
    std::size_t i = 0;
    for (std::int64_t n = 1; n <= bound; ++n) {
      if (i < b.size() && b[i] == n) {
        ++i;
        continue;
      }
      out.push_back(n);
    }
  }
  std::optional<std::int64_t> period() const override { return base_->period(); }
  std::optional<Rational> density() const override {
    if (auto p = period()) return periodic_density(*this, *p);
    if (auto d = base_->density(); d && *d == 0) return Rational(1);
    return std::nullopt;
  }
  std::string describe() const override {
    if (base_->is_union())
      fail(ErrorCode::InvalidArgument, "complement of a union has no generator-grammar form");
    return base_->describe() + " not=1";
  }

 private:
  NodePtr base_;
};

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = s.find(sep, pos);
    out.push_back(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

std::int64_t to_int(std::string_view key, std::string_view value) {
  auto v = parse_int_list(value);
  if (v.size() != 1)
    fail(ErrorCode::InvalidArgument, "key '" + std::string(key) + "' expects a single integer");
  return v[0];
}

}  // namespace

IntegerSetModel::IntegerSetModel(std::shared_ptr<const detail::SetNode> node) : node_(std::move(node)) {}

IntegerSetModel IntegerSetModel::arithmetic_progression(std::int64_t a, std::int64_t b) {
  if (a < 1) fail(ErrorCode::InvalidArgument, "arithmetic progression needs a >= 1");
  return IntegerSetModel(std::make_shared<ApNode>(a, b));
}

IntegerSetModel IntegerSetModel::powers(std::int64_t base, int first_exponent) {
  if (base < 2) fail(ErrorCode::InvalidArgument, "powers need base >= 2");
  if (first_exponent < 0) fail(ErrorCode::InvalidArgument, "powers need a nonnegative first exponent");
  return IntegerSetModel(std::make_shared<PowersNode>(base, first_exponent));
}

IntegerSetModel IntegerSetModel::polynomial(int exponent) {
  if (exponent < 1) fail(ErrorCode::InvalidArgument, "polynomial set needs exponent >= 1");
  return IntegerSetModel(std::make_shared<PolyNode>(exponent));
}

IntegerSetModel IntegerSetModel::sturmian(std::vector<std::int64_t> continued_fraction) {
  return IntegerSetModel(std::make_shared<SturmianNode>(std::move(continued_fraction)));
}

IntegerSetModel IntegerSetModel::blocks(BlockStart start, std::int64_t extra) {
  if (extra < 0) fail(ErrorCode::InvalidArgument, "blocks need extra >= 0");
  return IntegerSetModel(std::make_shared<BlocksNode>(start, extra));
}

IntegerSetModel IntegerSetModel::finite_sums(std::vector<std::int64_t> generators, unsigned depth) {
  return IntegerSetModel(std::make_shared<FiniteSumsNode>(std::move(generators), depth));
}

IntegerSetModel IntegerSetModel::explicit_set(std::vector<std::int64_t> values) {
  return IntegerSetModel(std::make_shared<ExplicitNode>(std::move(values)));
}

IntegerSetModel IntegerSetModel::union_of(std::vector<IntegerSetModel> parts) {
  if (parts.empty()) return explicit_set({});
  if (parts.size() == 1) return parts[0];
  std::vector<NodePtr> nodes;
  for (auto& p : parts) {
    if (p.node_->is_union()) {
      const auto& inner = static_cast<const UnionNode&>(*p.node_).parts();
      nodes.insert(nodes.end(), inner.begin(), inner.end());
    } else {
      nodes.push_back(p.node_);
    }
  }
  return IntegerSetModel(std::make_shared<UnionNode>(std::move(nodes)));
}

IntegerSetModel IntegerSetModel::shifted(std::int64_t t) const {
  if (node_->is_union()) {
    std::vector<IntegerSetModel> parts;
    for (const auto& p : static_cast<const UnionNode&>(*node_).parts())
      parts.push_back(IntegerSetModel(p).shifted(t));
    return union_of(std::move(parts));
  }
  return IntegerSetModel(std::make_shared<ShiftNode>(node_, t));
}

IntegerSetModel IntegerSetModel::complement() const {
  return IntegerSetModel(std::make_shared<ComplementNode>(node_));
}

IntegerSetModel IntegerSetModel::parse(std::string_view spec) {
  std::vector<IntegerSetModel> terms;
  for (std::string_view term : split(spec, '|')) {
    std::vector<std::pair<std::string, std::string>> kv;
    std::istringstream in{std::string(term)};
    std::string token;
    while (in >> token) {
      auto eq = token.find('=');
      if (eq == std::string::npos || eq == 0)
        fail(ErrorCode::InvalidArgument, "malformed token '" + token + "' (expected key=value)");
      kv.emplace_back(token.substr(0, eq), token.substr(eq + 1));
    }
    if (kv.empty()) fail(ErrorCode::InvalidArgument, "empty term in set spec '" + std::string(spec) + "'");

    std::string kind;
    std::map<std::string, std::string> params;
    std::vector<std::pair<std::string, std::string>> modifiers;
    for (auto& [k, v] : kv) {
      if (k == "kind") {
        kind = v;
      } else if (k == "shift" || k == "not") {
        modifiers.emplace_back(k, v);
      } else if (!params.emplace(k, v).second) {
        fail(ErrorCode::InvalidArgument, "duplicate key '" + k + "'");
      }
    }
    auto take = [&](const std::string& key) -> std::optional<std::string> {
      auto it = params.find(key);
      if (it == params.end()) return std::nullopt;
      std::string v = it->second;
      params.erase(it);
      return v;
    };
    auto need = [&](const std::string& key) {
      auto v = take(key);
      if (!v) fail(ErrorCode::InvalidArgument, "kind=" + kind + " requires " + key + "=");
      return *v;
    };

    std::optional<IntegerSetModel> base;
    if (kind == "ap") {
      base = arithmetic_progression(to_int("a", need("a")), to_int("b", need("b")));
    } else if (kind == "naturals") {
      base = arithmetic_progression(1, 0);
    } else if (kind == "powers") {
      auto from = take("from");
      base = powers(to_int("base", need("base")), from ? static_cast<int>(to_int("from", *from)) : 1);
    } else if (kind == "poly") {
      base = polynomial(static_cast<int>(to_int("exp", need("exp"))));
    } else if (kind == "sturmian") {
      base = sturmian(parse_int_list(need("cf")));
    } else if (kind == "blocks") {
      std::string start = need("start");
      BlockStart bs;
      if (start == "square") bs = BlockStart::Square;
      else if (start == "factorial") bs = BlockStart::Factorial;
      else fail(ErrorCode::InvalidArgument, "blocks start must be square or factorial");
      auto extra = take("extra");
      base = blocks(bs, extra ? to_int("extra", *extra) : 0);
    } else if (kind == "finite-sums") {
      base = finite_sums(parse_int_list(need("gens")), static_cast<unsigned>(to_int("depth", need("depth"))));
    } else if (kind == "explicit") {
      base = explicit_set(parse_int_list(need("values")));
    } else if (kind == "file") {
      base = explicit_set(read_set_file(need("path")));
    } else if (kind.empty()) {
      fail(ErrorCode::InvalidArgument, "term '" + std::string(term) + "' has no kind=");
    } else {
      fail(ErrorCode::InvalidArgument, "unknown set kind '" + kind + "'");
    }
    if (!params.empty())
      fail(ErrorCode::InvalidArgument, "unknown key '" + params.begin()->first + "' for kind=" + kind);

    for (auto& [k, v] : modifiers) {
      if (k == "shift") {
        base = base->shifted(to_int(k, v));
      } else if (v == "1" || v == "true") {
        base = base->complement();
      } else if (v != "0" && v != "false") {
        fail(ErrorCode::InvalidArgument, "not= expects 1 or 0");
      }
    }
    terms.push_back(*base);
  }
  return union_of(std::move(terms));
}

bool IntegerSetModel::contains(std::int64_t n) const { return node_->contains(n); }

std::vector<std::int64_t> IntegerSetModel::elements(std::int64_t bound) const {
  std::vector<std::int64_t> out;
  if (bound >= 1) node_->enumerate(bound, out);
  return out;
}

std::optional<Rational> IntegerSetModel::exact_density() const { return node_->density(); }
std::optional<std::int64_t> IntegerSetModel::period() const { return node_->period(); }
std::optional<Rational> IntegerSetModel::sturmian_delta() const { return node_->sturmian(); }
std::string IntegerSetModel::describe() const { return node_->describe(); }

SetWindow::SetWindow(const IntegerSetModel& model, std::int64_t bound)
    : bound_(bound), elements_(model.elements(bound)), model_(model) {
  if (bound < 1) fail(ErrorCode::InvalidArgument, "window bound must be >= 1");
}

SetWindow SetWindow::from_elements(std::vector<std::int64_t> elements, std::int64_t bound) {
  if (bound < 1) fail(ErrorCode::InvalidArgument, "window bound must be >= 1");
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (!elements.empty() && (elements.front() < 1 || elements.back() > bound))
    fail(ErrorCode::OutOfRange, "explicit window members must lie in [1, bound]");
  SetWindow w;
  w.bound_ = bound;
  w.elements_ = std::move(elements);
  return w;
}

bool SetWindow::contains(std::int64_t n) const {
  return std::binary_search(elements_.begin(), elements_.end(), n);
}

std::int64_t SetWindow::count_in(std::int64_t lo, std::int64_t hi) const {
  if (hi <= lo) return 0;
  return std::lower_bound(elements_.begin(), elements_.end(), hi) -
         std::lower_bound(elements_.begin(), elements_.end(), lo);
}

std::vector<EmptyRun> empty_runs(const SetWindow& window) {
  std::vector<EmptyRun> runs;
  std::int64_t prev = 0;
  for (std::int64_t e : window.elements()) {
    if (e - prev > 1) runs.push_back({prev + 1, e - prev - 1});
    prev = e;
  }
  if (window.bound() > prev) runs.push_back({prev + 1, window.bound() - prev});
  return runs;
}

std::vector<std::int64_t> gap_sequence(const SetWindow& window) {
  const auto& e = window.elements();
  if (e.empty()) fail(ErrorCode::EmptySet, "set has no members in [1, " + std::to_string(window.bound()) + "]");
  std::vector<std::int64_t> gaps;
  gaps.reserve(e.size() - 1);
  for (std::size_t i = 1; i < e.size(); ++i) gaps.push_back(e[i] - e[i - 1]);
  return gaps;
}

std::vector<std::int64_t> gap_sequence(const IntegerSetModel& set, std::int64_t bound) {
  return gap_sequence(SetWindow(set, bound));
}

namespace {

nlohmann::json window_scale(const SetWindow& w) { return {{"N", w.bound()}}; }

/// Maximal subintervals of [1, N] that contain no run of `gap` consecutive
/// non-members.
std::vector<EmptyRun> gap_free_stretches(const SetWindow& window, std::int64_t gap) {
  std::vector<EmptyRun> stretches;
  std::int64_t from = 1;
  for (const auto& run : empty_runs(window)) {
    if (run.length < gap) continue;
    // gap starts available in [run.start, run.start + run.length - gap]
    std::int64_t first_start = run.start;
    std::int64_t last_start = run.start + run.length - gap;
    std::int64_t to = first_start + gap - 2;
    if (to >= from) stretches.push_back({from, to - from + 1});
    from = last_start + 1;
  }
  if (window.bound() >= from) stretches.push_back({from, window.bound() - from + 1});
  return stretches;
}

EmptyRun longest(const std::vector<EmptyRun>& v) {
  EmptyRun best{1, 0};
  for (const auto& s : v)
    if (s.length > best.length) best = s;
  return best;
}

}  // namespace

Certificate syndetic_certificate(const SetWindow& window, std::int64_t g) {
  if (g < 1) fail(ErrorCode::InvalidArgument, "gap bound g must be >= 1");
  if (window.bound() < g) fail(ErrorCode::InvalidArgument, "window bound must be >= g");
  const auto& e = window.elements();
  if (e.empty()) fail(ErrorCode::EmptySet, "set has no members in [1, " + std::to_string(window.bound()) + "]");
  std::int64_t best = e[0], from = 0, to = e[0];
  for (std::size_t i = 1; i < e.size(); ++i) {
    if (e[i] - e[i - 1] > best) {
      best = e[i] - e[i - 1];
      from = e[i - 1];
      to = e[i];
    }
  }
  Certificate c;
  c.predicate = "syndetic";
  c.scale = window_scale(window);
  c.scale["g"] = g;
  c.verdict = best <= g ? Verdict::HoldsAtScale : Verdict::FailsAtScale;
  c.witness = {{"max_gap", best}, {"from", from}, {"to", to}};
  return c;
}

Certificate thick_certificate(const SetWindow& window, std::int64_t run_length) {
  if (run_length < 1) fail(ErrorCode::InvalidArgument, "run length must be >= 1");
  const auto& e = window.elements();
  std::int64_t best_len = 0, best_start = 0, cur_len = 0, cur_start = 0;
  std::optional<std::int64_t> found;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i > 0 && e[i] == e[i - 1] + 1) {
      ++cur_len;
    } else {
      cur_len = 1;
      cur_start = e[i];
    }
    if (cur_len > best_len) {
      best_len = cur_len;
      best_start = cur_start;
    }
    if (!found && cur_len >= run_length) found = cur_start;
  }
  Certificate c;
  c.predicate = "thick";
  c.scale = window_scale(window);
  c.scale["L"] = run_length;
  if (found) {
    c.verdict = Verdict::HoldsAtScale;
    c.witness = {{"run_start", *found}};
  } else {
    c.verdict = Verdict::FailsAtScale;
    c.witness = {{"longest_run", best_len}, {"longest_run_start", best_start}};
  }
  return c;
}

std::optional<std::int64_t> gap_window_bound(const SetWindow& window, std::int64_t gap_length) {
  if (gap_length < 1) fail(ErrorCode::InvalidArgument, "gap length must be >= 1");
  auto s = longest(gap_free_stretches(window, gap_length));
  if (s.length >= window.bound()) return std::nullopt;
  return s.length + 1;
}

Certificate gap_syndeticity_table(const SetWindow& window, std::int64_t gap_length,
                                  std::optional<std::int64_t> max_spacing) {
  if (gap_length < 1) fail(ErrorCode::InvalidArgument, "gap length must be >= 1");
  const std::int64_t cap = max_spacing.value_or(window.bound() / 2);
  auto stretches = gap_free_stretches(window, gap_length);
  auto worst = longest(stretches);
  Certificate c;
  c.predicate = "gap-syndetic";
  c.scale = window_scale(window);
  c.scale["n"] = gap_length;
  c.scale["max_spacing"] = cap;
  bool any_gap = worst.length < window.bound();
  std::int64_t bound = worst.length + 1;
  c.verdict = any_gap && bound <= cap ? Verdict::HoldsAtScale : Verdict::FailsAtScale;
  c.witness = {{"longest_stretch_start", worst.start}, {"longest_stretch_length", worst.length}};
  if (any_gap) c.witness["window_bound"] = bound;
  return c;
}

Certificate piecewise_syndetic_certificate(const SetWindow& window, std::int64_t g,
                                           std::int64_t interval_length) {
  if (g < 1) fail(ErrorCode::InvalidArgument, "gap bound g must be >= 1");
  if (interval_length < g) fail(ErrorCode::InvalidArgument, "interval length L must be >= g");
  if (interval_length > window.bound()) fail(ErrorCode::InvalidArgument, "interval length exceeds window");
  auto stretches = gap_free_stretches(window, g);
  Certificate c;
  c.predicate = "piecewise-syndetic";
  c.scale = window_scale(window);
  c.scale["g"] = g;
  c.scale["L"] = interval_length;
  for (const auto& s : stretches) {
    if (s.length >= interval_length) {
      c.verdict = Verdict::HoldsAtScale;
      c.witness = {{"interval_start", s.start}, {"interval_end", s.start + interval_length - 1}};
      return c;
    }
  }
  auto worst = longest(stretches);
  c.verdict = Verdict::FailsAtScale;
  c.witness = {{"longest_stretch_start", worst.start}, {"longest_stretch_length", worst.length}};
  return c;
}

std::int64_t max_window_count(const SetWindow& window, std::int64_t n) {
  if (n < 1 || n > window.bound()) fail(ErrorCode::OutOfRange, "window length must lie in [1, N]");
  const auto& e = window.elements();
  const std::int64_t last_start = window.bound() - n + 1;
  std::int64_t best = window.count_in(last_start, last_start + n);
  // An optimal window can be slid right until its left end is a member or it
  // reaches the right edge of [1, N].
  std::size_t j = 0;
  for (std::size_t i = 0; i < e.size() && e[i] <= last_start; ++i) {
    if (j < i) j = i;
    while (j < e.size() && e[j] < e[i] + n) ++j;
    best = std::max<std::int64_t>(best, static_cast<std::int64_t>(j - i));
  }
  return best;
}

BanachProfile banach_density_profile(const SetWindow& window, std::span<const std::int64_t> scales) {
  BanachProfile profile;
  profile.bound = window.bound();
  if (window.model()) profile.exact = window.model()->exact_density();
  for (std::int64_t n : scales) {
    if (n < 1 || 2 * n > window.bound())
      fail(ErrorCode::OutOfRange, "density scale " + std::to_string(n) + " exceeds N/2");
    profile.entries.push_back({n, max_window_count(window, n)});
  }
  return profile;
}

BanachProfile banach_density_profile(const SetWindow& window, std::int64_t n_max) {
  if (n_max < 1 || 2 * n_max > window.bound()) fail(ErrorCode::OutOfRange, "n_max must lie in [1, N/2]");
  std::vector<std::int64_t> scales(static_cast<std::size_t>(n_max));
  std::iota(scales.begin(), scales.end(), 1);
  return banach_density_profile(window, scales);
}

namespace {

bool witness_consistent(const Certificate& c, const SetWindow& w) {
  const auto& wit = c.witness;
  if (c.predicate == "syndetic") {
    std::int64_t from = wit.at("from"), to = wit.at("to"), g = c.scale.at("g");
    if (from != 0 && !w.contains(from)) return false;
    if (!w.contains(to) || w.count_in(from + 1, to) != 0) return false;
    return c.holds() ? (to - from <= g) : (to - from > g);
  }
  if (c.predicate == "thick" && c.holds()) {
    std::int64_t start = wit.at("run_start"), len = c.scale.at("L");
    return w.count_in(start, start + len) == len;
  }
  if (c.predicate == "piecewise-syndetic" && c.holds()) {
    std::int64_t a = wit.at("interval_start"), b = wit.at("interval_end"), g = c.scale.at("g");
    for (std::int64_t m = a; m + g - 1 <= b; ++m)
      if (w.count_in(m, m + g) == 0) return false;
    return true;
  }
  return true;
}

}  // namespace

bool replay_certificate(const Certificate& cert, const IntegerSetModel& set) {
  const std::int64_t N = cert.scale.at("N");
  SetWindow w(set, N);
  Certificate again;
  if (cert.predicate == "syndetic") {
    again = syndetic_certificate(w, cert.scale.at("g"));
  } else if (cert.predicate == "thick") {
    again = thick_certificate(w, cert.scale.at("L"));
  } else if (cert.predicate == "gap-syndetic") {
    again = gap_syndeticity_table(w, cert.scale.at("n"), cert.scale.at("max_spacing").get<std::int64_t>());
  } else if (cert.predicate == "piecewise-syndetic") {
    again = piecewise_syndetic_certificate(w, cert.scale.at("g"), cert.scale.at("L"));
  } else {
    fail(ErrorCode::InvalidArgument, "cannot replay predicate '" + cert.predicate + "'");
  }
  return again == cert && witness_consistent(cert, w);
}

}  // namespace interp
