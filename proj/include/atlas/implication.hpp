// atlas - learning program abstractions for example-guided synthesis
// Decision procedure for local implications over length/char facts.
//
// Decides  (facts about the arguments) and y = F(args)  ==>  goal(y)
// for one DSL construct F. Argument strings are described by conjunctions of
// predicates (optionally an exact value); positions by their exact index.
// Every constant in a query is at most M, and strings longer than M are
// indistinguishable by the facts, so searching lengths up to 2M+4 is exhaustive.

#pragma once

#include <atlas/domain.hpp>
#include <atlas/dsl.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <variant>
#include <vector>

namespace atlas {

/// Conjunction of facts about one string.
class StringFacts {
 public:
  StringFacts() = default;

  static StringFacts exactly(Text value) {
    StringFacts f;
    f.exact_ = std::move(value);
    return f;
  }

  static StringFacts from(std::span<const Predicate> preds) {
    StringFacts f;
    for (const auto& p : preds) f.add(p);
    return f;
  }

  void add(const Predicate& p) {
    switch (p.kind) {
      case Kind::LenEq:
        if (len_eq_ && *len_eq_ != p.a) empty_ = true;
        len_eq_ = p.a;
        break;
      case Kind::LenNeq:
        len_neq_.insert(p.a);
        break;
      case Kind::CharAtEq: {
        if (p.a < 0) {
          empty_ = true;
          break;
        }
        auto [it, fresh] = char_eq_.emplace(p.a, p.b);
        if (!fresh && it->second != p.b) empty_ = true;
        min_len_ = std::max(min_len_, p.a + 1);
        break;
      }
      case Kind::CharAtNeq:
        if (p.a >= 0) char_neq_[p.a].insert(p.b);
        break;
      case Kind::PosEq:
        empty_ = true;
        break;
      case Kind::Top:
        break;
    }
  }

  bool feasible_length(std::int64_t n) const {
    if (empty_ || n < 0) return false;
    if (exact_) return n == static_cast<std::int64_t>(exact_->size());
    if (len_eq_ && *len_eq_ != n) return false;
    if (len_neq_.contains(n)) return false;
    if (n < min_len_) return false;
    for (auto [i, c] : char_eq_)
      if (auto it = char_neq_.find(i); it != char_neq_.end() && it->second.contains(c)) return false;
    return true;
  }

  /// Whether the character at index j (assumed defined) may equal c.
  bool may_equal(std::int64_t j, std::int64_t c) const {
    if (exact_) return static_cast<std::int64_t>((*exact_)[static_cast<std::size_t>(j)]) == c;
    if (auto it = char_eq_.find(j); it != char_eq_.end()) return it->second == c;
    auto it = char_neq_.find(j);
    return it == char_neq_.end() || !it->second.contains(c);
  }

  /// Whether the character at index j (assumed defined) is forced to be c.
  bool forced_equal(std::int64_t j, std::int64_t c) const {
    if (exact_) return static_cast<std::int64_t>((*exact_)[static_cast<std::size_t>(j)]) == c;
    auto it = char_eq_.find(j);
    return it != char_eq_.end() && it->second == c;
  }

  /// Largest constant mentioned, used to size the search.
  std::int64_t magnitude() const {
    std::int64_t m = min_len_;
    if (exact_) m = std::max<std::int64_t>(m, static_cast<std::int64_t>(exact_->size()));
    if (len_eq_) m = std::max(m, *len_eq_);
    if (!len_neq_.empty()) m = std::max(m, *len_neq_.rbegin());
    if (!char_neq_.empty()) m = std::max(m, char_neq_.rbegin()->first + 1);
    return m;
  }

 private:
  std::optional<Text> exact_;
  std::optional<std::int64_t> len_eq_;
  std::set<std::int64_t> len_neq_;
  std::map<std::int64_t, std::int64_t> char_eq_;
  std::map<std::int64_t, std::set<std::int64_t>> char_neq_;
  std::int64_t min_len_ = 0;
  bool empty_ = false;
};

/// Facts about one argument: a string description or a position (exact index,
/// or unknown).
using ArgFacts = std::variant<StringFacts, std::optional<std::int64_t>>;

namespace detail {

inline std::int64_t goal_magnitude(const Predicate& g) {
  switch (g.kind) {
    case Kind::LenEq:
    case Kind::LenNeq: return std::max<std::int64_t>(g.a, 0);
    case Kind::CharAtEq:
    case Kind::CharAtNeq: return std::max<std::int64_t>(g.a + 1, 0);
    default: return 0;
  }
}

inline std::vector<std::int64_t> lengths_up_to(const StringFacts& f, std::int64_t bound) {
  std::vector<std::int64_t> out;
  for (std::int64_t n = 0; n <= bound; ++n)
    if (f.feasible_length(n)) out.push_back(n);
  return out;
}

inline bool concat_implies(const StringFacts& x1, const StringFacts& x2, const Predicate& goal) {
  const std::int64_t m = std::max({x1.magnitude(), x2.magnitude(), goal_magnitude(goal)});
  const std::int64_t bound = 2 * m + 4;
  const auto l1s = lengths_up_to(x1, bound);
  const auto l2s = lengths_up_to(x2, bound);
  if (l1s.empty() || l2s.empty()) return true;
  const std::int64_t l2min = l2s.front();
  const std::int64_t l2max = l2s.back();
  const std::int64_t i = goal.a;
  const std::int64_t c = goal.b;
  switch (goal.kind) {
    case Kind::Top: return true;
    case Kind::LenEq:
      return l1s.size() == 1 && l2s.size() == 1 && l1s[0] + l2s[0] == goal.a;
    case Kind::LenNeq:
      for (auto a : l1s)
        if (std::binary_search(l2s.begin(), l2s.end(), goal.a - a)) return false;
      return true;
    case Kind::CharAtEq:
      if (i < 0) return false;
      for (auto a : l1s) {
        if (i < a) {
          if (!x1.forced_equal(i, c)) return false;
          continue;
        }
        const std::int64_t j = i - a;
        if (l2min <= j) return false;
        if (!x2.forced_equal(j, c)) return false;
      }
      return true;
    case Kind::CharAtNeq:
      if (i < 0) return true;
      for (auto a : l1s) {
        if (i < a) {
          if (x1.may_equal(i, c)) return false;
          continue;
        }
        const std::int64_t j = i - a;
        if (l2max > j && x2.may_equal(j, c)) return false;
      }
      return true;
    case Kind::PosEq: return false;
  }
  return false;
}

inline bool substr_implies(const StringFacts& x, std::optional<std::int64_t> from, std::optional<std::int64_t> to,
                           const Predicate& goal) {
  if (goal.kind == Kind::Top) return true;
  if (!from || !to) return false;
  const std::int64_t i1 = *from;
  const std::int64_t i2 = *to;
  if (i1 < 0 || i1 > i2) return true;
  const std::int64_t m = std::max({x.magnitude(), goal_magnitude(goal), i2});
  bool defined = false;
  for (std::int64_t n = i2; n <= 2 * m + 4 && !defined; ++n) defined = x.feasible_length(n);
  if (!defined) return true;
  const std::int64_t len = i2 - i1;
  const std::int64_t t = goal.a;
  switch (goal.kind) {
    case Kind::LenEq: return len == goal.a;
    case Kind::LenNeq: return len != goal.a;
    case Kind::CharAtEq: return t >= 0 && t < len && x.forced_equal(i1 + t, goal.b);
    case Kind::CharAtNeq: return t < 0 || t >= len || !x.may_equal(i1 + t, goal.b);
    default: return false;
  }
}

}  // namespace detail

/// Whether the argument facts together with the semantics of `node` entail
/// `goal` about the node's output. Only the operator and literal of `node` are
/// consulted; its children are described by `args`.
inline bool implies(const AstNode& node, std::span<const ArgFacts> args, const Predicate& goal) {
  switch (node.op) {
    case Op::ConstStr:
      return gamma_contains(goal, node.text);
    case Op::Concat:
      return detail::concat_implies(std::get<StringFacts>(args[0]), std::get<StringFacts>(args[1]), goal);
    case Op::SubStr:
      return detail::substr_implies(std::get<StringFacts>(args[0]), std::get<std::optional<std::int64_t>>(args[1]),
                                    std::get<std::optional<std::int64_t>>(args[2]), goal);
    default:
      return goal.kind == Kind::Top;
  }
}

}  // namespace atlas
