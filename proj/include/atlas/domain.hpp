// atlas - learning program abstractions for example-guided synthesis
// Predicate templates, concrete predicates, abstract values and best abstractions.

#pragma once

#include <atlas/utf8.hpp>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace atlas {

/// Predicate kinds. `PosEq` is the fixed exact abstraction of position values;
/// it never enters a learned domain.
enum class Kind : std::uint8_t { Top, LenEq, LenNeq, CharAtEq, CharAtNeq, PosEq };

inline constexpr std::size_t hole_count(Kind k) {
  switch (k) {
    case Kind::Top: return 0;
    case Kind::LenEq:
    case Kind::LenNeq:
    case Kind::PosEq: return 1;
    case Kind::CharAtEq:
    case Kind::CharAtNeq: return 2;
  }
  return 0;
}

inline constexpr bool is_string_kind(Kind k) { return k != Kind::PosEq; }

/// A template is identified by its kind: holes are positional, so two templates
/// of one kind are equal modulo hole renaming.
struct Template {
  Kind kind = Kind::Top;

  static constexpr Template top() { return {Kind::Top}; }
  std::size_t holes() const { return hole_count(kind); }
  friend auto operator<=>(const Template&, const Template&) = default;
};

using Domain = std::set<Template>;

inline Domain top_domain() { return {Template::top()}; }

/// A template with every hole filled. Lengths and positions use `a`; charAt
/// predicates use `a` for the index and `b` for the code point.
struct Predicate {
  Kind kind = Kind::Top;
  std::int64_t a = 0;
  std::int64_t b = 0;

  static Predicate top() { return {}; }
  static Predicate len_eq(std::int64_t k) { return {Kind::LenEq, k, 0}; }
  static Predicate len_neq(std::int64_t k) { return {Kind::LenNeq, k, 0}; }
  static Predicate char_eq(std::int64_t i, char32_t c) { return {Kind::CharAtEq, i, static_cast<std::int64_t>(c)}; }
  static Predicate char_neq(std::int64_t i, char32_t c) { return {Kind::CharAtNeq, i, static_cast<std::int64_t>(c)}; }
  static Predicate pos_eq(std::int64_t i) { return {Kind::PosEq, i, 0}; }

  /// Builds a predicate from a template and its hole values.
  static Predicate instantiate(Template t, std::span<const std::int64_t> args) {
    if (args.size() != t.holes()) throw std::invalid_argument("wrong number of template arguments");
    Predicate p{t.kind};
    if (!args.empty()) p.a = args[0];
    if (args.size() > 1) p.b = args[1];
    return p;
  }

  Template templ() const { return {kind}; }

  std::vector<std::int64_t> args() const {
    switch (hole_count(kind)) {
      case 0: return {};
      case 1: return {a};
      default: return {a, b};
    }
  }

  friend auto operator<=>(const Predicate&, const Predicate&) = default;
};

/// MakeSymbolic: forget the constants of a concrete predicate.
inline Template make_symbolic(const Predicate& p) { return p.templ(); }

// ---------------------------------------------------------------------------
// Concretization

inline bool gamma_contains(const Predicate& p, const Text& s) {
  const auto n = static_cast<std::int64_t>(s.size());
  switch (p.kind) {
    case Kind::Top: return true;
    case Kind::LenEq: return n == p.a;
    case Kind::LenNeq: return n != p.a;
    case Kind::CharAtEq: return p.a >= 0 && p.a < n && static_cast<std::int64_t>(s[static_cast<std::size_t>(p.a)]) == p.b;
    case Kind::CharAtNeq: return !(p.a >= 0 && p.a < n && static_cast<std::int64_t>(s[static_cast<std::size_t>(p.a)]) == p.b);
    case Kind::PosEq: return false;
  }
  return false;
}

inline bool gamma_contains_index(const Predicate& p, std::int64_t index) {
  if (p.kind == Kind::Top) return true;
  return p.kind == Kind::PosEq && p.a == index;
}

/// Conjunction of concrete predicates over one value, or the distinguished
/// bottom. The empty conjunction is top. Conjuncts are kept sorted, free of
/// duplicates and free of conjuncts implied by a stronger one.
class AbstractValue {
 public:
  AbstractValue() = default;

  static AbstractValue top() { return {}; }
  static AbstractValue bottom() {
    AbstractValue v;
    v.bottom_ = true;
    return v;
  }
  static AbstractValue of(std::initializer_list<Predicate> preds) { return of(std::span<const Predicate>(preds.begin(), preds.size())); }
  static AbstractValue of(std::span<const Predicate> preds) {
    AbstractValue v;
    v.conj_.assign(preds.begin(), preds.end());
    v.normalize();
    return v;
  }

  bool is_bottom() const { return bottom_; }
  bool is_top() const { return !bottom_ && conj_.empty(); }
  const std::vector<Predicate>& conjuncts() const { return conj_; }

  friend AbstractValue meet(const AbstractValue& x, const AbstractValue& y) {
    if (x.bottom_ || y.bottom_) return bottom();
    if (x.conj_.empty()) return y;
    if (y.conj_.empty()) return x;
    AbstractValue v;
    v.conj_.reserve(x.conj_.size() + y.conj_.size());
    std::merge(x.conj_.begin(), x.conj_.end(), y.conj_.begin(), y.conj_.end(), std::back_inserter(v.conj_));
    v.normalize();
    return v;
  }

  friend bool operator==(const AbstractValue&, const AbstractValue&) = default;
  friend auto operator<=>(const AbstractValue&, const AbstractValue&) = default;

 private:
  void normalize() {
    std::sort(conj_.begin(), conj_.end());
    conj_.erase(std::unique(conj_.begin(), conj_.end()), conj_.end());
    std::erase_if(conj_, [](const Predicate& p) { return p.kind == Kind::Top; });

    std::optional<std::int64_t> len;
    std::optional<std::int64_t> pos;
    std::map<std::int64_t, std::int64_t> chars;
    for (const auto& p : conj_) {
      switch (p.kind) {
        case Kind::LenEq:
          if (len && *len != p.a) return collapse();
          len = p.a;
          if (p.a < 0) return collapse();
          break;
        case Kind::PosEq:
          if (pos && *pos != p.a) return collapse();
          pos = p.a;
          break;
        case Kind::CharAtEq: {
          if (p.a < 0) return collapse();
          auto [it, fresh] = chars.emplace(p.a, p.b);
          if (!fresh && it->second != p.b) return collapse();
          break;
        }
        default:
          break;
      }
    }
    if (len && !chars.empty() && chars.rbegin()->first >= *len) return collapse();
    for (const auto& p : conj_) {
      if (p.kind == Kind::LenNeq && len && *len == p.a) return collapse();
      if (p.kind == Kind::CharAtNeq) {
        auto it = chars.find(p.a);
        if (it != chars.end() && it->second == p.b) return collapse();
      }
    }
    std::erase_if(conj_, [&](const Predicate& p) {
      if (p.kind == Kind::LenNeq) return len.has_value();
      if (p.kind == Kind::CharAtNeq) return p.a < 0 || chars.contains(p.a) || (len && p.a >= *len);
      return false;
    });
  }

  void collapse() {
    conj_.clear();
    bottom_ = true;
  }

  bool bottom_ = false;
  std::vector<Predicate> conj_;
};

inline bool gamma_contains(const AbstractValue& v, const Text& s) {
  if (v.is_bottom()) return false;
  return std::all_of(v.conjuncts().begin(), v.conjuncts().end(), [&](const Predicate& p) { return gamma_contains(p, s); });
}

inline bool gamma_contains_index(const AbstractValue& v, std::int64_t index) {
  if (v.is_bottom()) return false;
  return std::all_of(v.conjuncts().begin(), v.conjuncts().end(),
                     [&](const Predicate& p) { return gamma_contains_index(p, index); });
}

// ---------------------------------------------------------------------------
// Best abstractions

/// Finite constant universe for instantiating inequality templates.
struct ConstantPool {
  std::vector<std::int64_t> lengths;
  std::vector<std::int64_t> indices;
  std::vector<char32_t> chars;

  /// Default pool for a set of strings: lengths {0..16} plus every observed
  /// length, indices [0, index_limit), and every observed code point.
  static ConstantPool for_strings(std::span<const Text> strings, std::int64_t index_limit = 16) {
    ConstantPool pool;
    std::set<std::int64_t> lens;
    std::set<char32_t> cs;
    for (std::int64_t k = 0; k <= 16; ++k) lens.insert(k);
    for (const auto& s : strings) {
      lens.insert(static_cast<std::int64_t>(s.size()));
      cs.insert(s.begin(), s.end());
    }
    pool.lengths.assign(lens.begin(), lens.end());
    for (std::int64_t i = 0; i < index_limit; ++i) pool.indices.push_back(i);
    pool.chars.assign(cs.begin(), cs.end());
    return pool;
  }
};

/// All pool-bounded best instantiations of `t` satisfied by `s`.
inline std::vector<Predicate> abstract(const Text& s, Template t, const ConstantPool& pool) {
  const auto n = static_cast<std::int64_t>(s.size());
  std::vector<Predicate> out;
  switch (t.kind) {
    case Kind::Top:
      out.push_back(Predicate::top());
      break;
    case Kind::LenEq:
      out.push_back(Predicate::len_eq(n));
      break;
    case Kind::LenNeq:
      for (auto k : pool.lengths)
        if (k != n) out.push_back(Predicate::len_neq(k));
      break;
    case Kind::CharAtEq:
      for (auto i : pool.indices)
        if (i >= 0 && i < n) out.push_back(Predicate::char_eq(i, s[static_cast<std::size_t>(i)]));
      break;
    case Kind::CharAtNeq:
      for (auto i : pool.indices) {
        if (i < 0 || i >= n) continue;
        for (auto c : pool.chars)
          if (c != s[static_cast<std::size_t>(i)]) out.push_back(Predicate::char_neq(i, c));
      }
      break;
    case Kind::PosEq:
      break;
  }
  return out;
}

/// Best abstraction of `s` in the whole domain: the meet of every instantiation.
inline AbstractValue alpha(const Text& s, const Domain& domain, const ConstantPool& pool) {
  std::vector<Predicate> preds;
  for (const auto& t : domain) {
    auto ps = abstract(s, t, pool);
    preds.insert(preds.end(), ps.begin(), ps.end());
  }
  return AbstractValue::of(preds);
}

// ---------------------------------------------------------------------------
// Text format

class format_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string print(Template t) {
  switch (t.kind) {
    case Kind::Top: return "top";
    case Kind::LenEq: return "(len = c)";
    case Kind::LenNeq: return "(len != c)";
    case Kind::CharAtEq: return "(char i = c)";
    case Kind::CharAtNeq: return "(char i != c)";
    case Kind::PosEq: return "(pos = c)";
  }
  return "?";
}

inline Template parse_template(std::string_view text) {
  for (Kind k : {Kind::Top, Kind::LenEq, Kind::LenNeq, Kind::CharAtEq, Kind::CharAtNeq, Kind::PosEq})
    if (print(Template{k}) == text) return Template{k};
  throw format_error("unknown predicate template '" + std::string(text) + "'");
}

inline std::string quote_char(std::int64_t code) {
  std::string out = "'";
  if (code == '\'' || code == '\\') out += '\\';
  if (code < 0 || code > 0x10FFFF) return "'?'";
  append_utf8(out, static_cast<char32_t>(code));
  return out + "'";
}

inline std::string print(const Predicate& p) {
  switch (p.kind) {
    case Kind::Top: return "top";
    case Kind::LenEq: return "(len = " + std::to_string(p.a) + ")";
    case Kind::LenNeq: return "(len != " + std::to_string(p.a) + ")";
    case Kind::CharAtEq: return "(char " + std::to_string(p.a) + " = " + quote_char(p.b) + ")";
    case Kind::CharAtNeq: return "(char " + std::to_string(p.a) + " != " + quote_char(p.b) + ")";
    case Kind::PosEq: return "(pos = " + std::to_string(p.a) + ")";
  }
  return "?";
}

inline std::string print(const AbstractValue& v) {
  if (v.is_bottom()) return "bottom";
  if (v.is_top()) return "top";
  std::string out;
  for (const auto& p : v.conjuncts()) {
    if (!out.empty()) out += " & ";
    out += print(p);
  }
  return out;
}

}  // namespace atlas
