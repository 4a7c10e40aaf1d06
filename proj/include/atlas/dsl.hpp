// atlas - learning program abstractions for example-guided synthesis
// String-transformation DSL: syntax, concrete semantics, ranking and text format.

#pragma once

#include <atlas/utf8.hpp>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace atlas {

// Declaration order is the operator id used by the program ranking.
enum class Op : std::uint8_t { Input, ConstStr, Concat, SubStr, AbsPos, CPos };

enum class Sort : std::uint8_t { String, Position };

inline constexpr std::string_view op_name(Op op) {
  switch (op) {
    case Op::Input: return "input";
    case Op::ConstStr: return "const";
    case Op::Concat: return "concat";
    case Op::SubStr: return "substr";
    case Op::AbsPos: return "abspos";
    case Op::CPos: return "cpos";
  }
  return "?";
}

inline constexpr Sort op_sort(Op op) {
  return (op == Op::AbsPos || op == Op::CPos) ? Sort::Position : Sort::String;
}

inline constexpr std::size_t op_arity(Op op) {
  switch (op) {
    case Op::Concat: return 2;
    case Op::SubStr: return 3;
    default: return 0;
  }
}

class type_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct AstNode;
using NodePtr = std::shared_ptr<const AstNode>;

/// Immutable AST node. Literal payload: `text` for ConstStr, `offset` for
/// AbsPos, (`anchor`, `offset`) for CPos.
struct AstNode {
  Op op = Op::Input;
  Text text;
  char32_t anchor = 0;
  std::int64_t offset = 0;
  std::vector<NodePtr> children;
  std::size_t size = 1;
  std::size_t hash = 0;
};

namespace detail {

inline std::size_t mix_hash(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

inline NodePtr finish(AstNode node) {
  if (node.children.size() != op_arity(node.op))
    throw type_error(std::string(op_name(node.op)) + ": wrong number of arguments");
  std::size_t h = std::hash<std::uint8_t>{}(static_cast<std::uint8_t>(node.op));
  h = mix_hash(h, std::hash<Text>{}(node.text));
  h = mix_hash(h, std::hash<std::int64_t>{}(node.offset));
  h = mix_hash(h, std::hash<std::uint32_t>{}(node.anchor));
  std::size_t size = 1;
  for (const auto& c : node.children) {
    size += c->size;
    h = mix_hash(h, c->hash);
  }
  node.size = size;
  node.hash = h;
  return std::make_shared<const AstNode>(std::move(node));
}

}  // namespace detail

inline NodePtr make_input() { return detail::finish(AstNode{}); }

inline NodePtr make_const(Text literal) {
  AstNode n;
  n.op = Op::ConstStr;
  n.text = std::move(literal);
  return detail::finish(std::move(n));
}

inline NodePtr make_abs_pos(std::int64_t k) {
  AstNode n;
  n.op = Op::AbsPos;
  n.offset = k;
  return detail::finish(std::move(n));
}

inline NodePtr make_cpos(char32_t anchor, std::int64_t occurrence) {
  if (occurrence == 0) throw type_error("cpos: occurrence index must be non-zero");
  AstNode n;
  n.op = Op::CPos;
  n.anchor = anchor;
  n.offset = occurrence;
  return detail::finish(std::move(n));
}

inline NodePtr make_concat(NodePtr lhs, NodePtr rhs) {
  if (op_sort(lhs->op) != Sort::String || op_sort(rhs->op) != Sort::String)
    throw type_error("concat: arguments must be strings");
  AstNode n;
  n.op = Op::Concat;
  n.children = {std::move(lhs), std::move(rhs)};
  return detail::finish(std::move(n));
}

/// SubStr slices the program input; its first argument must be `(input)`.
inline NodePtr make_substr(NodePtr source, NodePtr from, NodePtr to) {
  if (source->op != Op::Input) throw type_error("substr: first argument must be (input)");
  if (op_sort(from->op) != Sort::Position || op_sort(to->op) != Sort::Position)
    throw type_error("substr: positions expected");
  AstNode n;
  n.op = Op::SubStr;
  n.children = {std::move(source), std::move(from), std::move(to)};
  return detail::finish(std::move(n));
}

inline bool same_tree(const AstNode& a, const AstNode& b) {
  if (&a == &b) return true;
  if (a.hash != b.hash || a.op != b.op || a.size != b.size || a.text != b.text || a.offset != b.offset ||
      a.anchor != b.anchor)
    return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!same_tree(*a.children[i], *b.children[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Ranking

namespace detail {

// Non-negative offsets first (ascending), then negative ones by magnitude.
inline std::strong_ordering compare_offset(std::int64_t a, std::int64_t b) {
  auto key = [](std::int64_t v) { return std::pair<bool, std::int64_t>{v < 0, v < 0 ? -v : v}; };
  return key(a) <=> key(b);
}

inline std::strong_ordering compare_literal(const AstNode& a, const AstNode& b) {
  switch (a.op) {
    case Op::ConstStr:
      if (auto c = a.text.size() <=> b.text.size(); c != 0) return c;
      return a.text.compare(b.text) <=> 0;
    case Op::AbsPos:
      return compare_offset(a.offset, b.offset);
    case Op::CPos:
      if (auto c = a.anchor <=> b.anchor; c != 0) return c;
      return compare_offset(a.offset, b.offset);
    default:
      return std::strong_ordering::equal;
  }
}

}  // namespace detail

/// Size first, then operator id, then literals, then children left to right.
/// Injective on structurally distinct trees.
inline std::strong_ordering compare_rank(const AstNode& a, const AstNode& b) {
  if (&a == &b) return std::strong_ordering::equal;
  if (auto c = a.size <=> b.size; c != 0) return c;
  if (auto c = a.op <=> b.op; c != 0) return c;
  if (auto c = detail::compare_literal(a, b); c != 0) return c;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (auto c = compare_rank(*a.children[i], *b.children[i]); c != 0) return c;
  return std::strong_ordering::equal;
}

class Program;

/// Position of a program in the deterministic enumeration order. The grammar
/// has infinitely many programs of each size (literals are unbounded), so the
/// rank is kept as an ordered key rather than materialized as an integer.
class Rank {
 public:
  explicit Rank(NodePtr node) : node_(std::move(node)) {}
  friend std::strong_ordering operator<=>(const Rank& a, const Rank& b) { return compare_rank(*a.node_, *b.node_); }
  friend bool operator==(const Rank& a, const Rank& b) { return compare_rank(*a.node_, *b.node_) == 0; }

 private:
  NodePtr node_;
};

class Program {
 public:
  explicit Program(NodePtr root) : root_(std::move(root)) {
    if (!root_ || op_sort(root_->op) != Sort::String) throw type_error("a program must produce a string");
  }

  const AstNode& root() const { return *root_; }
  const NodePtr& root_ptr() const { return root_; }
  std::size_t size() const { return root_->size; }
  std::size_t hash() const { return root_->hash; }

  friend bool operator==(const Program& a, const Program& b) { return same_tree(*a.root_, *b.root_); }

 private:
  NodePtr root_;
};

inline Rank rank(const Program& p) { return Rank(p.root_ptr()); }

// ---------------------------------------------------------------------------
// Concrete semantics

enum class EvalError : std::uint8_t { OutOfBounds, MissingOccurrence };

inline std::string_view to_string(EvalError e) {
  return e == EvalError::OutOfBounds ? "out-of-bounds" : "missing-occurrence";
}

/// Either the output string or the reason evaluation is undefined.
class EvalResult {
 public:
  EvalResult(Text value) : value_(std::move(value)) {}
  EvalResult(EvalError error) : value_(error) {}

  bool ok() const { return std::holds_alternative<Text>(value_); }
  explicit operator bool() const { return ok(); }
  const Text& value() const { return std::get<Text>(value_); }
  EvalError error() const { return std::get<EvalError>(value_); }

 private:
  std::variant<Text, EvalError> value_;
};

/// Index denoted by a position node inside `x`.
/// AbsPos(k): k for k >= 0, len(x)+k+1 otherwise.
/// CPos(c, j): the index just after the j-th occurrence of c (from the left for
/// j > 0, from the right for j < 0).
inline std::variant<std::int64_t, EvalError> resolve_position(const AstNode& pos, const Text& x) {
  const auto n = static_cast<std::int64_t>(x.size());
  if (pos.op == Op::AbsPos) return pos.offset >= 0 ? pos.offset : n + pos.offset + 1;
  if (pos.op != Op::CPos) throw type_error("not a position");
  std::int64_t want = pos.offset > 0 ? pos.offset : -pos.offset;
  if (pos.offset > 0) {
    for (std::int64_t i = 0; i < n; ++i)
      if (x[static_cast<std::size_t>(i)] == pos.anchor && --want == 0) return i + 1;
  } else {
    for (std::int64_t i = n - 1; i >= 0; --i)
      if (x[static_cast<std::size_t>(i)] == pos.anchor && --want == 0) return i + 1;
  }
  return EvalError::MissingOccurrence;
}

/// SubStr over already-resolved indices.
inline EvalResult slice(const Text& x, std::int64_t from, std::int64_t to) {
  if (from < 0 || from > to || to > static_cast<std::int64_t>(x.size())) return EvalError::OutOfBounds;
  return x.substr(static_cast<std::size_t>(from), static_cast<std::size_t>(to - from));
}

inline EvalResult eval_node(const AstNode& node, const Text& input) {
  switch (node.op) {
    case Op::Input: return input;
    case Op::ConstStr: return node.text;
    case Op::Concat: {
      auto lhs = eval_node(*node.children[0], input);
      if (!lhs) return lhs;
      auto rhs = eval_node(*node.children[1], input);
      if (!rhs) return rhs;
      return lhs.value() + rhs.value();
    }
    case Op::SubStr: {
      auto x = eval_node(*node.children[0], input);
      if (!x) return x;
      auto from = resolve_position(*node.children[1], x.value());
      if (auto* e = std::get_if<EvalError>(&from)) return *e;
      auto to = resolve_position(*node.children[2], x.value());
      if (auto* e = std::get_if<EvalError>(&to)) return *e;
      return slice(x.value(), std::get<std::int64_t>(from), std::get<std::int64_t>(to));
    }
    default:
      throw type_error("position nodes have no string value");
  }
}

inline EvalResult eval(const Program& p, const Text& input) { return eval_node(p.root(), input); }

// ---------------------------------------------------------------------------
// Exact length/character facts

/// Facts of the form len(y) = k and charAt(y, i) = c about one string.
struct FactSet {
  std::optional<std::int64_t> length;
  std::map<std::int64_t, char32_t> chars;

  friend bool operator==(const FactSet&, const FactSet&) = default;
};

inline FactSet facts_of(const Text& s) {
  FactSet f;
  f.length = static_cast<std::int64_t>(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) f.chars[static_cast<std::int64_t>(i)] = s[i];
  return f;
}

/// Child knowledge: facts for string children, resolved indices for positions.
using ChildFacts = std::variant<FactSet, std::int64_t>;

/// Every fact about the output of `node` derivable from the given child facts.
/// Partial child knowledge yields partial output knowledge.
inline FactSet exact_facts(const AstNode& node, std::span<const ChildFacts> children) {
  FactSet out;
  switch (node.op) {
    case Op::ConstStr:
      return facts_of(node.text);
    case Op::Concat: {
      const auto& lhs = std::get<FactSet>(children[0]);
      const auto& rhs = std::get<FactSet>(children[1]);
      if (lhs.length && rhs.length) out.length = *lhs.length + *rhs.length;
      for (auto [i, c] : lhs.chars) out.chars[i] = c;
      if (lhs.length)
        for (auto [i, c] : rhs.chars) out.chars[*lhs.length + i] = c;
      return out;
    }
    case Op::SubStr: {
      const auto& x = std::get<FactSet>(children[0]);
      auto from = std::get<std::int64_t>(children[1]);
      auto to = std::get<std::int64_t>(children[2]);
      out.length = to - from;
      for (auto [i, c] : x.chars)
        if (i >= from && i < to) out.chars[i - from] = c;
      return out;
    }
    default:
      return out;
  }
}

// ---------------------------------------------------------------------------
// Text format: s-expressions

class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

namespace detail {

inline void print_node(std::string& out, const AstNode& n) {
  out += '(';
  out += op_name(n.op);
  switch (n.op) {
    case Op::ConstStr:
      out += " \"";
      for (char32_t c : n.text) {
        if (c == U'"' || c == U'\\') out += '\\';
        if (c == U'\n') {
          out += "\\n";
          continue;
        }
        if (c == U'\t') {
          out += "\\t";
          continue;
        }
        append_utf8(out, c);
      }
      out += '"';
      break;
    case Op::AbsPos:
      out += ' ' + std::to_string(n.offset);
      break;
    case Op::CPos:
      out += ' ' + std::to_string(static_cast<std::uint32_t>(n.anchor)) + ' ' + std::to_string(n.offset);
      break;
    default:
      break;
  }
  for (const auto& c : n.children) {
    out += ' ';
    print_node(out, *c);
  }
  out += ')';
}

class SexprParser {
 public:
  explicit SexprParser(std::string_view text) : text_(text) {}

  NodePtr parse_all() {
    auto node = parse_node();
    skip_ws();
    if (pos_ != text_.size()) throw parse_error("trailing input", pos_);
    return node;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\n' || text_[pos_] == '\t' || text_[pos_] == '\r'))
      ++pos_;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size()) throw parse_error(std::string("expected '") + c + "' but input ended", pos_);
    if (text_[pos_] != c) throw parse_error(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  std::string symbol() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] >= 'a' && text_[pos_] <= 'z') ++pos_;
    if (start == pos_) throw parse_error("expected operator name", start);
    return std::string(text_.substr(start, pos_ - start));
  }

  std::int64_t integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    std::size_t digits = pos_;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
    if (digits == pos_) throw parse_error("expected integer", start);
    try {
      return std::stoll(std::string(text_.substr(start, pos_ - start)));
    } catch (const std::out_of_range&) {
      throw parse_error("integer out of range", start);
    }
  }

  Text string_literal() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ >= text_.size() || text_[pos_] != '"') throw parse_error("expected string literal", pos_);
    ++pos_;
    std::string raw;
    while (true) {
      if (pos_ >= text_.size()) throw parse_error("unterminated string literal", start);
      char c = text_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        if (pos_ >= text_.size()) throw parse_error("unterminated escape", pos_);
        char e = text_[pos_++];
        switch (e) {
          case '"': raw += '"'; break;
          case '\\': raw += '\\'; break;
          case 'n': raw += '\n'; break;
          case 't': raw += '\t'; break;
          default: throw parse_error("unknown escape", pos_ - 1);
        }
        continue;
      }
      raw += c;
    }
    try {
      return from_utf8(raw);
    } catch (const utf8_error& e) {
      throw parse_error(e.what(), start);
    }
  }

  NodePtr parse_node() {
    expect('(');
    std::size_t at = pos_;
    auto name = symbol();
    NodePtr node;
    try {
      if (name == "input") {
        node = make_input();
      } else if (name == "const") {
        node = make_const(string_literal());
      } else if (name == "abspos") {
        node = make_abs_pos(integer());
      } else if (name == "cpos") {
        auto cp = integer();
        if (cp < 0 || cp > 0x10FFFF) throw parse_error("code point out of range", at);
        auto j = integer();
        node = make_cpos(static_cast<char32_t>(cp), j);
      } else if (name == "concat") {
        auto a = parse_node();
        auto b = parse_node();
        node = make_concat(std::move(a), std::move(b));
      } else if (name == "substr") {
        auto x = parse_node();
        auto p1 = parse_node();
        auto p2 = parse_node();
        node = make_substr(std::move(x), std::move(p1), std::move(p2));
      } else {
        throw parse_error("unknown operator '" + name + "'", at);
      }
    } catch (const type_error& e) {
      throw parse_error(e.what(), at);
    }
    expect(')');
    return node;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline std::string print(const AstNode& node) {
  std::string out;
  detail::print_node(out, node);
  return out;
}

inline std::string print(const Program& p) { return print(p.root()); }

inline Program parse_program(std::string_view text) {
  auto node = detail::SexprParser(text).parse_all();
  if (op_sort(node->op) != Sort::String) throw parse_error("a program must produce a string", 0);
  return Program(std::move(node));
}

}  // namespace atlas

template <>
struct std::hash<atlas::Program> {
  std::size_t operator()(const atlas::Program& p) const noexcept { return p.hash(); }
};
