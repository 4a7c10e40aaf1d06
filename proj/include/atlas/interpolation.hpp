// atlas - learning program abstractions for example-guided synthesis
// Tree interpolation problems, a goal-directed interpolation procedure over
// length/char facts, an independent interpolant checker, and domain learning.

#pragma once

#include <atlas/domain.hpp>
#include <atlas/dsl.hpp>
#include <atlas/implication.hpp>

#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace atlas {

class not_spurious : public std::runtime_error {
 public:
  not_spurious() : std::runtime_error("program satisfies the example") {}
};

class evaluation_failed : public std::runtime_error {
 public:
  explicit evaluation_failed(EvalError e) : std::runtime_error("evaluation failed: " + std::string(to_string(e))), error(e) {}
  EvalError error;
};

class itp_failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Concrete value of a tree node under the example input: a string, a resolved
/// position, or nothing for the dummy root.
using NodeValue = std::variant<std::monostate, Text, std::int64_t>;

struct ItpNode {
  std::size_t id = 0;
  std::optional<std::size_t> parent;
  std::vector<std::size_t> children;
  const AstNode* ast = nullptr;  // null for the dummy root
  std::string label;
  NodeValue value;
};

/// T = (V, r, P, L): node 0 is the dummy root, nodes 1.. follow the program in
/// preorder.
struct TreeItpProblem {
  Program program;
  Text input;
  Text expected;
  std::vector<ItpNode> nodes;

  const ItpNode& root() const { return nodes.front(); }
};

namespace detail {

inline std::string quoted(const Text& s) {
  std::string out = "\"";
  for (char32_t c : s) {
    if (c == U'"' || c == U'\\') out += '\\';
    append_utf8(out, c);
  }
  return out + "\"";
}

inline std::string node_name(std::size_t id) { return "v" + std::to_string(id); }

inline std::size_t add_node(TreeItpProblem& t, const AstNode& ast, std::size_t parent) {
  const std::size_t id = t.nodes.size();
  t.nodes.push_back({});
  t.nodes[id].id = id;
  t.nodes[id].parent = parent;
  t.nodes[id].ast = &ast;
  t.nodes[parent].children.push_back(id);
  std::vector<std::size_t> kids;
  for (const auto& c : ast.children) kids.push_back(add_node(t, *c, id));

  auto& n = t.nodes[id];
  const std::string v = node_name(id);
  switch (ast.op) {
    case Op::Input:
      n.label = v + " = " + quoted(t.input);
      n.value = t.input;
      break;
    case Op::ConstStr:
      n.label = v + " = " + quoted(ast.text);
      n.value = ast.text;
      break;
    case Op::AbsPos:
    case Op::CPos: {
      n.label = v + " = " + print(ast) + " on " + quoted(t.input);
      auto r = resolve_position(ast, t.input);
      if (auto* e = std::get_if<EvalError>(&r)) throw evaluation_failed(*e);
      n.value = std::get<std::int64_t>(r);
      break;
    }
    case Op::Concat:
    case Op::SubStr: {
      n.label = v + " = " + std::string(op_name(ast.op)) + "(";
      for (std::size_t i = 0; i < kids.size(); ++i) n.label += (i ? ", " : "") + node_name(kids[i]);
      n.label += ")";
      auto r = eval_node(ast, t.input);
      if (!r) throw evaluation_failed(r.error());
      n.value = r.value();
      break;
    }
  }
  return id;
}

}  // namespace detail

/// ConstructTree: labels the dummy root with v1 = e_out, the input leaf with
/// its example value, constants with their literal and operators with their
/// semantics; every node also records its concrete value on e_in.
inline TreeItpProblem construct_tree(const Program& p, const Text& in, const Text& out) {
  auto result = eval(p, in);
  if (!result) throw evaluation_failed(result.error());
  if (result.value() == out) throw not_spurious();
  TreeItpProblem t{p, in, out, {}};
  t.nodes.push_back({});
  t.nodes[0].label = "v1 = " + detail::quoted(out);
  detail::add_node(t, p.root(), 0);
  return t;
}

/// I(v): false, true, an atomic fact about the node's value, or (fallback)
/// the node's exact value.
struct Annotation {
  enum class Form : std::uint8_t { True, False, Fact, Exact };
  Form form = Form::True;
  Predicate fact;

  static Annotation truth() { return {}; }
  static Annotation falsity() { return {Form::False, {}}; }
  static Annotation of(Predicate p) { return {Form::Fact, p}; }
  static Annotation exact() { return {Form::Exact, {}}; }

  friend bool operator==(const Annotation&, const Annotation&) = default;
};

using TreeInterpolant = std::vector<Annotation>;

inline std::string print(const Annotation& a, const NodeValue& value) {
  switch (a.form) {
    case Annotation::Form::True: return "true";
    case Annotation::Form::False: return "false";
    case Annotation::Form::Fact: return print(a.fact);
    case Annotation::Form::Exact:
      if (auto* s = std::get_if<Text>(&value)) return "= " + detail::quoted(*s);
      if (auto* i = std::get_if<std::int64_t>(&value)) return "= " + std::to_string(*i);
      return "?";
  }
  return "?";
}

namespace detail {

inline ArgFacts facts_of_annotation(const Annotation& a, const NodeValue& value) {
  const bool position = std::holds_alternative<std::int64_t>(value);
  switch (a.form) {
    case Annotation::Form::Exact:
      if (position) return std::optional<std::int64_t>(std::get<std::int64_t>(value));
      return StringFacts::exactly(std::get<Text>(value));
    case Annotation::Form::Fact:
      if (position) {
        if (a.fact.kind == Kind::PosEq) return std::optional<std::int64_t>(a.fact.a);
        return std::optional<std::int64_t>();
      }
      return StringFacts::from(std::span<const Predicate>(&a.fact, 1));
    default:
      if (position) return std::optional<std::int64_t>();
      return StringFacts{};
  }
}

/// Whether a node's own label (an exact value for leaves) entails `a`.
inline bool value_entails(const NodeValue& value, const Annotation& a) {
  switch (a.form) {
    case Annotation::Form::True:
    case Annotation::Form::Exact: return true;
    case Annotation::Form::False: return false;
    case Annotation::Form::Fact:
      if (auto* s = std::get_if<Text>(&value)) return gamma_contains(a.fact, *s);
      if (auto* i = std::get_if<std::int64_t>(&value)) return gamma_contains_index(a.fact, *i);
      return false;
  }
  return false;
}

inline bool locally_entailed(const TreeItpProblem& t, const TreeInterpolant& itp, std::size_t id) {
  const auto& n = t.nodes[id];
  if (n.children.empty()) return value_entails(n.value, itp[id]);
  const auto& a = itp[id];
  if (a.form == Annotation::Form::True) return true;
  if (a.form == Annotation::Form::False) return false;
  if (a.form == Annotation::Form::Exact) {
    for (auto c : n.children)
      if (itp[c].form != Annotation::Form::Exact) return false;
    return true;
  }
  std::vector<ArgFacts> args;
  for (auto c : n.children) args.push_back(facts_of_annotation(itp[c], t.nodes[c].value));
  return implies(*n.ast, args, a.fact);
}

/// Annotations for the children of `n` that justify `goal` at `n`.
inline std::vector<Annotation> justify(const ItpNode& n, const std::vector<const ItpNode*>& kids, const Predicate& goal) {
  std::vector<Annotation> out(kids.size(), Annotation::truth());
  const bool length_goal = goal.kind == Kind::LenEq || goal.kind == Kind::LenNeq;
  if (n.ast->op == Op::Concat) {
    const auto& a = std::get<Text>(kids[0]->value);
    const auto& b = std::get<Text>(kids[1]->value);
    const auto la = static_cast<std::int64_t>(a.size());
    if (length_goal) {
      out[0] = Annotation::of(Predicate::len_eq(la));
      out[1] = Annotation::of(Predicate::len_eq(static_cast<std::int64_t>(b.size())));
    } else if (goal.a < la) {
      out[0] = Annotation::of(Predicate::char_eq(goal.a, a[static_cast<std::size_t>(goal.a)]));
    } else {
      const auto j = goal.a - la;
      out[0] = Annotation::of(Predicate::len_eq(la));
      if (j < static_cast<std::int64_t>(b.size())) out[1] = Annotation::of(Predicate::char_eq(j, b[static_cast<std::size_t>(j)]));
    }
  } else if (n.ast->op == Op::SubStr) {
    const auto& x = std::get<Text>(kids[0]->value);
    const auto i1 = std::get<std::int64_t>(kids[1]->value);
    const auto i2 = std::get<std::int64_t>(kids[2]->value);
    out[1] = Annotation::of(Predicate::pos_eq(i1));
    out[2] = Annotation::of(Predicate::pos_eq(i2));
    if (!length_goal) {
      const auto j = i1 + goal.a;
      if (j >= 0 && j < static_cast<std::int64_t>(x.size())) out[0] = Annotation::of(Predicate::char_eq(j, x[static_cast<std::size_t>(j)]));
    }
  }
  return out;
}

inline void annotate(const TreeItpProblem& t, TreeInterpolant& itp, std::size_t id, Annotation a) {
  itp[id] = a;
  const auto& n = t.nodes[id];
  if (n.children.empty()) return;
  std::vector<const ItpNode*> kids;
  for (auto c : n.children) kids.push_back(&t.nodes[c]);
  std::vector<Annotation> need(kids.size(), Annotation::exact());
  if (a.form == Annotation::Form::Fact) need = justify(n, kids, a.fact);
  for (std::size_t i = 0; i < kids.size(); ++i) itp[n.children[i]] = need[i];
  if (!locally_entailed(t, itp, id)) {
    // Fall back to annotating every child with its exact value.
    for (std::size_t i = 0; i < kids.size(); ++i) need[i] = Annotation::exact();
    for (std::size_t i = 0; i < kids.size(); ++i) itp[n.children[i]] = need[i];
    if (!locally_entailed(t, itp, id)) throw itp_failure("no local justification for " + n.label);
  }
  for (std::size_t i = 0; i < kids.size(); ++i) annotate(t, itp, n.children[i], need[i]);
}

}  // namespace detail

/// Discriminating fact separating the actual output from the expected one:
/// a length mismatch if there is one, otherwise the first differing character.
inline Predicate discriminator(const Text& actual, const Text& expected) {
  if (actual.size() != expected.size()) return Predicate::len_neq(static_cast<std::int64_t>(expected.size()));
  for (std::size_t i = 0; i < actual.size(); ++i)
    if (actual[i] != expected[i]) return Predicate::char_neq(static_cast<std::int64_t>(i), expected[i]);
  throw itp_failure("values are equal; nothing to discriminate");
}

/// FindTreeItp.
inline TreeInterpolant find_tree_itp(const TreeItpProblem& t) {
  TreeInterpolant itp(t.nodes.size(), Annotation::truth());
  itp[0] = Annotation::falsity();
  const auto& top = t.nodes[1];
  detail::annotate(t, itp, 1, Annotation::of(discriminator(std::get<Text>(top.value), t.expected)));
  return itp;
}

/// Independent check of the interpolant conditions: I(root) = false, and for
/// every node the children's annotations together with the node's label
/// entail its own annotation. Returns the offending node ids.
inline std::vector<std::size_t> check_tree_itp(const TreeItpProblem& t, const TreeInterpolant& itp) {
  std::vector<std::size_t> bad;
  if (itp.size() != t.nodes.size()) return {0};
  // Root: I(v1) together with v1 = e_out must be unsatisfiable.
  const auto& a = itp[1];
  bool root_ok = itp[0].form == Annotation::Form::False;
  if (a.form == Annotation::Form::Fact)
    root_ok = root_ok && !gamma_contains(a.fact, t.expected);
  else if (a.form == Annotation::Form::Exact)
    root_ok = root_ok && std::get<Text>(t.nodes[1].value) != t.expected;
  else
    root_ok = false;
  if (!root_ok) bad.push_back(0);
  for (std::size_t id = 1; id < t.nodes.size(); ++id)
    if (!detail::locally_entailed(t, itp, id)) bad.push_back(id);
  return bad;
}

/// Templates of the non-root fact annotations (position facts excluded).
inline std::set<Template> extract_templates(const TreeInterpolant& itp) {
  std::set<Template> out;
  for (std::size_t id = 1; id < itp.size(); ++id)
    if (itp[id].form == Annotation::Form::Fact && is_string_kind(itp[id].fact.kind) && itp[id].fact.kind != Kind::Top)
      out.insert(make_symbolic(itp[id].fact));
  return out;
}

struct Example {
  Text input;
  Text output;

  friend bool operator==(const Example&, const Example&) = default;
};

/// LearnAbstractDomain: union of the templates extracted from the interpolant
/// of every example the program violates.
inline std::set<Template> learn_abstract_domain(const Program& p, std::span<const Example> examples) {
  std::set<Template> out;
  for (const auto& e : examples) {
    auto r = eval(p, e.input);
    if (r && r.value() == e.output) continue;
    auto tree = construct_tree(p, e.input, e.output);
    auto itp = find_tree_itp(tree);
    auto ts = extract_templates(itp);
    out.insert(ts.begin(), ts.end());
  }
  return out;
}

/// Debug dump: one line per node, `node-id | label | concrete-value | interpolant`.
inline std::string dump(const TreeItpProblem& t, const TreeInterpolant& itp) {
  std::string out;
  for (const auto& n : t.nodes) {
    std::string value = "-";
    if (auto* s = std::get_if<Text>(&n.value)) value = detail::quoted(*s);
    if (auto* i = std::get_if<std::int64_t>(&n.value)) value = std::to_string(*i);
    out += detail::node_name(n.id) + " | " + n.label + " | " + value + " | " + print(itp[n.id], n.value) + "\n";
  }
  return out;
}

}  // namespace atlas
