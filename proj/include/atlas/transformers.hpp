// atlas - learning program abstractions for example-guided synthesis
// Data-driven synthesis of affine abstract transformers and their application.

#pragma once

#include <atlas/domain.hpp>
#include <atlas/dsl.hpp>
#include <atlas/implication.hpp>
#include <atlas/rational.hpp>
#include <atlas/sampling.hpp>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <thread>
#include <tuple>
#include <variant>
#include <vector>

namespace atlas {

/// One construct instance for transformer purposes: an operator, plus the
/// literal for the nullary ConstStr family.
struct Construct {
  Op op = Op::Concat;
  Text literal;

  friend auto operator<=>(const Construct&, const Construct&) = default;
};

inline std::string describe(const Construct& c) {
  std::string s(op_name(c.op));
  if (c.op == Op::ConstStr) s += " \"" + to_utf8(c.literal) + "\"";
  return s;
}

/// Argument sorts of a construct, in order.
inline std::vector<Sort> argument_sorts(Op op) {
  switch (op) {
    case Op::Concat: return {Sort::String, Sort::String};
    case Op::SubStr: return {Sort::String, Sort::Position, Sort::Position};
    default: return {};
  }
}

/// Prototype node carrying the operator and literal of a construct.
inline NodePtr prototype(const Construct& c) {
  switch (c.op) {
    case Op::Concat: return make_concat(make_input(), make_input());
    case Op::SubStr: return make_substr(make_input(), make_abs_pos(0), make_abs_pos(0));
    case Op::ConstStr: return make_const(c.literal);
    default: throw type_error("no transformer for this construct");
  }
}

/// One accepted output conjunct chi'(y, P . [c, 1]).
struct TransformerOutput {
  Template templ;
  RationalMatrix matrix;  // holes(templ) x (|c| + 1)

  friend bool operator==(const TransformerOutput&, const TransformerOutput&) = default;
};

struct Transformer {
  Construct construct;
  std::vector<Template> inputs;
  std::vector<TransformerOutput> outputs;  // empty: the top transformer
  std::uint64_t seed = 0;
  std::size_t validated_samples = 0;

  std::size_t columns() const {
    std::size_t n = 1;
    for (auto t : inputs) n += t.holes();
    return n;
  }

  friend bool operator==(const Transformer&, const Transformer&) = default;
};

inline std::string slot_name(const Construct& c, std::span<const Template> inputs) {
  std::string s = describe(c) + " [";
  for (std::size_t i = 0; i < inputs.size(); ++i) s += (i ? ", " : "") + print(inputs[i]);
  return s + "]";
}

/// Transformers keyed by construct and input template tuple.
class TransformerTable {
 public:
  using Key = std::pair<Construct, std::vector<Template>>;

  void insert(Transformer t) {
    Key key{t.construct, t.inputs};
    entries_[std::move(key)] = std::move(t);
  }

  const Transformer* find(const Construct& c, const std::vector<Template>& inputs) const {
    auto it = entries_.find(Key{c, inputs});
    return it == entries_.end() ? nullptr : &it->second;
  }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// Entries in key order.
  std::vector<const Transformer*> entries() const {
    std::vector<const Transformer*> out;
    for (const auto& [k, v] : entries_) out.push_back(&v);
    return out;
  }

  /// Entries for one operator (every literal of the ConstStr family).
  std::vector<const Transformer*> entries_for(Op op) const {
    std::vector<const Transformer*> out;
    for (const auto& [k, v] : entries_)
      if (k.first.op == op) out.push_back(&v);
    return out;
  }

  friend bool operator==(const TransformerTable&, const TransformerTable&) = default;

 private:
  std::map<Key, Transformer> entries_;
};

// ---------------------------------------------------------------------------
// Sampling concrete instances of a construct

using ArgValue = std::variant<Text, std::int64_t>;

struct ConcreteInstance {
  std::vector<ArgValue> args;
  Text output;
};

inline std::optional<ConcreteInstance> sample_instance(const Construct& c, SamplingOracle& oracle) {
  ConcreteInstance inst;
  switch (c.op) {
    case Op::Concat: {
      auto a = oracle.string();
      auto b = oracle.string();
      inst.output = a + b;
      inst.args = {std::move(a), std::move(b)};
      return inst;
    }
    case Op::SubStr: {
      auto x = oracle.string();
      const auto n = static_cast<std::int64_t>(x.size());
      auto i1 = oracle.uniform(0, n);
      auto i2 = oracle.uniform(0, n);
      if (i1 > i2) std::swap(i1, i2);
      auto out = slice(x, i1, i2);
      if (!out) return std::nullopt;
      inst.output = out.value();
      inst.args = {std::move(x), i1, i2};
      return inst;
    }
    case Op::ConstStr:
      inst.output = c.literal;
      return inst;
    default:
      return std::nullopt;
  }
}

inline ConstantPool instance_pool(const ConcreteInstance& inst) {
  std::vector<Text> strings{inst.output};
  for (const auto& a : inst.args)
    if (auto* s = std::get_if<Text>(&a)) strings.push_back(*s);
  return ConstantPool::for_strings(strings);
}

/// Pool for abstracting the output of an instance. Output constants are affine
/// combinations of input constants, so the range must cover sums of input
/// pool constants.
inline ConstantPool output_pool(const ConcreteInstance& inst) {
  auto pool = instance_pool(inst);
  const std::int64_t limit = 2 * (16 + SamplingOracle::kMaxLength);
  std::set<std::int64_t> lens(pool.lengths.begin(), pool.lengths.end());
  for (std::int64_t k = 0; k <= limit; ++k) lens.insert(k);
  pool.lengths.assign(lens.begin(), lens.end());
  pool.indices.clear();
  for (std::int64_t i = 0; i < limit; ++i) pool.indices.push_back(i);
  return pool;
}

/// Best abstractions of each argument under its input template.
inline std::vector<std::vector<Predicate>> abstract_arguments(const ConcreteInstance& inst, std::span<const Template> inputs,
                                                              const ConstantPool& pool) {
  std::vector<std::vector<Predicate>> out;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (auto* s = std::get_if<Text>(&inst.args[i]))
      out.push_back(abstract(*s, inputs[i], pool));
    else
      out.push_back({Predicate::pos_eq(std::get<std::int64_t>(inst.args[i]))});
  }
  return out;
}

inline std::vector<ArgFacts> facts_for(std::span<const Predicate> combo) {
  std::vector<ArgFacts> facts;
  for (const auto& p : combo) {
    if (p.kind == Kind::PosEq)
      facts.emplace_back(std::optional<std::int64_t>(p.a));
    else
      facts.emplace_back(StringFacts::from(std::span<const Predicate>(&p, 1)));
  }
  return facts;
}

/// Input constant vector [c..., 1] of a combination of argument predicates.
inline std::vector<Rational> constant_vector(std::span<const Predicate> combo) {
  std::vector<Rational> v;
  for (const auto& p : combo)
    for (auto a : p.args()) v.emplace_back(a);
  v.emplace_back(1);
  return v;
}

/// Picks up to `limit` combinations (one predicate per argument); all of them
/// when there are few enough, otherwise a uniform random selection.
inline std::vector<std::vector<Predicate>> choose_combinations(const std::vector<std::vector<Predicate>>& choices,
                                                               std::size_t limit, SamplingOracle& oracle) {
  std::size_t total = 1;
  for (const auto& c : choices) {
    if (c.empty()) return {};
    total = (total > limit) ? total : total * c.size();
  }
  std::vector<std::vector<Predicate>> out;
  if (total <= limit) {
    std::vector<std::size_t> idx(choices.size(), 0);
    while (true) {
      std::vector<Predicate> combo;
      for (std::size_t i = 0; i < choices.size(); ++i) combo.push_back(choices[i][idx[i]]);
      out.push_back(std::move(combo));
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == choices[k].size()) idx[k++] = 0;
      if (k == idx.size()) break;
    }
    return out;
  }
  for (std::size_t n = 0; n < limit; ++n) {
    std::vector<Predicate> combo;
    for (const auto& c : choices) combo.push_back(c[static_cast<std::size_t>(oracle.uniform(0, static_cast<std::int64_t>(c.size()) - 1))]);
    out.push_back(std::move(combo));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Example generation and solving

struct LearnConfig {
  std::uint64_t seed = 1;
  std::size_t max_samples = 5000;
  std::size_t validity_samples = 2000;
  /// Give up on a slot after this many draws without a single valid row.
  std::size_t max_barren_samples = 250;
  /// Give up once the rank has not grown for this many draws.
  std::size_t max_stale_samples = 1000;
  std::size_t combinations_per_draw = 32;
  std::vector<char32_t> alphabet;
  std::vector<Text> literals;
  unsigned threads = 0;
};

struct ExampleRow {
  std::vector<Predicate> inputs;
  Predicate output;
};

enum class GenerateStatus : std::uint8_t { FullRank, InsufficientRank, Inconsistent };

inline std::string_view to_string(GenerateStatus s) {
  switch (s) {
    case GenerateStatus::FullRank: return "full-rank";
    case GenerateStatus::InsufficientRank: return "insufficient-rank";
    case GenerateStatus::Inconsistent: return "inconsistent";
  }
  return "?";
}

struct ExampleSet {
  GenerateStatus status = GenerateStatus::InsufficientRank;
  std::vector<ExampleRow> rows;
  std::size_t samples = 0;

  /// Input matrix A (one row per example, constants then a final 1).
  RationalMatrix a_matrix() const {
    RationalMatrix m;
    for (const auto& r : rows) m.append_row(constant_vector(r.inputs));
    return m;
  }

  RationalMatrix b_matrix() const {
    RationalMatrix m;
    for (const auto& r : rows) {
      std::vector<Rational> row;
      for (auto v : r.output.args()) row.emplace_back(v);
      m.append_row(row);
    }
    return m;
  }
};

/// Abstract inputs together with every output instantiation that is a sound
/// consequence of them. Equality outputs admit at most one; inequality outputs
/// may admit several (len(x1)=3, len(x2)!=2 entails len(y)!=0 as well as
/// len(y)!=5).
struct CandidateRow {
  std::vector<Predicate> inputs;
  std::vector<Predicate> outputs;
};

inline std::vector<Rational> rational_args(const Predicate& p) {
  std::vector<Rational> v;
  for (auto a : p.args()) v.emplace_back(a);
  return v;
}

namespace detail {

struct DisjunctiveSearch {
  const std::vector<CandidateRow>& rows;
  std::vector<std::size_t> order;
  std::vector<std::size_t> chosen;
  std::size_t budget;

  bool run(std::size_t k, const EchelonSystem& sys) {
    if (budget == 0) return false;
    --budget;
    if (k == order.size()) return true;
    const auto& row = rows[order[k]];
    const auto lhs = constant_vector(row.inputs);
    if (auto forced = sys.predict(lhs)) {
      for (std::size_t v = 0; v < row.outputs.size(); ++v)
        if (rational_args(row.outputs[v]) == *forced) {
          chosen[order[k]] = v;
          return run(k + 1, sys);
        }
      return false;
    }
    for (std::size_t v = 0; v < row.outputs.size(); ++v) {
      EchelonSystem next = sys;
      next.add(lhs, rational_args(row.outputs[v]));
      chosen[order[k]] = v;
      if (run(k + 1, next)) return true;
    }
    return false;
  }
};

}  // namespace detail

/// Picks one output per candidate row so that a single affine function fits
/// all of them. Rows with fewer alternatives are committed first; the search
/// gives up after `budget` steps.
inline std::optional<std::vector<ExampleRow>> choose_consistent_rows(const std::vector<CandidateRow>& rows,
                                                                     std::size_t columns, std::size_t holes,
                                                                     std::size_t budget = 20000) {
  detail::DisjunctiveSearch search{rows, {}, std::vector<std::size_t>(rows.size(), 0), budget};
  for (std::size_t i = 0; i < rows.size(); ++i) search.order.push_back(i);
  std::stable_sort(search.order.begin(), search.order.end(),
                   [&](std::size_t a, std::size_t b) { return rows[a].outputs.size() < rows[b].outputs.size(); });
  if (!search.run(0, EchelonSystem(columns, holes))) return std::nullopt;
  std::vector<ExampleRow> out;
  for (std::size_t i = 0; i < rows.size(); ++i) out.push_back({rows[i].inputs, rows[i].outputs[search.chosen[i]]});
  return out;
}

/// Samples concrete instances of `construct`, abstracts them, and collects the
/// sound abstract rows until the input matrix reaches full column rank.
/// Equality-style rows (a single admissible output) are solved incrementally;
/// when inequality rows are needed, enough of them are gathered to pin the
/// function and one admissible output per row is chosen consistently.
inline ExampleSet generate_examples(const Construct& construct, Template output, std::span<const Template> inputs,
                                    SamplingOracle& oracle, const LearnConfig& cfg) {
  constexpr std::size_t kMinAmbiguousRows = 64;
  ExampleSet es;
  const auto node = prototype(construct);
  std::size_t columns = 1;
  for (auto t : inputs) columns += t.holes();
  EchelonSystem unique_rows(columns, output.holes());
  EchelonSystem span(columns, 0);
  std::vector<CandidateRow> candidates;
  std::size_t last_growth = 0;
  std::size_t draws = 0;
  for (draws = 1; draws <= cfg.max_samples; ++draws) {
    auto inst = sample_instance(construct, oracle);
    if (!inst) continue;
    const auto pool = instance_pool(*inst);
    const auto choices = abstract_arguments(*inst, inputs, pool);
    const auto outs = abstract(inst->output, output, output_pool(*inst));
    for (const auto& combo : choose_combinations(choices, cfg.combinations_per_draw, oracle)) {
      const auto facts = facts_for(combo);
      CandidateRow row{combo, {}};
      for (const auto& out : outs)
        if (implies(*node, facts, out)) row.outputs.push_back(out);
      if (row.outputs.empty()) continue;
      const auto lhs = constant_vector(combo);
      if (span.add(lhs, {})) last_growth = draws;
      if (row.outputs.size() == 1) {
        unique_rows.add(lhs, rational_args(row.outputs[0]));
        if (!unique_rows.consistent()) {
          es.samples = draws;
          es.status = GenerateStatus::Inconsistent;
          return es;
        }
      }
      candidates.push_back(std::move(row));
    }
    if (unique_rows.full_rank() || (span.full_rank() && candidates.size() >= kMinAmbiguousRows)) break;
    if (candidates.empty() && draws >= cfg.max_barren_samples) break;
    if (!candidates.empty() && draws - last_growth >= cfg.max_stale_samples) break;
  }
  es.samples = std::min(draws, cfg.max_samples);
  if (unique_rows.full_rank()) {
    for (const auto& r : candidates)
      if (r.outputs.size() == 1) es.rows.push_back({r.inputs, r.outputs[0]});
    es.status = GenerateStatus::FullRank;
    return es;
  }
  if (!span.full_rank()) {
    es.status = GenerateStatus::InsufficientRank;
    return es;
  }
  auto rows = choose_consistent_rows(candidates, columns, output.holes());
  if (!rows) {
    es.status = GenerateStatus::Inconsistent;
    return es;
  }
  es.rows = std::move(*rows);
  es.status = GenerateStatus::FullRank;
  return es;
}

/// Output predicate chi'(P . c); nothing when a hole value is not an integer.
inline std::optional<Predicate> apply_output(const TransformerOutput& out, std::span<const std::int64_t> constants) {
  std::vector<std::int64_t> holes;
  for (std::size_t r = 0; r < out.matrix.rows(); ++r) {
    Rational v = out.matrix(r, out.matrix.cols() - 1);
    for (std::size_t c = 0; c + 1 < out.matrix.cols(); ++c)
      if (out.matrix(r, c) != 0) v += out.matrix(r, c) * constants[c];
    if (!is_integral(v)) return std::nullopt;
    holes.push_back(static_cast<std::int64_t>(boost::multiprecision::numerator(v)));
  }
  return Predicate::instantiate(out.templ, holes);
}

inline std::vector<std::int64_t> constants_of(std::span<const Predicate> combo) {
  std::vector<std::int64_t> v;
  for (const auto& p : combo)
    for (auto a : p.args()) v.push_back(a);
  return v;
}

/// Refutation-by-sampling validity check of one candidate output. Each draw
/// abstracts a fresh concrete instance, instantiates the candidate on a few
/// input predicate combinations, and rejects when the concrete output or the
/// local implication contradicts it.
inline bool check_valid(const Construct& construct, std::span<const Template> inputs, const TransformerOutput& candidate,
                        SamplingOracle& oracle, std::size_t samples, std::size_t combos_per_sample = 4) {
  if (candidate.templ.kind == Kind::Top) return true;
  const auto node = prototype(construct);
  for (std::size_t n = 0; n < samples; ++n) {
    auto inst = sample_instance(construct, oracle);
    if (!inst) continue;
    const auto pool = instance_pool(*inst);
    const auto choices = abstract_arguments(*inst, inputs, pool);
    for (const auto& combo : choose_combinations(choices, combos_per_sample, oracle)) {
      auto pred = apply_output(candidate, constants_of(combo));
      if (!pred || !gamma_contains(*pred, inst->output)) return false;
      if (!implies(*node, facts_for(combo), *pred)) return false;
    }
  }
  return true;
}

/// Learns the affine function for one (construct, inputs, output template)
/// slot, or nothing when no full-rank, integral, valid function was found.
inline std::optional<TransformerOutput> learn_output(const Construct& construct, std::span<const Template> inputs,
                                                     Template output, std::uint64_t seed, const LearnConfig& cfg) {
  SamplingOracle oracle(seed, cfg.alphabet);
  auto es = generate_examples(construct, output, inputs, oracle, cfg);
  if (es.status != GenerateStatus::FullRank) return std::nullopt;
  auto p = solve_linear(es.a_matrix(), es.b_matrix());
  if (!p) return std::nullopt;
  for (std::size_t r = 0; r < p->rows(); ++r)
    for (std::size_t c = 0; c < p->cols(); ++c)
      if (!is_integral((*p)(r, c))) return std::nullopt;
  TransformerOutput candidate{output, *p};
  SamplingOracle validator(derive_seed(seed, "validate"), cfg.alphabet);
  if (!check_valid(construct, inputs, candidate, validator, cfg.validity_samples)) return std::nullopt;
  return candidate;
}

/// Every (construct, input tuple) slot for a domain. Position arguments always
/// use the exact position abstraction.
inline std::vector<std::pair<Construct, std::vector<Template>>> slots_for(const Domain& domain,
                                                                          std::span<const Text> literals) {
  std::vector<std::pair<Construct, std::vector<Template>>> slots;
  for (auto t1 : domain)
    for (auto t2 : domain) slots.push_back({Construct{Op::Concat, {}}, {t1, t2}});
  for (auto t : domain) slots.push_back({Construct{Op::SubStr, {}}, {t, Template{Kind::PosEq}, Template{Kind::PosEq}}});
  for (const auto& s : literals) slots.push_back({Construct{Op::ConstStr, s}, {}});
  return slots;
}

inline Transformer learn_slot(const Construct& construct, const std::vector<Template>& inputs, const Domain& domain,
                              const LearnConfig& cfg) {
  Transformer t;
  t.construct = construct;
  t.inputs = inputs;
  t.seed = derive_seed(cfg.seed, slot_name(construct, inputs));
  t.validated_samples = cfg.validity_samples;
  for (auto out : domain) {
    if (out.kind == Kind::Top) continue;
    auto learned = learn_output(construct, inputs, out, derive_seed(t.seed, print(out)), cfg);
    if (learned) t.outputs.push_back(std::move(*learned));
  }
  return t;
}

/// Builds the full transformer table for a domain. Slots are independent and
/// seeded from (seed, slot), so the result does not depend on `cfg.threads`.
inline TransformerTable learn_transformers(const Domain& domain, const LearnConfig& cfg) {
  const auto slots = slots_for(domain, cfg.literals);
  std::vector<Transformer> learned(slots.size());
  unsigned workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(slots.size(), 1)));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < slots.size(); i = next++)
      learned[i] = learn_slot(slots[i].first, slots[i].second, domain, cfg);
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  TransformerTable table;
  for (auto& t : learned) table.insert(std::move(t));
  return table;
}

/// Post-hoc soundness fuzzing: number of sampled instantiations on which the
/// transformer's claim fails (concretely or as a local implication).
inline std::size_t count_refutations(const Transformer& t, std::uint64_t seed, std::size_t samples,
                                     const std::vector<char32_t>& alphabet = {}) {
  SamplingOracle oracle(seed, alphabet);
  const auto node = prototype(t.construct);
  std::size_t failures = 0;
  for (std::size_t n = 0; n < samples; ++n) {
    auto inst = sample_instance(t.construct, oracle);
    if (!inst) continue;
    const auto pool = instance_pool(*inst);
    const auto choices = abstract_arguments(*inst, t.inputs, pool);
    auto combos = choose_combinations(choices, 1, oracle);
    if (combos.empty()) continue;
    const auto constants = constants_of(combos[0]);
    const auto facts = facts_for(combos[0]);
    for (const auto& out : t.outputs) {
      auto pred = apply_output(out, constants);
      if (!pred || !gamma_contains(*pred, inst->output) || !implies(*node, facts, *pred)) {
        ++failures;
        break;
      }
    }
  }
  return failures;
}

// ---------------------------------------------------------------------------
// Applying transformers

namespace detail {

/// Whether column block `arg` of the transformer inputs influences `out`.
inline bool uses_argument(const TransformerOutput& out, std::span<const Template> inputs, std::size_t arg) {
  std::size_t start = 0;
  for (std::size_t i = 0; i < arg; ++i) start += inputs[i].holes();
  for (std::size_t r = 0; r < out.matrix.rows(); ++r)
    for (std::size_t c = start; c < start + inputs[arg].holes(); ++c)
      if (out.matrix(r, c) != 0) return true;
  return false;
}

inline bool valid_claim(const Predicate& p) {
  switch (p.kind) {
    case Kind::LenEq: return p.a >= 0;
    case Kind::CharAtEq:
    case Kind::CharAtNeq: return p.a >= 0 && p.b >= 0 && p.b <= 0x10FFFF;
    default: return true;
  }
}

}  // namespace detail

/// Applies every matching table entry to the argument states, instantiating
/// outputs over each combination of argument conjuncts the output depends on,
/// and meets the results. Missing entries contribute top.
inline AbstractValue apply_transformer(std::span<const Transformer* const> entries, const Construct& construct,
                                       std::span<const AbstractValue> args) {
  for (const auto& a : args)
    if (a.is_bottom()) return AbstractValue::bottom();
  std::vector<std::map<Kind, std::vector<const Predicate*>>> by_kind(args.size());
  for (std::size_t i = 0; i < args.size(); ++i)
    for (const auto& p : args[i].conjuncts()) by_kind[i][p.kind].push_back(&p);

  std::vector<Predicate> claims;
  static const Predicate kTop = Predicate::top();
  for (const Transformer* t : entries) {
    if (t->construct != construct || t->inputs.size() != args.size()) continue;
    bool applicable = true;
    for (std::size_t i = 0; i < args.size() && applicable; ++i)
      if (t->inputs[i].kind != Kind::Top && !by_kind[i].contains(t->inputs[i].kind)) applicable = false;
    if (!applicable) continue;
    for (const auto& out : t->outputs) {
      std::vector<std::vector<const Predicate*>> choices(args.size());
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (t->inputs[i].kind == Kind::Top) {
          choices[i] = {&kTop};
          continue;
        }
        const auto& avail = by_kind[i].at(t->inputs[i].kind);
        if (detail::uses_argument(out, t->inputs, i))
          choices[i] = avail;
        else
          choices[i] = {avail.front()};
      }
      std::vector<std::size_t> idx(args.size(), 0);
      while (true) {
        std::vector<std::int64_t> constants;
        for (std::size_t i = 0; i < args.size(); ++i)
          if (t->inputs[i].kind != Kind::Top)
            for (auto v : choices[i][idx[i]]->args()) constants.push_back(v);
        if (auto claim = apply_output(out, constants); claim && detail::valid_claim(*claim)) claims.push_back(*claim);
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == choices[k].size()) idx[k++] = 0;
        if (k == idx.size()) break;
      }
    }
  }
  return AbstractValue::of(claims);
}

inline AbstractValue apply_transformer(const TransformerTable& table, const Construct& construct,
                                       std::span<const AbstractValue> args) {
  const auto entries = table.entries_for(construct.op);
  return apply_transformer(std::span<const Transformer* const>(entries), construct, args);
}

/// Abstract value of a position leaf on one input: its exact index, or bottom
/// when it does not resolve.
inline AbstractValue position_state(const AstNode& pos, const Text& input) {
  auto r = resolve_position(pos, input);
  if (auto* i = std::get_if<std::int64_t>(&r)) return AbstractValue::of({Predicate::pos_eq(*i)});
  return AbstractValue::bottom();
}

/// Abstract semantics of a whole program on one input. Leaves take their best
/// abstraction; subterms whose concrete evaluation fails denote the empty set.
inline AbstractValue abstract_eval(const AstNode& node, const Text& input, const Domain& domain,
                                   const TransformerTable& table, const ConstantPool& pool) {
  switch (node.op) {
    case Op::Input: return alpha(input, domain, pool);
    case Op::ConstStr: return alpha(node.text, domain, pool);
    case Op::AbsPos:
    case Op::CPos: return position_state(node, input);
    default: break;
  }
  if (!eval_node(node, input)) return AbstractValue::bottom();
  std::vector<AbstractValue> args;
  for (const auto& c : node.children) args.push_back(abstract_eval(*c, input, domain, table, pool));
  return apply_transformer(table, Construct{node.op, {}}, args);
}

}  // namespace atlas
