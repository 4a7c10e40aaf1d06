// atlas - learning program abstractions for example-guided synthesis
// Abstraction-guided synthesizer: bottom-up enumeration in rank order with
// per-example abstract states, observational-equivalence dedup and abstract
// pruning, plus the concrete check loop around it.

#pragma once

#include <atlas/domain.hpp>
#include <atlas/dsl.hpp>
#include <atlas/interpolation.hpp>
#include <atlas/transformers.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace atlas {

struct SynthesisTask {
  std::string name;
  std::vector<Example> examples;
  std::vector<Text> literals;
};

/// An abstract domain together with the transformers learned for it.
struct Abstraction {
  Domain domain = top_domain();
  TransformerTable table;

  static Abstraction top() { return {}; }
};

struct AgsConfig {
  std::size_t max_ast_size = 14;
  std::uint64_t max_candidates = 200'000'000;
  std::chrono::milliseconds timeout{60000};
  std::size_t max_constant_length = 6;
  /// Verify abstract soundness of every enumerated candidate (slow).
  bool check_soundness = false;
};

struct SearchStats {
  std::uint64_t enumerated = 0;
  std::uint64_t pruned_abstract = 0;
  std::uint64_t deduped = 0;

  SearchStats& operator+=(const SearchStats& o) {
    enumerated += o.enumerated;
    pruned_abstract += o.pruned_abstract;
    deduped += o.deduped;
    return *this;
  }
  friend bool operator==(const SearchStats&, const SearchStats&) = default;
};

enum class StopReason : std::uint8_t { Found, Exhausted, CandidateLimit, Timeout };

inline std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::Found: return "found";
    case StopReason::Exhausted: return "exhausted";
    case StopReason::CandidateLimit: return "candidate-limit";
    case StopReason::Timeout: return "timeout";
  }
  return "?";
}

class soundness_violation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline bool is_correct(const Program& p, const SynthesisTask& task) {
  for (const auto& e : task.examples) {
    auto r = eval(p, e.input);
    if (!r || r.value() != e.output) return false;
  }
  return true;
}

/// Constant pool of the enumerator: every substring of an output up to
/// `max_len` characters plus the task literals, in rank order.
inline std::vector<Text> constant_pool(const SynthesisTask& task, std::size_t max_len) {
  std::set<Text> seen;
  for (const auto& e : task.examples)
    for (std::size_t i = 0; i < e.output.size(); ++i)
      for (std::size_t n = 1; n <= max_len && i + n <= e.output.size(); ++n) seen.insert(e.output.substr(i, n));
  for (const auto& l : task.literals) seen.insert(l);
  std::vector<Text> out(seen.begin(), seen.end());
  std::stable_sort(out.begin(), out.end(), [](const Text& a, const Text& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

inline ConstantPool synthesis_pool(const SynthesisTask& task) {
  std::vector<Text> strings;
  std::int64_t longest = 16;
  for (const auto& e : task.examples) {
    strings.push_back(e.input);
    strings.push_back(e.output);
    longest = std::max<std::int64_t>(longest, static_cast<std::int64_t>(e.output.size()));
  }
  strings.insert(strings.end(), task.literals.begin(), task.literals.end());
  return ConstantPool::for_strings(strings, longest);
}

/// Resumable bottom-up enumerator. Candidates are produced in strictly
/// increasing rank; each one is evaluated concretely and abstractly on every
/// example input. A candidate whose concrete outputs and abstract states match
/// an earlier one is a duplicate. A candidate is accepted when every expected
/// output lies in the concretization of its abstract state.
class Enumerator {
 public:
  Enumerator(const SynthesisTask& task, const Abstraction& abs, const AgsConfig& cfg)
      : task_(task), abs_(abs), cfg_(cfg), pool_(synthesis_pool(task)), start_(std::chrono::steady_clock::now()) {
    if (task.examples.empty()) throw std::invalid_argument("a synthesis task needs at least one example");
    concat_entries_ = abs.table.entries_for(Op::Concat);
    substr_entries_ = abs.table.entries_for(Op::SubStr);
    constants_ = constant_pool(task, cfg.max_constant_length);
    build_positions();
  }
  // The enumerator keeps references to the task and the abstraction.
  Enumerator(SynthesisTask&&, const Abstraction&, const AgsConfig&) = delete;
  Enumerator(const SynthesisTask&, Abstraction&&, const AgsConfig&) = delete;
  Enumerator(SynthesisTask&&, Abstraction&&, const AgsConfig&) = delete;

  struct Accepted {
    Program program;
    /// Candidates enumerated from the start of the stream up to this one.
    SearchStats stats;
  };

  const SearchStats& stats() const { return stats_; }
  StopReason stop_reason() const { return reason_; }

  /// Advances to the next accepted candidate not in `blocked`.
  std::optional<Accepted> next(const std::vector<Program>& blocked = {}) {
    while (auto cand = advance()) {
      if (std::find(blocked.begin(), blocked.end(), *cand) != blocked.end()) continue;
      return Accepted{*cand, stats_};
    }
    return std::nullopt;
  }

 private:
  struct Entry {
    NodePtr node;
    std::vector<Text> outputs;
    std::vector<AbstractValue> states;
  };

  struct Position {
    NodePtr node;
    std::vector<AbstractValue> states;
  };

  void build_positions() {
    std::size_t max_in = 0;
    std::set<char32_t> chars;
    for (const auto& e : task_.examples) {
      max_in = std::max(max_in, e.input.size());
      chars.insert(e.input.begin(), e.input.end());
    }
    std::vector<NodePtr> nodes;
    for (std::int64_t k = 0; k <= static_cast<std::int64_t>(max_in); ++k) nodes.push_back(make_abs_pos(k));
    for (std::int64_t k = 1; k <= static_cast<std::int64_t>(max_in) + 1; ++k) nodes.push_back(make_abs_pos(-k));
    for (char32_t c : chars) {
      std::int64_t most = 0;
      for (const auto& e : task_.examples)
        most = std::max<std::int64_t>(most, std::count(e.input.begin(), e.input.end(), c));
      most = std::min<std::int64_t>(most, 4);
      for (std::int64_t j = 1; j <= most; ++j) nodes.push_back(make_cpos(c, j));
      for (std::int64_t j = 1; j <= most; ++j) nodes.push_back(make_cpos(c, -j));
    }
    std::set<std::vector<std::int64_t>> seen;
    for (auto& n : nodes) {
      std::vector<std::int64_t> idx;
      Position p{n, {}};
      bool ok = true;
      for (const auto& e : task_.examples) {
        auto r = resolve_position(*n, e.input);
        if (!std::holds_alternative<std::int64_t>(r)) {
          ok = false;
          break;
        }
        idx.push_back(std::get<std::int64_t>(r));
        p.states.push_back(AbstractValue::of({Predicate::pos_eq(idx.back())}));
      }
      if (ok && seen.insert(idx).second) positions_.push_back(std::move(p));
    }
  }

  bool out_of_budget() {
    if (stats_.enumerated >= cfg_.max_candidates) {
      reason_ = StopReason::CandidateLimit;
      return true;
    }
    if ((stats_.enumerated & 1023) == 0 && std::chrono::steady_clock::now() - start_ > cfg_.timeout) {
      reason_ = StopReason::Timeout;
      return true;
    }
    return false;
  }

  /// Registers a candidate; returns it when accepted.
  std::optional<Program> consider(NodePtr node, std::vector<Text> outputs, std::vector<AbstractValue> states, bool defined) {
    ++stats_.enumerated;
    if (!defined) {
      ++stats_.pruned_abstract;
      return std::nullopt;
    }
    if (cfg_.check_soundness)
      for (std::size_t k = 0; k < outputs.size(); ++k)
        if (!gamma_contains(states[k], outputs[k]))
          throw soundness_violation("abstract state " + print(states[k]) + " excludes the value of " + print(*node));
    std::size_t h = 0;
    for (std::size_t k = 0; k < outputs.size(); ++k) {
      h = detail::mix_hash(h, std::hash<Text>{}(outputs[k]));
      for (const auto& p : states[k].conjuncts())
        h = detail::mix_hash(h, static_cast<std::size_t>(p.a * 1000003 + p.b * 31 + static_cast<int>(p.kind)));
    }
    auto& bucket = seen_[h];
    for (auto idx : bucket)
      if (bank_[idx].outputs == outputs && bank_[idx].states == states) {
        ++stats_.deduped;
        return std::nullopt;
      }
    bool accepted = true;
    for (std::size_t k = 0; k < outputs.size() && accepted; ++k)
      accepted = gamma_contains(states[k], task_.examples[k].output);
    const auto size = node->size;
    bucket.push_back(static_cast<std::uint32_t>(bank_.size()));
    bank_.push_back({node, std::move(outputs), std::move(states)});
    if (by_size_.size() <= size) by_size_.resize(size + 1);
    by_size_[size].push_back(static_cast<std::uint32_t>(bank_.size() - 1));
    if (!accepted) {
      ++stats_.pruned_abstract;
      return std::nullopt;
    }
    return Program(node);
  }

  std::optional<Program> leaf(NodePtr node, const Text* value) {
    std::vector<Text> outs;
    std::vector<AbstractValue> states;
    for (const auto& e : task_.examples) {
      outs.push_back(value ? *value : e.input);
      states.push_back(alpha(outs.back(), abs_.domain, pool_));
    }
    return consider(std::move(node), std::move(outs), std::move(states), true);
  }

  std::optional<Program> concat(std::uint32_t ia, std::uint32_t ib) {
    const auto& a = bank_[ia];
    const auto& b = bank_[ib];
    std::vector<Text> outs;
    std::vector<AbstractValue> states;
    for (std::size_t k = 0; k < a.outputs.size(); ++k) {
      outs.push_back(a.outputs[k] + b.outputs[k]);
      const AbstractValue args[2] = {a.states[k], b.states[k]};
      states.push_back(apply_transformer(concat_entries_, Construct{Op::Concat, {}}, args));
    }
    return consider(make_concat(a.node, b.node), std::move(outs), std::move(states), true);
  }

  std::optional<Program> substr(const Position& p1, const Position& p2) {
    std::vector<Text> outs;
    std::vector<AbstractValue> states;
    bool defined = true;
    for (std::size_t k = 0; k < task_.examples.size() && defined; ++k) {
      const auto& in = task_.examples[k].input;
      auto r = slice(in, p1.states[k].conjuncts()[0].a, p2.states[k].conjuncts()[0].a);
      if (!r) {
        defined = false;
        break;
      }
      outs.push_back(r.value());
      const AbstractValue args[3] = {input_states_[k], p1.states[k], p2.states[k]};
      states.push_back(apply_transformer(substr_entries_, Construct{Op::SubStr, {}}, args));
    }
    return consider(make_substr(input_node_, p1.node, p2.node), std::move(outs), std::move(states), defined);
  }

  /// Produces candidates in rank order until one is accepted.
  std::optional<Program> advance() {
    while (size_ <= cfg_.max_ast_size) {
      if (out_of_budget()) return std::nullopt;
      if (size_ == 1) {
        if (leaf_ == 0) {
          ++leaf_;
          input_node_ = make_input();
          for (const auto& e : task_.examples) input_states_.push_back(alpha(e.input, abs_.domain, pool_));
          if (auto p = leaf(input_node_, nullptr)) return p;
          continue;
        }
        if (leaf_ <= constants_.size()) {
          const auto& c = constants_[leaf_ - 1];
          ++leaf_;
          if (auto p = leaf(make_const(c), &c)) return p;
          continue;
        }
        next_size();
        continue;
      }
      // Concat(a, b) with |a| + |b| = size - 1, ordered by (rank a, rank b).
      if (a_size_ + 1 < size_) {
        const std::size_t b_size = size_ - 1 - a_size_;
        const auto* as = bucket(a_size_);
        const auto* bs = bucket(b_size);
        if (!as || !bs || ia_ >= as->size()) {
          ++a_size_;
          ia_ = ib_ = 0;
          continue;
        }
        if (ib_ >= bs->size()) {
          ++ia_;
          ib_ = 0;
          continue;
        }
        const auto a = (*as)[ia_];
        const auto b = (*bs)[ib_++];
        if (auto p = concat(a, b)) return p;
        continue;
      }
      if (size_ == 4 && ip1_ < positions_.size()) {
        if (ip2_ >= positions_.size()) {
          ++ip1_;
          ip2_ = 0;
          continue;
        }
        const auto& p1 = positions_[ip1_];
        const auto& p2 = positions_[ip2_++];
        if (auto p = substr(p1, p2)) return p;
        continue;
      }
      next_size();
    }
    if (reason_ == StopReason::Found) reason_ = StopReason::Exhausted;
    return std::nullopt;
  }

  const std::vector<std::uint32_t>* bucket(std::size_t size) const {
    return size < by_size_.size() && !by_size_[size].empty() ? &by_size_[size] : nullptr;
  }

  void next_size() {
    ++size_;
    a_size_ = 1;
    ia_ = ib_ = ip1_ = ip2_ = 0;
  }

  const SynthesisTask& task_;
  const Abstraction& abs_;
  AgsConfig cfg_;
  ConstantPool pool_;
  std::chrono::steady_clock::time_point start_;
  std::vector<const Transformer*> concat_entries_;
  std::vector<const Transformer*> substr_entries_;
  std::vector<Text> constants_;
  std::vector<Position> positions_;
  NodePtr input_node_;
  std::vector<AbstractValue> input_states_;

  std::vector<Entry> bank_;
  std::vector<std::vector<std::uint32_t>> by_size_;
  std::unordered_map<std::size_t, std::vector<std::uint32_t>> seen_;
  SearchStats stats_;
  StopReason reason_ = StopReason::Found;

  std::size_t size_ = 1;
  std::size_t leaf_ = 0;
  std::size_t a_size_ = 1;
  std::size_t ia_ = 0, ib_ = 0, ip1_ = 0, ip2_ = 0;
};

struct SynthesisResult {
  std::optional<Program> program;
  SearchStats stats;
  StopReason reason = StopReason::Exhausted;
};

/// Synthesize: the minimal-rank program, other than the blocked ones, whose
/// abstract output on every example contains the expected output.
inline SynthesisResult synthesize(const SynthesisTask& task, const Abstraction& abs, const AgsConfig& cfg = {},
                                  const std::vector<Program>& blocked = {}) {
  Enumerator en(task, abs, cfg);
  SynthesisResult r;
  if (auto acc = en.next(blocked)) {
    r.program = acc->program;
    r.stats = acc->stats;
    r.reason = StopReason::Found;
  } else {
    r.stats = en.stats();
    r.reason = en.stop_reason();
  }
  return r;
}

struct SolveResult {
  std::optional<Program> program;
  bool correct = false;
  /// Totals over every AGS invocation of the check loop.
  SearchStats stats;
  std::size_t invocations = 0;
  std::vector<Program> spurious;
  StopReason reason = StopReason::Exhausted;
  double wall_ms = 0;
};

/// Check loop with a fixed abstraction: synthesize, check concretely, block
/// spurious results and synthesize again. Every invocation restarts the AGS
/// from scratch, so the counters add up the work of each invocation. Because
/// the enumeration is deterministic and blocking only hides earlier answers,
/// invocation j repeats the first stream prefix and stops at the j-th answer;
/// one resumable stream reproduces all invocations exactly.
inline SolveResult solve(const SynthesisTask& task, const Abstraction& abs, const AgsConfig& cfg = {}) {
  const auto start = std::chrono::steady_clock::now();
  SolveResult r;
  Enumerator en(task, abs, cfg);
  while (true) {
    ++r.invocations;
    auto acc = en.next();
    if (!acc) {
      r.stats += en.stats();
      r.reason = en.stop_reason();
      break;
    }
    r.stats += acc->stats;
    if (is_correct(acc->program, task)) {
      r.program = acc->program;
      r.correct = true;
      r.reason = StopReason::Found;
      break;
    }
    r.spurious.push_back(acc->program);
  }
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace atlas
