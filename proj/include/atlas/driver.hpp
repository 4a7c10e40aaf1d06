// atlas - learning program abstractions for example-guided synthesis
// The LearnAbstractions training loop.

#pragma once

#include <atlas/ags.hpp>
#include <atlas/interpolation.hpp>
#include <atlas/transformers.hpp>

#include <algorithm>
#include <chrono>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace atlas {

struct TrainingConfig {
  LearnConfig learn;
  AgsConfig ags;
  std::size_t max_iterations_per_problem = 25;
};

enum class ProblemStatus : std::uint8_t { Solved, Infeasible, Unsolved, NonProgress };

inline std::string_view to_string(ProblemStatus s) {
  switch (s) {
    case ProblemStatus::Solved: return "solved";
    case ProblemStatus::Infeasible: return "infeasible";
    case ProblemStatus::Unsolved: return "unsolved";
    case ProblemStatus::NonProgress: return "non-progress";
  }
  return "?";
}

/// One pass of the inner loop: the program the AGS returned and, when it was
/// spurious, what the refinement learned from it.
struct IterationRecord {
  std::optional<Program> program;
  bool correct = false;
  SearchStats stats;
  std::set<Template> templates_added;
  /// Abstraction in force after this iteration's refinement.
  std::shared_ptr<const Abstraction> refined;
};

struct ProblemRecord {
  std::string name;
  ProblemStatus status = ProblemStatus::Unsolved;
  std::vector<IterationRecord> iterations;
  std::set<Template> templates_added;
  std::size_t domain_size = 0;
  std::size_t table_size = 0;
  double ags_ms = 0;
  double domain_ms = 0;
  double transformer_ms = 0;
};

struct TrainingResult {
  std::shared_ptr<const Abstraction> abstraction;
  std::vector<ProblemRecord> history;

  bool ok() const {
    return std::all_of(history.begin(), history.end(), [](const ProblemRecord& p) { return p.status == ProblemStatus::Solved; });
  }
};

inline std::vector<char32_t> training_alphabet(std::span<const SynthesisTask> problems) {
  std::vector<Text> corpus;
  for (const auto& p : problems)
    for (const auto& e : p.examples) {
      corpus.push_back(e.input);
      corpus.push_back(e.output);
    }
  return SamplingOracle::alphabet_for(corpus);
}

/// LearnAbstractions: start from {top}; for each problem repeatedly synthesize
/// under the current abstraction, stop on no result or a correct result, and
/// otherwise grow the domain from the spurious program's interpolants and
/// rebuild every transformer.
inline TrainingResult learn_abstractions(std::span<const SynthesisTask> problems, TrainingConfig cfg = {}) {
  using clock = std::chrono::steady_clock;
  auto ms_since = [](clock::time_point t) { return std::chrono::duration<double, std::milli>(clock::now() - t).count(); };
  if (cfg.learn.alphabet.empty()) cfg.learn.alphabet = training_alphabet(problems);
  if (cfg.learn.literals.empty()) {
    std::set<Text> lits;
    for (const auto& p : problems) lits.insert(p.literals.begin(), p.literals.end());
    cfg.learn.literals.assign(lits.begin(), lits.end());
  }

  TrainingResult run;
  auto current = std::make_shared<Abstraction>();
  current->table = learn_transformers(current->domain, cfg.learn);
  for (const auto& task : problems) {
    ProblemRecord rec;
    rec.name = task.name;
    while (true) {
      if (rec.iterations.size() >= cfg.max_iterations_per_problem) {
        rec.status = ProblemStatus::NonProgress;
        break;
      }
      IterationRecord it;
      auto t0 = clock::now();
      auto res = synthesize(task, *current, cfg.ags);
      rec.ags_ms += ms_since(t0);
      it.stats = res.stats;
      it.program = res.program;
      if (!res.program) {
        rec.status = rec.iterations.empty() ? ProblemStatus::Infeasible : ProblemStatus::Unsolved;
        rec.iterations.push_back(std::move(it));
        break;
      }
      it.correct = is_correct(*res.program, task);
      if (it.correct) {
        rec.status = ProblemStatus::Solved;
        rec.iterations.push_back(std::move(it));
        break;
      }
      t0 = clock::now();
      auto learned = learn_abstract_domain(*res.program, task.examples);
      rec.domain_ms += ms_since(t0);
      auto next = std::make_shared<Abstraction>();
      next->domain = current->domain;
      for (auto t : learned)
        if (next->domain.insert(t).second) it.templates_added.insert(t);
      if (it.templates_added.empty()) {
        // The same program would be returned again.
        rec.status = ProblemStatus::NonProgress;
        rec.iterations.push_back(std::move(it));
        break;
      }
      rec.templates_added.insert(it.templates_added.begin(), it.templates_added.end());
      t0 = clock::now();
      next->table = learn_transformers(next->domain, cfg.learn);
      rec.transformer_ms += ms_since(t0);
      current = next;
      it.refined = current;
      rec.iterations.push_back(std::move(it));
    }
    rec.domain_size = current->domain.size();
    rec.table_size = current->table.size();
    run.history.push_back(std::move(rec));
  }
  run.abstraction = current;
  return run;
}

/// Whether `abs` rejects `p` on `task`: some example's expected output lies
/// outside the program's abstract output.
inline bool abstraction_rejects(const Abstraction& abs, const Program& p, const SynthesisTask& task) {
  const auto pool = synthesis_pool(task);
  for (const auto& e : task.examples) {
    auto state = abstract_eval(p.root(), e.input, abs.domain, abs.table, pool);
    if (!gamma_contains(state, e.output)) return true;
  }
  return false;
}

}  // namespace atlas
