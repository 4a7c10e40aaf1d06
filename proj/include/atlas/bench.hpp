// atlas - learning program abstractions for example-guided synthesis
// Held-out sweep: a learned bundle against the top-only baseline.

#pragma once

#include <atlas/ags.hpp>
#include <atlas/io.hpp>

#include <algorithm>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace atlas {

struct BenchRow {
  std::string task;
  SolveResult bundle;
  SolveResult baseline;

  /// Baseline enumerated over bundle enumerated, when both solved the task.
  std::optional<double> ratio() const {
    if (!bundle.correct || !baseline.correct || bundle.stats.enumerated == 0) return std::nullopt;
    return static_cast<double>(baseline.stats.enumerated) / static_cast<double>(bundle.stats.enumerated);
  }
};

struct BenchSummary {
  std::size_t tasks = 0;
  std::size_t solved_bundle = 0;
  std::size_t solved_baseline = 0;
  std::size_t solved_both = 0;
  std::optional<double> median_ratio;
  double wall_ms_bundle = 0;
  double wall_ms_baseline = 0;
};

inline std::optional<double> median(std::vector<double> xs) {
  if (xs.empty()) return std::nullopt;
  std::sort(xs.begin(), xs.end());
  const auto n = xs.size();
  return n % 2 ? xs[n / 2] : (xs[n / 2 - 1] + xs[n / 2]) / 2;
}

inline BenchSummary summarize(std::span<const BenchRow> rows) {
  BenchSummary s;
  std::vector<double> ratios;
  for (const auto& r : rows) {
    ++s.tasks;
    s.solved_bundle += r.bundle.correct;
    s.solved_baseline += r.baseline.correct;
    s.solved_both += r.bundle.correct && r.baseline.correct;
    s.wall_ms_bundle += r.bundle.wall_ms;
    s.wall_ms_baseline += r.baseline.wall_ms;
    if (auto q = r.ratio()) ratios.push_back(*q);
  }
  s.median_ratio = median(std::move(ratios));
  return s;
}

inline std::vector<BenchRow> run_bench(std::span<const SynthesisTask> tasks, const Abstraction& bundle, const AgsConfig& cfg) {
  const Abstraction baseline;
  std::vector<BenchRow> rows;
  for (const auto& t : tasks) rows.push_back({t.name, solve(t, bundle, cfg), solve(t, baseline, cfg)});
  return rows;
}

inline Json bench_report(std::span<const BenchRow> rows) {
  Json j;
  j["format"] = "atlas-bench-report/1";
  j["tasks"] = Json::array();
  for (const auto& r : rows) {
    auto ratio = r.ratio();
    j["tasks"].push_back({{"task", r.task},
                          {"bundle", run_log(r.task, r.bundle)},
                          {"baseline", run_log(r.task, r.baseline)},
                          {"ratio", ratio ? Json(*ratio) : Json(nullptr)}});
  }
  const auto s = summarize(rows);
  j["aggregate"] = {{"tasks", s.tasks},
                    {"solved_bundle", s.solved_bundle},
                    {"solved_baseline", s.solved_baseline},
                    {"solved_both", s.solved_both},
                    {"median_ratio", s.median_ratio ? Json(*s.median_ratio) : Json(nullptr)},
                    {"wall_ms_bundle", s.wall_ms_bundle},
                    {"wall_ms_baseline", s.wall_ms_baseline}};
  return j;
}

inline std::string bench_table(std::span<const BenchRow> rows) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-22s %6s %12s %10s %6s %12s %10s %10s\n", "task", "bundle", "enumerated", "ms", "base",
                "enumerated", "ms", "ratio");
  out += line;
  for (const auto& r : rows) {
    auto q = r.ratio();
    std::snprintf(line, sizeof line, "%-22s %6s %12zu %10.1f %6s %12zu %10.1f %10s\n", r.task.c_str(), r.bundle.correct ? "yes" : "no",
                  r.bundle.stats.enumerated, r.bundle.wall_ms, r.baseline.correct ? "yes" : "no", r.baseline.stats.enumerated,
                  r.baseline.wall_ms, q ? std::to_string(*q).c_str() : "-");
    out += line;
  }
  const auto s = summarize(rows);
  std::snprintf(line, sizeof line, "solved: bundle %zu/%zu, baseline %zu/%zu; median ratio %s; wall ms bundle %.1f baseline %.1f\n",
                s.solved_bundle, s.tasks, s.solved_baseline, s.tasks,
                s.median_ratio ? std::to_string(*s.median_ratio).c_str() : "-", s.wall_ms_bundle, s.wall_ms_baseline);
  out += line;
  return out;
}

}  // namespace atlas
