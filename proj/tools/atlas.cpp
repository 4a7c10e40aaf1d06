// atlas command line: train, synth, bench, dump-itp.
//
// Exit codes: 0 ok, 1 unsolved, 2 training diagnostic, 64 usage, 66 I/O.

#include <atlas/bench.hpp>
#include <atlas/driver.hpp>
#include <atlas/interpolation.hpp>
#include <atlas/io.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace atlas;

namespace {

constexpr int kUnsolved = 1;
constexpr int kDiagnostic = 2;
constexpr int kUsage = 64;
constexpr int kIoError = 66;

/// Task files named directly or found in named directories.
std::vector<SynthesisTask> load_tasks(const std::vector<std::string>& paths) {
  std::vector<SynthesisTask> out;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      auto dir = load_task_dir(p);
      out.insert(out.end(), dir.begin(), dir.end());
    } else {
      out.push_back(load_task(p));
    }
  }
  return out;
}

struct TrainArgs {
  std::vector<std::string> tasks;
  std::string out_dir;
  std::uint64_t seed = 1;
  std::size_t max_size = AgsConfig{}.max_ast_size;
  bool timings = false;
  unsigned threads = 0;
};

int run_train(const TrainArgs& a) {
  const auto tasks = load_tasks(a.tasks);
  TrainingConfig cfg;
  cfg.learn.seed = a.seed;
  cfg.learn.threads = a.threads;
  cfg.ags.max_ast_size = a.max_size;
  const auto run = learn_abstractions(tasks, cfg);

  Provenance prov;
  prov.seed = a.seed;
  for (const auto& t : tasks) prov.training_tasks.push_back(t.name);
  fs::create_directories(a.out_dir);
  write_file(fs::path(a.out_dir) / "bundle.json", save_bundle(*run.abstraction, prov));
  write_file(fs::path(a.out_dir) / "report.json", dump_json(training_report(run, a.seed, a.timings)));

  for (const auto& p : run.history) {
    std::cerr << p.name << ": " << to_string(p.status) << " after " << p.iterations.size() << " iteration(s)";
    if (!p.iterations.empty() && p.iterations.back().program) std::cerr << ", " << print(*p.iterations.back().program);
    std::cerr << "\n";
  }
  std::cerr << "templates:";
  for (auto t : run.abstraction->domain) std::cerr << " " << print(t);
  std::cerr << "\ntransformers: " << run.abstraction->table.size() << "\n";
  return run.ok() ? 0 : kDiagnostic;
}

struct SynthArgs {
  std::string task;
  std::string bundle;
  bool baseline_top = false;
  std::int64_t timeout_ms = 60000;
  std::size_t max_size = AgsConfig{}.max_ast_size;
  std::string log;
};

AgsConfig ags_config(std::int64_t timeout_ms, std::size_t max_size) {
  AgsConfig cfg;
  cfg.timeout = std::chrono::milliseconds(timeout_ms);
  cfg.max_ast_size = max_size;
  return cfg;
}

int run_synth(const SynthArgs& a) {
  if (a.bundle.empty() && !a.baseline_top) throw CLI::ValidationError("--bundle", "required unless --baseline-top is given");
  const auto task = load_task(a.task);
  Abstraction abs;
  if (!a.baseline_top) abs = load_bundle(a.bundle).abstraction;
  const auto r = solve(task, abs, ags_config(a.timeout_ms, a.max_size));
  const auto line = run_log(task.name, r).dump();
  if (!a.log.empty()) {
    std::ofstream out(a.log, std::ios::app);
    if (!out) throw io_error(a.log + ": cannot open for appending");
    out << line << "\n";
  }
  std::cerr << line << "\n";
  if (!r.correct) {
    std::cerr << task.name << ": unsolved (" << to_string(r.reason) << ")\n";
    return kUnsolved;
  }
  std::cout << print(*r.program) << "\n";
  return 0;
}

struct BenchArgs {
  std::string dir;
  std::string bundle;
  std::string json_out;
  std::int64_t timeout_ms = 10000;
  std::size_t max_size = AgsConfig{}.max_ast_size;
};

int run_bench_cmd(const BenchArgs& a) {
  const auto tasks = load_task_dir(a.dir);
  const auto bundle = load_bundle(a.bundle);
  const auto rows = run_bench(tasks, bundle.abstraction, ags_config(a.timeout_ms, a.max_size));
  std::cout << bench_table(rows);
  if (!a.json_out.empty()) write_file(a.json_out, dump_json(bench_report(rows)));
  return 0;
}

struct DumpArgs {
  std::string task;
  std::string program;
};

int run_dump_itp(const DumpArgs& a) {
  const auto task = load_task(a.task);
  const auto p = parse_program(a.program);
  for (const auto& e : task.examples) {
    const auto r = eval(p, e.input);
    if (r.ok() && r.value() == e.output) continue;
    const auto tree = construct_tree(p, e.input, e.output);
    const auto itp = find_tree_itp(tree);
    std::cout << dump(tree, itp);
    if (const auto bad = check_tree_itp(tree, itp); !bad.empty()) {
      std::cerr << "interpolant check failed at " << bad.size() << " node(s)\n";
      return kDiagnostic;
    }
    return 0;
  }
  std::cerr << "program is correct on every example; nothing to interpolate\n";
  return kDiagnostic;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"atlas: learned abstractions for example-guided string synthesis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "learn an abstraction bundle from training tasks");
  train_cmd->add_option("tasks", train.tasks, "task files or directories")->required();
  train_cmd->add_option("-o,--out", train.out_dir, "output directory for bundle.json and report.json")->required();
  train_cmd->add_option("--seed", train.seed, "sampling seed");
  train_cmd->add_option("--max-size", train.max_size, "largest AST size the synthesizer explores");
  train_cmd->add_option("--threads", train.threads, "transformer learning threads (0 = hardware)");
  train_cmd->add_flag("--timings", train.timings, "include wall-clock timings in the report");

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "synthesize a program for one task");
  synth_cmd->add_option("task", synth.task, "task file")->required();
  synth_cmd->add_option("--bundle", synth.bundle, "abstraction bundle");
  synth_cmd->add_flag("--baseline-top", synth.baseline_top, "use the top-only abstraction");
  synth_cmd->add_option("--timeout-ms", synth.timeout_ms, "search time limit");
  synth_cmd->add_option("--max-size", synth.max_size, "largest AST size to explore");
  synth_cmd->add_option("--log", synth.log, "append the run-log record to this file");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "compare a bundle with the baseline on a task directory");
  bench_cmd->add_option("dir", bench.dir, "directory of task files")->required();
  bench_cmd->add_option("--bundle", bench.bundle, "abstraction bundle")->required();
  bench_cmd->add_option("--json", bench.json_out, "write the JSON report here");
  bench_cmd->add_option("--timeout-ms", bench.timeout_ms, "search time limit per run");
  bench_cmd->add_option("--max-size", bench.max_size, "largest AST size to explore");

  DumpArgs dump_args;
  auto* dump_cmd = app.add_subcommand("dump-itp", "print the tree interpolant for a spurious program");
  dump_cmd->add_option("task", dump_args.task, "task file")->required();
  dump_cmd->add_option("--program", dump_args.program, "program as an s-expression")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*train_cmd) return run_train(train);
    if (*synth_cmd) return run_synth(synth);
    if (*bench_cmd) return run_bench_cmd(bench);
    if (*dump_cmd) return run_dump_itp(dump_args);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const type_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
  return kUsage;
}
