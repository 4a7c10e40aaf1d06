// atlas - learning program abstractions for example-guided synthesis
// File formats: task files, abstraction bundles, training reports, run logs.

#pragma once

#include <atlas/ags.hpp>
#include <atlas/driver.hpp>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace atlas {

inline constexpr std::string_view kToolVersion = "0.1.0";

class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::json;

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error(path.string() + ": cannot open for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes through a temporary file and a rename so readers never see a
/// partially written file.
inline void write_file(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error(tmp.string() + ": cannot open for writing");
    out << content;
    if (!out) throw io_error(tmp.string() + ": write failed");
  }
  std::filesystem::rename(tmp, path);
}

// ---------------------------------------------------------------------------
// Task files

inline SynthesisTask task_from_json(const Json& j, const std::string& fallback_name) {
  SynthesisTask t;
  t.name = j.contains("name") ? j.at("name").get<std::string>() : fallback_name;
  for (const auto& e : j.at("examples")) {
    Example ex{from_utf8(e.at("input").get<std::string>()), from_utf8(e.at("output").get<std::string>())};
    if (std::find(t.examples.begin(), t.examples.end(), ex) == t.examples.end()) t.examples.push_back(std::move(ex));
  }
  if (j.contains("literals"))
    for (const auto& l : j.at("literals")) t.literals.push_back(from_utf8(l.get<std::string>()));
  if (t.examples.empty()) throw io_error("task '" + t.name + "' has no examples");
  return t;
}

inline SynthesisTask load_task(const std::filesystem::path& path) {
  const auto text = read_file(path);
  try {
    return task_from_json(Json::parse(text), path.stem().string());
  } catch (const Json::parse_error& e) {
    // byte offset -> line number
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw io_error(path.string() + ":" + std::to_string(line) + ": " + e.what());
  } catch (const Json::exception& e) {
    throw io_error(path.string() + ": " + e.what());
  } catch (const utf8_error& e) {
    throw io_error(path.string() + ": " + e.what());
  } catch (const io_error& e) {
    throw io_error(path.string() + ": " + e.what());
  }
}

/// Task files in a directory, sorted by file name.
inline std::vector<SynthesisTask> load_task_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw io_error(dir.string() + ": not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<SynthesisTask> out;
  for (const auto& f : files) out.push_back(load_task(f));
  return out;
}

// ---------------------------------------------------------------------------
// Bundles

inline std::int64_t to_int64(const BigInt& v) { return static_cast<std::int64_t>(v); }

inline Json rational_to_json(const Rational& q) {
  return Json::array({to_int64(boost::multiprecision::numerator(q)), to_int64(boost::multiprecision::denominator(q))});
}

inline Rational rational_from_json(const Json& j) {
  const auto den = j.at(1).get<std::int64_t>();
  if (den == 0) throw io_error("zero denominator in bundle matrix");
  return Rational(j.at(0).get<std::int64_t>()) / den;
}

inline Json transformer_to_json(const Transformer& t) {
  Json j;
  j["op"] = std::string(op_name(t.construct.op));
  if (t.construct.op == Op::ConstStr) j["literal"] = to_utf8(t.construct.literal);
  j["inputs"] = Json::array();
  for (auto in : t.inputs) j["inputs"].push_back(print(in));
  j["outputs"] = Json::array();
  for (const auto& o : t.outputs) {
    Json m = Json::array();
    for (std::size_t r = 0; r < o.matrix.rows(); ++r) {
      Json row = Json::array();
      for (std::size_t c = 0; c < o.matrix.cols(); ++c) row.push_back(rational_to_json(o.matrix(r, c)));
      m.push_back(row);
    }
    j["outputs"].push_back({{"template", print(o.templ)}, {"matrix", m}});
  }
  j["validated_samples"] = t.validated_samples;
  j["seed"] = t.seed;
  return j;
}

inline Op op_from_name(const std::string& name) {
  for (Op op : {Op::Input, Op::ConstStr, Op::Concat, Op::SubStr, Op::AbsPos, Op::CPos})
    if (op_name(op) == name) return op;
  throw io_error("unknown operator '" + name + "'");
}

inline Transformer transformer_from_json(const Json& j) {
  Transformer t;
  t.construct.op = op_from_name(j.at("op").get<std::string>());
  if (j.contains("literal")) t.construct.literal = from_utf8(j.at("literal").get<std::string>());
  for (const auto& in : j.at("inputs")) t.inputs.push_back(parse_template(in.get<std::string>()));
  for (const auto& o : j.at("outputs")) {
    TransformerOutput out;
    out.templ = parse_template(o.at("template").get<std::string>());
    const auto& m = o.at("matrix");
    out.matrix = RationalMatrix(m.size(), m.empty() ? 0 : m.at(0).size());
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (m.at(r).size() != t.columns()) throw io_error("transformer matrix has the wrong number of columns");
      for (std::size_t c = 0; c < m.at(r).size(); ++c) out.matrix(r, c) = rational_from_json(m.at(r).at(c));
    }
    if (out.matrix.rows() != out.templ.holes()) throw io_error("transformer matrix has the wrong number of rows");
    t.outputs.push_back(std::move(out));
  }
  t.validated_samples = j.at("validated_samples").get<std::size_t>();
  t.seed = j.at("seed").get<std::uint64_t>();
  return t;
}

struct Provenance {
  std::uint64_t seed = 0;
  std::string tool_version = std::string(kToolVersion);
  std::vector<std::string> training_tasks;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct Bundle {
  Abstraction abstraction;
  Provenance provenance;
};

inline Json bundle_to_json(const Abstraction& abs, const Provenance& prov) {
  Json j;
  j["format"] = "atlas-bundle/1";
  j["templates"] = Json::array();
  for (auto t : abs.domain) j["templates"].push_back(print(t));
  j["transformers"] = Json::array();
  for (const auto* t : abs.table.entries()) j["transformers"].push_back(transformer_to_json(*t));
  j["provenance"] = {{"seed", prov.seed}, {"tool_version", prov.tool_version}, {"training_tasks", prov.training_tasks}};
  return j;
}

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

inline std::string save_bundle(const Abstraction& abs, const Provenance& prov) { return dump_json(bundle_to_json(abs, prov)); }

inline Bundle bundle_from_json(const Json& j) {
  if (j.value("format", "") != "atlas-bundle/1") throw io_error("not an atlas bundle");
  Bundle b;
  b.abstraction.domain.clear();
  for (const auto& t : j.at("templates")) b.abstraction.domain.insert(parse_template(t.get<std::string>()));
  if (!b.abstraction.domain.contains(Template::top())) throw io_error("bundle domain lacks top");
  for (const auto& t : j.at("transformers")) b.abstraction.table.insert(transformer_from_json(t));
  const auto& p = j.at("provenance");
  b.provenance.seed = p.at("seed").get<std::uint64_t>();
  b.provenance.tool_version = p.at("tool_version").get<std::string>();
  b.provenance.training_tasks = p.at("training_tasks").get<std::vector<std::string>>();
  return b;
}

inline Bundle load_bundle(const std::filesystem::path& path) {
  try {
    return bundle_from_json(Json::parse(read_file(path)));
  } catch (const Json::exception& e) {
    throw io_error(path.string() + ": " + e.what());
  } catch (const format_error& e) {
    throw io_error(path.string() + ": " + e.what());
  } catch (const io_error& e) {
    throw io_error(path.string() + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Reports

inline Json templates_json(const std::set<Template>& ts) {
  Json j = Json::array();
  for (auto t : ts) j.push_back(print(t));
  return j;
}

/// Training report. Timing fields vary between runs, so they are only
/// included on request.
inline Json training_report(const TrainingResult& run, std::uint64_t seed, bool timings) {
  Json j;
  j["format"] = "atlas-training-report/1";
  j["seed"] = seed;
  j["ok"] = run.ok();
  j["templates"] = Json::array();
  for (auto t : run.abstraction->domain) j["templates"].push_back(print(t));
  j["table_size"] = run.abstraction->table.size();
  j["problems"] = Json::array();
  for (const auto& p : run.history) {
    Json pj;
    pj["problem"] = p.name;
    pj["status"] = std::string(to_string(p.status));
    pj["iterations"] = p.iterations.size();
    pj["templates_added"] = templates_json(p.templates_added);
    pj["domain_size"] = p.domain_size;
    pj["table_size"] = p.table_size;
    pj["history"] = Json::array();
    for (const auto& it : p.iterations) {
      Json ij;
      ij["program"] = it.program ? Json(print(*it.program)) : Json(nullptr);
      ij["correct"] = it.correct;
      ij["enumerated"] = it.stats.enumerated;
      ij["templates_added"] = templates_json(it.templates_added);
      pj["history"].push_back(ij);
    }
    if (timings) {
      pj["T_AGS_ms"] = p.ags_ms;
      pj["T_A_ms"] = p.domain_ms;
      pj["T_T_ms"] = p.transformer_ms;
    }
    j["problems"].push_back(pj);
  }
  return j;
}

/// One run-log record for a solved-or-not synthesis task.
inline Json run_log(const std::string& task, const SolveResult& r) {
  Json j;
  j["task"] = task;
  j["enumerated"] = r.stats.enumerated;
  j["pruned_abstract"] = r.stats.pruned_abstract;
  j["deduped"] = r.stats.deduped;
  j["result_program"] = r.program ? Json(print(*r.program)) : Json(nullptr);
  j["correct"] = r.correct;
  j["wall_ms"] = r.wall_ms;
  j["invocations"] = r.invocations;
  j["reason"] = std::string(to_string(r.reason));
  return j;
}

}  // namespace atlas
