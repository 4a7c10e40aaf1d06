#include "support.hpp"

#include <gtest/gtest.h>

#include <filesystem>

namespace atlas {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir() {
  auto dir = fs::temp_directory_path() / ("atlas-io-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
  fs::create_directories(dir);
  return dir;
}

TEST(Io, LoadsTrainingTasks) {
  const auto e3 = testing::e3();
  EXPECT_EQ(e3.name, "e3");
  ASSERT_EQ(e3.examples.size(), 2u);
  EXPECT_EQ(e3.examples[0].input, U"\\Company\\Code\\index.html");
  const auto held = load_task_dir(std::string(ATLAS_CORPUS_DIR) + "/heldout");
  EXPECT_GE(held.size(), 12u);
}

TEST(Io, TaskErrorsNameTheFile) {
  const auto dir = scratch_dir();
  write_file(dir / "bad.json", "{\n  \"examples\": [\n    {\"input\": 1\n");
  try {
    load_task(dir / "bad.json");
    FAIL();
  } catch (const io_error& e) {
    EXPECT_NE(std::string(e.what()).find("bad.json:"), std::string::npos) << e.what();
  }
  write_file(dir / "empty.json", "{\"examples\": []}");
  EXPECT_THROW(load_task(dir / "empty.json"), io_error);
  EXPECT_THROW(load_task(dir / "missing.json"), io_error);
  write_file(dir / "noname.json", "{\"examples\": [{\"input\": \"a\", \"output\": \"b\"}], \"literals\": [\"q\"]}");
  const auto t = load_task(dir / "noname.json");
  EXPECT_EQ(t.name, "noname");
  EXPECT_EQ(t.literals, std::vector<Text>{U"q"});
}

TEST(Io, BundleRoundTripIsByteIdentical) {
  const Provenance prov{7, std::string(kToolVersion), {"e1", "e2", "e3"}};
  const auto text = save_bundle(testing::a2(), prov);
  const auto back = bundle_from_json(Json::parse(text));
  EXPECT_EQ(back.abstraction.domain, testing::a2().domain);
  EXPECT_EQ(back.abstraction.table, testing::a2().table);
  EXPECT_EQ(back.provenance, prov);
  EXPECT_EQ(save_bundle(back.abstraction, back.provenance), text);
}

TEST(Io, BundleFileRoundTrip) {
  const auto dir = scratch_dir();
  const Provenance prov{1, std::string(kToolVersion), {"e1"}};
  write_file(dir / "bundle.json", save_bundle(testing::a1(), prov));
  const auto b = load_bundle(dir / "bundle.json");
  EXPECT_EQ(read_file(dir / "bundle.json"), save_bundle(b.abstraction, b.provenance));
  write_file(dir / "broken.json", "{\"format\": \"something-else\"}");
  EXPECT_THROW(load_bundle(dir / "broken.json"), io_error);
}

TEST(Io, TransformerEntryLayout) {
  const auto* t = testing::a1().table.find(Construct{Op::Concat, {}}, {Template{Kind::LenEq}, Template{Kind::LenEq}});
  ASSERT_NE(t, nullptr);
  const auto j = transformer_to_json(*t);
  EXPECT_EQ(j.at("op"), "concat");
  EXPECT_EQ(j.at("inputs"), Json::parse(R"j(["(len = c)", "(len = c)"])j"));
  EXPECT_EQ(j.at("outputs").at(0).at("template"), "(len = c)");
  EXPECT_EQ(j.at("outputs").at(0).at("matrix"), Json::parse("[[[1,1],[1,1],[0,1]]]"));
  EXPECT_EQ(transformer_from_json(j), *t);
}

TEST(Io, RunLogFields) {
  const auto r = solve(testing::e1(), testing::a1());
  const auto j = run_log("e1", r);
  for (const char* key : {"task", "enumerated", "pruned_abstract", "deduped", "result_program", "correct", "wall_ms"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j.at("result_program"), "(concat (input) (const \"2018\"))");
}

}  // namespace
}  // namespace atlas
