#include "support.hpp"

#include <atlas/driver.hpp>

#include <gtest/gtest.h>

namespace atlas {
namespace {

std::vector<SynthesisTask> training_tasks() { return {testing::e1(), testing::e2(), testing::e3()}; }

const TrainingResult& trained() {
  static const TrainingResult run = [] {
    const auto tasks = training_tasks();
    return learn_abstractions(tasks);
  }();
  return run;
}

TEST(Driver, LearnsCharacterAndLengthTemplates) {
  const auto& run = trained();
  ASSERT_TRUE(run.ok());
  EXPECT_EQ(run.abstraction->domain, testing::a2_domain());
  ASSERT_EQ(run.history.size(), 3u);
  for (const auto& p : run.history) {
    EXPECT_EQ(p.status, ProblemStatus::Solved) << p.name;
    EXPECT_LE(p.iterations.size(), 10u) << p.name;
  }
  EXPECT_TRUE(run.history[2].templates_added.empty());
}

TEST(Driver, SolutionsOfTrainingProblems) {
  const auto& run = trained();
  auto last = [&](std::size_t i) { return print(*run.history[i].iterations.back().program); };
  EXPECT_EQ(last(0), "(concat (input) (const \"2018\"))");
  for (std::size_t i = 0; i < 3; ++i) EXPECT_TRUE(is_correct(*run.history[i].iterations.back().program, training_tasks()[i]));
}

// Every spurious program is rejected by the abstraction learned from it.
TEST(Driver, RefinementMakesProgress) {
  const auto tasks = training_tasks();
  for (std::size_t i = 0; i < tasks.size(); ++i)
    for (const auto& it : trained().history[i].iterations) {
      if (it.correct) continue;
      ASSERT_TRUE(it.program);
      ASSERT_TRUE(it.refined);
      EXPECT_FALSE(it.templates_added.empty());
      EXPECT_TRUE(abstraction_rejects(*it.refined, *it.program, tasks[i])) << print(*it.program);
    }
}

TEST(Driver, NoProblemsKeepsTop) {
  TrainingConfig cfg;
  const auto run = learn_abstractions({}, cfg);
  EXPECT_EQ(run.abstraction->domain, top_domain());
  EXPECT_TRUE(run.ok());
}

TEST(Driver, SingleProblemLearnsLengths) {
  const std::vector<SynthesisTask> tasks{testing::e1()};
  const auto run = learn_abstractions(tasks);
  EXPECT_EQ(run.abstraction->domain, testing::a1_domain());
  EXPECT_EQ(run.history[0].iterations.size(), 3u);
}

TEST(Driver, UnsolvableProblemIsReported) {
  TrainingConfig cfg;
  cfg.ags.max_ast_size = 2;
  const std::vector<SynthesisTask> tasks{SynthesisTask{"far", {{U"x", U"abcdefghij"}}, {}}};
  const auto run = learn_abstractions(tasks, cfg);
  EXPECT_FALSE(run.ok());
  EXPECT_EQ(run.history[0].status, ProblemStatus::Unsolved);
  EXPECT_EQ(run.history[0].iterations.front().program, parse_program("(input)"));
}

TEST(Driver, AlphabetCoversTrainingCharacters) {
  const auto tasks = training_tasks();
  const auto alpha = training_alphabet(tasks);
  for (char32_t c : {U'C', U'\\', U'-', U'.', U'a', U'9'}) EXPECT_TRUE(std::binary_search(alpha.begin(), alpha.end(), c));
}

}  // namespace
}  // namespace atlas
