#include <atlas/interpolation.hpp>

#include "support.hpp"

#include <gtest/gtest.h>

namespace atlas {
namespace {

const Program kCav18 = parse_program("(concat (input) (const \"18\"))");

TEST(Interpolation, TreeForConcatExample) {
  const auto t = construct_tree(kCav18, U"CAV", U"CAV2018");
  ASSERT_EQ(t.nodes.size(), 4u);
  EXPECT_EQ(t.nodes[0].label, "v1 = \"CAV2018\"");
  EXPECT_EQ(t.nodes[1].label, "v1 = concat(v2, v3)");
  EXPECT_EQ(t.nodes[2].label, "v2 = \"CAV\"");
  EXPECT_EQ(t.nodes[3].label, "v3 = \"18\"");
  EXPECT_EQ(std::get<Text>(t.nodes[1].value), U"CAV18");
  EXPECT_EQ(t.nodes[1].parent, 0u);
  EXPECT_EQ(t.nodes[1].children, (std::vector<std::size_t>{2, 3}));
}

TEST(Interpolation, ConcatExampleInterpolant) {
  const auto t = construct_tree(kCav18, U"CAV", U"CAV2018");
  const auto itp = find_tree_itp(t);
  EXPECT_EQ(itp[0], Annotation::falsity());
  EXPECT_EQ(itp[1], Annotation::of(Predicate::len_neq(7)));
  EXPECT_EQ(itp[2], Annotation::of(Predicate::len_eq(3)));
  EXPECT_EQ(itp[3], Annotation::of(Predicate::len_eq(2)));
  EXPECT_TRUE(check_tree_itp(t, itp).empty());
}

// Brute-force check of the Concat interpolant: any strings meeting the child
// annotations concatenate to something meeting the parent annotation, and
// nothing meeting the parent annotation equals the expected output.
TEST(Interpolation, ConcatExampleInterpolantIsValidSemantically) {
  const auto t = construct_tree(kCav18, U"CAV", U"CAV2018");
  const auto itp = find_tree_itp(t);
  std::vector<Text> strings{U""};
  for (int len = 1; len <= 5; ++len) strings.push_back(testing::repeat(U'x', len));
  for (const auto& a : strings)
    for (const auto& b : strings)
      if (gamma_contains(itp[2].fact, a) && gamma_contains(itp[3].fact, b)) {
        EXPECT_TRUE(gamma_contains(itp[1].fact, a + b));
      }
  EXPECT_FALSE(gamma_contains(itp[1].fact, t.expected));
}

TEST(Interpolation, CheckerRejectsBrokenInterpolants) {
  const auto t = construct_tree(kCav18, U"CAV", U"CAV2018");
  auto itp = find_tree_itp(t);
  auto weak = itp;
  weak[2] = Annotation::truth();
  EXPECT_EQ(check_tree_itp(t, weak), std::vector<std::size_t>{1});
  auto wrong_root = itp;
  wrong_root[1] = Annotation::of(Predicate::len_neq(5));
  EXPECT_FALSE(check_tree_itp(t, wrong_root).empty());
  auto false_leaf = itp;
  false_leaf[3] = Annotation::of(Predicate::len_eq(4));
  EXPECT_EQ(check_tree_itp(t, false_leaf), (std::vector<std::size_t>{1, 3}));
}

TEST(Interpolation, CharacterDiscriminator) {
  // Same length, first difference at index 3.
  const auto p = parse_program("(concat (input) (const \"2019\"))");
  const auto t = construct_tree(p, U"CAV", U"CAV2018");
  const auto itp = find_tree_itp(t);
  EXPECT_EQ(itp[1], Annotation::of(Predicate::char_neq(6, U'8')));
  EXPECT_TRUE(check_tree_itp(t, itp).empty());
  EXPECT_EQ(extract_templates(itp), (std::set<Template>{Template{Kind::CharAtNeq}, Template{Kind::LenEq}, Template{Kind::CharAtEq}}));
}

TEST(Interpolation, SubStrInterpolant) {
  const auto p = parse_program("(substr (input) (abspos 0) (cpos 92 1))");
  const auto t = construct_tree(p, U"\\Company\\Code\\index.html", U"\\Company\\Code\\");
  const auto itp = find_tree_itp(t);
  EXPECT_TRUE(check_tree_itp(t, itp).empty());
  EXPECT_EQ(itp[1], Annotation::of(Predicate::len_neq(14)));
  for (auto ts = extract_templates(itp); auto tpl : ts) EXPECT_NE(tpl.kind, Kind::PosEq);
}

TEST(Interpolation, RejectsCorrectAndFailingPrograms) {
  EXPECT_THROW(construct_tree(kCav18, U"CAV", U"CAV18"), not_spurious);
  EXPECT_THROW(construct_tree(parse_program("(substr (input) (abspos 0) (abspos 9))"), U"CAV", U"x"), evaluation_failed);
}

TEST(Interpolation, LearnsLengthTemplatesFromConcatExample) {
  const auto task = testing::e1();
  EXPECT_EQ(learn_abstract_domain(kCav18, task.examples), (std::set<Template>{Template{Kind::LenEq}, Template{Kind::LenNeq}}));
}

TEST(Interpolation, DumpFormat) {
  const auto t = construct_tree(kCav18, U"CAV", U"CAV2018");
  EXPECT_EQ(dump(t, find_tree_itp(t)),
            "v0 | v1 = \"CAV2018\" | - | false\n"
            "v1 | v1 = concat(v2, v3) | \"CAV18\" | (len != 7)\n"
            "v2 | v2 = \"CAV\" | \"CAV\" | (len = 3)\n"
            "v3 | v3 = \"18\" | \"18\" | (len = 2)\n");
}

// Every spurious program reachable from the training tasks gets a checkable
// interpolant on each violated example.
TEST(Interpolation, InterpolantsCheckOnSpuriousCandidates) {
  const auto task = testing::e2();
  const Abstraction top;
  Enumerator en(task, top, AgsConfig{});
  int checked = 0;
  for (int k = 0; k < 200; ++k) {
    auto acc = en.next();
    ASSERT_TRUE(acc);
    for (const auto& e : task.examples) {
      const auto r = eval(acc->program, e.input);
      if (!r || r.value() == e.output) continue;
      const auto tree = construct_tree(acc->program, e.input, e.output);
      EXPECT_TRUE(check_tree_itp(tree, find_tree_itp(tree)).empty()) << print(acc->program);
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

}  // namespace
}  // namespace atlas
