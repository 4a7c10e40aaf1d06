#include <atlas/dsl.hpp>
#include <atlas/sampling.hpp>

#include <gtest/gtest.h>

#include <random>

namespace atlas {
namespace {

Program concat_input_const(Text lit) { return Program(make_concat(make_input(), make_const(std::move(lit)))); }

TEST(Dsl, ConcatEvaluates) {
  EXPECT_EQ(eval(concat_input_const(U"18"), U"CAV").value(), U"CAV18");
  EXPECT_EQ(eval(concat_input_const(U"2018"), U"CAV").value(), U"CAV2018");
}

TEST(Dsl, AbsPosResolution) {
  const Text x = U"hello";
  EXPECT_EQ(std::get<std::int64_t>(resolve_position(*make_abs_pos(0), x)), 0);
  EXPECT_EQ(std::get<std::int64_t>(resolve_position(*make_abs_pos(3), x)), 3);
  EXPECT_EQ(std::get<std::int64_t>(resolve_position(*make_abs_pos(-1), x)), 5);
  EXPECT_EQ(std::get<std::int64_t>(resolve_position(*make_abs_pos(-6), x)), 0);
}

// Reference: index just past the j-th occurrence, counting from the right for
// negative j.
std::optional<std::int64_t> cpos_reference(const Text& x, char32_t c, std::int64_t j) {
  std::vector<std::int64_t> after;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] == c) after.push_back(static_cast<std::int64_t>(i) + 1);
  const auto n = static_cast<std::int64_t>(after.size());
  if (j > 0 && j <= n) return after[static_cast<std::size_t>(j - 1)];
  if (j < 0 && -j <= n) return after[static_cast<std::size_t>(n + j)];
  return std::nullopt;
}

TEST(Dsl, CPosMatchesReference) {
  std::mt19937_64 rng(7);
  for (int n = 0; n < 2000; ++n) {
    Text x;
    const auto len = rng() % 10;
    for (std::size_t i = 0; i < len; ++i) x.push_back(U"ab/"[rng() % 3]);
    const char32_t c = U"ab/"[rng() % 3];
    const std::int64_t j = static_cast<std::int64_t>(rng() % 4 + 1) * (rng() % 2 ? 1 : -1);
    const auto got = resolve_position(*make_cpos(c, j), x);
    const auto want = cpos_reference(x, c, j);
    if (want) {
      ASSERT_EQ(std::get<std::int64_t>(got), *want);
    } else {
      ASSERT_EQ(std::get<EvalError>(got), EvalError::MissingOccurrence);
    }
  }
}

TEST(Dsl, CPosWorkedCases) {
  const Text path = U"\\Company\\Code\\index.html";
  EXPECT_EQ(std::get<std::int64_t>(resolve_position(*make_cpos(U'\\', -1), path)), 14);
  EXPECT_EQ(std::get<std::int64_t>(resolve_position(*make_cpos(U'\\', 1), path)), 1);
  EXPECT_EQ(std::get<EvalError>(resolve_position(*make_cpos(U'x', 1), U"abc")), EvalError::MissingOccurrence);
}

TEST(Dsl, SubStrBoundsAndErrors) {
  auto sub = [](std::int64_t a, std::int64_t b) { return Program(make_substr(make_input(), make_abs_pos(a), make_abs_pos(b))); };
  EXPECT_EQ(eval(sub(1, 3), U"hello").value(), U"el");
  EXPECT_EQ(eval(sub(0, -1), U"hello").value(), U"hello");
  EXPECT_EQ(eval(sub(2, 2), U"hello").value(), U"");
  EXPECT_EQ(eval(sub(3, 1), U"hello").error(), EvalError::OutOfBounds);
  EXPECT_EQ(eval(sub(0, 9), U"hello").error(), EvalError::OutOfBounds);
}

TEST(Dsl, TypeErrors) {
  EXPECT_THROW(make_cpos(U'a', 0), type_error);
  EXPECT_THROW(make_substr(make_const(U"x"), make_abs_pos(0), make_abs_pos(1)), type_error);
  EXPECT_THROW(make_concat(make_input(), make_abs_pos(1)), type_error);
  EXPECT_THROW(Program(make_abs_pos(1)), type_error);
}

TEST(Dsl, SizesCountNodes) {
  EXPECT_EQ(Program(make_input()).size(), 1u);
  EXPECT_EQ(concat_input_const(U"a").size(), 3u);
  EXPECT_EQ(Program(make_substr(make_input(), make_abs_pos(0), make_cpos(U'a', 1))).size(), 4u);
}

TEST(Dsl, RankOrdersBySizeFirst) {
  EXPECT_LT(rank(Program(make_input())), rank(concat_input_const(U"a")));
  EXPECT_LT(rank(Program(make_const(U"zzzz"))), rank(concat_input_const(U"a")));
  EXPECT_LT(rank(Program(make_input())), rank(Program(make_const(U"a"))));
  EXPECT_LT(rank(Program(make_const(U"b"))), rank(Program(make_const(U"ab"))));
}

TEST(Dsl, RankIsTotalOnDistinctPrograms) {
  std::vector<Program> ps{
      Program(make_input()),
      Program(make_const(U"a")),
      Program(make_const(U"b")),
      concat_input_const(U"a"),
      Program(make_concat(make_const(U"a"), make_input())),
      Program(make_substr(make_input(), make_abs_pos(0), make_abs_pos(1))),
      Program(make_substr(make_input(), make_abs_pos(0), make_abs_pos(-1))),
      Program(make_substr(make_input(), make_abs_pos(1), make_abs_pos(0))),
  };
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = 0; j < ps.size(); ++j) {
      if (i == j) {
        EXPECT_EQ(rank(ps[i]), rank(ps[j]));
      } else {
        EXPECT_NE(rank(ps[i]), rank(ps[j])) << print(ps[i]) << " vs " << print(ps[j]);
        EXPECT_EQ(rank(ps[i]) < rank(ps[j]), !(rank(ps[j]) < rank(ps[i])));
      }
    }
}

TEST(Dsl, PrintParseRoundTrip) {
  const std::vector<std::string> texts{
      "(concat (input) (const \"18\"))",
      "(substr (input) (abspos 0) (cpos 92 -1))",
      "(concat (const \"a\\\"b\\\\c\\n\\t\") (substr (input) (abspos -3) (abspos -1)))",
      "(const \"\")",
  };
  for (const auto& t : texts) {
    const auto p = parse_program(t);
    EXPECT_EQ(print(p), t);
    EXPECT_EQ(parse_program(print(p)), p);
  }
  EXPECT_EQ(parse_program("(concat (input) (const \"18\"))"), concat_input_const(U"18"));
}

TEST(Dsl, ParseRoundTripsNonAscii) {
  const auto p = Program(make_concat(make_const(U"é中"), make_input()));
  EXPECT_EQ(parse_program(print(p)), p);
}

TEST(Dsl, ParseErrors) {
  EXPECT_THROW(parse_program("(concat (input)"), parse_error);
  EXPECT_THROW(parse_program("(frobnicate)"), parse_error);
  EXPECT_THROW(parse_program("(const \"abc)"), parse_error);
  EXPECT_THROW(parse_program("(input) extra"), parse_error);
  EXPECT_THROW(parse_program("(cpos 97 0)"), std::exception);
}

// exact_facts from complete child knowledge must equal the facts of the
// concrete output.
TEST(Dsl, ExactFactsAgreeWithEvaluation) {
  SamplingOracle oracle(11, {});
  for (int n = 0; n < 500; ++n) {
    const auto a = oracle.string(), b = oracle.string();
    const auto concat = make_concat(make_const(a), make_const(b));
    std::vector<ChildFacts> kids{facts_of(a), facts_of(b)};
    EXPECT_EQ(exact_facts(*concat, kids), facts_of(a + b));

    const auto len = static_cast<std::int64_t>(a.size());
    const auto i1 = len ? oracle.uniform(0, len) : 0;
    const auto i2 = len ? oracle.uniform(i1, len) : 0;
    const auto sub = make_substr(make_input(), make_abs_pos(i1), make_abs_pos(i2));
    std::vector<ChildFacts> sk{facts_of(a), i1, i2};
    EXPECT_EQ(exact_facts(*sub, sk), facts_of(a.substr(static_cast<std::size_t>(i1), static_cast<std::size_t>(i2 - i1))));
  }
}

TEST(Dsl, ExactFactsWithPartialKnowledge) {
  FactSet lhs;
  lhs.length = 3;
  FactSet rhs;
  rhs.length = 2;
  const auto node = make_concat(make_input(), make_input());
  std::vector<ChildFacts> kids{lhs, rhs};
  const auto out = exact_facts(*node, kids);
  ASSERT_TRUE(out.length);
  EXPECT_EQ(*out.length, 5);
  EXPECT_TRUE(out.chars.empty());
}

}  // namespace
}  // namespace atlas
