#include <atlas/domain.hpp>
#include <atlas/sampling.hpp>

#include <gtest/gtest.h>

namespace atlas {
namespace {

Predicate random_predicate(SamplingOracle& o) {
  const auto i = o.uniform(0, 5);
  const auto c = o.alphabet()[static_cast<std::size_t>(o.uniform(0, 3))];
  switch (o.uniform(0, 4)) {
    case 0: return Predicate::top();
    case 1: return Predicate::len_eq(o.uniform(0, 6));
    case 2: return Predicate::len_neq(o.uniform(0, 6));
    case 3: return Predicate::char_eq(i, c);
    default: return Predicate::char_neq(i, c);
  }
}

AbstractValue random_value(SamplingOracle& o) {
  std::vector<Predicate> ps;
  const auto n = o.uniform(0, 3);
  for (std::int64_t k = 0; k < n; ++k) ps.push_back(random_predicate(o));
  return AbstractValue::of(ps);
}

TEST(Domain, GammaOfPredicates) {
  EXPECT_TRUE(gamma_contains(Predicate::len_eq(3), U"CAV"));
  EXPECT_FALSE(gamma_contains(Predicate::len_neq(3), U"CAV"));
  EXPECT_TRUE(gamma_contains(Predicate::len_neq(7), U"CAV18"));
  EXPECT_TRUE(gamma_contains(Predicate::char_eq(0, U'C'), U"CAV"));
  EXPECT_FALSE(gamma_contains(Predicate::char_eq(5, U'C'), U"CAV"));
  // The negation of an equality, so it holds past the end.
  EXPECT_TRUE(gamma_contains(Predicate::char_neq(5, U'C'), U"CAV"));
  EXPECT_FALSE(gamma_contains(Predicate::char_neq(1, U'A'), U"CAV"));
  EXPECT_TRUE(gamma_contains(Predicate::top(), U""));
}

TEST(Domain, BottomAndTop) {
  EXPECT_FALSE(gamma_contains(AbstractValue::bottom(), U""));
  EXPECT_TRUE(gamma_contains(AbstractValue::top(), U"anything"));
  EXPECT_TRUE(AbstractValue::of({Predicate::len_eq(2), Predicate::len_eq(3)}).is_bottom());
  EXPECT_TRUE(AbstractValue::of({Predicate::len_eq(2), Predicate::len_neq(2)}).is_bottom());
  EXPECT_TRUE(AbstractValue::of({Predicate::len_eq(2), Predicate::char_eq(2, U'a')}).is_bottom());
  EXPECT_TRUE(AbstractValue::of({Predicate::char_eq(0, U'a'), Predicate::char_neq(0, U'a')}).is_bottom());
  EXPECT_TRUE(AbstractValue::of({Predicate::top()}).is_top());
}

TEST(Domain, NormalizationDropsImpliedConjuncts) {
  const auto v = AbstractValue::of({Predicate::len_eq(5), Predicate::len_neq(6), Predicate::len_eq(5)});
  ASSERT_EQ(v.conjuncts().size(), 1u);
  EXPECT_EQ(v.conjuncts()[0], Predicate::len_eq(5));
}

// gamma(meet(x, y)) = gamma(x) ∩ gamma(y), checked pointwise.
TEST(Domain, MeetIsIntersection) {
  SamplingOracle o(3, {U'a', U'b', U'c', U'd'});
  for (int n = 0; n < 5000; ++n) {
    const auto x = random_value(o), y = random_value(o);
    const auto m = meet(x, y);
    EXPECT_EQ(meet(x, y), meet(y, x));
    for (int k = 0; k < 8; ++k) {
      const auto s = o.string();
      ASSERT_EQ(gamma_contains(m, s), gamma_contains(x, s) && gamma_contains(y, s)) << print(x) << " / " << print(y);
    }
  }
}

// Normalization never changes the denoted set.
TEST(Domain, NormalizationPreservesGamma) {
  SamplingOracle o(5, {U'a', U'b', U'c', U'd'});
  for (int n = 0; n < 5000; ++n) {
    std::vector<Predicate> ps;
    for (int k = 0; k < 4; ++k) ps.push_back(random_predicate(o));
    const auto v = AbstractValue::of(ps);
    for (int k = 0; k < 8; ++k) {
      const auto s = o.string();
      const bool all = std::all_of(ps.begin(), ps.end(), [&](const Predicate& p) { return gamma_contains(p, s); });
      ASSERT_EQ(gamma_contains(v, s), all) << print(v);
    }
  }
}

TEST(Domain, AlphaIsSoundAndBest) {
  const Domain d{Template::top(), Template{Kind::LenEq}, Template{Kind::LenNeq}, Template{Kind::CharAtEq}, Template{Kind::CharAtNeq}};
  SamplingOracle o(9, {U'x', U'y', U'z'});
  for (int n = 0; n < 500; ++n) {
    const auto s = o.string();
    const Text strings[] = {s};
    const auto pool = ConstantPool::for_strings(strings);
    const auto a = alpha(s, d, pool);
    EXPECT_TRUE(gamma_contains(a, s));
    // Every pool instantiation that s satisfies is implied by alpha(s):
    // strings in gamma(alpha(s)) satisfy it too.
    for (int k = 0; k < 20; ++k) {
      const auto t = o.string();
      if (!gamma_contains(a, t)) continue;
      EXPECT_EQ(t.size(), s.size());
      EXPECT_EQ(t, s);
    }
  }
}

TEST(Domain, AlphaOfLengthDomain) {
  const Domain d{Template::top(), Template{Kind::LenEq}};
  const Text strings[] = {U"CAV"};
  const auto a = alpha(U"CAV", d, ConstantPool::for_strings(strings));
  ASSERT_EQ(a.conjuncts().size(), 1u);
  EXPECT_EQ(a.conjuncts()[0], Predicate::len_eq(3));
  EXPECT_TRUE(alpha(U"CAV", top_domain(), ConstantPool{}).is_top());
}

TEST(Domain, TemplateTextRoundTrip) {
  for (Kind k : {Kind::Top, Kind::LenEq, Kind::LenNeq, Kind::CharAtEq, Kind::CharAtNeq, Kind::PosEq})
    EXPECT_EQ(parse_template(print(Template{k})), Template{k});
  EXPECT_THROW(parse_template("(len < c)"), format_error);
  EXPECT_EQ(print(Predicate::char_eq(0, U'C')), "(char 0 = 'C')");
  EXPECT_EQ(print(AbstractValue::of({Predicate::len_eq(3), Predicate::char_eq(0, U'C')})), "(len = 3) & (char 0 = 'C')");
  EXPECT_EQ(print(AbstractValue::bottom()), "bottom");
}

TEST(Domain, InstantiateChecksArity) {
  const std::int64_t one[] = {4};
  EXPECT_EQ(Predicate::instantiate(Template{Kind::LenEq}, one), Predicate::len_eq(4));
  EXPECT_THROW(Predicate::instantiate(Template{Kind::CharAtEq}, one), std::invalid_argument);
  EXPECT_EQ(make_symbolic(Predicate::char_neq(2, U'q')), Template{Kind::CharAtNeq});
}

}  // namespace
}  // namespace atlas
