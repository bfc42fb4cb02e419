#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kdist/denominators.hpp"
#include "oracles.hpp"

using namespace kdist;

namespace {

TypeVector types(std::initializer_list<bool> signs) {
  TypeVector t;
  t.dimension = static_cast<int>(signs.size());
  int r = 0;
  for (bool s : signs) {
    if (s) t.bits |= std::uint64_t{1} << r;
    ++r;
  }
  return t;
}

}  // namespace

TEST(Classify, Examples) {
  const DenominatorRecord a = classify(1, Alphas::from_reals({0.75, 0.25}));
  EXPECT_EQ(a.type.to_string(), "(+,-)");
  EXPECT_DOUBLE_EQ(a.deviations[0], 0.25);
  EXPECT_DOUBLE_EQ(a.deviations[1], -0.25);

  const DenominatorRecord b = classify(1, Alphas::from_reals({0.75, 0.75}));
  ASSERT_TRUE(b.angle.has_value());
  EXPECT_NEAR(*b.angle, std::numbers::pi / 4.0, 1e-12);
  EXPECT_NEAR(b.length, std::sqrt(0.125), 1e-12);

  const DenominatorRecord c = classify(2, Alphas::from_reals({0.5}));
  EXPECT_DOUBLE_EQ(c.deviations[0], -0.5);
  EXPECT_EQ(c.type.to_string(), "(-)");
  EXPECT_DOUBLE_EQ(c.length, 0.0);
  EXPECT_FALSE(c.angle.has_value());

  EXPECT_THROW(classify(0, Alphas::from_reals({0.5})), DomainError);
}

TEST(Classify, ZeroDeviationIsPositive) {
  // [[1.5]] = 0.
  const DenominatorRecord r = classify(5, Alphas::from_reals({0.3}));
  EXPECT_NEAR(r.deviations[0], 0.0, 1e-12);
  EXPECT_TRUE(r.type.positive(0));
}

TEST(Relation, Examples) {
  EXPECT_EQ(relation(types({true, false}), types({true, false})), TypeRelation::Same);
  EXPECT_EQ(relation(types({true, false}), types({false, true})), TypeRelation::Opposite);
  EXPECT_EQ(relation(types({true, true, false}), types({true, false, true})), TypeRelation::NeitherOppositeNorSame);
  EXPECT_EQ(relation(types({true, true}), types({false, false})), TypeRelation::Opposite);
  EXPECT_THROW(relation(types({true}), types({true, false})), DomainError);
  // q = 1 of (0.75, 0.25) is (+,-); q = 3 gives (0.25, 0.75) -> (-,+).
  EXPECT_EQ(relation(1, 3, Alphas::from_reals({0.75, 0.25})), TypeRelation::Opposite);
  EXPECT_STREQ(to_string(TypeRelation::NeitherOppositeNorSame), "neither");
}

TEST(FindQ1, Examples) {
  const Denominator a = find_q1(MultipleTable(Alphas::from_reals({0.3}), 10));
  EXPECT_EQ(a.q, 3);
  EXPECT_NEAR(a.length, 0.1, 1e-12);

  const Denominator b = find_q1(MultipleTable(Alphas::from_reals({0.5}), 4));
  EXPECT_EQ(b.q, 2);
  EXPECT_DOUBLE_EQ(b.length, 0.0);

  const Denominator c = find_q1(MultipleTable(Alphas::from_reals({0.3, 0.3}), 10));
  EXPECT_EQ(c.q, 3);
  EXPECT_NEAR(c.length, 0.1 * std::sqrt(2.0), 1e-12);

  EXPECT_THROW(find_q1(MultipleTable(Alphas::from_reals({0.3}), 1)), DomainError);
}

TEST(Profile, PointThreeUpToTen) {
  const MultipleTable table(Alphas::from_reals({0.3}), 10);
  const std::vector<double> expected{0.0, 0.3, 0.4, 0.1, 0.2, 0.5, 0.2, 0.1, 0.4, 0.3, 0.0};
  for (int q = 0; q <= 10; ++q) EXPECT_NEAR(table.length(q), expected[static_cast<std::size_t>(q)], 1e-12);

  const auto primary = find_primary(table, 3);
  ASSERT_EQ(primary.size(), 1u);
  EXPECT_EQ(primary[0].q, 10);

  EXPECT_TRUE(table.type(3).positive(0));
  const auto q2 = find_q2(table, 3);
  ASSERT_TRUE(q2.has_value());
  EXPECT_EQ(q2->q, 7);
  EXPECT_NEAR(q2->length, 0.1, 1e-12);

  const auto secondary = find_secondary(table, 3, 7);
  ASSERT_EQ(secondary.size(), 1u);
  EXPECT_EQ(secondary[0].q, 10);
  EXPECT_EQ(lemma2_count(table, 3, 7), 0);

  const ApproximationProfile p = approximation_profile(table);
  EXPECT_EQ(p.q1.q, 3);
  ASSERT_TRUE(p.q2.has_value());
  EXPECT_EQ(p.q2->q, 7);
  // {q <= 7 : [[0.3 q]] < 0} = {1, 4, 7}; [[1.5]] = 0 is non-negative.
  EXPECT_EQ(p.q1_perp_size, 3);
  ASSERT_TRUE(p.lemma2.has_value());
  EXPECT_EQ(*p.lemma2, 0);
  for (const LemmaCheck& c : check_lemmas(p)) EXPECT_TRUE(c.pass()) << c.name;
}

TEST(Profile, EmptyPerpGivesNoQ2) {
  // 1/2, n = 2: Q1 = 1 and Q1perp ranges over [1, 1], which holds only Q1.
  const MultipleTable table(Alphas::from_reals({0.5}), 2);
  const ApproximationProfile p = approximation_profile(table);
  EXPECT_EQ(p.q1.q, 1);
  EXPECT_EQ(p.q1_perp_size, 0);
  EXPECT_FALSE(p.q2.has_value());
  EXPECT_TRUE(p.secondary.empty());
  EXPECT_FALSE(p.lemma2.has_value());
}

TEST(Profile, NoOppositeTypeInRangeGivesEmptySecondary) {
  // 1/4, n = 4: types of q = 1..4 are -, +, +, -. Q1 = 1 (-), Q2 = 3 (+),
  // and (3, 4] holds only q = 4 of Q1's own type.
  const MultipleTable a(Alphas::parse("1/4"), 4);
  const ApproximationProfile pa = approximation_profile(a);
  EXPECT_EQ(pa.q1.q, 1);
  ASSERT_TRUE(pa.q2.has_value());
  EXPECT_EQ(pa.q2->q, 3);
  EXPECT_TRUE(pa.secondary.empty());

  // 1/3, n = 4: [[q/3]] for q = 1..4 is -1/6, +1/6, -1/2, -1/6. Q1 = 1 (-),
  // Q1perp = {2}, and (3, 4] holds only q = 4 of Q1's own type.
  const MultipleTable b(Alphas::parse("1/3"), 4);
  const ApproximationProfile pb = approximation_profile(b);
  EXPECT_EQ(pb.q1.q, 1);
  ASSERT_TRUE(pb.q2.has_value());
  EXPECT_EQ(pb.q2->q, 2);
  EXPECT_TRUE(pb.secondary.empty());
}

TEST(Profile, InvariantsRandomized) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 600; ++t) {
    const int m = 1 + t % 3;
    std::vector<double> a;
    for (int r = 0; r < m; ++r) a.push_back(u(rng));
    const int n = std::uniform_int_distribution<int>(4, 300)(rng);
    const MultipleTable table(Alphas::from_reals(a), n);
    const ApproximationProfile p = approximation_profile(table);
    for (int q = 1; q <= n / 2; ++q) {
      ASSERT_LE(table.length_rank(p.q1.q), table.length_rank(q));
      if (q < p.q1.q) ASSERT_LT(table.length_rank(p.q1.q), table.length_rank(q));
    }
    for (const auto& r : p.primary) {
      ASSERT_GT(r.q, n / 2);
      ASSERT_LE(r.q, n);
      ASSERT_LT(r.length, p.q1.length);
    }
    if (p.q2) {
      ASSERT_NE(table.type(p.q2->q), table.type(p.q1.q));
      ASSERT_LE(p.q2->q, n - p.q1.q);
      for (const auto& r : p.secondary) {
        ASSERT_GT(r.q, n - p.q1.q);
        ASSERT_TRUE(r.type.opposite_to(table.type(p.q1.q)));
        ASSERT_LT(r.length, p.q2->length);
      }
    } else {
      ASSERT_TRUE(p.secondary.empty());
    }
    if (p.q2_opposite) ASSERT_TRUE(table.type(p.q2_opposite->q).opposite_to(table.type(p.q1.q)));
    for (const LemmaCheck& c : check_lemmas(p)) ASSERT_TRUE(c.pass()) << c.name << " m=" << m << " n=" << n;
  }
}

TEST(Profile, AngleMatchesDeviationQuotient) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 500; ++t) {
    const int q = std::uniform_int_distribution<int>(1, 500)(rng);
    const DenominatorRecord r = classify(q, Alphas::from_reals({u(rng), u(rng)}));
    ASSERT_TRUE(r.angle.has_value());
    ASSERT_GT(*r.angle, -std::numbers::pi - 1e-15);
    ASSERT_LE(*r.angle, std::numbers::pi);
    if (std::abs(r.deviations[0]) > 1e-6) {
      EXPECT_NEAR(std::tan(*r.angle), r.deviations[1] / r.deviations[0], 1e-6 * (1.0 + std::abs(std::tan(*r.angle))));
    }
    for (int i = 0; i < 2; ++i) EXPECT_EQ(r.type.positive(i), r.deviations[static_cast<std::size_t>(i)] >= 0.0);
  }
}

TEST(Profile, ExactAndFloatingAgreeOnRationals) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 300; ++t) {
    const int m = 1 + t % 3;
    const std::int64_t den = std::uniform_int_distribution<std::int64_t>(2, 50)(rng);
    std::vector<std::pair<std::int64_t, std::int64_t>> f;
    for (int r = 0; r < m; ++r) f.emplace_back(std::uniform_int_distribution<std::int64_t>(0, den - 1)(rng), den);
    const Alphas a = Alphas::from_fractions(f);
    const int n = std::uniform_int_distribution<int>(2, 80)(rng);
    const ApproximationProfile e = approximation_profile(a, n);
    const ApproximationProfile x = approximation_profile(a, n, {kDefaultEpsilon, Arithmetic::Floating});
    ASSERT_EQ(e.q1.q, x.q1.q) << a.to_string() << " n=" << n;
    ASSERT_EQ(e.q2.has_value(), x.q2.has_value());
    if (e.q2) ASSERT_EQ(e.q2->q, x.q2->q) << a.to_string() << " n=" << n;
    ASSERT_EQ(e.primary.size(), x.primary.size());
    ASSERT_EQ(e.secondary.size(), x.secondary.size());
    ASSERT_EQ(e.lemma2, x.lemma2);
    // Lengths in exact mode agree with integer enumeration.
    oracle::Rational r;
    r.den = a.exact()->denominator;
    r.num = a.exact()->numerators;
    const MultipleTable table(a, n);
    for (int q = 1; q <= n; ++q) {
      const double want = std::sqrt(static_cast<double>(oracle::squared_length(r, q))) / static_cast<double>(r.den);
      ASSERT_NEAR(table.length(q), want, 1e-12);
    }
  }
}

TEST(Bounds, LemmaConstants) {
  EXPECT_EQ(primary_count_bound(1), 2u);
  EXPECT_EQ(primary_count_bound(2), 16u);
  EXPECT_EQ(primary_count_bound(3), 64u);
  EXPECT_EQ(small_denominator_bound(2), 1u);
  EXPECT_EQ(small_denominator_bound(3), 27u);
  EXPECT_EQ(secondary_value_bound(2), 4u);
  EXPECT_EQ(secondary_value_bound(3), 8u * 28u);
  EXPECT_EQ(kPlanarPrimaryLengthBound, 5);
}
