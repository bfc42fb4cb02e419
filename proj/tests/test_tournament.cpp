#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "kdist/tournament.hpp"
#include "oracles.hpp"

using namespace kdist;

namespace {

std::set<EdgeRef> as_set(const SurvivorReport& r) { return {r.survivors.begin(), r.survivors.end()}; }

oracle::Rational random_rational(std::mt19937_64& rng, int m, std::int64_t max_den) {
  oracle::Rational a;
  a.den = std::uniform_int_distribution<std::int64_t>(2, max_den)(rng);
  for (int r = 0; r < m; ++r) a.num.push_back(std::uniform_int_distribution<std::int64_t>(0, a.den - 1)(rng));
  return a;
}

Alphas to_alphas(const oracle::Rational& a) {
  std::vector<std::pair<std::int64_t, std::int64_t>> f;
  for (auto x : a.num) f.emplace_back(x, a.den);
  return Alphas::from_fractions(f);
}

}  // namespace

TEST(BuildEdges, PointThreeWithThreePoints) {
  const auto edges = build_edges(Alphas::from_reals({0.3}), 3);
  ASSERT_EQ(edges.size(), 3u);
  EXPECT_EQ(edges[0].ref(), (EdgeRef{1, 2}));
  EXPECT_EQ(edges[1].ref(), (EdgeRef{1, 3}));
  EXPECT_EQ(edges[2].ref(), (EdgeRef{2, 3}));
  EXPECT_NEAR(edges[0].length, 0.3, 1e-12);
  EXPECT_NEAR(edges[1].length, 0.4, 1e-12);
  EXPECT_EQ(edges[0].per_axis_arcs[0], Arc::plain(0.3, 0.6));
  EXPECT_EQ(edges[1].per_axis_arcs[0].kind, Arc::Kind::Wrapped);
  EXPECT_EQ(edges[0].length_rank, edges[2].length_rank);
  EXPECT_LT(edges[0].length_rank, edges[1].length_rank);
}

TEST(BuildEdges, RejectsTooFewPoints) {
  EXPECT_THROW(build_edges(Alphas::from_reals({0.3}), 1), DomainError);
  EXPECT_THROW(survivors_sweep(Alphas::from_reals({0.3}), 0), DomainError);
}

TEST(Survivors, PointThreeWithThreePoints) {
  for (const SurvivorReport& r :
       {survivors_brute(Alphas::from_reals({0.3}), 3), survivors_sweep(Alphas::from_reals({0.3}), 3)}) {
    ASSERT_EQ(r.distinct_count(), 2u);
    EXPECT_NEAR(r.distinct_lengths[0], 0.3, 1e-12);
    EXPECT_NEAR(r.distinct_lengths[1], 0.4, 1e-12);
    EXPECT_EQ(r.witnesses[0], (EdgeRef{1, 2}));
    EXPECT_EQ(r.witnesses[1], (EdgeRef{1, 3}));
    EXPECT_EQ(r.survivor_count, 3);
    EXPECT_EQ(r.defeated_count, 0);
  }
  EXPECT_EQ(as_set(survivors_sweep(Alphas::from_reals({0.3}), 3)),
            oracle::survivors(oracle::Rational{{3}, 10}, 3));
}

TEST(Survivors, PlanarTwoPoints) {
  const SurvivorReport r = survivors_sweep(Alphas::from_reals({0.3, 0.4}), 2);
  ASSERT_EQ(r.distinct_count(), 1u);
  EXPECT_NEAR(r.distinct_lengths[0], 0.5, 1e-12);
}

TEST(Survivors, LongerEdgeDefeatedByShorterOverlap) {
  // 0.1: (1,2) has length 0.1 and covers [0.1, 0.2), which (1,3) also covers.
  const SurvivorReport r = survivors_sweep(Alphas::from_reals({0.1}), 3);
  EXPECT_EQ(as_set(r), (std::set<EdgeRef>{{1, 2}, {2, 3}}));
  ASSERT_EQ(r.distinct_count(), 1u);
  EXPECT_EQ(r.defeated_count, 1);
}

TEST(Survivors, ZeroLengthEdges) {
  // 1/2 with n = 4: (1,3) and (2,4) join coincident points.
  const SurvivorReport exact = survivors_sweep(Alphas::parse("1/2"), 4);
  const SurvivorReport brute = survivors_brute(Alphas::parse("1/2"), 4);
  EXPECT_EQ(as_set(exact), as_set(brute));
  EXPECT_EQ(as_set(exact), oracle::survivors(oracle::Rational{{1}, 2}, 4));
  ASSERT_FALSE(exact.distinct_lengths.empty());
  EXPECT_DOUBLE_EQ(exact.distinct_lengths.front(), 0.0);

  const SurvivorReport floating = survivors_sweep(Alphas::from_reals({0.5, 0.5}), 4);
  EXPECT_EQ(as_set(floating), as_set(survivors_sweep(Alphas::parse("1/2,1/2"), 4)));
}

TEST(Survivors, OracleCap) {
  EXPECT_THROW(survivors_brute(Alphas::from_reals({0.3}), kDefaultOracleCap + 1), OracleCapExceeded);
  EXPECT_NO_THROW(survivors_brute(Alphas::from_reals({0.3}), 10, {}, 10));
  EXPECT_THROW(survivors_brute(Alphas::from_reals({0.3}), 11, {}, 10), OracleCapExceeded);
}

TEST(Survivors, SweepMatchesBruteOnRandomReals) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 300; ++t) {
    const int m = 1 + t % 3;
    std::vector<double> a;
    for (int r = 0; r < m; ++r) a.push_back(u(rng));
    const int n = std::uniform_int_distribution<int>(2, 40)(rng);
    const auto edges = build_edges(Alphas::from_reals(a), n);
    const SurvivorReport s = survivors_sweep(edges);
    const SurvivorReport b = survivors_brute(edges);
    ASSERT_EQ(s.survivors, b.survivors);
    ASSERT_EQ(s.distinct_lengths, b.distinct_lengths);
    ASSERT_EQ(s.witnesses, b.witnesses);
  }
}

TEST(Survivors, MatchesDefinitionOnRationals) {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 300; ++t) {
    const int m = 1 + t % 3;
    const oracle::Rational a = random_rational(rng, m, 40);
    const int n = std::uniform_int_distribution<int>(2, 30)(rng);
    const auto expected = oracle::survivors(a, n);
    const Alphas alphas = to_alphas(a);
    ASSERT_EQ(as_set(survivors_sweep(alphas, n)), expected) << alphas.to_string() << " n=" << n;
    ASSERT_EQ(as_set(survivors_brute(alphas, n)), expected);
    // Floating arithmetic on the same rationals lands on the same answer.
    ASSERT_EQ(as_set(survivors_sweep(alphas, n, {kDefaultEpsilon, Arithmetic::Floating})), expected)
        << alphas.to_string() << " n=" << n;
  }
}

TEST(Survivors, IndependentOfEdgeOrder) {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    auto edges = build_edges(Alphas::from_reals({u(rng), u(rng)}), 30);
    const SurvivorReport base = survivors_sweep(edges);
    std::shuffle(edges.begin(), edges.end(), rng);
    const SurvivorReport shuffled = survivors_sweep(edges);
    ASSERT_EQ(base.survivors, shuffled.survivors);
    ASSERT_EQ(base.witnesses, shuffled.witnesses);
    ASSERT_EQ(base.survivors, survivors_brute(edges).survivors);
  }
}

TEST(Survivors, LengthsAreDifferenceLengths) {
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const Alphas a = Alphas::from_reals({u(rng), u(rng)});
    const int n = std::uniform_int_distribution<int>(2, 80)(rng);
    const MultipleTable table(a, n);
    const SurvivorReport r = survivors_sweep(table);
    for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
      const int q = r.witnesses[i].k - r.witnesses[i].j;
      EXPECT_DOUBLE_EQ(r.distinct_lengths[i], table.length(q));
    }
    EXPECT_EQ(r.survivor_count + r.defeated_count, static_cast<std::int64_t>(n) * (n - 1) / 2);
    EXPECT_TRUE(std::is_sorted(r.distinct_lengths.begin(), r.distinct_lengths.end()));
  }
}

TEST(Survivors, ShortestEdgeAlwaysSurvives) {
  std::mt19937_64 rng(35);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const Alphas a = Alphas::from_reals({u(rng), u(rng), u(rng)});
    const int n = std::uniform_int_distribution<int>(2, 60)(rng);
    const MultipleTable table(a, n);
    double shortest = table.length(1);
    for (int q = 2; q < n; ++q) shortest = std::min(shortest, table.length(q));
    const SurvivorReport r = survivors_sweep(table);
    ASSERT_FALSE(r.distinct_lengths.empty());
    EXPECT_DOUBLE_EQ(r.distinct_lengths.front(), shortest);
  }
}

TEST(Survivors, BoundsHoldRandomized) {
  std::mt19937_64 rng(36);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 600; ++t) {
    const int m = 1 + t % 3;
    std::vector<double> a;
    for (int r = 0; r < m; ++r) a.push_back(u(rng));
    const int n = std::uniform_int_distribution<int>(2, 120)(rng);
    const SurvivorReport r = survivors_sweep(Alphas::from_reals(a), n);
    ASSERT_LE(r.distinct_count(), survivor_bound(m));
  }
}

TEST(Bounds, Constants) {
  EXPECT_EQ(survivor_bound(1), 3u);
  EXPECT_EQ(survivor_bound(2), 11u);
  EXPECT_EQ(survivor_bound(3), 290u);
  EXPECT_EQ(printed_survivor_bound(3), 138u);
  // m = 4: 2^4 * (3^4 + 2^4 + 1) + 2.
  EXPECT_EQ(survivor_bound(4), 16u * (81u + 16u + 1u) + 2u);
  EXPECT_THROW(survivor_bound(0), DomainError);
}

TEST(Bounds, Helpers) {
  EXPECT_EQ(ceil_sqrt(0), 0u);
  EXPECT_EQ(ceil_sqrt(1), 1u);
  EXPECT_EQ(ceil_sqrt(2), 2u);
  EXPECT_EQ(ceil_sqrt(4), 2u);
  EXPECT_EQ(ceil_sqrt(5), 3u);
  EXPECT_EQ(ceil_sqrt(6), 3u);
  EXPECT_EQ(ceil_sqrt(9), 3u);
  EXPECT_EQ(ceil_sqrt(10), 4u);
  EXPECT_EQ(checked_pow(3, 4), 81u);
  EXPECT_THROW(checked_pow(2, 64), DomainError);
  EXPECT_THROW(survivor_bound(40), DomainError);
}
