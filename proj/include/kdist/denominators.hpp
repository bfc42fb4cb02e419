#pragma once

// Simultaneous-approximation denominators: sign types, the best small
// denominator Q1, the runner-up Q2 among other types, and the primary and
// secondary denominators near n, with checks of the counting lemmas.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kdist/alphas.hpp"
#include "kdist/multiples.hpp"

namespace kdist {

struct DenominatorRecord {
  int q = 0;
  /// [[q alpha_r]] per axis.
  std::vector<double> deviations;
  TypeVector type;
  double length = 0.0;
  int length_rank = 0;
  /// atan2([[q beta]], [[q alpha]]), present only in dimension 2.
  std::optional<double> angle;
};

enum class TypeRelation { Same, Opposite, NeitherOppositeNorSame };

const char* to_string(TypeRelation relation);

/// Same iff equal sign vectors, Opposite iff every sign flipped.
TypeRelation relation(const TypeVector& a, const TypeVector& b);

DenominatorRecord classify(const MultipleTable& table, int q);
DenominatorRecord classify(int q, const Alphas& alphas, const NumericOptions& options = {});
TypeRelation relation(int q1, int q2, const Alphas& alphas, const NumericOptions& options = {});

struct Denominator {
  int q = 0;
  double length = 0.0;
};

/// Smallest q in [1, floor(n/2)] minimising l(q).
Denominator find_q1(const MultipleTable& table);

/// q in (floor(n/2), n] with l(q) < l(Q1).
std::vector<DenominatorRecord> find_primary(const MultipleTable& table, int q1);

/// Smallest minimiser of l over {q in [1, n - Q1] : type(q) != type(Q1)}.
std::optional<Denominator> find_q2(const MultipleTable& table, int q1);

/// Variant of find_q2 restricted to q of type opposite to Q1.
std::optional<Denominator> find_q2_opposite(const MultipleTable& table, int q1);

/// q in (n - Q1, n] of type opposite to Q1 with l(q) < l(Q2).
std::vector<DenominatorRecord> find_secondary(const MultipleTable& table, int q1, int q2);

/// |{q : 1 <= q < Q1, l(q) < l(Q2)}|.
int lemma2_count(const MultipleTable& table, int q1, int q2);

/// Number of distinct lengths among records (by length rank).
int distinct_length_count(const std::vector<DenominatorRecord>& records);

struct ApproximationProfile {
  int dimension = 0;
  int n = 0;
  Denominator q1;
  std::optional<Denominator> q2;
  std::optional<Denominator> q2_opposite;
  /// Size of {q in [1, n - Q1] : type(q) != type(Q1)}.
  int q1_perp_size = 0;
  std::vector<DenominatorRecord> primary;
  std::vector<DenominatorRecord> secondary;
  std::optional<int> lemma2;
};

ApproximationProfile approximation_profile(const MultipleTable& table);
ApproximationProfile approximation_profile(const Alphas& alphas, int n, const NumericOptions& options = {});

/// Bounds from the counting lemmas.
std::uint64_t primary_count_bound(int m);           // (2 ceil(sqrt m))^m
std::uint64_t small_denominator_bound(int m);       // ceil(sqrt 2m)^m; 1 in dimension 2
std::uint64_t secondary_value_bound(int m);         // ceil(sqrt m)^m (ceil(sqrt 2m)^m + 1); 4 in dimension 2
inline constexpr int kPlanarPrimaryLengthBound = 5;

struct LemmaCheck {
  std::string name;
  std::int64_t observed = 0;
  std::int64_t bound = 0;
  bool applicable = true;
  bool pass() const { return !applicable || observed <= bound; }
};

/// Every lemma check applicable to the profile's dimension.
std::vector<LemmaCheck> check_lemmas(const ApproximationProfile& profile);

}  // namespace kdist
