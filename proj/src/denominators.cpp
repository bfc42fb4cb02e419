#include "kdist/denominators.hpp"

#include <cmath>
#include <set>

#include "kdist/tournament.hpp"

namespace kdist {

namespace {

void require_q(const MultipleTable& table, int q) {
  if (q < 1 || q > table.n()) throw DomainError("denominator out of range [1, n]");
}

}  // namespace

const char* to_string(TypeRelation relation) {
  switch (relation) {
    case TypeRelation::Same:
      return "same";
    case TypeRelation::Opposite:
      return "opposite";
    case TypeRelation::NeitherOppositeNorSame:
      return "neither";
  }
  return "?";
}

TypeRelation relation(const TypeVector& a, const TypeVector& b) {
  if (a.dimension != b.dimension) throw DomainError("type vectors differ in dimension");
  if (a == b) return TypeRelation::Same;
  if (a.opposite_to(b)) return TypeRelation::Opposite;
  return TypeRelation::NeitherOppositeNorSame;
}

DenominatorRecord classify(const MultipleTable& table, int q) {
  require_q(table, q);
  DenominatorRecord rec;
  rec.q = q;
  rec.type = table.type(q);
  rec.length = table.length(q);
  rec.length_rank = table.length_rank(q);
  for (int r = 0; r < table.dimension(); ++r) rec.deviations.push_back(table.deviation(q, r));
  if (table.dimension() == 2) rec.angle = std::atan2(rec.deviations[1], rec.deviations[0]);
  return rec;
}

DenominatorRecord classify(int q, const Alphas& alphas, const NumericOptions& options) {
  if (q < 1) throw DomainError("denominator must be positive");
  return classify(MultipleTable(alphas, q, options), q);
}

TypeRelation relation(int q1, int q2, const Alphas& alphas, const NumericOptions& options) {
  if (q1 < 1 || q2 < 1) throw DomainError("denominator must be positive");
  const MultipleTable table(alphas, std::max(q1, q2), options);
  return relation(table.type(q1), table.type(q2));
}

Denominator find_q1(const MultipleTable& table) {
  const int half = table.n() / 2;
  if (half < 1) throw DomainError("Q1 needs n >= 2");
  int best = 1;
  for (int q = 2; q <= half; ++q) {
    if (table.length_rank(q) < table.length_rank(best)) best = q;
  }
  return {best, table.length(best)};
}

std::vector<DenominatorRecord> find_primary(const MultipleTable& table, int q1) {
  require_q(table, q1);
  std::vector<DenominatorRecord> out;
  for (int q = table.n() / 2 + 1; q <= table.n(); ++q) {
    if (table.length_rank(q) < table.length_rank(q1)) out.push_back(classify(table, q));
  }
  return out;
}

namespace {

template <class Member>
std::optional<Denominator> min_over(const MultipleTable& table, int q1, Member member) {
  std::optional<int> best;
  for (int q = 1; q <= table.n() - q1; ++q) {
    if (!member(table.type(q))) continue;
    if (!best || table.length_rank(q) < table.length_rank(*best)) best = q;
  }
  if (!best) return std::nullopt;
  return Denominator{*best, table.length(*best)};
}

}  // namespace

std::optional<Denominator> find_q2(const MultipleTable& table, int q1) {
  require_q(table, q1);
  const TypeVector t1 = table.type(q1);
  return min_over(table, q1, [&](const TypeVector& t) { return t != t1; });
}

std::optional<Denominator> find_q2_opposite(const MultipleTable& table, int q1) {
  require_q(table, q1);
  const TypeVector t1 = table.type(q1);
  return min_over(table, q1, [&](const TypeVector& t) { return t.opposite_to(t1); });
}

std::vector<DenominatorRecord> find_secondary(const MultipleTable& table, int q1, int q2) {
  require_q(table, q1);
  require_q(table, q2);
  const TypeVector t1 = table.type(q1);
  std::vector<DenominatorRecord> out;
  for (int q = std::max(1, table.n() - q1 + 1); q <= table.n(); ++q) {
    if (table.type(q).opposite_to(t1) && table.length_rank(q) < table.length_rank(q2)) {
      out.push_back(classify(table, q));
    }
  }
  return out;
}

int lemma2_count(const MultipleTable& table, int q1, int q2) {
  require_q(table, q1);
  require_q(table, q2);
  int count = 0;
  for (int q = 1; q < q1; ++q) {
    if (table.length_rank(q) < table.length_rank(q2)) ++count;
  }
  return count;
}

int distinct_length_count(const std::vector<DenominatorRecord>& records) {
  std::set<int> ranks;
  for (const auto& r : records) ranks.insert(r.length_rank);
  return static_cast<int>(ranks.size());
}

ApproximationProfile approximation_profile(const MultipleTable& table) {
  ApproximationProfile p;
  p.dimension = table.dimension();
  p.n = table.n();
  p.q1 = find_q1(table);
  p.primary = find_primary(table, p.q1.q);
  const TypeVector t1 = table.type(p.q1.q);
  for (int q = 1; q <= table.n() - p.q1.q; ++q) {
    if (table.type(q) != t1) ++p.q1_perp_size;
  }
  p.q2 = find_q2(table, p.q1.q);
  p.q2_opposite = find_q2_opposite(table, p.q1.q);
  if (p.q2) {
    p.secondary = find_secondary(table, p.q1.q, p.q2->q);
    p.lemma2 = lemma2_count(table, p.q1.q, p.q2->q);
  }
  return p;
}

ApproximationProfile approximation_profile(const Alphas& alphas, int n, const NumericOptions& options) {
  return approximation_profile(MultipleTable(alphas, n, options));
}

std::uint64_t primary_count_bound(int m) {
  if (m < 1) throw DomainError("dimension must be positive");
  return checked_pow(2 * ceil_sqrt(static_cast<std::uint64_t>(m)), m);
}

std::uint64_t small_denominator_bound(int m) {
  if (m < 1) throw DomainError("dimension must be positive");
  if (m == 2) return 1;
  return checked_pow(ceil_sqrt(2 * static_cast<std::uint64_t>(m)), m);
}

std::uint64_t secondary_value_bound(int m) {
  if (m < 1) throw DomainError("dimension must be positive");
  if (m == 2) return 4;
  return checked_pow(ceil_sqrt(static_cast<std::uint64_t>(m)), m) *
         (checked_pow(ceil_sqrt(2 * static_cast<std::uint64_t>(m)), m) + 1);
}

std::vector<LemmaCheck> check_lemmas(const ApproximationProfile& p) {
  const int m = p.dimension;
  std::vector<LemmaCheck> checks;
  checks.push_back({"primary_count", static_cast<std::int64_t>(p.primary.size()),
                    static_cast<std::int64_t>(primary_count_bound(m)), true});
  checks.push_back({"primary_distinct_lengths", distinct_length_count(p.primary), kPlanarPrimaryLengthBound, m == 2});
  checks.push_back({m == 2 ? "small_denominators_below_q1" : "small_denominators_below_q1_general",
                    p.lemma2.value_or(0), static_cast<std::int64_t>(small_denominator_bound(m)), p.lemma2.has_value()});
  checks.push_back({"secondary_distinct_lengths", distinct_length_count(p.secondary),
                    static_cast<std::int64_t>(secondary_value_bound(m)), p.q2.has_value()});
  return checks;
}

}  // namespace kdist
