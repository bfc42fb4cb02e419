#pragma once

// Arithmetic on the unit circle R/Z: fractional parts, the circle norm,
// signed deviations and half-open geodesic arcs.

#include <cstdint>
#include <map>
#include <stdexcept>

namespace kdist {

/// Default tolerance for equality of real-valued quantities in floating mode.
inline constexpr double kDefaultEpsilon = 1e-9;

/// A fractional part {x}, always in [0, 1).
struct CirclePoint {
  double value = 0.0;
  friend bool operator==(CirclePoint, CirclePoint) = default;
};

/// The quantity {x} - 1/2, in [-1/2, 1/2).
struct SignedDeviation {
  double value = 0.0;
  /// Sign convention: zero counts as positive.
  bool non_negative() const { return value >= 0.0; }
};

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

CirclePoint fractional_part(double x);

/// Distance from x to the nearest integer, in [0, 1/2].
double circle_norm(double x);

SignedDeviation signed_deviation(double x);

/// Half-open arc of the circle.
///
/// Plain   represents [lo, hi).
/// Wrapped represents [0, lo) u [hi, top), the arc through 0.
///
/// Coordinates live on a circle of circumference `unit` (1 for real
/// points, the common denominator for exact points scaled to integers).
/// Overlap queries never need the unit: every coordinate is below it.
struct Arc {
  enum class Kind { Empty, Plain, Wrapped };

  Kind kind = Kind::Empty;
  double lo = 0.0;
  double hi = 0.0;

  static Arc empty() { return {}; }
  static Arc plain(double lo, double hi) { return {Kind::Plain, lo, hi}; }
  static Arc wrapped(double low_end, double high_start) {
    return {Kind::Wrapped, low_end, high_start};
  }

  bool is_empty() const { return kind == Kind::Empty; }
  /// Arc length on a circle of circumference `unit`.
  double measure(double unit = 1.0) const;

  friend bool operator==(const Arc&, const Arc&) = default;
};

/// The shorter arc joining p and q; Plain at exactly antipodal points.
Arc geodesic(CirclePoint p, CirclePoint q);

/// Geodesic between scaled coordinates in [0, unit). Points at distance at
/// most unit/2 + slack take the Plain branch.
Arc geodesic_scaled(double p, double q, double unit, double slack);

/// True iff the half-open point sets intersect.
bool arcs_overlap(const Arc& a, const Arc& b);

/// Union of half-open arcs kept as an ordered set of disjoint intervals.
/// Insertion merges; queries answer whether an arc is disjoint from the union.
class ArcUnion {
 public:
  void insert(const Arc& arc);
  bool overlaps(const Arc& arc) const;
  bool empty() const { return intervals_.empty(); }
  std::size_t interval_count() const { return intervals_.size(); }

 private:
  void insert_interval(double lo, double hi);
  bool overlaps_interval(double lo, double hi) const;

  // lo -> hi, pairwise disjoint; hi may be +inf for the upper part of a
  // wrapped arc.
  std::map<double, double> intervals_;
};

}  // namespace kdist
