#include "kdist/torus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kdist {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(what) + ": non-finite input");
  }
}

bool intervals_intersect(double lo1, double hi1, double lo2, double hi2) {
  return std::max(lo1, lo2) < std::min(hi1, hi2);
}

}  // namespace

CirclePoint fractional_part(double x) {
  require_finite(x, "fractional_part");
  double f = x - std::floor(x);
  // x slightly below an integer can round up to exactly 1.
  if (f >= 1.0) f = 0.0;
  return {f};
}

double circle_norm(double x) {
  require_finite(x, "circle_norm");
  const double f = fractional_part(x).value;
  return std::min(f, 1.0 - f);
}

SignedDeviation signed_deviation(double x) {
  require_finite(x, "signed_deviation");
  return {fractional_part(x).value - 0.5};
}

double Arc::measure(double unit) const {
  switch (kind) {
    case Kind::Empty:
      return 0.0;
    case Kind::Plain:
      return hi - lo;
    case Kind::Wrapped:
      return lo + (unit - hi);
  }
  return 0.0;
}

Arc geodesic(CirclePoint p, CirclePoint q) {
  return geodesic_scaled(p.value, q.value, 1.0, 0.0);
}

Arc geodesic_scaled(double p, double q, double unit, double slack) {
  if (p == q) return Arc::empty();
  const double m = std::min(p, q);
  const double big = std::max(p, q);
  if (2.0 * (big - m) <= unit + 2.0 * slack) return Arc::plain(m, big);
  return Arc::wrapped(m, big);
}

bool arcs_overlap(const Arc& a, const Arc& b) {
  using K = Arc::Kind;
  if (a.is_empty() || b.is_empty()) return false;
  if (a.kind == K::Plain && b.kind == K::Plain) {
    return intervals_intersect(a.lo, a.hi, b.lo, b.hi);
  }
  if (a.kind == K::Wrapped && b.kind == K::Wrapped) {
    // Both contain [max(hi), unit), which is nonempty.
    return true;
  }
  const Arc& w = a.kind == K::Wrapped ? a : b;
  const Arc& p = a.kind == K::Wrapped ? b : a;
  return intervals_intersect(0.0, w.lo, p.lo, p.hi) ||
         intervals_intersect(w.hi, kInf, p.lo, p.hi);
}

void ArcUnion::insert(const Arc& arc) {
  switch (arc.kind) {
    case Arc::Kind::Empty:
      return;
    case Arc::Kind::Plain:
      insert_interval(arc.lo, arc.hi);
      return;
    case Arc::Kind::Wrapped:
      insert_interval(0.0, arc.lo);
      insert_interval(arc.hi, kInf);
      return;
  }
}

bool ArcUnion::overlaps(const Arc& arc) const {
  switch (arc.kind) {
    case Arc::Kind::Empty:
      return false;
    case Arc::Kind::Plain:
      return overlaps_interval(arc.lo, arc.hi);
    case Arc::Kind::Wrapped:
      return overlaps_interval(0.0, arc.lo) || overlaps_interval(arc.hi, kInf);
  }
  return false;
}

void ArcUnion::insert_interval(double lo, double hi) {
  if (!(lo < hi)) return;
  // First interval that could touch [lo, hi): the last one starting at or
  // before lo, if it reaches lo.
  auto it = intervals_.upper_bound(lo);
  if (it != intervals_.begin()) {
    auto prev = std::prev(it);
    if (prev->second >= lo) it = prev;
  }
  while (it != intervals_.end() && it->first <= hi) {
    lo = std::min(lo, it->first);
    hi = std::max(hi, it->second);
    it = intervals_.erase(it);
  }
  intervals_.emplace(lo, hi);
}

bool ArcUnion::overlaps_interval(double lo, double hi) const {
  if (!(lo < hi)) return false;
  auto it = intervals_.lower_bound(hi);
  if (it == intervals_.begin()) return false;
  --it;
  return it->second > lo;
}

}  // namespace kdist
