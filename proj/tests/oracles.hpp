#pragma once

// Test-only reference computations. None of these touch the library's arc,
// length-rank or sweep code; they work on integer numerators over a common
// denominator and decide everything by direct enumeration.

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "kdist/tournament.hpp"

namespace kdist::oracle {

/// alpha_r = num[r] / den.
struct Rational {
  std::vector<std::int64_t> num;
  std::int64_t den = 1;
};

inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

/// Linear-convention gaps of {k alpha}, k = 1..n, as numerators over den.
inline std::vector<std::int64_t> linear_gaps(std::int64_t num, std::int64_t den, int n) {
  std::vector<std::int64_t> pts;
  for (int k = 1; k <= n; ++k) pts.push_back(mod(k * num, den));
  std::sort(pts.begin(), pts.end());
  std::vector<std::int64_t> gaps{pts.front()};
  for (std::size_t i = 1; i < pts.size(); ++i) gaps.push_back(pts[i] - pts[i - 1]);
  gaps.push_back(den - pts.back());
  return gaps;
}

/// The cells [c, c+1) of the circle Z/den covered by the shorter half-open
/// arc between integer points a and b (the non-wrapping side when the two
/// sides are equal).
inline std::vector<bool> arc_cells(std::int64_t a, std::int64_t b, std::int64_t den) {
  std::vector<bool> cells(static_cast<std::size_t>(den), false);
  if (a == b) return cells;
  const std::int64_t lo = std::min(a, b);
  const std::int64_t hi = std::max(a, b);
  if (2 * (hi - lo) <= den) {
    for (std::int64_t c = lo; c < hi; ++c) cells[static_cast<std::size_t>(c)] = true;
  } else {
    for (std::int64_t c = 0; c < lo; ++c) cells[static_cast<std::size_t>(c)] = true;
    for (std::int64_t c = hi; c < den; ++c) cells[static_cast<std::size_t>(c)] = true;
  }
  return cells;
}

inline std::int64_t squared_length(const Rational& a, std::int64_t q) {
  std::int64_t s = 0;
  for (std::int64_t x : a.num) {
    const std::int64_t f = mod(q * x, a.den);
    const std::int64_t d = std::min(f, a.den - f);
    s += d * d;
  }
  return s;
}

/// Undefeated edges straight from the definition: (j, k) survives iff no
/// strictly shorter (p, q) shares a covered cell with it on some axis.
inline std::set<EdgeRef> survivors(const Rational& a, int n) {
  struct E {
    int j, k;
    std::int64_t len2;
    std::vector<std::vector<bool>> cells;
  };
  std::vector<E> edges;
  for (int j = 1; j < n; ++j) {
    for (int k = j + 1; k <= n; ++k) {
      E e{j, k, squared_length(a, k - j), {}};
      for (std::int64_t x : a.num) e.cells.push_back(arc_cells(mod(j * x, a.den), mod(k * x, a.den), a.den));
      edges.push_back(std::move(e));
    }
  }
  std::set<EdgeRef> out;
  for (const E& e : edges) {
    bool defeated = false;
    for (const E& f : edges) {
      if (f.len2 >= e.len2) continue;
      for (std::size_t r = 0; r < e.cells.size() && !defeated; ++r) {
        for (std::size_t c = 0; c < e.cells[r].size(); ++c) {
          if (e.cells[r][c] && f.cells[r][c]) {
            defeated = true;
            break;
          }
        }
      }
      if (defeated) break;
    }
    if (!defeated) out.insert({e.j, e.k});
  }
  return out;
}

}  // namespace kdist::oracle
