#pragma once

// The undefeated-edge tournament. Edges join the torus images of indices
// j < k; an edge is defeated by any strictly shorter edge whose geodesic
// overlaps it on at least one axis. The survivor set S collects the lengths
// of undefeated edges.

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "kdist/alphas.hpp"
#include "kdist/multiples.hpp"
#include "kdist/torus.hpp"

namespace kdist {

struct EdgeRef {
  int j = 0;
  int k = 0;
  friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

struct Edge {
  int j = 0;
  int k = 0;
  int q = 0;  // k - j
  double length = 0.0;
  /// Position of `length` in the instance's length order; ties share a rank.
  int length_rank = 0;
  std::vector<Arc> per_axis_arcs;

  EdgeRef ref() const { return {j, k}; }
};

enum class SurvivorMode { Sweep, Brute };

const char* to_string(SurvivorMode mode);

struct SurvivorReport {
  SurvivorMode mode = SurvivorMode::Sweep;
  bool exact = false;
  /// Ascending, one entry per length class.
  std::vector<double> distinct_lengths;
  /// witnesses[i] is one undefeated edge of length distinct_lengths[i].
  std::vector<EdgeRef> witnesses;
  /// Every undefeated edge, sorted by (j, k).
  std::vector<EdgeRef> survivors;
  std::int64_t survivor_count = 0;
  std::int64_t defeated_count = 0;

  std::size_t distinct_count() const { return distinct_lengths.size(); }
};

inline constexpr int kDefaultOracleCap = 80;

class OracleCapExceeded : public DomainError {
 public:
  using DomainError::DomainError;
};

/// All n(n-1)/2 edges (j, k), 1 <= j < k <= n, ordered by (j, k).
std::vector<Edge> build_edges(const MultipleTable& table);
std::vector<Edge> build_edges(const Alphas& alphas, int n, const NumericOptions& options = {});

/// Quadratic oracle: compares every pair of edges.
SurvivorReport survivors_brute(std::span<const Edge> edges, bool exact = false);
SurvivorReport survivors_brute(const Alphas& alphas, int n, const NumericOptions& options = {},
                               int oracle_cap = kDefaultOracleCap);

/// Ascending sweep over length classes with one ArcUnion per axis.
SurvivorReport survivors_sweep(std::span<const Edge> edges, bool exact = false);
SurvivorReport survivors_sweep(const MultipleTable& table);
SurvivorReport survivors_sweep(const Alphas& alphas, int n, const NumericOptions& options = {});

/// Upper bound on |S| in dimension m: 3, 11, and for m >= 3
/// ceil(sqrt m)^m * (ceil(sqrt 2m)^m + 2^m + 1) + 2.
std::uint64_t survivor_bound(int m);

/// The bound with ceil(sqrt m) in place of ceil(sqrt 2m) in the inner
/// factor; 138 at m = 3, inconsistent with the 290 quoted for three
/// dimensions. Kept for reporting.
std::uint64_t printed_survivor_bound(int m);

/// ceil(sqrt(x)) for non-negative integers, computed without floating point.
std::uint64_t ceil_sqrt(std::uint64_t x);

/// base^exp, throwing on 64-bit overflow.
std::uint64_t checked_pow(std::uint64_t base, int exp);

}  // namespace kdist
