#pragma once

// Precomputed multiples q*alpha for q = 0..n, shared by the tournament and
// the denominator machinery so both see the same length order and types.

#include <cstdint>
#include <string>
#include <vector>

#include "kdist/alphas.hpp"
#include "kdist/torus.hpp"

namespace kdist {

/// Sign pattern of ([[q alpha_1]], ..., [[q alpha_m]]); bit r set means "+".
struct TypeVector {
  std::uint64_t bits = 0;
  int dimension = 0;

  bool positive(int r) const { return (bits >> r) & 1u; }
  /// Every sign flipped.
  bool opposite_to(const TypeVector& other) const {
    return dimension == other.dimension && (bits ^ other.bits) == full_mask();
  }
  std::uint64_t full_mask() const {
    return dimension >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << dimension) - 1;
  }
  /// "(+,-)" style rendering.
  std::string to_string() const;

  friend bool operator==(const TypeVector&, const TypeVector&) = default;
};

inline constexpr int kMaxDimension = 64;

class MultipleTable {
 public:
  MultipleTable(const Alphas& alphas, int n, const NumericOptions& options = {});

  int dimension() const { return m_; }
  int n() const { return n_; }
  bool exact() const { return exact_; }
  double epsilon() const { return epsilon_; }

  /// Circumference of the coordinate circle: 1 in floating mode, the common
  /// denominator in exact mode.
  double unit() const { return unit_; }

  /// Scaled coordinate of {k alpha_r}, k in [0, n]. Coincident points share
  /// one value.
  double coordinate(int k, int axis) const { return coords_[index(k, axis)]; }

  /// Geodesic arc joining the images of j and k on one axis.
  Arc arc(int j, int k, int axis) const;

  /// Torus length l(q) = sqrt(sum ||q alpha_r||^2), q in [0, n].
  double length(int q) const { return lengths_[static_cast<std::size_t>(q)]; }
  /// Rank of l(q) among distinct lengths; equal ranks mean equal lengths
  /// (exactly, or within epsilon in floating mode) and rank order is length order.
  int length_rank(int q) const { return ranks_[static_cast<std::size_t>(q)]; }

  /// [[q alpha_r]] as a real.
  double deviation(int q, int axis) const { return deviations_[index(q, axis)]; }
  TypeVector type(int q) const { return types_[static_cast<std::size_t>(q)]; }

 private:
  std::size_t index(int k, int axis) const {
    return static_cast<std::size_t>(k) * static_cast<std::size_t>(m_) + static_cast<std::size_t>(axis);
  }
  void build_floating(const Alphas& alphas);
  void build_exact(const ExactAlphas& exact);

  int m_ = 0;
  int n_ = 0;
  bool exact_ = false;
  double epsilon_ = kDefaultEpsilon;
  double unit_ = 1.0;
  std::vector<double> coords_;
  std::vector<double> deviations_;
  std::vector<double> lengths_;
  std::vector<int> ranks_;
  std::vector<TypeVector> types_;
};

/// Groups sorted values into clusters: a new cluster starts wherever the gap
/// to the previous value exceeds epsilon. Returns one representative (the
/// smallest member) per cluster.
std::vector<double> cluster_values(std::vector<double> values, double epsilon);

}  // namespace kdist
