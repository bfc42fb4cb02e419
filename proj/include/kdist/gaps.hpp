#pragma once

// Gap spectra of finite point sets on the circle: the three-gap setting
// {k alpha}, k = 1..n, and the Chung-Graham and Geelen-Simpson
// generalisations.

#include <cstdint>
#include <optional>
#include <vector>

#include "kdist/alphas.hpp"

namespace kdist {

/// Linear: points on [0, 1) with boundary gaps to 0 and to 1.
/// Circular: points on R/Z, the last gap wraps from the largest point to the smallest.
enum class GapConvention { Linear, Circular };

struct LabeledPoint {
  double value = 0.0;
  int family = 0;  // lambda index (Chung-Graham) or k1 (Geelen-Simpson); 0 otherwise
  int k = 0;
};

struct GapSpectrum {
  GapConvention convention = GapConvention::Linear;
  bool exact = false;
  std::vector<LabeledPoint> sorted_points;
  /// In order along [0, 1); coincident points produce zero gaps.
  std::vector<double> gaps;
  /// Nonzero gaps clustered at epsilon (exactly, in exact mode), ascending.
  std::vector<double> distinct_gaps;
  /// Exact mode only: gaps[i] == exact_gap_numerators[i] / exact_denominator.
  std::vector<std::int64_t> exact_gap_numerators;
  std::int64_t exact_denominator = 1;

  double gap_sum() const;
  /// Exact mode: numerators sum to the denominator. Floating mode: |sum - 1| <= tolerance.
  bool conserves_measure(double tolerance = 1e-12) const;
};

struct GapOptions {
  NumericOptions numeric;
  /// Unset means the operation's default convention.
  std::optional<GapConvention> convention;
};

/// {k alpha}, k = 1..n. Defaults to the linear convention.
GapSpectrum gap_spectrum(const Alphas& alpha, int n, const GapOptions& options = {});
GapSpectrum gap_spectrum(double alpha, int n, const GapOptions& options = {});

/// {k alpha + lambda_i}, 1 <= k <= n_i, merged over i. Defaults to circular.
GapSpectrum chung_graham_gaps(const Alphas& alpha, const Alphas& lambdas, const std::vector<int>& n_list,
                              const GapOptions& options = {});

/// {k1 alpha + k2 beta}, 0 <= k1 < n1, 0 <= k2 < n2. `alpha_beta` has two
/// components. Defaults to circular.
GapSpectrum geelen_simpson_gaps(const Alphas& alpha_beta, int n1, int n2, const GapOptions& options = {});

inline constexpr int kThreeGapBound = 3;
inline int chung_graham_bound(int d) { return 3 * d; }
inline int geelen_simpson_bound(int n1) { return n1 + 3; }

}  // namespace kdist
