#pragma once

// Named verification suites. Each runs seeded randomized trials against one
// family of bounds and reports one line per check.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kdist {

struct SuiteOptions {
  /// Unset means the suite's default trial count.
  std::optional<int> trials;
  std::uint64_t seed = 1;
  double epsilon = 1e-9;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;
  /// Gap spectra whose measure was checked, and how many failed.
  std::int64_t spectra_checked = 0;
  std::int64_t spectra_unconserved = 0;
  double seconds = 0.0;

  bool passed() const;
};

/// Three-gap bound on (alpha, n) with n uniform in [2, 500]; default 10,000
/// trials. Also the one-dimensional survivor bound on trials/10 instances
/// with n in [2, 200].
SuiteResult verify_one_d(const SuiteOptions& options);

/// |S| <= 11 for (alpha, beta) uniform and n in [2, 300]; default 1,000 trials.
/// Reports the largest |S| seen.
SuiteResult verify_planar(const SuiteOptions& options);

/// |S| <= 290 in dimension 3 (n in [2, 120]) and the bound constants.
SuiteResult verify_higher(const SuiteOptions& options);

/// Counting lemmas: `trials` planar instances and 30% as many in dimension 3.
SuiteResult verify_lemmas(const SuiteOptions& options);

/// Chung-Graham (d <= 5) and Geelen-Simpson (n1, n2 <= 40); default 500 trials each.
SuiteResult verify_classical(const SuiteOptions& options);

/// Sweep and brute-force survivor sets agree exactly; `trials` per m in {1, 2, 3}, n <= 50.
SuiteResult verify_oracle(const SuiteOptions& options);

/// Rational inputs p/q, q <= 50: exact and floating arithmetic agree on
/// survivor sets, Q1 and Q2; default 200 instances.
SuiteResult verify_exactness(const SuiteOptions& options);

/// survivor_bound(1..3) = 3, 11, 290 and the printed variant's 138 at m = 3.
SuiteResult verify_constants();

const std::vector<std::string>& suite_names();

/// Dispatch by name; throws std::invalid_argument for unknown suites.
SuiteResult run_suite(const std::string& name, const SuiteOptions& options);

}  // namespace kdist
