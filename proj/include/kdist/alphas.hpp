#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kdist {

__extension__ typedef __int128 Int128;

/// Rational generator vector with a common denominator: alpha_r = numerators[r] / denominator,
/// numerators reduced into [0, denominator).
struct ExactAlphas {
  std::vector<std::int64_t> numerators;
  std::int64_t denominator = 1;
};

/// Largest common denominator accepted in exact mode. Scaled coordinates and
/// squared lengths must stay exact in double and 128-bit integer arithmetic.
inline constexpr std::int64_t kMaxExactDenominator = std::int64_t{1} << 31;

/// The generator vector (alpha_1, ..., alpha_m) of a Kronecker sequence.
/// Always carries real values; carries an exact form when every component
/// was given as a fraction.
class Alphas {
 public:
  Alphas() = default;

  static Alphas from_reals(std::vector<double> values);
  /// Each pair is (numerator, denominator); denominators must be positive.
  static Alphas from_fractions(const std::vector<std::pair<std::int64_t, std::int64_t>>& fractions);

  /// Parses a comma-separated list of decimals or `p/q` fractions. Mixing
  /// the two forms yields a floating-only vector and sets *warning.
  static Alphas parse(std::string_view text, std::string* warning = nullptr);

  int dimension() const { return static_cast<int>(values_.size()); }
  const std::vector<double>& values() const { return values_; }
  double operator[](int r) const { return values_[static_cast<std::size_t>(r)]; }

  bool has_exact() const { return exact_.has_value(); }
  const std::optional<ExactAlphas>& exact() const { return exact_; }

  /// Human-readable form: fractions when exact, shortest round-trip decimals otherwise.
  std::string to_string() const;

 private:
  std::vector<double> values_;
  std::optional<ExactAlphas> exact_;
};

enum class Arithmetic { Auto, Floating, Exact };

struct NumericOptions {
  double epsilon = 1e-9;
  /// Auto selects exact arithmetic whenever the generator carries an exact form.
  Arithmetic arithmetic = Arithmetic::Auto;
};

/// Resolves Auto against a generator; throws if Exact is requested without an exact form.
bool use_exact(const Alphas& alphas, const NumericOptions& options);

/// Shortest decimal string that parses back to the same double.
std::string format_real(double x);

}  // namespace kdist
