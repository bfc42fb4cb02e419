#include "kdist/alphas.hpp"

#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "kdist/torus.hpp"

namespace kdist {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::int64_t parse_integer(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw DomainError("not an integer: '" + std::string(s) + "'");
  }
  return value;
}

double parse_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
    throw DomainError("not a real number: '" + std::string(s) + "'");
  }
  return value;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

Alphas Alphas::from_reals(std::vector<double> values) {
  if (values.empty()) throw DomainError("generator vector is empty");
  for (double v : values) {
    if (!std::isfinite(v)) throw DomainError("generator component is not finite");
  }
  Alphas a;
  a.values_ = std::move(values);
  return a;
}

Alphas Alphas::from_fractions(const std::vector<std::pair<std::int64_t, std::int64_t>>& fractions) {
  if (fractions.empty()) throw DomainError("generator vector is empty");
  std::int64_t common = 1;
  for (auto [p, q] : fractions) {
    if (q <= 0) throw DomainError("fraction denominator must be positive");
    const std::int64_t g = std::gcd(floor_mod(p, q), q);
    const std::int64_t reduced = q / (g == 0 ? q : g);
    common = std::lcm(common, reduced);
    if (common > kMaxExactDenominator) {
      throw DomainError("common denominator exceeds the exact-mode limit");
    }
  }
  Alphas a;
  ExactAlphas exact;
  exact.denominator = common;
  for (auto [p, q] : fractions) {
    a.values_.push_back(static_cast<double>(p) / static_cast<double>(q));
    const std::int64_t residue = floor_mod(p, q);
    // residue / q == residue * (common / q') / common where q' divides common.
    const std::int64_t g = std::gcd(residue, q);
    const std::int64_t num = residue / (g == 0 ? 1 : g);
    const std::int64_t den = q / (g == 0 ? q : g);
    exact.numerators.push_back(num * (common / den));
  }
  a.exact_ = std::move(exact);
  return a;
}

Alphas Alphas::parse(std::string_view text, std::string* warning) {
  std::vector<std::string_view> tokens;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
    tokens.push_back(trim(text.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }

  std::vector<std::pair<std::int64_t, std::int64_t>> fractions;
  std::vector<double> reals;
  bool all_fractions = true;
  for (std::string_view tok : tokens) {
    if (tok.empty()) throw DomainError("empty generator component");
    const std::size_t slash = tok.find('/');
    if (slash != std::string_view::npos) {
      const std::int64_t p = parse_integer(tok.substr(0, slash));
      const std::int64_t q = parse_integer(tok.substr(slash + 1));
      if (q <= 0) throw DomainError("fraction denominator must be positive");
      fractions.emplace_back(p, q);
      reals.push_back(static_cast<double>(p) / static_cast<double>(q));
    } else {
      all_fractions = false;
      reals.push_back(parse_double(tok));
    }
  }
  if (all_fractions) return from_fractions(fractions);
  if (!fractions.empty() && warning != nullptr) {
    *warning = "mixed fraction and decimal components: using floating arithmetic";
  }
  return from_reals(std::move(reals));
}

std::string Alphas::to_string() const {
  std::string out;
  for (int r = 0; r < dimension(); ++r) {
    if (r > 0) out += ',';
    if (exact_) {
      const std::int64_t num = exact_->numerators[static_cast<std::size_t>(r)];
      const std::int64_t g = std::gcd(num, exact_->denominator);
      out += std::to_string(num / g) + "/" + std::to_string(exact_->denominator / g);
    } else {
      out += format_real(values_[static_cast<std::size_t>(r)]);
    }
  }
  return out;
}

bool use_exact(const Alphas& alphas, const NumericOptions& options) {
  switch (options.arithmetic) {
    case Arithmetic::Floating:
      return false;
    case Arithmetic::Exact:
      if (!alphas.has_exact()) {
        throw DomainError("exact arithmetic requested but the generator is not rational");
      }
      return true;
    case Arithmetic::Auto:
      return alphas.has_exact();
  }
  return false;
}

std::string format_real(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) return std::to_string(x);
  return std::string(buf, ptr);
}

}  // namespace kdist
