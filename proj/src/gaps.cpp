#include "kdist/gaps.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kdist/multiples.hpp"
#include "kdist/torus.hpp"

namespace kdist {

namespace {

struct RawPoint {
  double value = 0.0;
  std::int64_t numerator = 0;  // exact mode
  int family = 0;
  int k = 0;
};

bool exact_for(const std::vector<const Alphas*>& parts, const NumericOptions& options) {
  bool all = true;
  for (const Alphas* a : parts) all = all && a->has_exact();
  if (options.arithmetic == Arithmetic::Exact && !all) {
    throw DomainError("exact arithmetic requested but an input is not rational");
  }
  return all && options.arithmetic != Arithmetic::Floating;
}

std::int64_t common_denominator(const std::vector<const Alphas*>& parts) {
  std::int64_t d = 1;
  for (const Alphas* a : parts) {
    d = std::lcm(d, a->exact()->denominator);
    if (d > kMaxExactDenominator) throw DomainError("common denominator exceeds the exact-mode limit");
  }
  return d;
}

/// Numerator of component r of `a` rescaled to denominator `den`.
std::int64_t rescaled(const Alphas& a, int r, std::int64_t den) {
  const ExactAlphas& e = *a.exact();
  return e.numerators[static_cast<std::size_t>(r)] * (den / e.denominator);
}

double snapped_fraction(double x, double epsilon) {
  double v = fractional_part(x).value;
  if (v > 1.0 - epsilon) v = 0.0;
  return v;
}

GapSpectrum assemble(std::vector<RawPoint> pts, GapConvention convention, bool exact, std::int64_t den,
                     double epsilon) {
  if (pts.empty()) throw DomainError("gap spectrum of an empty point set");
  GapSpectrum s;
  s.convention = convention;
  s.exact = exact;
  s.exact_denominator = exact ? den : 1;

  if (exact) {
    std::stable_sort(pts.begin(), pts.end(),
                     [](const RawPoint& a, const RawPoint& b) { return a.numerator < b.numerator; });
    std::vector<std::int64_t> g;
    if (convention == GapConvention::Linear) g.push_back(pts.front().numerator);
    for (std::size_t i = 1; i < pts.size(); ++i) g.push_back(pts[i].numerator - pts[i - 1].numerator);
    if (convention == GapConvention::Linear) {
      g.push_back(den - pts.back().numerator);
    } else {
      g.push_back(den - pts.back().numerator + pts.front().numerator);
    }
    s.exact_gap_numerators = g;
    for (std::int64_t x : g) s.gaps.push_back(static_cast<double>(x) / static_cast<double>(den));
    std::vector<std::int64_t> nonzero;
    for (std::int64_t x : g) {
      if (x != 0) nonzero.push_back(x);
    }
    std::sort(nonzero.begin(), nonzero.end());
    nonzero.erase(std::unique(nonzero.begin(), nonzero.end()), nonzero.end());
    for (std::int64_t x : nonzero) s.distinct_gaps.push_back(static_cast<double>(x) / static_cast<double>(den));
  } else {
    std::stable_sort(pts.begin(), pts.end(), [](const RawPoint& a, const RawPoint& b) { return a.value < b.value; });
    if (convention == GapConvention::Linear) s.gaps.push_back(pts.front().value);
    for (std::size_t i = 1; i < pts.size(); ++i) s.gaps.push_back(pts[i].value - pts[i - 1].value);
    if (convention == GapConvention::Linear) {
      s.gaps.push_back(1.0 - pts.back().value);
    } else {
      s.gaps.push_back(1.0 - pts.back().value + pts.front().value);
    }
    std::vector<double> nonzero;
    for (double x : s.gaps) {
      if (x > epsilon) nonzero.push_back(x);
    }
    s.distinct_gaps = cluster_values(std::move(nonzero), epsilon);
  }
  for (const RawPoint& p : pts) s.sorted_points.push_back({p.value, p.family, p.k});
  return s;
}

}  // namespace

double GapSpectrum::gap_sum() const {
  // Kahan summation keeps the conservation check meaningful at 1e-12.
  double sum = 0.0;
  double c = 0.0;
  for (double g : gaps) {
    const double y = g - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

bool GapSpectrum::conserves_measure(double tolerance) const {
  if (exact) {
    std::int64_t total = 0;
    for (std::int64_t x : exact_gap_numerators) {
      if (x < 0) return false;
      total += x;
    }
    return total == exact_denominator;
  }
  for (double g : gaps) {
    if (g < 0.0) return false;
  }
  return std::abs(gap_sum() - 1.0) <= tolerance;
}

GapSpectrum gap_spectrum(const Alphas& alpha, int n, const GapOptions& options) {
  if (alpha.dimension() != 1) throw DomainError("gap_spectrum takes a single generator");
  if (n < 1) throw DomainError("n must be positive");
  const bool exact = exact_for({&alpha}, options.numeric);
  const std::int64_t den = exact ? alpha.exact()->denominator : 1;
  std::vector<RawPoint> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    RawPoint p;
    p.k = k;
    if (exact) {
      p.numerator = static_cast<std::int64_t>((static_cast<Int128>(k) * alpha.exact()->numerators[0]) % den);
      p.value = static_cast<double>(p.numerator) / static_cast<double>(den);
    } else {
      p.value = snapped_fraction(static_cast<double>(k) * alpha[0], options.numeric.epsilon);
    }
    pts.push_back(p);
  }
  return assemble(std::move(pts), options.convention.value_or(GapConvention::Linear), exact, den,
                  options.numeric.epsilon);
}

GapSpectrum gap_spectrum(double alpha, int n, const GapOptions& options) {
  return gap_spectrum(Alphas::from_reals({alpha}), n, options);
}

GapSpectrum chung_graham_gaps(const Alphas& alpha, const Alphas& lambdas, const std::vector<int>& n_list,
                              const GapOptions& options) {
  if (alpha.dimension() != 1) throw DomainError("chung_graham_gaps takes a single generator");
  if (lambdas.dimension() < 1) throw DomainError("lambda list is empty");
  if (static_cast<std::size_t>(lambdas.dimension()) != n_list.size()) {
    throw DomainError("lambda and n lists differ in length");
  }
  for (int ni : n_list) {
    if (ni < 1) throw DomainError("every n_i must be positive");
  }
  const bool exact = exact_for({&alpha, &lambdas}, options.numeric);
  const std::int64_t den = exact ? common_denominator({&alpha, &lambdas}) : 1;
  std::vector<RawPoint> pts;
  for (int i = 0; i < lambdas.dimension(); ++i) {
    for (int k = 1; k <= n_list[static_cast<std::size_t>(i)]; ++k) {
      RawPoint p;
      p.family = i;
      p.k = k;
      if (exact) {
        const Int128 num = static_cast<Int128>(k) * rescaled(alpha, 0, den) + rescaled(lambdas, i, den);
        p.numerator = static_cast<std::int64_t>(num % den);
        p.value = static_cast<double>(p.numerator) / static_cast<double>(den);
      } else {
        p.value = snapped_fraction(static_cast<double>(k) * alpha[0] + lambdas[i], options.numeric.epsilon);
      }
      pts.push_back(p);
    }
  }
  return assemble(std::move(pts), options.convention.value_or(GapConvention::Circular), exact, den,
                  options.numeric.epsilon);
}

GapSpectrum geelen_simpson_gaps(const Alphas& alpha_beta, int n1, int n2, const GapOptions& options) {
  if (alpha_beta.dimension() != 2) throw DomainError("geelen_simpson_gaps takes (alpha, beta)");
  if (n1 < 1 || n2 < 1) throw DomainError("n1 and n2 must be positive");
  const bool exact = exact_for({&alpha_beta}, options.numeric);
  const std::int64_t den = exact ? alpha_beta.exact()->denominator : 1;
  std::vector<RawPoint> pts;
  pts.reserve(static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2));
  for (int k1 = 0; k1 < n1; ++k1) {
    for (int k2 = 0; k2 < n2; ++k2) {
      RawPoint p;
      p.family = k1;
      p.k = k2;
      if (exact) {
        const Int128 num = static_cast<Int128>(k1) * alpha_beta.exact()->numerators[0] +
                             static_cast<Int128>(k2) * alpha_beta.exact()->numerators[1];
        p.numerator = static_cast<std::int64_t>(num % den);
        p.value = static_cast<double>(p.numerator) / static_cast<double>(den);
      } else {
        p.value = snapped_fraction(static_cast<double>(k1) * alpha_beta[0] + static_cast<double>(k2) * alpha_beta[1],
                                   options.numeric.epsilon);
      }
      pts.push_back(p);
    }
  }
  return assemble(std::move(pts), options.convention.value_or(GapConvention::Circular), exact, den,
                  options.numeric.epsilon);
}

}  // namespace kdist
