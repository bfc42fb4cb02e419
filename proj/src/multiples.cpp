#include "kdist/multiples.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace kdist {

std::string TypeVector::to_string() const {
  std::string out = "(";
  for (int r = 0; r < dimension; ++r) {
    if (r > 0) out += ',';
    out += positive(r) ? '+' : '-';
  }
  out += ')';
  return out;
}

std::vector<double> cluster_values(std::vector<double> values, double epsilon) {
  std::sort(values.begin(), values.end());
  std::vector<double> reps;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i == 0 || values[i] - values[i - 1] > epsilon) reps.push_back(values[i]);
  }
  return reps;
}

MultipleTable::MultipleTable(const Alphas& alphas, int n, const NumericOptions& options)
    : m_(alphas.dimension()), n_(n), exact_(use_exact(alphas, options)), epsilon_(options.epsilon) {
  if (m_ < 1 || m_ > kMaxDimension) throw DomainError("dimension must be in [1, 64]");
  if (n_ < 1) throw DomainError("n must be positive");
  if (!(epsilon_ >= 0.0)) throw DomainError("epsilon must be non-negative");
  const auto count = static_cast<std::size_t>(n_ + 1);
  coords_.assign(count * static_cast<std::size_t>(m_), 0.0);
  deviations_.assign(coords_.size(), 0.0);
  lengths_.assign(count, 0.0);
  ranks_.assign(count, 0);
  types_.assign(count, TypeVector{0, m_});
  if (exact_) {
    build_exact(*alphas.exact());
  } else {
    build_floating(alphas);
  }
}

Arc MultipleTable::arc(int j, int k, int axis) const {
  return geodesic_scaled(coordinate(j, axis), coordinate(k, axis), unit_, exact_ ? 0.0 : epsilon_);
}

void MultipleTable::build_floating(const Alphas& alphas) {
  unit_ = 1.0;
  std::vector<int> order(static_cast<std::size_t>(n_ + 1));
  for (int r = 0; r < m_; ++r) {
    for (int k = 0; k <= n_; ++k) {
      double v = fractional_part(static_cast<double>(k) * alphas[r]).value;
      if (v > 1.0 - epsilon_) v = 0.0;
      coords_[index(k, r)] = v;
    }
    // Points within epsilon of each other (chained) collapse onto the
    // smallest, so coincident rational points compare equal.
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return coords_[index(a, r)] < coords_[index(b, r)];
    });
    double rep = coords_[index(order[0], r)];
    double prev = rep;
    for (int k : order) {
      const double v = coords_[index(k, r)];
      if (v - prev > epsilon_) rep = v;
      prev = v;
      coords_[index(k, r)] = rep;
    }
  }

  std::vector<double> raw(static_cast<std::size_t>(n_ + 1));
  for (int q = 0; q <= n_; ++q) {
    double sum = 0.0;
    TypeVector t{0, m_};
    for (int r = 0; r < m_; ++r) {
      const double c = coords_[index(q, r)];
      double dev = c - 0.5;
      if (std::abs(dev) <= epsilon_) dev = 0.0;
      deviations_[index(q, r)] = dev;
      if (dev >= 0.0) t.bits |= std::uint64_t{1} << r;
      const double norm = std::min(c, 1.0 - c);
      sum += norm * norm;
    }
    types_[static_cast<std::size_t>(q)] = t;
    double len = std::sqrt(sum);
    if (len <= epsilon_) len = 0.0;
    raw[static_cast<std::size_t>(q)] = len;
  }
  lengths_ = raw;

  std::vector<int> by_len(static_cast<std::size_t>(n_ + 1));
  std::iota(by_len.begin(), by_len.end(), 0);
  std::stable_sort(by_len.begin(), by_len.end(),
                   [&](int a, int b) { return raw[static_cast<std::size_t>(a)] < raw[static_cast<std::size_t>(b)]; });
  int rank = 0;
  for (std::size_t i = 0; i < by_len.size(); ++i) {
    const auto q = static_cast<std::size_t>(by_len[i]);
    if (i > 0 && raw[q] - raw[static_cast<std::size_t>(by_len[i - 1])] > epsilon_) ++rank;
    ranks_[q] = rank;
  }
}

void MultipleTable::build_exact(const ExactAlphas& exact) {
  const std::int64_t den = exact.denominator;
  unit_ = static_cast<double>(den);
  std::vector<Int128> squared(static_cast<std::size_t>(n_ + 1), 0);
  for (int q = 0; q <= n_; ++q) {
    TypeVector t{0, m_};
    Int128 sum = 0;
    for (int r = 0; r < m_; ++r) {
      const Int128 prod = static_cast<Int128>(q) * exact.numerators[static_cast<std::size_t>(r)];
      const auto c = static_cast<std::int64_t>(prod % den);
      coords_[index(q, r)] = static_cast<double>(c);
      deviations_[index(q, r)] = static_cast<double>(2 * c - den) / (2.0 * static_cast<double>(den));
      if (2 * c >= den) t.bits |= std::uint64_t{1} << r;
      const std::int64_t norm = std::min(c, den - c);
      sum += static_cast<Int128>(norm) * norm;
    }
    types_[static_cast<std::size_t>(q)] = t;
    squared[static_cast<std::size_t>(q)] = sum;
    lengths_[static_cast<std::size_t>(q)] =
        static_cast<double>(std::sqrt(static_cast<long double>(sum)) / static_cast<long double>(den));
  }

  std::vector<int> by_len(static_cast<std::size_t>(n_ + 1));
  std::iota(by_len.begin(), by_len.end(), 0);
  std::stable_sort(by_len.begin(), by_len.end(), [&](int a, int b) {
    return squared[static_cast<std::size_t>(a)] < squared[static_cast<std::size_t>(b)];
  });
  int rank = 0;
  for (std::size_t i = 0; i < by_len.size(); ++i) {
    const auto q = static_cast<std::size_t>(by_len[i]);
    if (i > 0 && squared[q] != squared[static_cast<std::size_t>(by_len[i - 1])]) ++rank;
    ranks_[q] = rank;
  }
}

}  // namespace kdist
