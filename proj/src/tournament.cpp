#include "kdist/tournament.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

namespace kdist {

namespace {

bool plays(const Edge& a, const Edge& b) {
  const std::size_t axes = std::min(a.per_axis_arcs.size(), b.per_axis_arcs.size());
  for (std::size_t r = 0; r < axes; ++r) {
    if (arcs_overlap(a.per_axis_arcs[r], b.per_axis_arcs[r])) return true;
  }
  return false;
}

SurvivorReport make_report(std::span<const Edge> edges, const std::vector<bool>& alive, SurvivorMode mode,
                           bool exact) {
  SurvivorReport report;
  report.mode = mode;
  report.exact = exact;
  std::map<int, const Edge*> witness_by_rank;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!alive[i]) {
      ++report.defeated_count;
      continue;
    }
    const Edge& e = edges[i];
    ++report.survivor_count;
    report.survivors.push_back(e.ref());
    auto [it, inserted] = witness_by_rank.emplace(e.length_rank, &e);
    if (!inserted && e.ref() < it->second->ref()) it->second = &e;
  }
  std::sort(report.survivors.begin(), report.survivors.end());
  for (const auto& [rank, e] : witness_by_rank) {
    report.distinct_lengths.push_back(e->length);
    report.witnesses.push_back(e->ref());
  }
  return report;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw DomainError("bound overflows 64 bits");
  return out;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw DomainError("bound overflows 64 bits");
  return out;
}

std::uint64_t general_bound(int m, std::uint64_t inner_root) {
  const std::uint64_t outer = checked_pow(ceil_sqrt(static_cast<std::uint64_t>(m)), m);
  const std::uint64_t inner =
      checked_add(checked_add(checked_pow(inner_root, m), checked_pow(2, m)), 1);
  return checked_add(checked_mul(outer, inner), 2);
}

}  // namespace

const char* to_string(SurvivorMode mode) {
  return mode == SurvivorMode::Sweep ? "sweep" : "brute";
}

std::vector<Edge> build_edges(const MultipleTable& table) {
  const int n = table.n();
  const int m = table.dimension();
  if (n < 2) throw DomainError("at least two points are needed to form an edge");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
  for (int j = 1; j < n; ++j) {
    for (int k = j + 1; k <= n; ++k) {
      Edge e;
      e.j = j;
      e.k = k;
      e.q = k - j;
      e.length = table.length(e.q);
      e.length_rank = table.length_rank(e.q);
      e.per_axis_arcs.reserve(static_cast<std::size_t>(m));
      for (int r = 0; r < m; ++r) e.per_axis_arcs.push_back(table.arc(j, k, r));
      edges.push_back(std::move(e));
    }
  }
  return edges;
}

std::vector<Edge> build_edges(const Alphas& alphas, int n, const NumericOptions& options) {
  if (n < 2) throw DomainError("at least two points are needed to form an edge");
  return build_edges(MultipleTable(alphas, n, options));
}

SurvivorReport survivors_brute(std::span<const Edge> edges, bool exact) {
  std::vector<bool> alive(edges.size(), true);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t p = 0; p < edges.size(); ++p) {
      if (edges[p].length_rank < edges[i].length_rank && plays(edges[p], edges[i])) {
        alive[i] = false;
        break;
      }
    }
  }
  return make_report(edges, alive, SurvivorMode::Brute, exact);
}

SurvivorReport survivors_brute(const Alphas& alphas, int n, const NumericOptions& options, int oracle_cap) {
  if (n > oracle_cap) {
    throw OracleCapExceeded("n = " + std::to_string(n) + " exceeds the brute-force cap " +
                            std::to_string(oracle_cap));
  }
  const MultipleTable table(alphas, n, options);
  const auto edges = build_edges(table);
  return survivors_brute(edges, table.exact());
}

SurvivorReport survivors_sweep(std::span<const Edge> edges, bool exact) {
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (edges[a].length_rank != edges[b].length_rank) return edges[a].length_rank < edges[b].length_rank;
    return edges[a].ref() < edges[b].ref();
  });

  std::size_t axes = 0;
  for (const Edge& e : edges) axes = std::max(axes, e.per_axis_arcs.size());
  std::vector<ArcUnion> cover(axes);
  std::vector<bool> alive(edges.size(), false);

  std::size_t group_begin = 0;
  while (group_begin < order.size()) {
    std::size_t group_end = group_begin;
    const int rank = edges[order[group_begin]].length_rank;
    while (group_end < order.size() && edges[order[group_end]].length_rank == rank) ++group_end;

    // Equal lengths never defeat each other: judge the whole group against
    // strictly shorter edges before adding it to the cover.
    for (std::size_t g = group_begin; g < group_end; ++g) {
      const Edge& e = edges[order[g]];
      bool ok = true;
      for (std::size_t r = 0; r < e.per_axis_arcs.size() && ok; ++r) {
        ok = !cover[r].overlaps(e.per_axis_arcs[r]);
      }
      alive[order[g]] = ok;
    }
    for (std::size_t g = group_begin; g < group_end; ++g) {
      const Edge& e = edges[order[g]];
      for (std::size_t r = 0; r < e.per_axis_arcs.size(); ++r) cover[r].insert(e.per_axis_arcs[r]);
    }
    group_begin = group_end;
  }
  return make_report(edges, alive, SurvivorMode::Sweep, exact);
}

SurvivorReport survivors_sweep(const MultipleTable& table) {
  const auto edges = build_edges(table);
  return survivors_sweep(edges, table.exact());
}

SurvivorReport survivors_sweep(const Alphas& alphas, int n, const NumericOptions& options) {
  if (n < 2) throw DomainError("at least two points are needed to form an edge");
  return survivors_sweep(MultipleTable(alphas, n, options));
}

std::uint64_t ceil_sqrt(std::uint64_t x) {
  std::uint64_t r = 0;
  while (r * r < x) ++r;
  return r;
}

std::uint64_t checked_pow(std::uint64_t base, int exp) {
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i) out = checked_mul(out, base);
  return out;
}

std::uint64_t survivor_bound(int m) {
  if (m < 1) throw DomainError("dimension must be positive");
  if (m == 1) return 3;
  if (m == 2) return 11;
  return general_bound(m, ceil_sqrt(2 * static_cast<std::uint64_t>(m)));
}

std::uint64_t printed_survivor_bound(int m) {
  if (m < 1) throw DomainError("dimension must be positive");
  return general_bound(m, ceil_sqrt(static_cast<std::uint64_t>(m)));
}

}  // namespace kdist
