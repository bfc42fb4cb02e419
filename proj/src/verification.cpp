#include "kdist/verification.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>
#include <stdexcept>

#include "kdist/denominators.hpp"
#include "kdist/experiments.hpp"
#include "kdist/gaps.hpp"
#include "kdist/tournament.hpp"

namespace kdist {

namespace {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string histogram_text(const std::map<int, std::int64_t>& hist) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, v] : hist) {
    out << (first ? "" : " ") << k << ":" << v;
    first = false;
  }
  return out.str();
}

std::int64_t count_of(const SweepSummary& s, const std::string& check) {
  const auto it = s.violations_by_check.find(check);
  return it == s.violations_by_check.end() ? 0 : it->second;
}

ExperimentConfig uniform_config(int m, int trials, int n_min, int n_max, const SuiteOptions& o) {
  ExperimentConfig c;
  c.m = m;
  c.alpha_source.kind = AlphaSource::Kind::UniformRandom;
  c.alpha_source.trials = trials;
  c.n_range = NRange{n_min, n_max};
  c.seed = o.seed;
  c.epsilon = o.epsilon;
  return c;
}

CheckResult survivor_bound_check(const std::string& name, const SweepSummary& s, int m) {
  const std::int64_t violations = count_of(s, "survivor_bound");
  std::ostringstream d;
  d << s.records.size() << " trials, max |S| = " << s.max_distinct << " (bound " << survivor_bound(m)
    << "), violations = " << violations << ", errors = " << s.error_count << ", |S| histogram " << histogram_text(s.histogram);
  return {name, violations == 0 && s.error_count == 0, d.str()};
}

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t salt) { return seed * 0x100000001b3ULL + salt; }

}  // namespace

bool SuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

SuiteResult verify_one_d(const SuiteOptions& o) {
  Stopwatch clock;
  SuiteResult result{"one_d", {}, 0, 0, 0.0};
  const int trials = o.trials.value_or(10000);

  std::int64_t violations = 0;
  std::size_t max_distinct = 0;
  std::map<int, std::int64_t> hist;
  GapOptions gap_options;
  gap_options.numeric.epsilon = o.epsilon;
  for (int t = 0; t < trials; ++t) {
    auto rng = trial_rng(sub_seed(o.seed, 1), static_cast<std::uint64_t>(t));
    const double alpha = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const int n = std::uniform_int_distribution<int>(2, 500)(rng);
    const GapSpectrum g = gap_spectrum(alpha, n, gap_options);
    ++result.spectra_checked;
    if (!g.conserves_measure()) ++result.spectra_unconserved;
    max_distinct = std::max(max_distinct, g.distinct_gaps.size());
    ++hist[static_cast<int>(g.distinct_gaps.size())];
    if (g.distinct_gaps.size() > static_cast<std::size_t>(kThreeGapBound)) ++violations;
  }
  const double gap_seconds = clock.seconds();
  std::ostringstream d;
  d << trials << " trials, max distinct gaps = " << max_distinct << ", violations = " << violations
    << ", histogram " << histogram_text(hist) << ", " << gap_seconds << " s";
  result.checks.push_back({"three_gap_bound", violations == 0, d.str()});
  result.checks.push_back({"three_gap_runtime_under_60s", gap_seconds < 60.0, std::to_string(gap_seconds) + " s"});

  const int tournament_trials = std::max(1, trials / 10);
  const SweepSummary s = run_sweep(uniform_config(1, tournament_trials, 2, 200, o));
  result.checks.push_back(survivor_bound_check("one_d_survivor_bound", s, 1));
  result.checks.push_back({"one_d_gap_conservation", count_of(s, "gap_conservation") == 0 && count_of(s, "three_gap") == 0,
                           "three_gap/conservation violations in tournament trials: " +
                               std::to_string(count_of(s, "three_gap") + count_of(s, "gap_conservation"))});
  result.spectra_checked += static_cast<std::int64_t>(s.records.size());
  result.spectra_unconserved += count_of(s, "gap_conservation");
  result.seconds = clock.seconds();
  return result;
}

SuiteResult verify_planar(const SuiteOptions& o) {
  Stopwatch clock;
  SuiteResult result{"planar", {}, 0, 0, 0.0};
  const SweepSummary s = run_sweep(uniform_config(2, o.trials.value_or(1000), 2, 300, o));
  result.checks.push_back(survivor_bound_check("eleven_distance_bound", s, 2));
  result.seconds = clock.seconds();
  return result;
}

SuiteResult verify_higher(const SuiteOptions& o) {
  Stopwatch clock;
  SuiteResult result{"higher", {}, 0, 0, 0.0};
  const SweepSummary s = run_sweep(uniform_config(3, o.trials.value_or(200), 2, 120, o));
  result.checks.push_back(survivor_bound_check("three_dimensional_bound", s, 3));
  for (const CheckResult& c : verify_constants().checks) result.checks.push_back(c);
  result.seconds = clock.seconds();
  return result;
}

SuiteResult verify_lemmas(const SuiteOptions& o) {
  Stopwatch clock;
  SuiteResult result{"lemmas", {}, 0, 0, 0.0};
  const int planar_trials = o.trials.value_or(1000);
  const int spatial_trials = std::max(1, planar_trials * 3 / 10);

  struct Tally {
    std::int64_t observed_max = 0;
    std::int64_t violations = 0;
    std::int64_t applicable = 0;
  };

  for (int m : {2, 3}) {
    const int trials = m == 2 ? planar_trials : spatial_trials;
    ExperimentConfig c = uniform_config(m, trials, 4, 300, o);
    c.seed = sub_seed(o.seed, static_cast<std::uint64_t>(m));
    const TrialPlan plan = plan_trials(c);
    std::map<std::string, Tally> tallies;
    std::int64_t q1_minimality_failures = 0;
    std::int64_t q2_variant_differs = 0;
    for (const TrialSpec& spec : plan.trials) {
      const MultipleTable table(spec.alphas, spec.n, NumericOptions{o.epsilon, Arithmetic::Auto});
      const ApproximationProfile p = approximation_profile(table);
      for (int q = 1; q <= table.n() / 2; ++q) {
        if (table.length_rank(q) < table.length_rank(p.q1.q)) {
          ++q1_minimality_failures;
          break;
        }
      }
      const bool has_q2 = p.q2.has_value();
      const bool has_q2_opp = p.q2_opposite.has_value();
      if (has_q2 != has_q2_opp || (has_q2 && p.q2->q != p.q2_opposite->q)) ++q2_variant_differs;
      for (const LemmaCheck& check : check_lemmas(p)) {
        Tally& t = tallies[check.name];
        if (!check.applicable) continue;
        ++t.applicable;
        t.observed_max = std::max(t.observed_max, check.observed);
        if (!check.pass()) ++t.violations;
      }
    }
    const std::string suffix = "_m" + std::to_string(m);
    for (const auto& [name, t] : tallies) {
      if (t.applicable == 0 && name == "primary_distinct_lengths") continue;
      std::ostringstream d;
      d << plan.trials.size() << " trials (" << t.applicable << " applicable), max observed = " << t.observed_max
        << ", violations = " << t.violations;
      result.checks.push_back({name + suffix, t.violations == 0, d.str()});
    }
    result.checks.push_back({"q1_minimality" + suffix, q1_minimality_failures == 0,
                             "failures = " + std::to_string(q1_minimality_failures)});
    result.checks.push_back({"q2_variant_report" + suffix, true,
                             "trials where the different-type and opposite-type Q2 disagree: " +
                                 std::to_string(q2_variant_differs)});
  }
  result.seconds = clock.seconds();
  return result;
}

SuiteResult verify_classical(const SuiteOptions& o) {
  Stopwatch clock;
  SuiteResult result{"classical", {}, 0, 0, 0.0};
  const int trials = o.trials.value_or(500);
  GapOptions gap_options;
  gap_options.numeric.epsilon = o.epsilon;

  std::int64_t cg_violations = 0;
  std::int64_t cg_max_excess = -1000;
  for (int t = 0; t < trials; ++t) {
    auto rng = trial_rng(sub_seed(o.seed, 11), static_cast<std::uint64_t>(t));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int d = std::uniform_int_distribution<int>(1, 5)(rng);
    const double alpha = unit(rng);
    std::vector<double> lambdas;
    std::vector<int> ns;
    for (int i = 0; i < d; ++i) {
      lambdas.push_back(unit(rng));
      ns.push_back(std::uniform_int_distribution<int>(1, 40)(rng));
    }
    const GapSpectrum g =
        chung_graham_gaps(Alphas::from_reals({alpha}), Alphas::from_reals(lambdas), ns, gap_options);
    ++result.spectra_checked;
    if (!g.conserves_measure()) ++result.spectra_unconserved;
    const auto excess = static_cast<std::int64_t>(g.distinct_gaps.size()) - chung_graham_bound(d);
    cg_max_excess = std::max(cg_max_excess, excess);
    if (excess > 0) ++cg_violations;
  }
  result.checks.push_back({"chung_graham_3d", cg_violations == 0,
                           std::to_string(trials) + " trials, violations = " + std::to_string(cg_violations) +
                               ", max (distinct - 3d) = " + std::to_string(cg_max_excess)});

  std::int64_t gs_violations = 0;
  std::int64_t gs_swap_violations = 0;
  std::int64_t gs_max_excess = -1000;
  for (int t = 0; t < trials; ++t) {
    auto rng = trial_rng(sub_seed(o.seed, 12), static_cast<std::uint64_t>(t));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double alpha = unit(rng);
    const double beta = unit(rng);
    const int n1 = std::uniform_int_distribution<int>(1, 40)(rng);
    const int n2 = std::uniform_int_distribution<int>(1, 40)(rng);
    const GapSpectrum g = geelen_simpson_gaps(Alphas::from_reals({alpha, beta}), n1, n2, gap_options);
    ++result.spectra_checked;
    if (!g.conserves_measure()) ++result.spectra_unconserved;
    const auto distinct = static_cast<std::int64_t>(g.distinct_gaps.size());
    gs_max_excess = std::max(gs_max_excess, distinct - geelen_simpson_bound(n1));
    if (distinct > geelen_simpson_bound(n1)) ++gs_violations;
    if (distinct > geelen_simpson_bound(n2)) ++gs_swap_violations;
  }
  result.checks.push_back({"geelen_simpson_n1_plus_3", gs_violations == 0,
                           std::to_string(trials) + " trials, violations = " + std::to_string(gs_violations) +
                               ", max (distinct - (n1 + 3)) = " + std::to_string(gs_max_excess)});
  result.checks.push_back({"geelen_simpson_n2_plus_3", gs_swap_violations == 0,
                           "violations = " + std::to_string(gs_swap_violations)});
  result.seconds = clock.seconds();
  return result;
}

SuiteResult verify_oracle(const SuiteOptions& o) {
  Stopwatch clock;
  SuiteResult result{"oracle", {}, 0, 0, 0.0};
  for (int m : {1, 2, 3}) {
    ExperimentConfig c = uniform_config(m, o.trials.value_or(200), 2, 50, o);
    c.seed = sub_seed(o.seed, 20 + static_cast<std::uint64_t>(m));
    const CrossCheckReport r = cross_check(c);
    std::ostringstream d;
    d << r.trials << " trials, mismatches = " << r.mismatches.size();
    if (!r.passed()) {
      const Mismatch& mm = r.mismatches.front();
      d << "; first witness alphas=" << mm.alphas_text << " n=" << mm.n << " sweep_only=" << mm.sweep_only.size()
        << " brute_only=" << mm.brute_only.size();
    }
    result.checks.push_back({"sweep_equals_brute_m" + std::to_string(m), r.passed(), d.str()});
  }
  result.seconds = clock.seconds();
  return result;
}

SuiteResult verify_exactness(const SuiteOptions& o) {
  Stopwatch clock;
  SuiteResult result{"exactness", {}, 0, 0, 0.0};
  const int trials = o.trials.value_or(200);
  std::int64_t survivor_mismatch = 0;
  std::int64_t q_mismatch = 0;
  std::string first_witness;
  for (int t = 0; t < trials; ++t) {
    auto rng = trial_rng(sub_seed(o.seed, 30), static_cast<std::uint64_t>(t));
    const int m = 1 + t % 3;
    std::vector<std::pair<std::int64_t, std::int64_t>> fracs;
    for (int r = 0; r < m; ++r) {
      const std::int64_t q = std::uniform_int_distribution<std::int64_t>(2, 50)(rng);
      const std::int64_t p = std::uniform_int_distribution<std::int64_t>(1, q - 1)(rng);
      fracs.emplace_back(p, q);
    }
    const int n = std::uniform_int_distribution<int>(2, 60)(rng);
    const Alphas alphas = Alphas::from_fractions(fracs);
    const MultipleTable exact_table(alphas, n, NumericOptions{o.epsilon, Arithmetic::Exact});
    const MultipleTable float_table(alphas, n, NumericOptions{o.epsilon, Arithmetic::Floating});

    const SurvivorReport se = survivors_sweep(exact_table);
    const SurvivorReport sf = survivors_sweep(float_table);
    if (se.survivors != sf.survivors) {
      ++survivor_mismatch;
      if (first_witness.empty()) first_witness = alphas.to_string() + " n=" + std::to_string(n);
    }
    const ApproximationProfile pe = approximation_profile(exact_table);
    const ApproximationProfile pf = approximation_profile(float_table);
    const auto q2_of = [](const ApproximationProfile& p) { return p.q2 ? p.q2->q : -1; };
    if (pe.q1.q != pf.q1.q || q2_of(pe) != q2_of(pf)) {
      ++q_mismatch;
      if (first_witness.empty()) first_witness = alphas.to_string() + " n=" + std::to_string(n);
    }

    if (m == 1) {
      GapOptions exact_gaps;
      exact_gaps.numeric = NumericOptions{o.epsilon, Arithmetic::Exact};
      const GapSpectrum g = gap_spectrum(alphas, n, exact_gaps);
      ++result.spectra_checked;
      if (!g.conserves_measure()) ++result.spectra_unconserved;
    }
  }
  std::string suffix = first_witness.empty() ? "" : "; first witness " + first_witness;
  result.checks.push_back({"exact_vs_floating_survivors", survivor_mismatch == 0,
                           std::to_string(trials) + " instances, mismatches = " + std::to_string(survivor_mismatch) + suffix});
  result.checks.push_back({"exact_vs_floating_q1_q2", q_mismatch == 0,
                           std::to_string(trials) + " instances, mismatches = " + std::to_string(q_mismatch) + suffix});
  result.seconds = clock.seconds();
  return result;
}

SuiteResult verify_constants() {
  SuiteResult result{"constants", {}, 0, 0, 0.0};
  const std::uint64_t expected[] = {3, 11, 290};
  for (int m = 1; m <= 3; ++m) {
    const std::uint64_t got = survivor_bound(m);
    const std::uint64_t want = expected[m - 1];
    result.checks.push_back({"survivor_bound_m" + std::to_string(m), got == want,
                             "got " + std::to_string(got) + ", expected " + std::to_string(want)});
  }
  const std::uint64_t printed = printed_survivor_bound(3);
  result.checks.push_back({"printed_formula_m3_discrepancy", printed == 138,
                           "printed formula gives " + std::to_string(printed) +
                               " at m = 3, against 290 stated for three dimensions (documented discrepancy)"});
  return result;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"one_d",   "planar",    "higher",   "lemmas",
                                                 "classical", "oracle", "exactness", "constants"};
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& options) {
  if (name == "one_d") return verify_one_d(options);
  if (name == "planar") return verify_planar(options);
  if (name == "higher") return verify_higher(options);
  if (name == "lemmas") return verify_lemmas(options);
  if (name == "classical") return verify_classical(options);
  if (name == "oracle") return verify_oracle(options);
  if (name == "exactness") return verify_exactness(options);
  if (name == "constants") return verify_constants();
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace kdist
