#include "kdist/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "kdist/denominators.hpp"
#include "kdist/gaps.hpp"

namespace kdist {

using nlohmann::json;

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

const char* kind_name(AlphaSource::Kind kind) {
  switch (kind) {
    case AlphaSource::Kind::UniformRandom:
      return "uniform";
    case AlphaSource::Kind::QuadraticIrrationals:
      return "quadratic";
    case AlphaSource::Kind::RationalGrid:
      return "rational_grid";
    case AlphaSource::Kind::Explicit:
      return "explicit";
  }
  return "?";
}

int largest_n(const ExperimentConfig& c) {
  if (c.n_range) return c.n_range->max;
  return c.n_values.empty() ? 0 : *std::max_element(c.n_values.begin(), c.n_values.end());
}

/// Appends one spec per configured n (or one drawn n) for the given generator.
void emit(TrialPlan& plan, const ExperimentConfig& c, const Alphas& alphas, std::mt19937_64& rng) {
  if (c.n_range) {
    std::uniform_int_distribution<int> dist(c.n_range->min, c.n_range->max);
    const int n = dist(rng);
    plan.trials.push_back({static_cast<std::int64_t>(plan.trials.size()), alphas, n});
    return;
  }
  for (int n : c.n_values) {
    plan.trials.push_back({static_cast<std::int64_t>(plan.trials.size()), alphas, n});
  }
}

void combinations(int size, int choose, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == choose) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < size; ++i) {
    cur.push_back(i);
    combinations(size, choose, i + 1, cur, out);
    cur.pop_back();
  }
}

std::string csv_real(double x) { return format_real(x); }

}  // namespace

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(seed) >> 32), static_cast<std::uint32_t>(splitmix64(seed)),
                    static_cast<std::uint32_t>(splitmix64(trial ^ 0x5bd1e995ULL) >> 32),
                    static_cast<std::uint32_t>(splitmix64(trial ^ 0x5bd1e995ULL))};
  return std::mt19937_64(seq);
}

bool near_rational(const std::vector<double>& alphas, int max_denominator, double tolerance) {
  for (double a : alphas) {
    for (int b = 1; b <= max_denominator; ++b) {
      const double scaled = a * b;
      if (std::abs(scaled - std::round(scaled)) <= tolerance * b) return true;
    }
  }
  return false;
}

const std::vector<double>& quadratic_catalog() {
  static const std::vector<double> catalog = {std::sqrt(2.0) - 1.0, std::sqrt(3.0) - 1.0, (std::sqrt(5.0) - 1.0) / 2.0,
                                              std::sqrt(7.0) - 2.0};
  return catalog;
}

ExperimentConfig parse_config(const json& doc) {
  std::vector<std::string> bad;
  ExperimentConfig c;
  if (!doc.is_object()) throw ConfigError("config must be a JSON object", {"<root>"});

  static const std::set<std::string> known = {"m",          "alpha_source", "n_values", "epsilon",
                                              "oracle_cap", "seed",         "output",   "threads"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.count(key)) bad.push_back(key);
  }

  auto get_int = [&](const char* key, int& out, int lo) {
    if (!doc.contains(key)) return;
    const json& v = doc.at(key);
    if (!v.is_number_integer() || v.get<long long>() < lo) {
      bad.emplace_back(key);
      return;
    }
    out = v.get<int>();
  };

  if (!doc.contains("m")) {
    bad.emplace_back("m");
  } else {
    get_int("m", c.m, 1);
    if (c.m > kMaxDimension) bad.emplace_back("m");
  }
  get_int("oracle_cap", c.oracle_cap, 2);
  get_int("threads", c.threads, 1);

  if (doc.contains("epsilon")) {
    const json& v = doc.at("epsilon");
    if (!v.is_number() || v.get<double>() < 0.0) {
      bad.emplace_back("epsilon");
    } else {
      c.epsilon = v.get<double>();
    }
  }
  if (doc.contains("seed")) {
    const json& v = doc.at("seed");
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
      bad.emplace_back("seed");
    } else {
      c.seed = v.get<std::uint64_t>();
    }
  }

  if (!doc.contains("n_values")) {
    bad.emplace_back("n_values");
  } else {
    const json& v = doc.at("n_values");
    if (v.is_array() && !v.empty()) {
      for (const json& x : v) {
        if (!x.is_number_integer() || x.get<long long>() < 2) {
          bad.emplace_back("n_values");
          c.n_values.clear();
          break;
        }
        c.n_values.push_back(x.get<int>());
      }
    } else if (v.is_object() && v.contains("min") && v.contains("max") && v.at("min").is_number_integer() &&
               v.at("max").is_number_integer() && v.at("min").get<long long>() >= 2 &&
               v.at("max").get<long long>() >= v.at("min").get<long long>()) {
      c.n_range = NRange{v.at("min").get<int>(), v.at("max").get<int>()};
    } else {
      bad.emplace_back("n_values");
    }
  }

  if (!doc.contains("alpha_source")) {
    bad.emplace_back("alpha_source");
  } else {
    const json& s = doc.at("alpha_source");
    const std::string kind = s.is_object() && s.contains("kind") && s.at("kind").is_string()
                                 ? s.at("kind").get<std::string>()
                                 : std::string();
    if (kind == "uniform") {
      c.alpha_source.kind = AlphaSource::Kind::UniformRandom;
      if (s.contains("trials") && s.at("trials").is_number_integer() && s.at("trials").get<long long>() >= 1) {
        c.alpha_source.trials = s.at("trials").get<int>();
      } else if (s.contains("trials")) {
        bad.emplace_back("alpha_source.trials");
      }
    } else if (kind == "quadratic") {
      c.alpha_source.kind = AlphaSource::Kind::QuadraticIrrationals;
      if (c.m > static_cast<int>(quadratic_catalog().size())) bad.emplace_back("alpha_source.kind");
    } else if (kind == "rational_grid") {
      c.alpha_source.kind = AlphaSource::Kind::RationalGrid;
      if (s.contains("max_denominator") && s.at("max_denominator").is_number_integer() &&
          s.at("max_denominator").get<long long>() >= 2) {
        c.alpha_source.max_denominator = s.at("max_denominator").get<int>();
      } else {
        bad.emplace_back("alpha_source.max_denominator");
      }
    } else if (kind == "explicit") {
      c.alpha_source.kind = AlphaSource::Kind::Explicit;
      if (!s.contains("alphas") || !s.at("alphas").is_array() || s.at("alphas").empty()) {
        bad.emplace_back("alpha_source.alphas");
      } else {
        for (const json& a : s.at("alphas")) {
          try {
            Alphas parsed;
            if (a.is_string()) {
              parsed = Alphas::parse(a.get<std::string>());
            } else if (a.is_array()) {
              parsed = Alphas::from_reals(a.get<std::vector<double>>());
            } else {
              throw DomainError("bad generator");
            }
            if (parsed.dimension() != c.m) throw DomainError("dimension mismatch");
            c.alpha_source.explicit_alphas.push_back(std::move(parsed));
          } catch (const std::exception&) {
            bad.emplace_back("alpha_source.alphas");
            break;
          }
        }
      }
    } else {
      bad.emplace_back("alpha_source.kind");
    }
  }

  if (doc.contains("output")) {
    const json& o = doc.at("output");
    if (!o.is_object()) {
      bad.emplace_back("output");
    } else {
      for (const auto& [key, value] : o.items()) {
        if ((key != "summary_json" && key != "trials_csv") || !value.is_string()) {
          bad.push_back("output." + key);
          continue;
        }
        if (key == "summary_json") c.output.summary_json = value.get<std::string>();
        if (key == "trials_csv") c.output.trials_csv = value.get<std::string>();
      }
    }
  }

  if (!bad.empty()) {
    std::string msg = "invalid config keys:";
    for (const auto& k : bad) msg += " " + k;
    throw ConfigError(msg, bad);
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path, {"<file>"});
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what(), {"<root>"});
  }
  return parse_config(doc);
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["m"] = c.m;
  json src;
  src["kind"] = kind_name(c.alpha_source.kind);
  switch (c.alpha_source.kind) {
    case AlphaSource::Kind::UniformRandom:
      src["trials"] = c.alpha_source.trials;
      break;
    case AlphaSource::Kind::RationalGrid:
      src["max_denominator"] = c.alpha_source.max_denominator;
      break;
    case AlphaSource::Kind::Explicit: {
      json list = json::array();
      for (const Alphas& a : c.alpha_source.explicit_alphas) list.push_back(a.to_string());
      src["alphas"] = list;
      break;
    }
    case AlphaSource::Kind::QuadraticIrrationals:
      break;
  }
  j["alpha_source"] = src;
  if (c.n_range) {
    j["n_values"] = {{"min", c.n_range->min}, {"max", c.n_range->max}};
  } else {
    j["n_values"] = c.n_values;
  }
  j["epsilon"] = c.epsilon;
  j["oracle_cap"] = c.oracle_cap;
  j["seed"] = c.seed;
  json out = json::object();
  if (c.output.summary_json) out["summary_json"] = *c.output.summary_json;
  if (c.output.trials_csv) out["trials_csv"] = *c.output.trials_csv;
  j["output"] = out;
  return j;
}

TrialPlan plan_trials(const ExperimentConfig& c) {
  if (c.m < 1 || c.m > kMaxDimension) throw ConfigError("dimension out of range", {"m"});
  if (!c.n_range && c.n_values.empty()) throw ConfigError("no n values", {"n_values"});
  TrialPlan plan;
  const AlphaSource& src = c.alpha_source;
  switch (src.kind) {
    case AlphaSource::Kind::UniformRandom: {
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      for (int t = 0; t < src.trials; ++t) {
        auto rng = trial_rng(c.seed, static_cast<std::uint64_t>(t));
        int n = 0;
        if (c.n_range) n = std::uniform_int_distribution<int>(c.n_range->min, c.n_range->max)(rng);
        const int guard_den = c.n_range ? n : largest_n(c);
        std::vector<double> a(static_cast<std::size_t>(c.m));
        for (;;) {
          for (double& x : a) x = unit(rng);
          if (!near_rational(a, guard_den)) break;
          ++plan.rejected_draws;
        }
        const Alphas alphas = Alphas::from_reals(a);
        if (c.n_range) {
          plan.trials.push_back({static_cast<std::int64_t>(plan.trials.size()), alphas, n});
        } else {
          emit(plan, c, alphas, rng);
        }
      }
      break;
    }
    case AlphaSource::Kind::QuadraticIrrationals: {
      const auto& cat = quadratic_catalog();
      if (c.m > static_cast<int>(cat.size())) throw ConfigError("catalog too small for m", {"alpha_source.kind"});
      std::vector<std::vector<int>> combos;
      std::vector<int> cur;
      combinations(static_cast<int>(cat.size()), c.m, 0, cur, combos);
      std::uint64_t index = 0;
      for (const auto& combo : combos) {
        std::vector<double> a;
        for (int i : combo) a.push_back(cat[static_cast<std::size_t>(i)]);
        auto rng = trial_rng(c.seed, index++);
        emit(plan, c, Alphas::from_reals(a), rng);
      }
      break;
    }
    case AlphaSource::Kind::RationalGrid: {
      std::vector<std::pair<std::int64_t, std::int64_t>> farey;
      for (std::int64_t q = 2; q <= src.max_denominator; ++q) {
        for (std::int64_t p = 1; p < q; ++p) {
          if (std::gcd(p, q) == 1) farey.emplace_back(p, q);
        }
      }
      const double total = std::pow(static_cast<double>(farey.size()), c.m);
      if (total > 1e6) throw ConfigError("rational grid too large", {"alpha_source.max_denominator"});
      std::vector<std::size_t> digits(static_cast<std::size_t>(c.m), 0);
      std::uint64_t index = 0;
      for (;;) {
        std::vector<std::pair<std::int64_t, std::int64_t>> tuple;
        for (std::size_t d : digits) tuple.push_back(farey[d]);
        auto rng = trial_rng(c.seed, index++);
        emit(plan, c, Alphas::from_fractions(tuple), rng);
        bool exhausted = true;
        for (std::size_t pos = digits.size(); pos-- > 0;) {
          if (++digits[pos] < farey.size()) {
            exhausted = false;
            break;
          }
          digits[pos] = 0;
        }
        if (exhausted) break;
      }
      break;
    }
    case AlphaSource::Kind::Explicit: {
      std::uint64_t index = 0;
      for (const Alphas& a : src.explicit_alphas) {
        if (a.dimension() != c.m) throw ConfigError("explicit generator has wrong dimension", {"alpha_source.alphas"});
        auto rng = trial_rng(c.seed, index++);
        emit(plan, c, a, rng);
      }
      break;
    }
  }
  return plan;
}

TrialRecord run_trial(const TrialSpec& spec, int m, const NumericOptions& numeric) {
  TrialRecord rec;
  rec.id = spec.id;
  rec.m = m;
  rec.n = spec.n;
  rec.alphas_text = spec.alphas.to_string();
  rec.alphas = spec.alphas.values();
  try {
    const MultipleTable table(spec.alphas, spec.n, numeric);
    const SurvivorReport s = survivors_sweep(table);
    rec.survivor_count = s.survivor_count;
    rec.distinct_count = static_cast<int>(s.distinct_count());
    rec.survivor_lengths = s.distinct_lengths;
    rec.max_length = s.distinct_lengths.empty() ? 0.0 : s.distinct_lengths.back();
    if (s.distinct_count() > survivor_bound(m)) rec.violations.emplace_back("survivor_bound");

    if (m == 1) {
      GapOptions gap_options;
      gap_options.numeric = numeric;
      const GapSpectrum g = gap_spectrum(spec.alphas, spec.n, gap_options);
      if (g.distinct_gaps.size() > static_cast<std::size_t>(kThreeGapBound)) rec.violations.emplace_back("three_gap");
      if (!g.conserves_measure()) rec.violations.emplace_back("gap_conservation");
    }

    const ApproximationProfile p = approximation_profile(table);
    rec.q1 = p.q1.q;
    if (p.q2) rec.q2 = p.q2->q;
    rec.primary_count = static_cast<int>(p.primary.size());
    rec.secondary_count = static_cast<int>(p.secondary.size());
    rec.lemma2_count = p.lemma2;
    for (const LemmaCheck& check : check_lemmas(p)) {
      if (!check.pass()) rec.violations.push_back(check.name);
    }
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  return rec;
}

void SweepSummary::add(TrialRecord record) {
  max_distinct = std::max(max_distinct, record.distinct_count);
  if (record.error) {
    ++error_count;
  } else {
    ++histogram[record.distinct_count];
  }
  if (!record.violations.empty()) ++violation_count;
  for (const auto& v : record.violations) ++violations_by_check[v];
  const auto pos = std::upper_bound(records.begin(), records.end(), record.id,
                                    [](std::int64_t id, const TrialRecord& r) { return id < r.id; });
  records.insert(pos, std::move(record));
}

void SweepSummary::merge(const SweepSummary& other) {
  m = std::max(m, other.m);
  max_distinct = std::max(max_distinct, other.max_distinct);
  for (const auto& [k, v] : other.histogram) histogram[k] += v;
  violation_count += other.violation_count;
  for (const auto& [k, v] : other.violations_by_check) violations_by_check[k] += v;
  error_count += other.error_count;
  rejected_draws += other.rejected_draws;
  std::vector<TrialRecord> merged;
  merged.reserve(records.size() + other.records.size());
  std::merge(records.begin(), records.end(), other.records.begin(), other.records.end(), std::back_inserter(merged),
             [](const TrialRecord& a, const TrialRecord& b) { return a.id < b.id; });
  records = std::move(merged);
  std::vector<std::string> errs = sink_errors;
  errs.insert(errs.end(), other.sink_errors.begin(), other.sink_errors.end());
  std::sort(errs.begin(), errs.end());
  sink_errors = std::move(errs);
}

SweepSummary run_sweep(const ExperimentConfig& config) {
  const TrialPlan plan = plan_trials(config);
  const NumericOptions numeric{config.epsilon, Arithmetic::Auto};
  std::vector<TrialRecord> results(plan.trials.size());

  const int workers = std::max(1, std::min<int>(config.threads, static_cast<int>(plan.trials.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < plan.trials.size(); i = next++) {
      results[i] = run_trial(plan.trials[i], config.m, numeric);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  SweepSummary summary;
  summary.m = config.m;
  summary.rejected_draws = plan.rejected_draws;
  summary.records.reserve(results.size());
  for (auto& r : results) summary.add(std::move(r));

  if (config.output.summary_json) {
    try {
      write_summary_json(summary, config, *config.output.summary_json);
    } catch (const std::exception& e) {
      summary.sink_errors.push_back(std::string("summary_json: ") + e.what());
    }
  }
  if (config.output.trials_csv) {
    try {
      write_trials_csv(summary, *config.output.trials_csv);
    } catch (const std::exception& e) {
      summary.sink_errors.push_back(std::string("trials_csv: ") + e.what());
    }
  }
  return summary;
}

namespace {

json record_json(const TrialRecord& r) {
  json j;
  j["trial_id"] = r.id;
  j["m"] = r.m;
  j["n"] = r.n;
  j["alphas"] = r.alphas_text;
  j["survivor_count"] = r.survivor_count;
  j["distinct_count"] = r.distinct_count;
  j["survivor_lengths"] = r.survivor_lengths;
  j["q1"] = r.q1;
  j["q2"] = r.q2 ? json(*r.q2) : json(nullptr);
  j["primary_count"] = r.primary_count;
  j["secondary_count"] = r.secondary_count;
  j["lemma2_count"] = r.lemma2_count ? json(*r.lemma2_count) : json(nullptr);
  j["violations"] = r.violations;
  if (r.error) j["error"] = *r.error;
  return j;
}

}  // namespace

json to_json(const SweepSummary& s, const ExperimentConfig& config) {
  json j;
  j["config"] = to_json(config);
  j["trials"] = s.records.size();
  j["status"] = s.failed() ? "FAILED" : "OK";
  j["survivor_bound"] = survivor_bound(s.m > 0 ? s.m : config.m);
  j["max_distinct"] = s.max_distinct;
  json hist = json::object();
  for (const auto& [k, v] : s.histogram) hist[std::to_string(k)] = v;
  j["histogram"] = hist;
  j["violation_count"] = s.violation_count;
  j["violations_by_check"] = s.violations_by_check;
  j["error_count"] = s.error_count;
  j["rejected_draws"] = s.rejected_draws;
  json witnesses = json::array();
  for (const auto& r : s.records) {
    if (!r.violations.empty() || r.error) witnesses.push_back(record_json(r));
  }
  j["witnesses"] = witnesses;
  return j;
}

std::string trials_csv(const SweepSummary& s) {
  std::ostringstream out;
  int m = s.m;
  out << "trial_id,m,n";
  for (int r = 1; r <= m; ++r) out << ",alpha_" << r;
  out << ",survivor_count,distinct_count,max_length,q1,q2,primary_count,secondary_count,lemma2_count\n";
  for (const auto& rec : s.records) {
    out << rec.id << ',' << rec.m << ',' << rec.n;
    for (int r = 0; r < m; ++r) {
      out << ',';
      if (r < static_cast<int>(rec.alphas.size())) out << csv_real(rec.alphas[static_cast<std::size_t>(r)]);
    }
    out << ',' << rec.survivor_count << ',' << rec.distinct_count << ',' << csv_real(rec.max_length) << ','
        << rec.q1 << ',';
    if (rec.q2) out << *rec.q2;
    out << ',' << rec.primary_count << ',' << rec.secondary_count << ',';
    if (rec.lemma2_count) out << *rec.lemma2_count;
    out << '\n';
  }
  return out.str();
}

void write_summary_json(const SweepSummary& summary, const ExperimentConfig& config, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << to_json(summary, config).dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_trials_csv(const SweepSummary& summary, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << trials_csv(summary);
  if (!out) throw std::runtime_error("write failed: " + path);
}

CrossCheckReport cross_check(const ExperimentConfig& config) {
  if (largest_n(config) > config.oracle_cap) {
    throw ConfigError("n exceeds oracle_cap for a cross check", {"n_values", "oracle_cap"});
  }
  const TrialPlan plan = plan_trials(config);
  const NumericOptions numeric{config.epsilon, Arithmetic::Auto};
  CrossCheckReport report;
  for (const TrialSpec& spec : plan.trials) {
    ++report.trials;
    const MultipleTable table(spec.alphas, spec.n, numeric);
    const auto edges = build_edges(table);
    const SurvivorReport fast = survivors_sweep(edges, table.exact());
    const SurvivorReport slow = survivors_brute(edges, table.exact());
    if (fast.survivors == slow.survivors) continue;
    Mismatch mm;
    mm.trial_id = spec.id;
    mm.alphas_text = spec.alphas.to_string();
    mm.n = spec.n;
    std::set_difference(fast.survivors.begin(), fast.survivors.end(), slow.survivors.begin(), slow.survivors.end(),
                        std::back_inserter(mm.sweep_only));
    std::set_difference(slow.survivors.begin(), slow.survivors.end(), fast.survivors.begin(), fast.survivors.end(),
                        std::back_inserter(mm.brute_only));
    report.mismatches.push_back(std::move(mm));
  }
  return report;
}

json to_json(const CrossCheckReport& report) {
  json j;
  j["trials"] = report.trials;
  j["mismatch_count"] = report.mismatches.size();
  j["status"] = report.passed() ? "OK" : "FAILED";
  json list = json::array();
  for (const auto& mm : report.mismatches) {
    json e;
    e["trial_id"] = mm.trial_id;
    e["alphas"] = mm.alphas_text;
    e["n"] = mm.n;
    json a = json::array();
    for (const auto& r : mm.sweep_only) a.push_back({r.j, r.k});
    json b = json::array();
    for (const auto& r : mm.brute_only) b.push_back({r.j, r.k});
    e["sweep_only"] = a;
    e["brute_only"] = b;
    list.push_back(e);
  }
  j["mismatches"] = list;
  return j;
}

}  // namespace kdist
