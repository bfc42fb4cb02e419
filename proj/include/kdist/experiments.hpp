#pragma once

// Seeded, reproducible parameter sweeps over Kronecker instances. Each trial
// runs the survivor sweep, the approximation profile and the lemma checks;
// summaries merge commutatively so trial scheduling never affects results.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "kdist/alphas.hpp"
#include "kdist/tournament.hpp"

namespace kdist {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, std::vector<std::string> keys)
      : std::runtime_error(message), keys_(std::move(keys)) {}
  const std::vector<std::string>& keys() const { return keys_; }

 private:
  std::vector<std::string> keys_;
};

struct AlphaSource {
  enum class Kind { UniformRandom, QuadraticIrrationals, RationalGrid, Explicit };
  Kind kind = Kind::UniformRandom;
  int trials = 100;
  int max_denominator = 10;
  std::vector<Alphas> explicit_alphas;
};

/// Inclusive range; each trial draws n uniformly from it.
struct NRange {
  int min = 2;
  int max = 2;
};

struct OutputSinks {
  std::optional<std::string> summary_json;
  std::optional<std::string> trials_csv;
};

struct ExperimentConfig {
  int m = 2;
  AlphaSource alpha_source;
  std::vector<int> n_values;
  std::optional<NRange> n_range;
  double epsilon = 1e-9;
  int oracle_cap = kDefaultOracleCap;
  std::uint64_t seed = 0;
  OutputSinks output;
  int threads = 1;
};

/// Throws ConfigError naming every offending key.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::string& path);
nlohmann::json to_json(const ExperimentConfig& config);

/// Quadratic irrationals used by the catalog source:
/// sqrt2 - 1, sqrt3 - 1, (sqrt5 - 1)/2, sqrt7 - 2.
const std::vector<double>& quadratic_catalog();

struct TrialSpec {
  std::int64_t id = 0;
  Alphas alphas;
  int n = 2;
};

struct TrialPlan {
  std::vector<TrialSpec> trials;
  /// Uniform draws discarded by the near-rational guard.
  std::int64_t rejected_draws = 0;
};

/// Expands the config into its deterministic list of trials.
TrialPlan plan_trials(const ExperimentConfig& config);

/// Independent generator for one trial of a seeded stream.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

/// True if some component lies within `tolerance` of a rational with denominator <= max_denominator.
bool near_rational(const std::vector<double>& alphas, int max_denominator, double tolerance = 1e-12);

struct TrialRecord {
  std::int64_t id = 0;
  int m = 0;
  int n = 0;
  std::string alphas_text;
  std::vector<double> alphas;
  std::int64_t survivor_count = 0;
  int distinct_count = 0;
  double max_length = 0.0;
  std::vector<double> survivor_lengths;
  int q1 = 0;
  std::optional<int> q2;
  int primary_count = 0;
  int secondary_count = 0;
  std::optional<int> lemma2_count;
  /// Names of failed checks: "survivor_bound", "three_gap", or a lemma name.
  std::vector<std::string> violations;
  std::optional<std::string> error;
};

struct SweepSummary {
  int m = 0;
  std::vector<TrialRecord> records;  // sorted by id
  int max_distinct = 0;
  std::map<int, std::int64_t> histogram;  // |S| -> trials
  std::int64_t violation_count = 0;
  std::map<std::string, std::int64_t> violations_by_check;
  std::int64_t error_count = 0;
  std::int64_t rejected_draws = 0;
  std::vector<std::string> sink_errors;

  bool failed() const { return violation_count > 0 || error_count > 0; }
  /// Commutative, associative merge of two disjoint sweeps.
  void merge(const SweepSummary& other);
  void add(TrialRecord record);
};

TrialRecord run_trial(const TrialSpec& spec, int m, const NumericOptions& numeric);

/// Runs every planned trial (in parallel when config.threads > 1) and
/// writes the configured sinks.
SweepSummary run_sweep(const ExperimentConfig& config);

nlohmann::json to_json(const SweepSummary& summary, const ExperimentConfig& config);
std::string trials_csv(const SweepSummary& summary);
void write_summary_json(const SweepSummary& summary, const ExperimentConfig& config, const std::string& path);
void write_trials_csv(const SweepSummary& summary, const std::string& path);

struct Mismatch {
  std::int64_t trial_id = 0;
  std::string alphas_text;
  int n = 0;
  std::vector<EdgeRef> sweep_only;
  std::vector<EdgeRef> brute_only;
};

struct CrossCheckReport {
  std::int64_t trials = 0;
  std::vector<Mismatch> mismatches;
  bool passed() const { return mismatches.empty(); }
};

/// Compares survivors_sweep against survivors_brute on every planned trial.
CrossCheckReport cross_check(const ExperimentConfig& config);
nlohmann::json to_json(const CrossCheckReport& report);

}  // namespace kdist
