// kdist: gap spectra, undefeated-edge distance sets and denominator
// profiles of Kronecker sequences on the m-torus.
//
// Exit codes: 0 = success and all bounds hold, 1 = usage or config error,
// 2 = bound violation or oracle mismatch.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "kdist/alphas.hpp"
#include "kdist/denominators.hpp"
#include "kdist/experiments.hpp"
#include "kdist/gaps.hpp"
#include "kdist/svg.hpp"
#include "kdist/tournament.hpp"
#include "kdist/verification.hpp"

namespace {

using nlohmann::json;
using namespace kdist;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;

struct Globals {
  std::string format = "table";
  double epsilon = kDefaultEpsilon;
  std::uint64_t seed = 1;
  bool exact = false;
  bool floating = false;

  NumericOptions numeric() const {
    NumericOptions o;
    o.epsilon = epsilon;
    if (exact) o.arithmetic = Arithmetic::Exact;
    if (floating) o.arithmetic = Arithmetic::Floating;
    return o;
  }
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Alphas parse_alphas(const std::string& text) {
  std::string warning;
  Alphas a = Alphas::parse(text, &warning);
  if (!warning.empty()) std::cerr << "warning: " << warning << '\n';
  return a;
}

std::string fraction_text(std::int64_t num, std::int64_t den) {
  const std::int64_t g = std::gcd(num, den);
  if (g == 0) return "0";
  if (den / g == 1) return std::to_string(num / g);
  return std::to_string(num / g) + "/" + std::to_string(den / g);
}

const char* convention_name(GapConvention c) { return c == GapConvention::Linear ? "linear" : "circular"; }

GapConvention parse_convention(const std::string& s) {
  if (s == "linear") return GapConvention::Linear;
  if (s == "circular") return GapConvention::Circular;
  throw UsageError("convention must be linear or circular");
}

json spectrum_json(const GapSpectrum& g) {
  json j;
  j["convention"] = convention_name(g.convention);
  j["exact"] = g.exact;
  j["points"] = json::array();
  for (const auto& p : g.sorted_points) j["points"].push_back({{"value", p.value}, {"family", p.family}, {"k", p.k}});
  j["gaps"] = g.gaps;
  j["distinct_gaps"] = g.distinct_gaps;
  j["distinct_count"] = g.distinct_gaps.size();
  j["gap_sum"] = g.gap_sum();
  j["conserved"] = g.conserves_measure();
  if (g.exact) {
    json ex = json::array();
    for (std::int64_t x : g.exact_gap_numerators) ex.push_back(fraction_text(x, g.exact_denominator));
    j["exact_gaps"] = ex;
  }
  return j;
}

void print_spectrum(const GapSpectrum& g, const std::string& format, std::size_t bound, std::ostream& out) {
  if (format == "json") {
    json j = spectrum_json(g);
    j["bound"] = bound;
    out << j.dump(2) << '\n';
    return;
  }
  if (format == "csv") {
    out << "index,gap" << (g.exact ? ",exact_gap" : "") << '\n';
    for (std::size_t i = 0; i < g.gaps.size(); ++i) {
      out << i << ',' << format_real(g.gaps[i]);
      if (g.exact) out << ',' << fraction_text(g.exact_gap_numerators[i], g.exact_denominator);
      out << '\n';
    }
    return;
  }
  out << "points: " << g.sorted_points.size() << "  convention: " << convention_name(g.convention)
      << "  arithmetic: " << (g.exact ? "exact" : "floating") << '\n';
  out << "gaps:";
  for (std::size_t i = 0; i < g.gaps.size(); ++i) {
    out << ' ' << (g.exact ? fraction_text(g.exact_gap_numerators[i], g.exact_denominator) : format_real(g.gaps[i]));
  }
  out << "\ndistinct gaps (" << g.distinct_gaps.size() << ", bound " << bound << "):";
  if (g.exact) {
    std::vector<std::int64_t> nz;
    for (std::int64_t x : g.exact_gap_numerators) {
      if (x != 0) nz.push_back(x);
    }
    std::sort(nz.begin(), nz.end());
    nz.erase(std::unique(nz.begin(), nz.end()), nz.end());
    for (std::int64_t x : nz) out << ' ' << fraction_text(x, g.exact_denominator);
  } else {
    for (double x : g.distinct_gaps) out << ' ' << format_real(x);
  }
  out << "\ngap sum: " << format_real(g.gap_sum()) << (g.conserves_measure() ? " (conserved)" : " (NOT conserved)")
      << '\n';
}

int finish_bound(bool assert_bound, std::size_t observed, std::size_t bound, const std::string& what) {
  if (assert_bound && observed > bound) {
    std::cerr << "bound violated: " << what << " = " << observed << " > " << bound << '\n';
    return kExitViolation;
  }
  return kExitOk;
}

json report_json(const SurvivorReport& r) {
  json j;
  j["mode"] = to_string(r.mode);
  j["exact"] = r.exact;
  j["distinct_lengths"] = r.distinct_lengths;
  j["distinct_count"] = r.distinct_count();
  json w = json::array();
  for (const auto& e : r.witnesses) w.push_back({e.j, e.k});
  j["witnesses"] = w;
  j["survivor_count"] = r.survivor_count;
  j["defeated_count"] = r.defeated_count;
  return j;
}

void print_report(const SurvivorReport& r, std::ostream& out) {
  out << "mode: " << to_string(r.mode) << "  arithmetic: " << (r.exact ? "exact" : "floating")
      << "  survivors: " << r.survivor_count << "  defeated: " << r.defeated_count << '\n';
  out << "S (" << r.distinct_count() << " distinct lengths):\n";
  for (std::size_t i = 0; i < r.distinct_lengths.size(); ++i) {
    out << "  " << format_real(r.distinct_lengths[i]) << "  witness (" << r.witnesses[i].j << "," << r.witnesses[i].k
        << ")\n";
  }
}

int cmd_gaps(const Globals& g, const std::string& alpha_text, int n, const std::string& convention, bool assert_bound) {
  GapOptions o;
  o.numeric = g.numeric();
  if (!convention.empty()) o.convention = parse_convention(convention);
  const GapSpectrum s = gap_spectrum(parse_alphas(alpha_text), n, o);
  print_spectrum(s, g.format, kThreeGapBound, std::cout);
  return finish_bound(assert_bound, s.distinct_gaps.size(), kThreeGapBound, "distinct gaps");
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw UsageError("not an integer: '" + tok + "'");
    }
    if (used != tok.size()) throw UsageError("not an integer: '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

int cmd_chung_graham(const Globals& g, const std::string& alpha, const std::string& lambdas, const std::string& ns,
                     const std::string& convention, bool assert_bound) {
  GapOptions o;
  o.numeric = g.numeric();
  if (!convention.empty()) o.convention = parse_convention(convention);
  const Alphas lam = parse_alphas(lambdas);
  const GapSpectrum s = chung_graham_gaps(parse_alphas(alpha), lam, parse_int_list(ns), o);
  const auto bound = static_cast<std::size_t>(chung_graham_bound(lam.dimension()));
  print_spectrum(s, g.format, bound, std::cout);
  return finish_bound(assert_bound, s.distinct_gaps.size(), bound, "distinct gaps");
}

int cmd_geelen_simpson(const Globals& g, const std::string& alpha_beta, int n1, int n2, const std::string& convention,
                       bool assert_bound) {
  GapOptions o;
  o.numeric = g.numeric();
  if (!convention.empty()) o.convention = parse_convention(convention);
  const GapSpectrum s = geelen_simpson_gaps(parse_alphas(alpha_beta), n1, n2, o);
  const auto bound = static_cast<std::size_t>(geelen_simpson_bound(n1));
  print_spectrum(s, g.format, bound, std::cout);
  return finish_bound(assert_bound, s.distinct_gaps.size(), bound, "distinct gaps");
}

int cmd_survivors(const Globals& g, const std::string& alpha_text, int n, const std::string& mode,
                  const std::string& svg_path, bool assert_bound, int oracle_cap, int max_dim) {
  const Alphas alphas = parse_alphas(alpha_text);
  if (alphas.dimension() > max_dim) {
    throw UsageError("dimension " + std::to_string(alphas.dimension()) + " exceeds --max-dim " + std::to_string(max_dim));
  }
  if (mode != "sweep" && mode != "brute" && mode != "both") throw UsageError("--mode must be sweep, brute or both");
  if (!svg_path.empty() && alphas.dimension() != 2) throw UsageError("--svg needs a two-dimensional generator");
  if (n < 2) throw UsageError("n must be at least 2");
  if (mode != "sweep" && n > oracle_cap) {
    throw UsageError("n = " + std::to_string(n) + " exceeds the brute-force cap " + std::to_string(oracle_cap));
  }

  const MultipleTable table(alphas, n, g.numeric());
  const auto edges = build_edges(table);
  std::vector<SurvivorReport> reports;
  if (mode != "brute") reports.push_back(survivors_sweep(edges, table.exact()));
  if (mode != "sweep") reports.push_back(survivors_brute(edges, table.exact()));
  const bool agree = reports.size() < 2 || reports[0].survivors == reports[1].survivors;
  const SurvivorReport& primary = reports.front();
  const std::uint64_t bound = survivor_bound(alphas.dimension());

  if (g.format == "json") {
    json j;
    j["alphas"] = alphas.to_string();
    j["m"] = alphas.dimension();
    j["n"] = n;
    j["bound"] = bound;
    j["reports"] = json::array();
    for (const auto& r : reports) j["reports"].push_back(report_json(r));
    j["distinct_lengths"] = primary.distinct_lengths;
    j["distinct_count"] = primary.distinct_count();
    if (reports.size() == 2) j["modes_agree"] = agree;
    std::cout << j.dump(2) << '\n';
  } else if (g.format == "csv") {
    std::cout << "mode,length,witness_j,witness_k\n";
    for (const auto& r : reports) {
      for (std::size_t i = 0; i < r.distinct_lengths.size(); ++i) {
        std::cout << to_string(r.mode) << ',' << format_real(r.distinct_lengths[i]) << ',' << r.witnesses[i].j << ','
                  << r.witnesses[i].k << '\n';
      }
    }
  } else {
    std::cout << "alphas: " << alphas.to_string() << "  n: " << n << "  bound: " << bound << '\n';
    for (const auto& r : reports) print_report(r, std::cout);
    if (reports.size() == 2) std::cout << "sweep and brute agree: " << (agree ? "yes" : "NO") << '\n';
  }

  if (!svg_path.empty()) {
    std::ofstream out(svg_path);
    if (!out) throw std::runtime_error("cannot write " + svg_path);
    out << render_svg(table, primary);
  }
  if (!agree) {
    std::cerr << "sweep and brute-force survivor sets differ\n";
    return kExitViolation;
  }
  return finish_bound(assert_bound, primary.distinct_count(), bound, "|S|");
}

json record_json(const DenominatorRecord& r) {
  json j;
  j["q"] = r.q;
  j["type"] = r.type.to_string();
  j["deviations"] = r.deviations;
  j["length"] = r.length;
  if (r.angle) j["angle"] = *r.angle;
  return j;
}

void print_record(const DenominatorRecord& r, std::ostream& out) {
  out << "  q=" << r.q << "  type " << r.type.to_string() << "  length " << format_real(r.length);
  if (r.angle) out << "  angle " << format_real(*r.angle);
  out << '\n';
}

int cmd_denominators(const Globals& g, const std::string& alpha_text, int n, bool assert_bound, int type_rows) {
  const Alphas alphas = parse_alphas(alpha_text);
  if (n < 2) throw UsageError("n must be at least 2");
  const MultipleTable table(alphas, n, g.numeric());
  const ApproximationProfile p = approximation_profile(table);
  const auto checks = check_lemmas(p);
  const int rows = std::min(n, type_rows);
  bool all_pass = true;
  for (const auto& c : checks) all_pass = all_pass && c.pass();

  if (g.format == "json") {
    json j;
    j["alphas"] = alphas.to_string();
    j["n"] = n;
    j["exact"] = table.exact();
    j["q1"] = {{"q", p.q1.q}, {"length", p.q1.length}};
    j["q2"] = p.q2 ? json{{"q", p.q2->q}, {"length", p.q2->length}} : json(nullptr);
    j["q2_opposite"] = p.q2_opposite ? json{{"q", p.q2_opposite->q}, {"length", p.q2_opposite->length}} : json(nullptr);
    j["q1_perp_size"] = p.q1_perp_size;
    j["primary"] = json::array();
    for (const auto& r : p.primary) j["primary"].push_back(record_json(r));
    j["secondary"] = json::array();
    for (const auto& r : p.secondary) j["secondary"].push_back(record_json(r));
    j["lemma2_count"] = p.lemma2 ? json(*p.lemma2) : json(nullptr);
    j["types"] = json::array();
    for (int q = 1; q <= rows; ++q) j["types"].push_back(record_json(classify(table, q)));
    j["checks"] = json::array();
    for (const auto& c : checks) {
      j["checks"].push_back({{"name", c.name},
                             {"observed", c.observed},
                             {"bound", c.bound},
                             {"applicable", c.applicable},
                             {"pass", c.pass()}});
    }
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "alphas: " << alphas.to_string() << "  n: " << n << "  arithmetic: " << (table.exact() ? "exact" : "floating")
              << '\n';
    std::cout << "types:\n";
    for (int q = 1; q <= rows; ++q) print_record(classify(table, q), std::cout);
    std::cout << "Q1=" << p.q1.q << "  length " << format_real(p.q1.length) << "  type " << table.type(p.q1.q).to_string()
              << '\n';
    if (p.q2) {
      std::cout << "Q2=" << p.q2->q << "  length " << format_real(p.q2->length) << '\n';
    } else {
      std::cout << "Q2 absent (no q <= n - Q1 of another type)\n";
    }
    if (p.q2_opposite) std::cout << "Q2 (opposite-type variant)=" << p.q2_opposite->q << '\n';
    std::cout << "primary (" << p.primary.size() << "):\n";
    for (const auto& r : p.primary) print_record(r, std::cout);
    std::cout << "secondary (" << p.secondary.size() << "):\n";
    for (const auto& r : p.secondary) print_record(r, std::cout);
    std::cout << "lemma2_count=";
    if (p.lemma2) {
      std::cout << *p.lemma2;
    } else {
      std::cout << "n/a";
    }
    std::cout << '\n';
    for (const auto& c : checks) {
      std::cout << (c.applicable ? (c.pass() ? "PASS " : "FAIL ") : "N/A  ") << c.name << "  observed " << c.observed
                << "  bound " << c.bound << '\n';
    }
  }
  if (assert_bound && !all_pass) return kExitViolation;
  return kExitOk;
}

int cmd_verify(const Globals& g, const std::string& suite, int trials) {
  SuiteOptions o;
  o.seed = g.seed;
  o.epsilon = g.epsilon;
  if (trials > 0) o.trials = trials;
  std::vector<std::string> names;
  if (suite == "all") {
    names = suite_names();
  } else {
    const auto& known = suite_names();
    if (std::find(known.begin(), known.end(), suite) == known.end()) throw UsageError("unknown suite '" + suite + "'");
    names.push_back(suite);
  }
  bool ok = true;
  json all = json::array();
  for (const auto& name : names) {
    const SuiteResult r = run_suite(name, o);
    ok = ok && r.passed();
    if (g.format == "json") {
      json j;
      j["suite"] = r.suite;
      j["passed"] = r.passed();
      j["checks"] = json::array();
      for (const auto& c : r.checks) j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
      all.push_back(j);
    } else {
      for (const auto& c : r.checks) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << r.suite << "/" << c.name << ": " << c.detail << '\n';
      }
    }
  }
  if (g.format == "json") std::cout << all.dump(2) << '\n';
  return ok ? kExitOk : kExitViolation;
}

int cmd_sweep(const Globals& g, const std::string& config_path, const std::string& out_dir, bool cross) {
  ExperimentConfig c = load_config(config_path);
  if (cross) {
    const CrossCheckReport r = cross_check(c);
    std::cout << to_json(r).dump(2) << '\n';
    return r.passed() ? kExitOk : kExitViolation;
  }
  const std::string dir = out_dir.empty() ? "." : out_dir;
  if (!c.output.summary_json) c.output.summary_json = dir + "/summary.json";
  if (!c.output.trials_csv) c.output.trials_csv = dir + "/trials.csv";
  const SweepSummary s = run_sweep(c);
  if (g.format == "json") {
    std::cout << to_json(s, c).dump(2) << '\n';
  } else {
    std::cout << "trials: " << s.records.size() << "  max |S|: " << s.max_distinct << "  violations: "
              << s.violation_count << "  errors: " << s.error_count << "  status: " << (s.failed() ? "FAILED" : "OK")
              << '\n';
    std::cout << "summary: " << *c.output.summary_json << "\ntrials:  " << *c.output.trials_csv << '\n';
  }
  for (const auto& e : s.sink_errors) std::cerr << "sink error: " << e << '\n';
  if (s.failed()) return kExitViolation;
  if (!s.sink_errors.empty()) return kExitUsage;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gap spectra and undefeated-edge distance sets of Kronecker sequences"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"table", "csv", "json"}));
  app.add_option("--epsilon", g.epsilon, "Equality tolerance in floating mode")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", g.seed, "Seed for randomized suites");
  auto* exact_flag = app.add_flag("--exact", g.exact, "Require exact rational arithmetic");
  app.add_flag("--floating", g.floating, "Force floating arithmetic")->excludes(exact_flag);

  std::string alpha_text;
  std::string convention;
  bool assert_bound = false;
  int n = 0;

  auto* gaps = app.add_subcommand("gaps", "Gap spectrum of {k alpha}, k = 1..n");
  gaps->add_option("alpha", alpha_text, "Real or p/q")->required();
  gaps->add_option("n", n)->required();
  gaps->add_option("--convention", convention, "linear (default) or circular");
  gaps->add_flag("--assert-bound", assert_bound, "Exit 2 if more than three distinct gaps");

  std::string lambdas;
  std::string n_list;
  auto* cg = app.add_subcommand("chung-graham", "Gaps of {k alpha + lambda_i}, 1 <= k <= n_i");
  cg->add_option("alpha", alpha_text)->required();
  cg->add_option("lambdas", lambdas, "Comma-separated shifts")->required();
  cg->add_option("n_list", n_list, "Comma-separated counts")->required();
  cg->add_option("--convention", convention);
  cg->add_flag("--assert-bound", assert_bound);

  int n1 = 0;
  int n2 = 0;
  auto* gs = app.add_subcommand("geelen-simpson", "Gaps of {k1 alpha + k2 beta}");
  gs->add_option("alpha_beta", alpha_text, "alpha,beta")->required();
  gs->add_option("n1", n1)->required();
  gs->add_option("n2", n2)->required();
  gs->add_option("--convention", convention);
  gs->add_flag("--assert-bound", assert_bound);

  std::string mode = "sweep";
  std::string svg_path;
  int oracle_cap = kDefaultOracleCap;
  int max_dim = 4;
  auto* surv = app.add_subcommand("survivors", "Undefeated-edge length set S");
  surv->add_option("alphas", alpha_text, "Comma-separated generator")->required();
  surv->add_option("n", n)->required();
  surv->add_option("--mode", mode, "sweep, brute or both");
  surv->add_option("--svg", svg_path, "Write an SVG of a planar instance");
  surv->add_option("--oracle-cap", oracle_cap, "Largest n for brute force");
  surv->add_option("--max-dim", max_dim, "Largest accepted dimension");
  surv->add_flag("--assert-bound", assert_bound);

  int type_rows = 32;
  auto* den = app.add_subcommand("denominators", "Q1, Q2, primary and secondary denominators");
  den->add_option("alphas", alpha_text)->required();
  den->add_option("n", n)->required();
  den->add_option("--type-rows", type_rows, "Rows of the type table");
  den->add_flag("--assert-bound", assert_bound);

  std::string suite;
  int trials = 0;
  auto* ver = app.add_subcommand("verify", "Run a verification suite");
  ver->add_option("suite", suite, "one_d, planar, higher, lemmas, classical, oracle, exactness, constants or all")
      ->required();
  ver->add_option("--trials", trials);

  std::string config_path;
  std::string out_dir;
  bool cross = false;
  auto* sweep = app.add_subcommand("sweep", "Run an experiment config");
  sweep->add_option("config", config_path)->required();
  sweep->add_option("--out-dir", out_dir, "Directory for default sinks");
  sweep->add_flag("--cross-check", cross, "Compare sweep and brute force instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gaps) return cmd_gaps(g, alpha_text, n, convention, assert_bound);
    if (*cg) return cmd_chung_graham(g, alpha_text, lambdas, n_list, convention, assert_bound);
    if (*gs) return cmd_geelen_simpson(g, alpha_text, n1, n2, convention, assert_bound);
    if (*surv) return cmd_survivors(g, alpha_text, n, mode, svg_path, assert_bound, oracle_cap, max_dim);
    if (*den) return cmd_denominators(g, alpha_text, n, assert_bound, type_rows);
    if (*ver) return cmd_verify(g, suite, trials);
    if (*sweep) return cmd_sweep(g, config_path, out_dir, cross);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
