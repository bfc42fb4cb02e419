#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#ifndef KDIST_CLI_PATH
#error "KDIST_CLI_PATH must name the kdist executable"
#endif

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(KDIST_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

json run_json(const std::string& args) {
  const CliRun r = run(args + " --format json");
  EXPECT_EQ(r.code, 0) << args;
  return json::parse(r.out);
}

}  // namespace

TEST(Cli, GapsJson) {
  const json j = run_json("gaps 0.3 3");
  ASSERT_EQ(j["gaps"].size(), 4u);
  const std::vector<double> want{0.3, 0.3, 0.3, 0.1};
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(j["gaps"][i].get<double>(), want[i], 1e-12);
  EXPECT_EQ(j["distinct_count"], 2);
}

TEST(Cli, GapsExact) {
  const json j = run_json("gaps 1/3 2");
  EXPECT_TRUE(j["exact"].get<bool>());
  ASSERT_EQ(j["distinct_gaps"].size(), 1u);
  EXPECT_NEAR(j["distinct_gaps"][0].get<double>(), 1.0 / 3.0, 1e-15);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("gaps abc 3").code, 1);
  EXPECT_EQ(run("gaps 0.3").code, 1);
  EXPECT_EQ(run("survivors 0.3,0.4 1").code, 1);
  EXPECT_EQ(run("survivors 0.1,0.2,0.3,0.4,0.5 10").code, 1);
  EXPECT_EQ(run("survivors 0.3 5 --svg /tmp/kdist_never.svg").code, 1);
  EXPECT_EQ(run("verify nope").code, 1);
  EXPECT_EQ(run("sweep /nonexistent/config.json").code, 1);
  EXPECT_EQ(run("gaps 0.3 3 --exact").code, 1);
  EXPECT_EQ(run("").code, 1);
}

TEST(Cli, GapsAssertBound) { EXPECT_EQ(run("gaps 0.6180339887 500 --assert-bound").code, 0); }

TEST(Cli, SurvivorsSingleEdge) {
  const json j = run_json("survivors 0.3,0.4 2");
  ASSERT_EQ(j["distinct_lengths"].size(), 1u);
  EXPECT_NEAR(j["distinct_lengths"][0].get<double>(), 0.5, 1e-12);
}

TEST(Cli, SurvivorsBothModesAgree) {
  const json j = run_json("survivors 0.3 3 --mode both");
  EXPECT_TRUE(j["modes_agree"].get<bool>());
  ASSERT_EQ(j["reports"].size(), 2u);
  ASSERT_EQ(j["distinct_lengths"].size(), 2u);
  EXPECT_NEAR(j["distinct_lengths"][0].get<double>(), 0.3, 1e-12);
  EXPECT_NEAR(j["distinct_lengths"][1].get<double>(), 0.4, 1e-12);
}

TEST(Cli, SurvivorsAssertBoundThreeDimensions) {
  const CliRun r = run("survivors 0.3,0.4,0.7 20 --assert-bound");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("290"), std::string::npos);
}

TEST(Cli, SurvivorsSvg) {
  const fs::path path = fs::temp_directory_path() / "kdist_cli_test.svg";
  fs::remove(path);
  ASSERT_EQ(run("survivors 0.3,0.7 12 --svg " + path.string()).code, 0);
  std::ifstream in(path);
  const std::string svg((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("r=\"0.006\""), std::string::npos);
  EXPECT_NE(svg.find("<line"), std::string::npos);
  fs::remove(path);
}

TEST(Cli, Denominators) {
  const json j = run_json("denominators 0.3 10");
  EXPECT_EQ(j["q1"]["q"], 3);
  EXPECT_EQ(j["q2"]["q"], 7);
  ASSERT_EQ(j["primary"].size(), 1u);
  EXPECT_EQ(j["primary"][0]["q"], 10);
  EXPECT_EQ(j["lemma2_count"], 0);

  const json d = run_json("denominators 0.5 4");
  EXPECT_EQ(d["q1"]["q"], 2);
  EXPECT_DOUBLE_EQ(d["q1"]["length"].get<double>(), 0.0);

  const CliRun t = run("denominators 0.75,0.25 8");
  EXPECT_EQ(t.code, 0);
  EXPECT_NE(t.out.find("(+,-)"), std::string::npos);
}

TEST(Cli, ClassicalCommands) {
  EXPECT_EQ(run("chung-graham 0.3 0,0.05 3,3 --assert-bound").code, 0);
  EXPECT_EQ(run("geelen-simpson 0.31,0.47 3 4 --assert-bound").code, 0);
}

TEST(Cli, VerifySuite) {
  const CliRun r = run("verify oracle --trials 20");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
}

TEST(Cli, SweepWritesSinks) {
  const fs::path dir = fs::temp_directory_path() / "kdist_cli_sweep";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path config = dir / "config.json";
  std::ofstream(config) << R"({"m": 2, "alpha_source": {"kind": "uniform", "trials": 5}, "n_values": [20], "seed": 1})";
  const CliRun r = run("sweep " + config.string() + " --out-dir " + dir.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(fs::exists(dir / "summary.json"));
  EXPECT_TRUE(fs::exists(dir / "trials.csv"));

  std::ofstream(config) << R"({"m": 2, "alpha_source": {"kind": "uniform"}, "n_values": [1], "bogus": 3})";
  const CliRun bad = run("sweep " + config.string());
  EXPECT_EQ(bad.code, 1);
  fs::remove_all(dir);
}
