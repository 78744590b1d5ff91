#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace fs = std::filesystem;
using frechet::cli::cli_run;

namespace {

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("frechet_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string read(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

// Drops the last CSV column (runtime_s), which is wall-clock and not reproducible.
std::string without_runtime(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + "\n";
  return out;
}

const char* kRatesConfig = R"({
  "space": {"kind": "euclidean", "dim": 1},
  "cost": {"kind": "squared_distance"},
  "distribution": {"kind": "gaussian", "mean": [0.0], "variances": [1.0]},
  "experiment": {"n_grid": [16, 64, 256], "replications": 40, "seed": 5}
})";

TEST(Cli, VerifyNiceTripodClean) {
  const auto dir = scratch("verify");
  EXPECT_EQ(cli_run({"verify", "--structure", "nice", "--space", "tripod", "--trials", "100000", "--seed", "7", "--out",
                     dir.string()}),
            0);
  EXPECT_TRUE(fs::exists(dir / "verify.json"));
  EXPECT_TRUE(fs::exists(dir / "manifest.json"));
}

TEST(Cli, VerifyLemmaBattery) {
  const auto dir = scratch("lemmas");
  EXPECT_EQ(cli_run({"verify", "--lemma", "all", "--trials", "2000", "--out", dir.string()}), 0);
}

TEST(Cli, VerifyViolationExitCode) {
  const auto dir = scratch("violation");
  EXPECT_EQ(cli_run({"verify", "--structure", "bounded_lipschitz", "--diam", "0.01", "--space", "euclidean", "--dim", "2",
                     "--box-lo", "-10", "--box-hi", "10", "--trials", "1000", "--out", dir.string()}),
            2);
  EXPECT_TRUE(fs::exists(dir / "violations.csv"));
}

TEST(Cli, TripodCounterexample) {
  const auto dir = scratch("tripod");
  ASSERT_EQ(cli_run({"counterexample", "tripod", "--r", "1", "--eps", "0.02", "--out", dir.string()}), 0);
  const auto j = nlohmann::json::parse(read(dir / "tripod.json"));
  EXPECT_NEAR(j["required_k"].get<double>(), 10.0995, 1e-4);
}

TEST(Cli, OptimalityCase) {
  const auto dir = scratch("optimality");
  ASSERT_EQ(cli_run({"counterexample", "optimality", "--case", "a", "--alpha", "0.75", "--eps", "1e-5", "--out",
                     dir.string()}),
            0);
  const auto j = nlohmann::json::parse(read(dir / "optimality.json"));
  EXPECT_NEAR(j["ratio"].get<double>() / j["constant"].get<double>(), 1.0, 0.005);
}

TEST(Cli, MalformedConfigIsUsageError) {
  const auto dir = scratch("malformed");
  write(dir / "bad.json", "{ \"space\": ");
  EXPECT_EQ(cli_run({"rates", "--config", (dir / "bad.json").string(), "--out", dir.string()}), 1);
}

TEST(Cli, UnknownOptionIsUsageError) { EXPECT_EQ(cli_run({"verify", "--no-such-flag"}), 1); }

TEST(Cli, MeanFromCsv) {
  const auto dir = scratch("mean");
  write(dir / "s.csv", "x,y\n0,0\n2,0\n1,3\n");
  ASSERT_EQ(cli_run({"mean", "--samples", (dir / "s.csv").string(), "--space", "euclidean", "--out", dir.string()}), 0);
  const auto j = nlohmann::json::parse(read(dir / "mean.json"));
  EXPECT_EQ(j["point"], nlohmann::json::parse("[1.0, 1.0]"));
}

TEST(Cli, EntropyEta) {
  const auto dir = scratch("eta");
  ASSERT_EQ(cli_run({"entropy", "eta", "--beta", "0.5", "--n", "100", "--out", dir.string()}), 0);
  EXPECT_DOUBLE_EQ(nlohmann::json::parse(read(dir / "entropy_eta.json"))["eta"].get<double>(), 0.1);
}

TEST(Cli, RatesReportAndReplay) {
  const auto dir = scratch("rates");
  write(dir / "cfg.json", kRatesConfig);
  ASSERT_EQ(cli_run({"rates", "--config", (dir / "cfg.json").string(), "--out", (dir / "a").string()}), 0);
  for (const char* f : {"losses.csv", "fit.json", "rates.svg", "manifest.json"}) EXPECT_TRUE(fs::exists(dir / "a" / f)) << f;

  ASSERT_EQ(cli_run({"replay", "--manifest", (dir / "a" / "manifest.json").string(), "--out", (dir / "b").string()}), 0);
  EXPECT_EQ(without_runtime(read(dir / "a" / "losses.csv")), without_runtime(read(dir / "b" / "losses.csv")));
  EXPECT_EQ(read(dir / "a" / "fit.json"), read(dir / "b" / "fit.json"));

  ASSERT_EQ(cli_run({"report", "--csv", (dir / "a" / "losses.csv").string(), "--svg", "plot.svg", "--out", dir.string()}),
            0);
  EXPECT_NE(read(dir / "plot.svg").find("<polyline"), std::string::npos);
}

TEST(Cli, ManifestRecordsSeedAndHash) {
  const auto dir = scratch("manifest");
  ASSERT_EQ(cli_run({"counterexample", "tripod", "--seed", "42", "--out", dir.string()}), 0);
  const auto m = nlohmann::json::parse(read(dir / "manifest.json"));
  EXPECT_EQ(m["seed"].get<std::uint64_t>(), 42u);
  EXPECT_TRUE(m.contains("config_hash"));
  EXPECT_EQ(m["subcommand"], "counterexample tripod");
}

}  // namespace
