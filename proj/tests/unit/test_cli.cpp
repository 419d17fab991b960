#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cli.hpp"
#include "fixtures.hpp"
#include "stabsel/matrix_market.hpp"

using namespace stabsel;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "stabsel");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("stabsel_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, SparseRunWritesReports) {
  const auto dir = fresh_dir("sparse");
  const auto r = run_cli({"--generator", "tridiag:100", "--candidates", "I,blk:1,blk:10", "--k", "10", "--trials",
                          "100", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
  EXPECT_EQ(report["schema_version"], 1);
  EXPECT_EQ(report["candidates"].size(), 3u);
  EXPECT_EQ(report["trials"].size(), 100u);
  EXPECT_GE(report["ratios"]["selector_min"].get<double>(), 1.0);
  EXPECT_TRUE(fs::exists(dir / "iterations.csv"));
  EXPECT_TRUE(fs::exists(dir / "ratios.csv"));
}

TEST(Cli, ReportsAreByteIdenticalForAFixedSeed) {
  const auto d1 = fresh_dir("det1"), d2 = fresh_dir("det2"), d3 = fresh_dir("det3");
  const std::vector<std::string> base{"--generator", "blocks:120:10", "--trials", "30", "--seed", "9"};
  auto with_out = [&](const fs::path& d, const std::string& threads) {
    auto args = base;
    args.insert(args.end(), {"--out", d.string(), "--threads", threads});
    return run_cli(args);
  };
  ASSERT_EQ(with_out(d1, "1").code, 0);
  ASSERT_EQ(with_out(d2, "1").code, 0);
  ASSERT_EQ(with_out(d3, "4").code, 0);
  EXPECT_EQ(slurp(d1 / "report.json"), slurp(d2 / "report.json"));
  EXPECT_EQ(slurp(d1 / "report.json"), slurp(d3 / "report.json"));
  EXPECT_EQ(slurp(d1 / "iterations.csv"), slurp(d3 / "iterations.csv"));
}

TEST(Cli, EstimateIsDeterministicAndExactOnFullBlock) {
  const auto d1 = fresh_dir("est1"), d2 = fresh_dir("est2");
  for (const auto& d : {d1, d2}) {
    const auto r = run_cli({"--mode", "estimate", "--generator", "randspd:30", "--candidates", "blk:30", "--exact",
                            "--k", "7", "--seed", "3", "--out", d.string()});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  EXPECT_EQ(slurp(d1 / "report.json"), slurp(d2 / "report.json"));
  const auto j = nlohmann::json::parse(slurp(d1 / "report.json"));
  EXPECT_LE(j["estimate"].get<double>(), 1e-10);
  EXPECT_LE(j["exact"].get<double>(), 1e-10);
  EXPECT_EQ(j["spmv_count"], 7);
  EXPECT_EQ(j["solve_count"], 7);
}

TEST(Cli, EstimateAtLargeKIsWithinFivePercent) {
  const auto dir = fresh_dir("est_large");
  const auto r = run_cli({"--mode", "estimate", "--generator", "randspd:30", "--candidates", "blk:5", "--exact",
                          "--k", "10000", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(dir / "report.json"));
  EXPECT_LE(j["relative_error"].get<double>(), 0.05);
}

TEST(Cli, ReadsMatrixMarketFiles) {
  const auto dir = fresh_dir("mtx");
  fs::create_directories(dir);
  write_matrix_market(dir / "a.mtx", fixtures::banded_spd(40, 2, 1));
  const auto r = run_cli({"--matrix", (dir / "a.mtx").string(), "--candidates", "I,rcm:5", "--trials", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("RCM_5"), std::string::npos);
}

TEST(Cli, KernelSmokeGrid) {
  const auto dir = fresh_dir("kernel");
  const auto r = run_cli({"--mode", "kernel", "--dataset-generator", "blobs:60:3:4", "--length-scales", "1",
                          "--noises", "0.01", "--rank", "5", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(dir / "report.json"));
  ASSERT_EQ(j["cells"].size(), 1u);
  const auto& cell = j["cells"][0];
  for (const char* key : {"iters_none", "iters_blk", "iters_lowrank", "iters_selected"}) {
    EXPECT_TRUE(cell[key].is_number_integer()) << key;
  }
  EXPECT_TRUE(fs::exists(dir / "grid.csv"));
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const auto dir = fresh_dir("config");
  fs::create_directories(dir);
  std::ofstream(dir / "run.toml") << "mode = \"sparse\"\n"
                                     "generator = \"tridiag:50\"\n"
                                     "candidates = [\"I\", \"blk:5\"]\n"
                                     "trials = 3\n"
                                     "seed = 4\n";
  const auto r = run_cli({"--config", (dir / "run.toml").string(), "--trials", "7", "--out", (dir / "out").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(dir / "out" / "report.json"));
  EXPECT_EQ(j["trials"].size(), 7u);
  EXPECT_EQ(j["parameters"]["seed"], 4);
  EXPECT_EQ(j["candidates"].size(), 2u);
}

TEST(Cli, ConfigErrorsExitWithOne) {
  EXPECT_EQ(run_cli({"--mode", "sparse"}).code, 1);  // no matrix
  EXPECT_EQ(run_cli({"--generator", "tridiag:10", "--matrix", "x.mtx"}).code, 1);
  EXPECT_EQ(run_cli({"--generator", "tridiag:10", "--trials", "0"}).code, 1);
  EXPECT_EQ(run_cli({"--generator", "tridiag:10", "--candidates", "ilu"}).code, 1);
  EXPECT_EQ(run_cli({"--generator", "tridiag:10", "--algorithm", "alg3", "--epsilon", "0.5"}).code, 1);
  EXPECT_EQ(run_cli({"--generator", "nope:10"}).code, 1);
  EXPECT_EQ(run_cli({"--mode", "estimate", "--generator", "tridiag:10"}).code, 1);  // several candidates
  EXPECT_EQ(run_cli({"--mode", "bogus"}).code, 1);
  EXPECT_EQ(run_cli({"--no-such-flag"}).code, 1);
  EXPECT_EQ(run_cli({"--matrix", "/nonexistent/a.mtx"}).code, 1);
  EXPECT_EQ(run_cli({"--mode", "kernel"}).code, 1);
}

TEST(Cli, NumericalFailureExitsWithTwo) {
  const auto dir = fresh_dir("indef");
  fs::create_directories(dir);
  std::ofstream(dir / "indef.mtx") << "%%MatrixMarket matrix coordinate real symmetric\n3 3 3\n1 1 1\n2 2 -1\n3 3 1\n";
  const auto r = run_cli({"--matrix", (dir / "indef.mtx").string(), "--candidates", "blk:1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("not positive definite"), std::string::npos);
}

TEST(Cli, HelpExitsWithZero) {
  const auto r = run_cli({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("--candidates"), std::string::npos);
}
