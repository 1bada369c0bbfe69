#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>

#include "bpsp/io.hpp"

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(BPSP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("bpsp_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, GenSingleCar) {
  ASSERT_EQ(run_cli("gen --n 1 --count 1 --out " + path("a.jsonl")), 0);
  EXPECT_EQ(slurp(path("a.jsonl")), "{\"n\":1,\"sequence\":[0,0]}\n");
}

TEST_F(Cli, GenIsByteIdentical) {
  ASSERT_EQ(run_cli("gen --n 5 --count 3 --seed 7 --out " + path("a.jsonl")), 0);
  ASSERT_EQ(run_cli("gen --n 5 --count 3 --seed 7 --out " + path("b.jsonl")), 0);
  EXPECT_EQ(slurp(path("a.jsonl")), slurp(path("b.jsonl")));
  EXPECT_EQ(bpsp::io::read_jsonl_file(path("a.jsonl")).size(), 3U);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run_cli("gen --n 0 --out " + path("a.jsonl")), 2);
  EXPECT_EQ(run_cli("frobnicate"), 2);
  EXPECT_EQ(run_cli(""), 2);
  EXPECT_EQ(run_cli("--help"), 0);
  ASSERT_EQ(run_cli("gen --n 4 --count 2 --out " + path("a.jsonl")), 0);
  EXPECT_EQ(run_cli("solve --algo magic --in " + path("a.jsonl") + " --out " + path("o.csv")), 2);
  EXPECT_EQ(run_cli("qaoa --p 6 --in " + path("a.jsonl") + " --out " + path("o.csv")), 2);
  EXPECT_EQ(run_cli("qaoa --p 1 --method lightcone --shots 10 --in " + path("a.jsonl") + " --out " + path("o.csv")),
            2);
}

TEST_F(Cli, RuntimeErrors) {
  EXPECT_EQ(run_cli("solve --algo greedy --in " + path("missing.jsonl") + " --out " + path("o.csv")), 3);
  ASSERT_EQ(run_cli("gen --n 12 --count 1 --out " + path("a.jsonl")), 0);
  EXPECT_EQ(run_cli("qaoa --p 1 --cap-qubits 10 --in " + path("a.jsonl") + " --out " + path("o.csv")), 3);
}

TEST_F(Cli, BruteForceHardInstance) {
  bpsp::io::write_text_file(path("hard.jsonl"), bpsp::io::instance_to_jsonl(bpsp::hard_instance(8)) + "\n");
  ASSERT_EQ(run_cli("solve --algo brute-force --in " + path("hard.jsonl") + " --out " + path("o.csv")), 0);
  const auto rows = csv_rows(slurp(path("o.csv")));
  ASSERT_EQ(rows.size(), 2U);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"instance_id", "n", "algo", "color_changes", "wall_time_ms"}));
  EXPECT_EQ(rows[1][3], "1");
}

TEST_F(Cli, GreedyNeverBeatsBruteForce) {
  ASSERT_EQ(run_cli("gen --n 10 --count 100 --seed 3 --out " + path("a.jsonl")), 0);
  ASSERT_EQ(run_cli("solve --algo greedy --in " + path("a.jsonl") + " --out " + path("g.csv")), 0);
  ASSERT_EQ(run_cli("solve --algo brute-force --in " + path("a.jsonl") + " --out " + path("b.csv")), 0);
  const auto g = csv_rows(slurp(path("g.csv")));
  const auto b = csv_rows(slurp(path("b.csv")));
  ASSERT_EQ(g.size(), 101U);
  ASSERT_EQ(b.size(), 101U);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_GE(std::stod(g[i][3]), std::stod(b[i][3]));
}

TEST_F(Cli, StatevectorMatchesLightcone) {
  ASSERT_EQ(run_cli("gen --n 12 --count 5 --seed 9 --out " + path("a.jsonl")), 0);
  ASSERT_EQ(run_cli("qaoa --p 2 --method statevector --in " + path("a.jsonl") + " --out " + path("sv.csv")), 0);
  ASSERT_EQ(run_cli("qaoa --p 2 --method lightcone --in " + path("a.jsonl") + " --out " + path("lc.csv")), 0);
  const auto sv = csv_rows(slurp(path("sv.csv")));
  const auto lc = csv_rows(slurp(path("lc.csv")));
  ASSERT_EQ(sv.size(), 6U);
  EXPECT_EQ(sv[0], (std::vector<std::string>{"instance_id", "n", "p", "method", "mean_energy_adj",
                                             "mean_color_changes", "wall_time_ms"}));
  for (std::size_t i = 1; i < sv.size(); ++i) EXPECT_NEAR(std::stod(sv[i][5]), std::stod(lc[i][5]), 1e-9);
}

TEST_F(Cli, SampledQaoaIsDeterministic) {
  ASSERT_EQ(run_cli("gen --n 6 --count 2 --out " + path("a.jsonl")), 0);
  const std::string args = "qaoa --p 1 --shots 500 --seed 4 --in " + path("a.jsonl") + " --out ";
  ASSERT_EQ(run_cli(args + path("x.csv")), 0);
  ASSERT_EQ(run_cli(args + path("y.csv")), 0);
  auto strip_time = [](std::vector<std::vector<std::string>> rows) {
    for (auto& r : rows) r.pop_back();
    return rows;
  };
  EXPECT_EQ(strip_time(csv_rows(slurp(path("x.csv")))), strip_time(csv_rows(slurp(path("y.csv")))));
}

TEST_F(Cli, GraphAndCompileExports) {
  ASSERT_EQ(run_cli("gen --n 6 --count 2 --out " + path("a.jsonl")), 0);
  ASSERT_EQ(run_cli("graph --in " + path("a.jsonl") + " --out " + path("g.jsonl")), 0);
  ASSERT_EQ(run_cli("compile --p 2 --in " + path("a.jsonl") + " --out " + path("c.jsonl")), 0);
  std::istringstream g(slurp(path("g.jsonl")));
  std::string line;
  ASSERT_TRUE(std::getline(g, line));
  EXPECT_EQ(bpsp::io::graph_from_json(nlohmann::json::parse(line)).n(), 6);
  std::istringstream c(slurp(path("c.jsonl")));
  ASSERT_TRUE(std::getline(c, line));
  EXPECT_EQ(bpsp::io::circuit_from_json(nlohmann::json::parse(line)).n, 6);
}

TEST_F(Cli, ExperimentWritesCsvAndSummary) {
  const int code = run_cli("experiment coupling-stats --n 2000 --count 3 --out " + path("stats.csv"));
  EXPECT_TRUE(code == 0 || code == 1);
  EXPECT_TRUE(fs::exists(path("stats.csv")));
  const auto summary = nlohmann::json::parse(slurp(path("stats.summary.json")));
  EXPECT_EQ(summary["pass"].get<bool>(), code == 0);
  EXPECT_EQ(run_cli("experiment no-such-thing"), 2);
}

TEST_F(Cli, ExperimentToleranceFailureExitsOne) {
  // Two cars cannot reach the large-n coupling limits.
  EXPECT_EQ(run_cli("experiment coupling-stats --n 2 --count 1 --out " + path("s.csv")), 1);
}
