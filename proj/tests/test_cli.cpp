// Copyright 2026 The besovheat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Runs the installed command-line binary and checks exit codes and output files.
#include <gtest/gtest.h>
#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("besovheat_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path file(const std::string& name) const { return dir_ / name; }

  void write(const std::string& name, const std::string& body) const {
    std::ofstream(file(name), std::ios::binary) << body;
  }

  std::string read(const std::string& name) const {
    std::ifstream in(file(name), std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }

  // Runs the binary with `args`; stdout goes to stdout.txt in the scratch directory.
  int run(const std::string& args, const std::string& env = "") const {
    const std::string cmd = env + " '" BESOVHEAT_CLI_PATH "' " + args + " > '" + file("stdout.txt").string() +
                            "' 2> '" + file("stderr.txt").string() + "'";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  int run_config(const std::string& sub, const std::string& config, const std::string& extra = "",
                 const std::string& env = "") {
    write("config.json", config);
    return run("--config '" + file("config.json").string() + "' --out '" + file("out").string() + "' " + extra +
                   " " + sub,
               env);
  }

  fs::path dir_;
};

std::string field_file(int n, double l, const std::vector<double>& v) {
  std::string s = json{{"format", "besovheat-field"}, {"version", 1}, {"dim", 1}, {"N", n}, {"L", l},
                       {"endian", "little"}, {"scalar", "f64"}}
                      .dump() +
                  "\n\n";
  for (double x : v) s.append(reinterpret_cast<const char*>(&x), sizeof x);  // little-endian host
  return s;
}

}  // namespace

TEST_F(Cli, LpCheckExitCodes) {
  EXPECT_EQ(run_config("lp-check", "{}"), 0);
  const json summary = json::parse(read("stdout.txt"));
  EXPECT_EQ(summary["pass"], true);
  EXPECT_EQ(summary["profile"], "smoothstep-exp-v1");
  EXPECT_TRUE(fs::exists(file("out")));

  // 2^(jmax + 1) above the Nyquist frequency of N = 128 on 2 pi.
  EXPECT_EQ(run_config("lp-check", R"({"bank": {"jmax": 9}})"), 2);
  EXPECT_NE(read("stderr.txt").find("Nyquist"), std::string::npos);
  EXPECT_EQ(run_config("lp-check", R"({"estimate": {"tolerance": 1e-18}})"), 1);
  EXPECT_EQ(run_config("lp-check", R"({"grid": {"N": 128, "colour": 3}})"), 2);
  EXPECT_NE(read("stderr.txt").find("colour"), std::string::npos);
  EXPECT_EQ(run_config("lp-check", R"({"solver": {}})"), 2);
  EXPECT_EQ(run_config("lp-check", R"({"bank": {"profile": "gaussian"}})"), 2);
  EXPECT_EQ(run_config("lp-check", "{not json"), 2);
  EXPECT_EQ(run("--config '" + file("missing.json").string() + "' lp-check"), 2);
  EXPECT_EQ(run("--tolerance-profile loose lp-check"), 2);
  EXPECT_EQ(run("bogus-command"), 2);
}

TEST_F(Cli, NormOfHandWrittenFields) {
  write("zero.field", field_file(16, 2 * M_PI, std::vector<double>(16, 0.0)));
  EXPECT_EQ(run("norm '" + file("zero.field").string() + "' --s 0 --p 2 --sigma 2"), 0);
  EXPECT_EQ(std::stod(read("stdout.txt")), 0.0);

  std::vector<double> c(64);
  for (int i = 0; i < 64; ++i) c[static_cast<std::size_t>(i)] = std::cos(2 * M_PI * i / 64);
  write("cos.field", field_file(64, 2 * M_PI, c));
  EXPECT_EQ(run("norm '" + file("cos.field").string() + "' --s 0 --p 2 --sigma 1"), 0);
  EXPECT_NEAR(std::stod(read("stdout.txt")), std::sqrt(M_PI), 1e-12);

  write("bad.field", "{\"format\":\"something-else\"}\n\n");
  EXPECT_EQ(run("norm '" + file("bad.field").string() + "'"), 2);
  EXPECT_EQ(run("norm '" + file("absent.field").string() + "'"), 2);
  EXPECT_EQ(run("norm '" + file("cos.field").string() + "' --p 0.5"), 2);
}

TEST_F(Cli, IntegralBoundIsByteStable) {
  const std::string cfg = R"({"estimate": {"N": 3, "count": 9}})";
  ASSERT_EQ(run_config("lemma-b", cfg), 0);
  const std::string first = read("out/lemma-b.csv");
  ASSERT_EQ(run_config("lemma-b", cfg), 0);
  EXPECT_EQ(read("out/lemma-b.csv"), first);
  EXPECT_EQ(std::count(first.begin(), first.end(), '\n'), 10);
  EXPECT_NE(first.find("e-01,"), std::string::npos);
  const json summary = json::parse(read("out/lemma-b_summary.json"));
  EXPECT_EQ(summary["schema"], 1);
  EXPECT_EQ(summary["pass"], true);
  EXPECT_EQ(run_config("lemma-b", R"({"estimate": {"count": 0}})"), 2);
}

TEST_F(Cli, OrthoRangesAndFailures) {
  EXPECT_EQ(run_config("ortho", R"({"estimate": {"ks": []}})"), 2);
  EXPECT_EQ(run_config("ortho", R"({"estimate": {"mode": "diagonal"}})"), 2);
  EXPECT_EQ(run_config("ortho", R"({"estimate": {"mode": "nd-ratio", "ks": [4, 6, 8]}})"), 0);
  // A slope window far from the measured -1/2 must fail with exit code 1.
  EXPECT_EQ(run_config("ortho", R"({"estimate": {"mode": "nd-ratio", "ks": [4, 6, 8], "slope_tolerance": 1e-6}})"),
            1);
  EXPECT_TRUE(fs::exists(file("out/ortho-nd-ratio.csv")));
}

TEST_F(Cli, SolveManufacturedAndFileData) {
  ASSERT_EQ(run_config("solve", R"({"grid": {"N": 32}, "estimate": {"manufactured": true}})"), 0);
  const json summary = json::parse(read("out/solve_summary.json"));
  EXPECT_LT(summary["relative_l2_error"].get<double>(), 1e-4);
  EXPECT_TRUE(fs::exists(file("out/u.field")));
  EXPECT_TRUE(fs::exists(file("out/residual.csv")));

  EXPECT_EQ(run_config("solve", "{}"), 2);
  EXPECT_NE(read("stderr.txt").find("boundary"), std::string::npos);
  EXPECT_EQ(run_config("solve", R"({"estimate": {"manufactured": true, "bc": "neumann"}})"), 2);

  // Zero data give the zero solution.
  ASSERT_EQ(run_config("solve", R"({"grid": {"N": 16, "Nt": 5}, "estimate": {"zero_boundary": true}})"), 0);
  const std::string u = read("out/u.field");
  const auto split = u.find("\n\n");
  ASSERT_NE(split, std::string::npos);
  const json header = json::parse(u.substr(0, split));
  EXPECT_EQ(header["Nt"], 5);
  const std::string body = u.substr(split + 2);
  ASSERT_EQ(body.size(), 16u * 16u * 5u * 8u);
  EXPECT_EQ(body.find_first_not_of('\0'), std::string::npos);
}

TEST_F(Cli, SeedPrecedence) {
  const std::string cfg = R"({"estimate": {"members": 1}})";
  ASSERT_EQ(run_config("trace", cfg), 0);
  EXPECT_EQ(json::parse(read("out/trace_summary.json"))["metadata"]["seed"], "12345");
  const std::string base = read("out/trace.csv");

  ASSERT_EQ(run_config("trace", cfg, "", "BESOVHEAT_SEED=99"), 0);
  EXPECT_EQ(json::parse(read("out/trace_summary.json"))["metadata"]["seed"], "99");
  EXPECT_NE(read("out/trace.csv"), base);

  ASSERT_EQ(run_config("trace", R"({"estimate": {"members": 1, "seed": 12345}})", "", "BESOVHEAT_SEED=99"), 0);
  EXPECT_EQ(read("out/trace.csv"), base);

  EXPECT_EQ(run_config("trace", cfg, "", "BESOVHEAT_SEED=abc"), 2);
  EXPECT_EQ(run_config("trace", R"({"estimate": {"family": "translation"}})"), 2);
}
