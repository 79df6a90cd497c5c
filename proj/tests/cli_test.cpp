//
// Copyright 2026 The kanon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "kanon/cli.hpp"
#include "test_support.hpp"

namespace kanon::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("kanon_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }
  static std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }
  fs::path path(const std::string& name) const { return dir_ / name; }

  fs::path dir_;
};

constexpr const char* kSample = "x,a,b\nz,c,d\ny,a,b\nz,c,e\n";
constexpr const char* kSampleAnon = "*,a,b\nz,c,*\n*,a,b\nz,c,*\n";

TEST_F(CliTest, SolveSampleTableWithEverySolver) {
  const auto input = write("sample.csv", kSample);
  for (const auto& solver : solver_names()) {
    RunConfig config;
    config.input = input;
    config.k = 2;
    config.solver = solver;
    config.output = path(solver + ".csv");
    config.clustering = path(solver + ".ids");
    std::ostringstream out, err;
    ASSERT_EQ(cmd_solve(config, out, err), kExitOk) << err.str();
    const std::string expected_cost = solver == "suppress-all" ? "cost=12" : "cost=4";
    EXPECT_EQ(out.str().rfind(expected_cost + " solver=" + solver + " n=4 m=3 k=2", 0),
              0u)
        << out.str();
    if (solver != "suppress-all") {
      EXPECT_EQ(slurp(config.output), kSampleAnon);
    }
  }
}

TEST_F(CliTest, ExactStatsCarryDiagnostics) {
  RunConfig config;
  config.input = write("sample.csv", kSample);
  config.k = 2;
  std::ostringstream out, err;
  ASSERT_EQ(cmd_solve(config, out, err), kExitOk);
  EXPECT_NE(out.str().find(" candidates="), std::string::npos);
  EXPECT_NE(out.str().find(" subsets_solved="), std::string::npos);
  EXPECT_TRUE(fs::exists(config.input.string() + ".anon.csv"));
  EXPECT_EQ(slurp(config.input.string() + ".clusters"), "0\n1\n0\n1\n");
}

TEST_F(CliTest, KOneCostsNothing) {
  RunConfig config;
  config.input = write("t.csv", "a,b\nc,d\ne,f\n");
  config.k = 1;
  std::ostringstream out, err;
  ASSERT_EQ(cmd_solve(config, out, err), kExitOk);
  EXPECT_EQ(out.str().rfind("cost=0 ", 0), 0u);
}

TEST_F(CliTest, InfeasibleExitsTwo) {
  RunConfig config;
  config.input = write("t.csv", "a\nb\nc\n");
  config.k = 4;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_solve(config, out, err), kExitInfeasible);
  EXPECT_NE(err.str().find("infeasible: k exceeds row count"), std::string::npos);
}

TEST_F(CliTest, BadInputExitsOne) {
  RunConfig config;
  config.input = write("t.csv", "a,*\n");
  config.k = 1;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_solve(config, out, err), kExitError);
  config.input = path("missing.csv");
  EXPECT_EQ(cmd_solve(config, out, err), kExitError);
}

TEST_F(CliTest, ReduceNamedGraphs) {
  const std::pair<const char*, const char*> cases[] = {
      {"k4", "rows=106 abc=134 k=7"}, {"petersen", "rows=244 abc=314 k=7"}};
  for (auto [name, stats] : cases) {
    RunConfig config;
    config.graph = name;
    config.output = path(std::string(name) + ".csv");
    std::ostringstream out, err;
    ASSERT_EQ(cmd_reduce(config, out, err), kExitOk) << err.str();
    EXPECT_EQ(out.str().rfind(stats, 0), 0u) << out.str();
    EXPECT_TRUE(fs::exists(config.output.string() + ".roles"));
  }
}

TEST_F(CliTest, ReduceRejectsIrregularGraphFile) {
  RunConfig config;
  config.graph = write("path.txt", "3 2\n0 1\n1 2\n").string();
  config.output = path("p.csv");
  std::ostringstream out, err;
  EXPECT_EQ(cmd_reduce(config, out, err), kExitError);
  EXPECT_NE(err.str().find("vertex 0"), std::string::npos);
}

TEST_F(CliTest, VerifySampleTableAndTamper) {
  RunConfig config;
  config.input = write("sample.csv", kSample);
  config.anonymized = write("anon.csv", kSampleAnon);
  config.k = 2;
  std::ostringstream out, err;
  ASSERT_EQ(cmd_verify(config, out, err), kExitOk);
  EXPECT_EQ(out.str(), "cost=4\n");

  config.anonymized = write("bad.csv", "*,a,b\nz,c,*\n*,a,c\nz,c,*\n");
  std::ostringstream out2, err2;
  EXPECT_EQ(cmd_verify(config, out2, err2), kExitError);
  EXPECT_NE(err2.str().find("row 2, column 2"), std::string::npos);
}

TEST_F(CliTest, VerifyReductionSolutionReportsCover) {
  const ReductionTable rt = reduce(complete_graph_k4());
  write_table(path("k4.csv"), rt.table);
  write_roles(path("k4.roles"), rt);
  write_grid(path("sol.csv"), cover_to_solution(rt, {0, 1, 2}).report.anonymized);

  RunConfig config;
  config.input = path("k4.csv");
  config.anonymized = path("sol.csv");
  config.roles = path("k4.roles");
  std::ostringstream out, err;
  ASSERT_EQ(cmd_extract_cover(config, out, err), kExitOk) << err.str();
  EXPECT_EQ(out.str(), "cost=137 abc=134 extra=3 cover-size=3 cover=0,1,2\n");

  config.k = 3;
  std::ostringstream out2, err2;
  EXPECT_EQ(cmd_verify(config, out2, err2), kExitError);

  RunConfig missing = config;
  missing.roles.clear();
  std::ostringstream out3, err3;
  EXPECT_EQ(cmd_extract_cover(missing, out3, err3), kExitError);
}

TEST_F(CliTest, GenIsDeterministic) {
  RunConfig config;
  config.seed = 1;
  config.n = 6;
  config.m = 3;
  config.sigma = 3;
  std::ostringstream a, b, err;
  ASSERT_EQ(cmd_gen(config, a, err), kExitOk);
  ASSERT_EQ(cmd_gen(config, b, err), kExitOk);
  const std::string text = a.str();
  EXPECT_EQ(text, b.str());
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 6);

  config.sigma = 1;
  config.output = path("same.csv");
  ASSERT_EQ(cmd_gen(config, a, err), kExitOk);
  RunConfig solve;
  solve.input = config.output;
  solve.k = 3;
  std::ostringstream out;
  ASSERT_EQ(cmd_solve(solve, out, err), kExitOk);
  EXPECT_EQ(out.str().rfind("cost=0 ", 0), 0u);
}

TEST_F(CliTest, SolveOutputReverifiesWithSameCost) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    RunConfig gen;
    gen.seed = seed;
    gen.n = 7;
    gen.output = path("g.csv");
    std::ostringstream sink, err;
    ASSERT_EQ(cmd_gen(gen, sink, err), kExitOk);
    for (const auto& solver : solver_names()) {
      RunConfig solve;
      solve.input = gen.output;
      solve.k = 2;
      solve.solver = solver;
      solve.output = path("a.csv");
      solve.clustering = path("a.ids");
      std::ostringstream stats;
      ASSERT_EQ(cmd_solve(solve, stats, err), kExitOk);
      RunConfig verify;
      verify.input = gen.output;
      verify.anonymized = solve.output;
      verify.k = 2;
      std::ostringstream verified;
      ASSERT_EQ(cmd_verify(verify, verified, err), kExitOk);
      const std::string cost = stats.str().substr(0, stats.str().find(' '));
      ASSERT_EQ(verified.str(), cost + "\n");
    }
  }
}

#ifdef KANON_CLI_PATH
int run(const std::string& args) {
  const int status = std::system((std::string(KANON_CLI_PATH) + " " + args +
                                  " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST_F(CliTest, ExecutableExitCodes) {
  const auto input = write("sample.csv", kSample);
  const auto out = path("o.csv").string();
  EXPECT_EQ(run("solve -i " + input.string() + " -k 2 -o " + out), 0);
  EXPECT_EQ(slurp(out), kSampleAnon);
  EXPECT_EQ(run("verify -i " + input.string() + " -a " + out + " -k 2"), 0);
  EXPECT_EQ(run("solve -i " + input.string() + " -k 9 -o " + out), 2);
  EXPECT_EQ(run("solve -i " + input.string() + " -k 2 --solver magic"), 1);
  EXPECT_EQ(run("reduce --graph q3 -o " + path("q3.csv").string()), 0);
  EXPECT_EQ(run("extract-cover -i " + input.string() + " -a " + out), 1);
  EXPECT_EQ(run("gen --seed 3 -o " + path("g.csv").string()), 0);
  EXPECT_EQ(run("--help"), 0);
}
#endif

}  // namespace
}  // namespace kanon::cli
