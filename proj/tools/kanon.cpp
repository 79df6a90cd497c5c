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

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "kanon/cli.hpp"

int main(int argc, char** argv) {
  using kanon::cli::RunConfig;
  CLI::App app{"kanon: k-anonymization by cell suppression"};
  app.require_subcommand(1);
  RunConfig config;
  std::size_t k = 0;

  auto* solve = app.add_subcommand("solve", "Anonymize a CSV table");
  solve->add_option("-i,--input", config.input, "Input table CSV")->required();
  solve->add_option("-k,--k", k, "Privacy parameter")->required();
  solve->add_option("-s,--solver", config.solver, "Solver")
      ->check(CLI::IsMember(kanon::cli::solver_names()));
  solve->add_option("-o,--output", config.output,
                    "Anonymized CSV (default <input>.anon.csv)");
  solve->add_option("-c,--clustering", config.clustering,
                    "Block-id file (default <input>.clusters)");
  solve->add_option("--budget", config.budget, "Exact solver subset cap");
  solve->add_option("--threads", config.threads, "Exact solver threads (0 = all)");
  solve->add_option("--max-rows", config.max_rows, "Brute-force row cap");

  auto* reduce = app.add_subcommand("reduce", "Build the vertex-cover reduction table");
  reduce->add_option("-g,--graph", config.graph,
                     "k4, k33, q3, petersen, or a graph file")
      ->required();
  reduce->add_option("-o,--output", config.output, "Table CSV (default <graph>.csv)");
  reduce->add_option("-r,--roles", config.roles,
                     "Role sidecar (default <output>.roles)");

  auto add_verify_options = [&](CLI::App* cmd, bool roles_required) {
    cmd->add_option("-i,--input", config.input, "Original table CSV")->required();
    cmd->add_option("-a,--anonymized", config.anonymized, "Anonymized CSV")
        ->required();
    cmd->add_option("-k,--k", k, "Privacy parameter");
    auto* roles = cmd->add_option("-r,--roles", config.roles,
                                  "Reduction role sidecar");
    if (roles_required) roles->required();
  };
  auto* verify = app.add_subcommand("verify", "Check an anonymized table");
  add_verify_options(verify, false);
  auto* extract = app.add_subcommand(
      "extract-cover", "Verify a reduction solution and extract a vertex cover");
  add_verify_options(extract, true);

  auto* gen = app.add_subcommand("gen", "Generate a random table");
  gen->add_option("--seed", config.seed, "Random seed");
  gen->add_option("-n,--n", config.n, "Rows");
  gen->add_option("-m,--m", config.m, "Columns");
  gen->add_option("--sigma", config.sigma, "Alphabet size");
  gen->add_option("-o,--output", config.output, "Output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kanon::cli::kExitError;
  }
  for (auto* cmd : {solve, verify, extract}) {
    if (cmd->parsed() && cmd->count("--k") > 0) config.k = k;
  }

  if (solve->parsed()) return kanon::cli::cmd_solve(config, std::cout, std::cerr);
  if (reduce->parsed()) return kanon::cli::cmd_reduce(config, std::cout, std::cerr);
  if (verify->parsed()) return kanon::cli::cmd_verify(config, std::cout, std::cerr);
  if (extract->parsed()) {
    return kanon::cli::cmd_extract_cover(config, std::cout, std::cerr);
  }
  return kanon::cli::cmd_gen(config, std::cout, std::cerr);
}
