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

// Subcommand drivers behind the `kanon` executable. Each returns the process
// exit code: 0 on success, 1 on any error, 2 when the instance is infeasible.
// Stats go to `out` as one key=value line; diagnostics go to `err`.

#pragma once

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "kanon/error.hpp"
#include "kanon/exact.hpp"
#include "kanon/generate.hpp"
#include "kanon/graph.hpp"
#include "kanon/heuristics.hpp"
#include "kanon/io.hpp"
#include "kanon/oracle.hpp"
#include "kanon/reduction.hpp"
#include "kanon/table.hpp"

namespace kanon::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInfeasible = 2;

inline const std::vector<std::string>& solver_names() {
  static const std::vector<std::string> names = {"exact", "bruteforce", "greedy",
                                                 "suppress-all"};
  return names;
}

struct RunConfig {
  std::filesystem::path input;
  std::filesystem::path output;
  std::filesystem::path clustering;
  std::filesystem::path anonymized;
  std::filesystem::path roles;
  std::optional<std::size_t> k;
  std::string solver = "exact";
  std::uint64_t budget = std::uint64_t{1} << 20;
  unsigned threads = 0;
  std::size_t max_rows = OracleLimits{}.max_rows;
  std::string graph;
  std::uint64_t seed = 1;
  std::size_t n = 6;
  std::size_t m = 3;
  std::size_t sigma = 3;
};

/// Runs `body`, mapping library exceptions onto exit codes.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const InfeasibleError& e) {
    err << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

inline SolverReport run_solver(const Table& table, const RunConfig& config) {
  if (!config.k) throw ArgumentError("--k is required");
  const std::size_t k = *config.k;
  if (k < 1) throw ArgumentError("k must be at least 1");
  if (config.solver == "exact") {
    return solve_exact(table, k, ExactOptions{config.budget, config.threads});
  }
  if (config.solver == "bruteforce") {
    OracleLimits limits;
    limits.max_rows = config.max_rows;
    return optimal_by_partition(table, k, limits);
  }
  if (config.solver == "greedy") return greedy_agglomerative(table, k);
  if (config.solver == "suppress-all") return suppress_all(table, k);
  throw ArgumentError("unknown solver \"" + config.solver + "\"");
}

inline int cmd_solve(const RunConfig& config, std::ostream& out,
                     std::ostream& err) {
  return guarded(err, [&] {
    const Table table = read_table(config.input);
    const SolverReport report = run_solver(table, config);
    const auto output = config.output.empty()
                            ? std::filesystem::path(config.input.string() + ".anon.csv")
                            : config.output;
    const auto clusters = config.clustering.empty()
                              ? std::filesystem::path(config.input.string() + ".clusters")
                              : config.clustering;
    write_grid(output, report.anonymized);
    write_clustering(clusters, report.clustering);
    out << "cost=" << report.cost << " solver=" << report.solver
        << " n=" << table.rows() << " m=" << table.columns()
        << " k=" << *config.k;
    for (const auto& [key, value] : report.diagnostics) {
      out << ' ' << key << '=' << value;
    }
    out << '\n';
    err << "wrote " << output.string() << " and " << clusters.string() << '\n';
    return kExitOk;
  });
}

inline int cmd_reduce(const RunConfig& config, std::ostream& out,
                      std::ostream& err) {
  return guarded(err, [&] {
    if (config.graph.empty()) throw ArgumentError("--graph is required");
    const Graph g = load_graph(config.graph);
    const ReductionTable rt = reduce(g);
    const auto output = config.output.empty()
                            ? std::filesystem::path(
                                  std::filesystem::path(config.graph).filename().string() +
                                  ".csv")
                            : config.output;
    const auto roles = config.roles.empty()
                           ? std::filesystem::path(output.string() + ".roles")
                           : config.roles;
    write_table(output, rt.table);
    write_roles(roles, rt);
    out << "rows=" << rt.table.rows() << " abc=" << aggregated_base_cost(g)
        << " k=" << ReductionTable::k << " vertices=" << g.vertex_count()
        << " edges=" << g.edges().size() << " specials=" << rt.special_symbols
        << '\n';
    err << "wrote " << output.string() << " and " << roles.string() << '\n';
    return kExitOk;
  });
}

inline int cmd_verify(const RunConfig& config, std::ostream& out,
                      std::ostream& err) {
  return guarded(err, [&] {
    if (config.anonymized.empty()) throw ArgumentError("--anonymized is required");
    if (config.roles.empty()) {
      if (!config.k) throw ArgumentError("--k is required without --roles");
      const Table table = read_table(config.input);
      const AnonGrid grid = read_grid(config.anonymized, table);
      out << "cost=" << verify_solution(table, grid, *config.k) << '\n';
      return kExitOk;
    }
    if (config.k && *config.k != ReductionTable::k) {
      throw ArgumentError("reduction tables are fixed at k=7");
    }
    const ReductionTable rt = load_reduction(config.input, config.roles);
    const AnonGrid grid = read_grid(config.anonymized, rt.table);
    const CoverExtraction found = solution_to_cover(rt, grid);
    out << "cost=" << found.extra.actual << " abc=" << found.extra.abc
        << " extra=" << found.extra.total
        << " cover-size=" << found.cover.size() << " cover=";
    for (std::size_t i = 0; i < found.cover.size(); ++i) {
      out << (i ? "," : "") << found.cover[i];
    }
    out << '\n';
    return kExitOk;
  });
}

inline int cmd_extract_cover(const RunConfig& config, std::ostream& out,
                             std::ostream& err) {
  if (config.roles.empty()) {
    err << "error: extract-cover requires --roles\n";
    return kExitError;
  }
  return cmd_verify(config, out, err);
}

inline int cmd_gen(const RunConfig& config, std::ostream& out,
                   std::ostream& err) {
  return guarded(err, [&] {
    const Table table = random_table(config.seed, config.n, config.m, config.sigma);
    if (config.output.empty()) {
      write_table(out, table);
    } else {
      write_table(config.output, table);
    }
    return kExitOk;
  });
}

}  // namespace kanon::cli
