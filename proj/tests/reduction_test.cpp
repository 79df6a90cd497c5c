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

#include <algorithm>
#include <bit>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "kanon/heuristics.hpp"
#include "kanon/reduction.hpp"
#include "test_support.hpp"

namespace kanon {
namespace {

// Minimum cover size by popcount over all 2^r vertex masks.
std::size_t reference_cover_number(const Graph& g) {
  std::size_t best = g.vertex_count();
  for (std::uint32_t mask = 0; mask < (1u << g.vertex_count()); ++mask) {
    bool covers = true;
    for (auto [u, v] : g.edges()) {
      covers = covers && (((mask >> u) & 1u) || ((mask >> v) & 1u));
    }
    if (covers) best = std::min<std::size_t>(best, std::popcount(mask));
  }
  return best;
}

struct Expected {
  const char* name;
  std::size_t r, e, rows, abc, tau;
};

// rows = 20r + 2e + 14 and abc = 27r + 2e + 14; tau from the bitmask search.
const Expected kGraphs[] = {
    {"k4", 4, 6, 106, 134, 3},
    {"k33", 6, 9, 152, 194, 3},
    {"q3", 8, 12, 198, 254, 4},
    {"petersen", 10, 15, 244, 314, 6},
};

TEST(GraphTest, NamedGraphsAreThreeRegular) {
  for (const auto& x : kGraphs) {
    const Graph g = named_graph(x.name);
    EXPECT_EQ(g.vertex_count(), x.r) << x.name;
    EXPECT_EQ(g.edges().size(), x.e) << x.name;
    EXPECT_NO_THROW(g.require_three_regular()) << x.name;
  }
  EXPECT_THROW(named_graph("k5"), ArgumentError);
}

TEST(GraphTest, RejectsNonSimpleGraphs) {
  EXPECT_THROW(Graph(3, {{0, 0}}), ValidationError);
  EXPECT_THROW(Graph(3, {{0, 1}, {1, 0}}), ValidationError);
  EXPECT_THROW(Graph(3, {{0, 3}}), ValidationError);
}

TEST(GraphTest, ReadsGraphFiles) {
  std::istringstream in("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
  EXPECT_EQ(read_graph(in), complete_graph_k4());
  std::istringstream reversed("3 1\n2 1\n");
  EXPECT_THROW(read_graph(reversed), ValidationError);
  std::istringstream short_file("3 2\n0 1\n");
  EXPECT_THROW(read_graph(short_file), ValidationError);
  std::stringstream round;
  write_graph(round, petersen_graph());
  EXPECT_EQ(read_graph(round), petersen_graph());
}

TEST(MinVertexCoverTest, KnownCoverNumbers) {
  for (const auto& x : kGraphs) {
    const Graph g = named_graph(x.name);
    const auto cover = min_vertex_cover(g);
    EXPECT_EQ(reference_cover_number(g), x.tau) << x.name;
    EXPECT_EQ(cover.size(), x.tau) << x.name;
    EXPECT_TRUE(g.is_vertex_cover(cover)) << x.name;
  }
  EXPECT_EQ(min_vertex_cover(complete_graph_k4()), (std::vector<Vertex>{0, 1, 2}));
  EXPECT_THROW(min_vertex_cover(petersen_graph(), 9), ResourceError);
}

TEST(ReduceTest, CountsAndAlphabet) {
  for (const auto& x : kGraphs) {
    const Graph g = named_graph(x.name);
    const ReductionTable rt = reduce(g);
    EXPECT_EQ(rt.table.rows(), x.rows) << x.name;
    EXPECT_EQ(rt.table.rows(), 20 * x.r + 2 * x.e + 14) << x.name;
    EXPECT_EQ(rt.table.columns(), 3u);
    EXPECT_EQ(aggregated_base_cost(g), x.abc) << x.name;
    EXPECT_EQ(aggregated_base_cost(rt), x.abc) << x.name;
    EXPECT_EQ(rt.special_symbols, 15 * x.r + 14) << x.name;
    EXPECT_EQ(rt.table.alphabet_size(), 2 + x.r + rt.special_symbols) << x.name;

    std::map<SymbolId, std::size_t> occurrences;
    for (std::size_t i = 0; i < rt.table.rows(); ++i) {
      for (std::size_t j = 0; j < 3; ++j) ++occurrences[rt.table.at(i, j)];
    }
    std::size_t specials = 0;
    for (auto [id, count] : occurrences) {
      if (rt.table.alphabet().token(id).front() == 's') {
        ++specials;
        EXPECT_EQ(count, 1u);
      }
    }
    EXPECT_EQ(specials, rt.special_symbols);
  }
}

TEST(ReduceTest, RoleLayout) {
  const ReductionTable rt = reduce(complete_graph_k4());
  for (Vertex u = 0; u < 4; ++u) {
    EXPECT_EQ(rt.rows_of(u, RoleKind::kVertexA).size(), 6u);
    EXPECT_EQ(rt.rows_of(u, RoleKind::kCritical).size(), 1u);
    EXPECT_EQ(rt.rows_of(u, RoleKind::kVertexC).size(), 7u);
    EXPECT_EQ(rt.rows_of(u, RoleKind::kVertexD).size(), 3u);
    EXPECT_EQ(rt.rows_of(u, RoleKind::kVertexE).size(), 3u);
  }
  EXPECT_EQ(rt.rows_of(RoleKind::kEdgeXY).size(), 6u);
  EXPECT_EQ(rt.rows_of(RoleKind::kEdgeYX).size(), 6u);
  EXPECT_EQ(rt.rows_of(RoleKind::kDummyA).size(), 7u);
  EXPECT_EQ(rt.rows_of(RoleKind::kDummyB).size(), 7u);

  // First rows: 6 x <0,v0,v0>, then the critical row with the first special.
  std::ostringstream csv;
  write_table(csv, rt.table);
  const std::string head =
      "0,v0,v0\n0,v0,v0\n0,v0,v0\n0,v0,v0\n0,v0,v0\n0,v0,v0\ns1,v0,v0\ns2,v0,s3\n";
  EXPECT_EQ(csv.str().substr(0, head.size()), head);
}

TEST(ReduceTest, RejectsIrregularGraphs) {
  try {
    reduce(Graph(4, {{0, 1}, {1, 2}, {2, 3}}));
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("vertex 0"), std::string::npos);
  }
}

TEST(ExtraCostTest, PerRowExamples) {
  const ReductionTable rt = reduce(complete_graph_k4());
  const CoverSolution sol = cover_to_solution(rt, {0, 1, 2});
  const ExtraCost extra = extra_cost(rt, sol.report.anonymized);

  const std::size_t c_row = rt.rows_of(0, RoleKind::kVertexC).front();
  EXPECT_EQ(sol.report.anonymized.at(c_row, 0), kStar);
  EXPECT_NE(sol.report.anonymized.at(c_row, 1), kStar);
  EXPECT_EQ(sol.report.anonymized.at(c_row, 2), kStar);
  EXPECT_EQ(extra.per_row[c_row], 0u);

  const std::size_t crit = rt.rows_of(0, RoleKind::kCritical).front();
  EXPECT_EQ(sol.report.anonymized.at(crit, 0), kStar);
  EXPECT_EQ(sol.report.anonymized.at(crit, 2), kStar);
  EXPECT_EQ(extra.per_row[crit], 1u);

  const std::size_t edge = rt.rows_of(RoleKind::kEdgeXY).front();
  const auto r = sol.report.anonymized.row(edge);
  EXPECT_EQ(std::count(r.begin(), r.end(), kStar), 1);
  EXPECT_EQ(extra.per_row[edge], 0u);

  EXPECT_EQ(extra.abc, 134u);
  EXPECT_EQ(extra.total, 3u);
  EXPECT_EQ(extra.actual, 137u);
}

TEST(CoverToSolutionTest, Examples) {
  const ReductionTable k4 = reduce(complete_graph_k4());
  const CoverSolution a = cover_to_solution(k4, {0, 1, 2});
  EXPECT_EQ(a.report.cost, 137u);
  EXPECT_EQ(a.cover, (std::vector<Vertex>{0, 1, 2}));
  EXPECT_EQ(verify_solution(k4.table, a.report.anonymized, 7), 137u);

  const ReductionTable k33 = reduce(complete_bipartite_k33());
  EXPECT_EQ(cover_to_solution(k33, {0, 1, 2}).report.cost, 197u);
  EXPECT_EQ(cover_to_solution(k33, {3, 4, 5}).report.cost, 197u);

  // All of K4: vertex 3 gets no edge under smaller-endpoint attachment.
  const CoverSolution all = cover_to_solution(k4, {0, 1, 2, 3});
  EXPECT_EQ(all.cover, (std::vector<Vertex>{0, 1, 2}));
  EXPECT_EQ(all.report.cost, 134u + 3u);

  EXPECT_THROW(cover_to_solution(k4, {0, 1}), ValidationError);
  EXPECT_THROW(cover_to_solution(k4, {0, 1, 2, 9}), ValidationError);
}

TEST(CoverToSolutionTest, BlockSizes) {
  for (const auto& x : kGraphs) {
    const ReductionTable rt = reduce(named_graph(x.name));
    const CoverSolution sol = cover_to_solution(rt, min_vertex_cover(rt.graph));
    for (const auto& block : sol.report.clustering.blocks()) {
      EXPECT_GE(block.size(), 7u) << x.name;
    }
  }
}

TEST(SolutionToCoverTest, Examples) {
  const ReductionTable rt = reduce(complete_graph_k4());
  const CoverSolution sol = cover_to_solution(rt, {0, 1, 2});
  const CoverExtraction found = solution_to_cover(rt, sol.report.anonymized);
  EXPECT_EQ(found.cover, (std::vector<Vertex>{0, 1, 2}));
  EXPECT_EQ(found.imperfect, (std::vector<Vertex>{0, 1, 2}));
  EXPECT_TRUE(found.perfect_edges.empty());

  const auto everything = suppress_all(rt.table, 7);
  const CoverExtraction all = solution_to_cover(rt, everything.anonymized);
  EXPECT_EQ(all.cover, (std::vector<Vertex>{0, 1, 2, 3}));
  EXPECT_LE(all.cover.size(), all.extra.total);
}

// Rows whose output is identical to the critical row of u, when that row pays
// no extra, must be exactly the critical row and the six <0,u,u> rows.
void expect_critical_rows_canonical(const ReductionTable& rt, const AnonGrid& grid) {
  const ExtraCost extra = extra_cost(rt, grid);
  for (Vertex u = 0; u < rt.graph.vertex_count(); ++u) {
    const std::size_t crit = rt.rows_of(u, RoleKind::kCritical).front();
    if (extra.per_row[crit] != 0) continue;
    std::vector<std::size_t> group;
    for (std::size_t i = 0; i < grid.rows(); ++i) {
      if (std::ranges::equal(grid.row(i), grid.row(crit))) group.push_back(i);
    }
    std::vector<std::size_t> expected = rt.rows_of(u, RoleKind::kVertexA);
    expected.push_back(crit);
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(group, expected) << "vertex " << u;
  }
}

TEST(ReductionProperties, RandomCoversRoundTrip) {
  std::mt19937_64 rng(404);
  for (const auto& x : kGraphs) {
    const ReductionTable rt = reduce(named_graph(x.name));
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<Vertex> cover;
      for (Vertex u = 0; u < x.r; ++u) {
        if (rng() % 2) cover.push_back(u);
      }
      if (!rt.graph.is_vertex_cover(cover)) continue;
      const CoverSolution sol = cover_to_solution(rt, cover);
      ASSERT_TRUE(std::includes(cover.begin(), cover.end(), sol.cover.begin(),
                                sol.cover.end()));
      ASSERT_TRUE(rt.graph.is_vertex_cover(sol.cover));
      ASSERT_EQ(verify_solution(rt.table, sol.report.anonymized, 7),
                x.abc + sol.cover.size());
      const CoverExtraction found = solution_to_cover(rt, sol.report.anonymized);
      ASSERT_LE(found.cover.size(), found.extra.total);
      ASSERT_GE(found.cover.size(), x.tau);
      expect_critical_rows_canonical(rt, sol.report.anonymized);
    }
  }
}

TEST(ReductionProperties, HeuristicSolutionsRespectTheBound) {
  for (const auto& x : kGraphs) {
    const ReductionTable rt = reduce(named_graph(x.name));
    for (const auto& report : {greedy_agglomerative(rt.table, 7), suppress_all(rt.table, 7)}) {
      const CoverExtraction found = solution_to_cover(rt, report.anonymized);
      EXPECT_TRUE(rt.graph.is_vertex_cover(found.cover)) << x.name;
      EXPECT_LE(found.cover.size(), found.extra.total) << x.name;
      EXPECT_GE(report.cost, x.abc + x.tau) << x.name;
      expect_critical_rows_canonical(rt, report.anonymized);
    }
  }
}

TEST(RoleSidecarTest, RoundTripAndMismatch) {
  const ReductionTable rt = reduce(cube_q3());
  std::stringstream table_text, roles_text;
  write_table(table_text, rt.table);
  write_roles(roles_text, rt);
  EXPECT_EQ(roles_text.str().substr(0, 9), "0,A,v0\n1,");

  const Table table = read_table(table_text);
  const auto roles = read_roles(roles_text);
  const ReductionTable loaded = load_reduction(table, roles);
  EXPECT_EQ(loaded.graph, rt.graph);
  EXPECT_EQ(loaded.roles, rt.roles);

  auto wrong = roles;
  std::swap(wrong[0], wrong[6]);
  EXPECT_THROW(load_reduction(table, wrong), ValidationError);
  std::istringstream bad("0,A,x1\n");
  EXPECT_THROW(read_roles(bad), ValidationError);
  std::istringstream unknown("0,Q,-\n");
  EXPECT_THROW(read_roles(unknown), ValidationError);
}

}  // namespace
}  // namespace kanon
