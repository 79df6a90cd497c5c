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

// Vertex cover on 3-regular graphs, encoded as 3-column 7-anonymization.
//
// Every vertex u contributes 20 rows, every edge two, plus 14 dummy rows:
//
//   A     6 x <0, u, u>
//   CRIT  1 x <?, u, u>     the critical row of u
//   C     7 x <?, u, ?>
//   D     3 x <0, u, Z>
//   E     3 x <0, Z, u>
//   EXY   <0, x, y>  and  EYX  <0, y, x>   for each edge x < y
//   DA    7 x <0, ?, Z>
//   DB    7 x <0, Z, ?>
//
// Each "?" is a fresh symbol used nowhere else in the table. Every row pays
// at least its base cost (2 for C rows, 1 otherwise) in any 7-anonymization,
// so the cost of any solution is ABC = 27r + 2|E| + 14 plus its extra cost,
// and the minimum extra cost equals the minimum vertex cover size.

#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "kanon/error.hpp"
#include "kanon/graph.hpp"
#include "kanon/io.hpp"
#include "kanon/table.hpp"

namespace kanon {

enum class RoleKind {
  kVertexA,
  kCritical,
  kVertexC,
  kVertexD,
  kVertexE,
  kEdgeXY,
  kEdgeYX,
  kDummyA,
  kDummyB,
};

inline constexpr std::array<std::string_view, 9> kRoleTokens = {
    "A", "CRIT", "C", "D", "E", "EXY", "EYX", "DA", "DB"};

inline std::string_view role_token(RoleKind kind) {
  return kRoleTokens[static_cast<std::size_t>(kind)];
}

inline RoleKind parse_role_kind(std::string_view token) {
  for (std::size_t i = 0; i < kRoleTokens.size(); ++i) {
    if (kRoleTokens[i] == token) return static_cast<RoleKind>(i);
  }
  throw ValidationError("unknown role kind \"" + std::string(token) + "\"");
}

inline bool is_vertex_role(RoleKind kind) {
  return kind <= RoleKind::kVertexE;
}
inline bool is_edge_role(RoleKind kind) {
  return kind == RoleKind::kEdgeXY || kind == RoleKind::kEdgeYX;
}

struct RowRole {
  RoleKind kind;
  Vertex vertex = 0;  ///< vertex roles only
  Edge edge{};        ///< edge roles only

  friend bool operator==(const RowRole&, const RowRole&) = default;
};

inline std::string role_owner(const RowRole& role) {
  if (is_vertex_role(role.kind)) return "v" + std::to_string(role.vertex);
  if (is_edge_role(role.kind)) {
    return "e" + std::to_string(role.edge.first) + "-" +
           std::to_string(role.edge.second);
  }
  return "-";
}

inline std::size_t base_cost(RoleKind kind) {
  return kind == RoleKind::kVertexC ? 2 : 1;
}

struct ReductionTable {
  static constexpr std::size_t k = 7;

  Table table;
  std::vector<RowRole> roles;
  Graph graph;
  std::size_t special_symbols = 0;

  /// Row indices of vertex u with the given role, in table order.
  std::vector<std::size_t> rows_of(Vertex u, RoleKind kind) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < roles.size(); ++i) {
      if (roles[i].kind == kind && roles[i].vertex == u) out.push_back(i);
    }
    return out;
  }
  std::vector<std::size_t> rows_of(RoleKind kind) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < roles.size(); ++i) {
      if (roles[i].kind == kind) out.push_back(i);
    }
    return out;
  }
};

/// 27r + 2|E| + 14.
inline std::size_t aggregated_base_cost(const Graph& g) {
  g.require_three_regular();
  return 27 * g.vertex_count() + 2 * g.edges().size() + 14;
}

inline std::size_t aggregated_base_cost(const ReductionTable& rt) {
  std::size_t total = 0;
  for (const auto& role : rt.roles) total += base_cost(role.kind);
  return total;
}

inline std::string vertex_symbol(Vertex u) { return "v" + std::to_string(u); }

/// Builds the reduction table for a simple 3-regular graph. Vertex u becomes
/// symbol "v<u>", special symbols are "s1", "s2", ... in emission order.
inline ReductionTable reduce(const Graph& g) {
  g.require_three_regular();
  std::vector<std::vector<std::string>> rows;
  std::vector<RowRole> roles;
  std::size_t specials = 0;
  auto fresh = [&specials] { return "s" + std::to_string(++specials); };
  auto emit = [&](RowRole role, std::vector<std::string> row) {
    rows.push_back(std::move(row));
    roles.push_back(role);
  };
  const std::string zero = "0";
  const std::string z = "Z";

  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    const std::string sym = vertex_symbol(u);
    for (int i = 0; i < 6; ++i) emit({RoleKind::kVertexA, u, {}}, {zero, sym, sym});
    emit({RoleKind::kCritical, u, {}}, {fresh(), sym, sym});
    for (int i = 0; i < 7; ++i) {
      auto first = fresh();
      emit({RoleKind::kVertexC, u, {}}, {first, sym, fresh()});
    }
    for (int i = 0; i < 3; ++i) emit({RoleKind::kVertexD, u, {}}, {zero, sym, z});
    for (int i = 0; i < 3; ++i) emit({RoleKind::kVertexE, u, {}}, {zero, z, sym});
  }
  for (const Edge& e : g.edges()) {
    const std::string x = vertex_symbol(e.first);
    const std::string y = vertex_symbol(e.second);
    emit({RoleKind::kEdgeXY, 0, e}, {zero, x, y});
    emit({RoleKind::kEdgeYX, 0, e}, {zero, y, x});
  }
  for (int i = 0; i < 7; ++i) emit({RoleKind::kDummyA, 0, {}}, {zero, fresh(), z});
  for (int i = 0; i < 7; ++i) emit({RoleKind::kDummyB, 0, {}}, {zero, z, fresh()});

  return ReductionTable{Table::from_rows(rows), std::move(roles), g, specials};
}

/// Per-row and total extra cost of a verified 7-anonymization.
struct ExtraCost {
  std::size_t actual = 0;  ///< star count
  std::size_t abc = 0;
  std::size_t total = 0;   ///< actual - abc
  std::vector<std::size_t> per_row;
};

inline ExtraCost extra_cost(const ReductionTable& rt, const AnonGrid& output) {
  ExtraCost out;
  out.actual = verify_solution(rt.table, output, ReductionTable::k);
  out.per_row.resize(rt.table.rows());
  for (std::size_t i = 0; i < rt.table.rows(); ++i) {
    const auto r = output.row(i);
    const auto stars =
        static_cast<std::size_t>(std::count(r.begin(), r.end(), kStar));
    const std::size_t base = base_cost(rt.roles[i].kind);
    if (stars < base) {
      throw InternalError("row " + std::to_string(i) + " pays " +
                          std::to_string(stars) + " below its base cost " +
                          std::to_string(base));
    }
    out.per_row[i] = stars - base;
    out.total += out.per_row[i];
    out.abc += base;
  }
  return out;
}

struct CoverSolution {
  SolverReport report;
  std::vector<Vertex> cover;  ///< after removing unattached cover vertices
};

/// Builds the 7-anonymization of cost ABC + |C'| from a vertex cover C, where
/// C' drops cover vertices that end up with no attached edge.
///
/// An edge attaches to its covered endpoint, or the smaller one when both are
/// covered. While some cover vertex has nothing attached, the smallest such
/// vertex is dropped and attachments are recomputed.
inline CoverSolution cover_to_solution(const ReductionTable& rt,
                                       const std::vector<Vertex>& cover) {
  const Graph& g = rt.graph;
  const std::size_t r = g.vertex_count();
  std::vector<bool> in_cover(r, false);
  for (Vertex u : cover) {
    if (u >= r) {
      throw ValidationError("cover vertex " + std::to_string(u) +
                            " is not in the graph");
    }
    in_cover[u] = true;
  }
  for (const Edge& e : g.edges()) {
    if (!in_cover[e.first] && !in_cover[e.second]) {
      throw ValidationError("not a vertex cover: edge " +
                            std::to_string(e.first) + "-" +
                            std::to_string(e.second) + " is uncovered");
    }
  }

  std::vector<Vertex> owner(g.edges().size());
  while (true) {
    std::vector<std::size_t> attached(r, 0);
    for (std::size_t i = 0; i < g.edges().size(); ++i) {
      const Edge& e = g.edges()[i];
      owner[i] = in_cover[e.first] ? e.first : e.second;
      ++attached[owner[i]];
    }
    std::optional<Vertex> idle;
    for (Vertex u = 0; u < r && !idle; ++u) {
      if (in_cover[u] && attached[u] == 0) idle = u;
    }
    if (!idle) break;
    in_cover[*idle] = false;
  }

  std::vector<std::vector<std::size_t>> blocks;
  auto append = [](std::vector<std::size_t>& into,
                   const std::vector<std::size_t>& rows) {
    into.insert(into.end(), rows.begin(), rows.end());
  };
  std::vector<std::size_t> d1 = rt.rows_of(RoleKind::kDummyA);
  std::vector<std::size_t> d2 = rt.rows_of(RoleKind::kDummyB);
  std::vector<Vertex> effective;
  for (Vertex u = 0; u < r; ++u) {
    const auto a_rows = rt.rows_of(u, RoleKind::kVertexA);
    const auto crit = rt.rows_of(u, RoleKind::kCritical);
    const auto c_rows = rt.rows_of(u, RoleKind::kVertexC);
    const auto d_rows = rt.rows_of(u, RoleKind::kVertexD);
    const auto e_rows = rt.rows_of(u, RoleKind::kVertexE);
    if (!in_cover[u]) {
      std::vector<std::size_t> block = a_rows;
      append(block, crit);
      blocks.push_back(std::move(block));
      blocks.push_back(c_rows);
      append(d1, d_rows);
      append(d2, e_rows);
      continue;
    }
    effective.push_back(u);
    std::vector<std::size_t> a_block(a_rows.begin(), a_rows.begin() + 3);
    std::vector<std::size_t> b_block(a_rows.begin() + 3, a_rows.end());
    for (std::size_t i = 0; i < rt.roles.size(); ++i) {
      const RowRole& role = rt.roles[i];
      if (!is_edge_role(role.kind)) continue;
      const auto it = std::lower_bound(g.edges().begin(), g.edges().end(), role.edge);
      if (owner[static_cast<std::size_t>(it - g.edges().begin())] != u) continue;
      // The edge row starting with u goes to A_u, the other to B_u.
      const Vertex leading =
          role.kind == RoleKind::kEdgeXY ? role.edge.first : role.edge.second;
      (leading == u ? a_block : b_block).push_back(i);
    }
    append(a_block, d_rows);
    append(b_block, e_rows);
    std::vector<std::size_t> c_block = c_rows;
    append(c_block, crit);
    blocks.push_back(std::move(a_block));
    blocks.push_back(std::move(b_block));
    blocks.push_back(std::move(c_block));
  }
  blocks.push_back(std::move(d1));
  blocks.push_back(std::move(d2));

  auto report = make_report(rt.table, Clustering(std::move(blocks), ReductionTable::k),
                            "cover-construction");
  const std::size_t expected = aggregated_base_cost(rt) + effective.size();
  if (report.cost != expected) {
    throw InternalError("cover construction cost " + std::to_string(report.cost) +
                        " differs from ABC + |C'| = " + std::to_string(expected));
  }
  return CoverSolution{std::move(report), std::move(effective)};
}

struct CoverExtraction {
  std::vector<Vertex> cover;
  std::vector<Vertex> imperfect;       ///< some own row pays extra cost
  std::vector<Edge> perfect_edges;     ///< both endpoints perfect
  ExtraCost extra;
};

/// Reads a vertex cover of size at most the extra cost out of any verified
/// 7-anonymization: all imperfect vertices, plus the smaller endpoint of each
/// edge whose endpoints are both perfect.
inline CoverExtraction solution_to_cover(const ReductionTable& rt,
                                         const AnonGrid& output) {
  CoverExtraction out;
  out.extra = extra_cost(rt, output);
  const std::size_t r = rt.graph.vertex_count();
  std::vector<bool> imperfect(r, false);
  for (std::size_t i = 0; i < rt.roles.size(); ++i) {
    if (is_vertex_role(rt.roles[i].kind) && out.extra.per_row[i] > 0) {
      imperfect[rt.roles[i].vertex] = true;
    }
  }
  std::set<Vertex> cover;
  for (Vertex u = 0; u < r; ++u) {
    if (imperfect[u]) {
      out.imperfect.push_back(u);
      cover.insert(u);
    }
  }
  for (const Edge& e : rt.graph.edges()) {
    if (!imperfect[e.first] && !imperfect[e.second]) {
      out.perfect_edges.push_back(e);
      cover.insert(e.first);
    }
  }
  out.cover.assign(cover.begin(), cover.end());
  if (!rt.graph.is_vertex_cover(out.cover)) {
    throw InternalError("extracted vertex set does not cover every edge");
  }
  if (out.cover.size() > out.extra.total) {
    throw InternalError("extracted cover of size " +
                        std::to_string(out.cover.size()) +
                        " exceeds the extra cost " +
                        std::to_string(out.extra.total));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Role sidecar: "index,kind,owner" per row.

inline void write_roles(std::ostream& out, const ReductionTable& rt) {
  for (std::size_t i = 0; i < rt.roles.size(); ++i) {
    out << i << ',' << role_token(rt.roles[i].kind) << ','
        << role_owner(rt.roles[i]) << '\n';
  }
}

inline void write_roles(const std::filesystem::path& path,
                        const ReductionTable& rt) {
  auto out = detail::open_output(path);
  write_roles(out, rt);
}

inline std::vector<RowRole> read_roles(std::istream& in) {
  std::vector<RowRole> roles;
  auto parse_index = [](std::string_view s, std::size_t line_no) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw ValidationError("roles line " + std::to_string(line_no) +
                            ": bad number \"" + std::string(s) + "\"");
    }
    return value;
  };
  for (const auto& [line_no, line] : detail::read_lines(in)) {
    const auto fields = detail::split_csv_line(line, line_no);
    if (fields.size() != 3) {
      throw ValidationError("roles line " + std::to_string(line_no) +
                            ": expected index,kind,owner");
    }
    if (parse_index(fields[0], line_no) != roles.size()) {
      throw ValidationError("roles line " + std::to_string(line_no) +
                            ": indices must run 0, 1, 2, ...");
    }
    RowRole role{parse_role_kind(fields[1])};
    const std::string_view owner = fields[2];
    if (is_vertex_role(role.kind)) {
      if (owner.size() < 2 || owner[0] != 'v') {
        throw ValidationError("roles line " + std::to_string(line_no) +
                              ": vertex owner must look like v<u>");
      }
      role.vertex = parse_index(owner.substr(1), line_no);
    } else if (is_edge_role(role.kind)) {
      const auto dash = owner.find('-');
      if (owner.size() < 4 || owner[0] != 'e' || dash == std::string_view::npos) {
        throw ValidationError("roles line " + std::to_string(line_no) +
                              ": edge owner must look like e<x>-<y>");
      }
      role.edge = {parse_index(owner.substr(1, dash - 1), line_no),
                   parse_index(owner.substr(dash + 1), line_no)};
    } else if (owner != "-") {
      throw ValidationError("roles line " + std::to_string(line_no) +
                            ": dummy rows have owner \"-\"");
    }
    roles.push_back(role);
  }
  return roles;
}

/// Rebuilds a reduction table from its CSV and role sidecar. The graph is
/// recovered from the roles and the table must match its reduction exactly.
inline ReductionTable load_reduction(const Table& table,
                                     const std::vector<RowRole>& roles) {
  if (roles.size() != table.rows()) {
    throw ValidationError("role sidecar has " + std::to_string(roles.size()) +
                          " rows but the table has " +
                          std::to_string(table.rows()));
  }
  std::size_t r = 0;
  std::vector<Edge> edges;
  for (const auto& role : roles) {
    if (is_vertex_role(role.kind)) r = std::max(r, role.vertex + 1);
    if (role.kind == RoleKind::kEdgeXY) edges.push_back(role.edge);
  }
  ReductionTable rebuilt = reduce(Graph(r, std::move(edges)));
  if (rebuilt.roles != roles) {
    throw ValidationError("role sidecar does not match the reduction of its graph");
  }
  if (!(rebuilt.table == table)) {
    throw ValidationError("table does not match the reduction described by its roles");
  }
  rebuilt.table = table;
  return rebuilt;
}

inline ReductionTable load_reduction(const std::filesystem::path& table_path,
                                     const std::filesystem::path& roles_path) {
  const Table table = read_table(table_path);
  auto in = detail::open_input(roles_path);
  return load_reduction(table, read_roles(in));
}

}  // namespace kanon
