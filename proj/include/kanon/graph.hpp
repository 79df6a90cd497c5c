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

#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kanon/error.hpp"

namespace kanon {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;  ///< always first < second

/// Simple undirected graph on {0..r-1}. Edges are kept sorted.
class Graph {
 public:
  Graph(std::size_t vertices, std::vector<Edge> edges) : r_(vertices) {
    std::set<Edge> unique;
    for (auto [u, v] : edges) {
      if (u == v) {
        throw ValidationError("self-loop at vertex " + std::to_string(u));
      }
      if (u >= r_ || v >= r_) {
        throw ValidationError("edge " + std::to_string(u) + "-" +
                              std::to_string(v) + " leaves 0.." +
                              std::to_string(r_ == 0 ? 0 : r_ - 1));
      }
      if (u > v) std::swap(u, v);
      if (!unique.emplace(u, v).second) {
        throw ValidationError("duplicate edge " + std::to_string(u) + "-" +
                              std::to_string(v));
      }
    }
    edges_.assign(unique.begin(), unique.end());
  }

  std::size_t vertex_count() const noexcept { return r_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> deg(r_, 0);
    for (auto [u, v] : edges_) {
      ++deg[u];
      ++deg[v];
    }
    return deg;
  }

  /// Throws ValidationError naming the first vertex whose degree is not 3.
  void require_three_regular() const {
    if (r_ == 0) throw ValidationError("graph has no vertices");
    const auto deg = degrees();
    for (Vertex u = 0; u < r_; ++u) {
      if (deg[u] != 3) {
        throw ValidationError("graph is not 3-regular: vertex " +
                              std::to_string(u) + " has degree " +
                              std::to_string(deg[u]));
      }
    }
  }

  bool is_vertex_cover(const std::vector<Vertex>& cover) const {
    std::vector<bool> in(r_, false);
    for (Vertex u : cover) {
      if (u < r_) in[u] = true;
    }
    return std::all_of(edges_.begin(), edges_.end(),
                       [&](const Edge& e) { return in[e.first] || in[e.second]; });
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t r_;
  std::vector<Edge> edges_;
};

inline Graph complete_graph_k4() {
  return Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}

inline Graph complete_bipartite_k33() {
  std::vector<Edge> edges;
  for (Vertex a = 0; a < 3; ++a) {
    for (Vertex b = 3; b < 6; ++b) edges.emplace_back(a, b);
  }
  return Graph(6, std::move(edges));
}

inline Graph cube_q3() {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < 8; ++u) {
    for (Vertex bit = 1; bit < 8; bit <<= 1) {
      if ((u & bit) == 0) edges.emplace_back(u, u | bit);
    }
  }
  return Graph(8, std::move(edges));
}

inline Graph petersen_graph() {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);      // outer cycle
    edges.emplace_back(i, i + 5);            // spokes
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);  // inner pentagram
  }
  return Graph(10, std::move(edges));
}

inline const std::vector<std::string_view>& named_graphs() {
  static const std::vector<std::string_view> names = {"k4", "k33", "q3",
                                                      "petersen"};
  return names;
}

inline Graph named_graph(std::string_view name) {
  if (name == "k4") return complete_graph_k4();
  if (name == "k33") return complete_bipartite_k33();
  if (name == "q3") return cube_q3();
  if (name == "petersen") return petersen_graph();
  throw ArgumentError("unknown graph name \"" + std::string(name) + "\"");
}

/// Graph file: "r e" on the first line, then e lines "u v" with u < v < r.
inline Graph read_graph(std::istream& in) {
  std::string line;
  auto next_line = [&](std::size_t& line_no) {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  std::size_t line_no = 0;
  if (!next_line(line_no)) throw ValidationError("graph file is empty");
  std::size_t r = 0, e = 0;
  {
    std::istringstream header(line);
    if (!(header >> r >> e)) {
      throw ValidationError("graph header must be \"r e\"");
    }
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < e; ++i) {
    if (!next_line(line_no)) {
      throw ValidationError("graph file declares " + std::to_string(e) +
                            " edges but has " + std::to_string(i));
    }
    std::istringstream row(line);
    Vertex u = 0, v = 0;
    std::string extra;
    if (!(row >> u >> v) || (row >> extra)) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": expected \"u v\"");
    }
    if (!(u < v && v < r)) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": edge must satisfy 0 <= u < v < r");
    }
    edges.emplace_back(u, v);
  }
  if (next_line(line_no)) {
    throw ValidationError("line " + std::to_string(line_no) +
                          ": more edges than declared");
  }
  return Graph(r, std::move(edges));
}

inline Graph read_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  return read_graph(in);
}

inline void write_graph(std::ostream& out, const Graph& g) {
  out << g.vertex_count() << ' ' << g.edges().size() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

/// A named built-in graph, or else a graph file path.
inline Graph load_graph(std::string_view name_or_path) {
  const auto& names = named_graphs();
  if (std::find(names.begin(), names.end(), name_or_path) != names.end()) {
    return named_graph(name_or_path);
  }
  return read_graph(std::filesystem::path(name_or_path));
}

/// Minimum vertex cover by enumerating subsets in increasing size,
/// lexicographically within a size. Returns the first cover found.
inline std::vector<Vertex> min_vertex_cover(const Graph& g,
                                            std::size_t max_vertices = 16) {
  const std::size_t r = g.vertex_count();
  if (r > max_vertices) {
    throw ResourceError("min_vertex_cover: " + std::to_string(r) +
                        " vertices exceeds the cap of " +
                        std::to_string(max_vertices));
  }
  for (std::size_t size = 0; size <= r; ++size) {
    std::vector<Vertex> combo(size);
    for (std::size_t i = 0; i < size; ++i) combo[i] = i;
    while (true) {
      if (g.is_vertex_cover(combo)) return combo;
      std::size_t i = size;
      while (i > 0 && combo[i - 1] == r - size + i - 1) --i;
      if (i == 0) break;
      ++combo[i - 1];
      for (std::size_t j = i; j < size; ++j) combo[j] = combo[j - 1] + 1;
    }
  }
  throw InternalError("min_vertex_cover: the full vertex set is always a cover");
}

}  // namespace kanon
