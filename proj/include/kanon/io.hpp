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

// Plain CSV readers and writers. No header, no quoting: one row per line,
// tokens separated by commas. Blank lines are ignored.

#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "kanon/error.hpp"
#include "kanon/table.hpp"

namespace kanon {

namespace detail {

inline std::vector<std::string> split_csv_line(std::string_view line,
                                               std::size_t line_no) {
  std::vector<std::string> tokens;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    std::string_view token = line.substr(start, comma - start);
    if (token.empty()) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": empty token in column " +
                            std::to_string(tokens.size()));
    }
    tokens.emplace_back(token);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return tokens;
}

/// Lines with the trailing CR stripped, paired with 1-based line numbers.
inline std::vector<std::pair<std::size_t, std::string>> read_lines(
    std::istream& in) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    lines.emplace_back(line_no, std::move(line));
  }
  return lines;
}

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  return in;
}

inline std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path.string());
  return out;
}

inline void write_cells(std::ostream& out, const Alphabet& alphabet,
                        std::size_t rows, std::size_t columns,
                        auto&& cell_at) {
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < columns; ++j) {
      if (j) out << ',';
      out << alphabet.token(cell_at(i, j));
    }
    out << '\n';
  }
}

}  // namespace detail

inline Table read_table(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  for (auto& [line_no, line] : detail::read_lines(in)) {
    auto tokens = detail::split_csv_line(line, line_no);
    for (const auto& t : tokens) {
      if (t == kStarToken) {
        throw ValidationError("line " + std::to_string(line_no) +
                              ": input tables may not contain \"*\"");
      }
    }
    if (!rows.empty() && tokens.size() != rows.front().size()) {
      throw DimensionError("line " + std::to_string(line_no) + ": expected " +
                           std::to_string(rows.front().size()) +
                           " columns, found " + std::to_string(tokens.size()));
    }
    rows.push_back(std::move(tokens));
  }
  if (rows.empty()) throw ValidationError("table file has no rows");
  return Table::from_rows(rows);
}

inline Table read_table(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return read_table(in);
}

inline void write_table(std::ostream& out, const Table& table) {
  detail::write_cells(out, table.alphabet(), table.rows(), table.columns(),
                      [&](std::size_t i, std::size_t j) { return table.at(i, j); });
}

inline void write_table(const std::filesystem::path& path, const Table& table) {
  auto out = detail::open_output(path);
  write_table(out, table);
}

/// Reads an anonymized grid against the alphabet of `input`. Tokens unknown
/// to that alphabet become kForeign so verification can report them.
inline AnonGrid read_grid(std::istream& in, const Table& input) {
  const auto lines = detail::read_lines(in);
  if (lines.empty()) throw ValidationError("grid file has no rows");
  const std::size_t m = detail::split_csv_line(lines.front().second,
                                               lines.front().first).size();
  AnonGrid grid(input.alphabet_ptr(), lines.size(), m);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto tokens = detail::split_csv_line(lines[i].second, lines[i].first);
    if (tokens.size() != m) {
      throw DimensionError("line " + std::to_string(lines[i].first) +
                           ": expected " + std::to_string(m) +
                           " columns, found " + std::to_string(tokens.size()));
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (tokens[j] == kStarToken) {
        grid.set(i, j, kStar);
      } else {
        grid.set(i, j, input.alphabet().find(tokens[j]).value_or(kForeign));
      }
    }
  }
  return grid;
}

inline AnonGrid read_grid(const std::filesystem::path& path, const Table& input) {
  auto in = detail::open_input(path);
  return read_grid(in, input);
}

inline void write_grid(std::ostream& out, const AnonGrid& grid) {
  detail::write_cells(out, grid.alphabet(), grid.rows(), grid.columns(),
                      [&](std::size_t i, std::size_t j) { return grid.at(i, j); });
}

inline void write_grid(const std::filesystem::path& path, const AnonGrid& grid) {
  auto out = detail::open_output(path);
  write_grid(out, grid);
}

/// One nonnegative integer block id per line; line i belongs to row i.
inline Clustering read_clustering(std::istream& in, std::size_t k) {
  std::vector<std::size_t> ids;
  for (const auto& [line_no, line] : detail::read_lines(in)) {
    std::size_t id = 0;
    const auto* first = line.data();
    const auto* last = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(first, last, id);
    if (ec != std::errc() || ptr != last) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": expected a block id, found \"" + line + "\"");
    }
    ids.push_back(id);
  }
  if (ids.empty()) throw ValidationError("clustering file has no rows");
  return Clustering::from_block_ids(ids, k);
}

inline Clustering read_clustering(const std::filesystem::path& path,
                                  std::size_t k) {
  auto in = detail::open_input(path);
  return read_clustering(in, k);
}

inline void write_clustering(std::ostream& out, const Clustering& c) {
  for (std::size_t id : c.block_ids()) out << id << '\n';
}

inline void write_clustering(const std::filesystem::path& path,
                             const Clustering& c) {
  auto out = detail::open_output(path);
  write_clustering(out, c);
}

}  // namespace kanon
