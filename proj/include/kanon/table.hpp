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

// Core data model for suppression-based k-anonymization: tables of interned
// symbols, anonymization patterns, clusterings of rows, the two equivalent
// cost views (per-block bad columns vs. counted stars), and verification of
// an anonymized grid against its source table.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kanon/error.hpp"

namespace kanon {

using SymbolId = std::uint32_t;

/// Suppression mark. Never interned; only appears in patterns and grids.
inline constexpr SymbolId kStar = std::numeric_limits<SymbolId>::max();
/// A token read from an anonymized grid that is absent from the source
/// alphabet. Always a tamper.
inline constexpr SymbolId kForeign = kStar - 1;

inline constexpr std::string_view kStarToken = "*";

/// Interned string tokens. Ids are dense and assigned in first-seen order.
class Alphabet {
 public:
  SymbolId intern(std::string_view token) {
    if (token == kStarToken) {
      throw ValidationError("the token \"*\" is reserved for suppression");
    }
    if (auto it = index_.find(std::string(token)); it != index_.end()) {
      return it->second;
    }
    if (tokens_.size() >= kForeign) {
      throw ResourceError("alphabet exhausted the symbol id space");
    }
    const auto id = static_cast<SymbolId>(tokens_.size());
    tokens_.emplace_back(token);
    index_.emplace(tokens_.back(), id);
    return id;
  }

  std::optional<SymbolId> find(std::string_view token) const {
    if (auto it = index_.find(std::string(token)); it != index_.end()) {
      return it->second;
    }
    return std::nullopt;
  }

  /// Printable form of a cell; handles the star and foreign sentinels.
  std::string_view token(SymbolId id) const {
    if (id == kStar) return kStarToken;
    if (id == kForeign) return "?";
    return tokens_.at(id);
  }

  std::size_t size() const noexcept { return tokens_.size(); }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, SymbolId> index_;
};

/// A concrete row: m symbols, no suppression marks.
using RowPattern = std::vector<SymbolId>;
using RowView = std::span<const SymbolId>;

/// An m-vector over symbols and kStar. Its cost is the number of stars.
class AnonPattern {
 public:
  AnonPattern() = default;
  explicit AnonPattern(std::vector<SymbolId> entries)
      : entries_(std::move(entries)) {}

  const std::vector<SymbolId>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  SymbolId operator[](std::size_t j) const { return entries_[j]; }

  std::size_t cost() const {
    return static_cast<std::size_t>(
        std::count(entries_.begin(), entries_.end(), kStar));
  }

  static AnonPattern all_stars(std::size_t m) {
    return AnonPattern(std::vector<SymbolId>(m, kStar));
  }

  friend auto operator<=>(const AnonPattern&, const AnonPattern&) = default;

 private:
  std::vector<SymbolId> entries_;
};

/// An n x m input table. Immutable once built.
class Table {
 public:
  Table(std::shared_ptr<const Alphabet> alphabet, std::size_t columns,
        std::vector<SymbolId> cells)
      : alphabet_(std::move(alphabet)), m_(columns), cells_(std::move(cells)) {
    if (!alphabet_) throw ArgumentError("table requires an alphabet");
    if (m_ == 0) throw ValidationError("table must have at least one column");
    if (cells_.empty()) throw ValidationError("table must have at least one row");
    if (cells_.size() % m_ != 0) {
      throw DimensionError("cell count is not a multiple of the column count");
    }
    for (SymbolId id : cells_) {
      if (id >= alphabet_->size()) {
        throw ValidationError("table cell refers to a symbol outside its alphabet");
      }
    }
    n_ = cells_.size() / m_;
  }

  /// Builds a table from string tokens; every row must have the same width.
  static Table from_rows(const std::vector<std::vector<std::string>>& rows) {
    if (rows.empty()) throw ValidationError("table must have at least one row");
    auto alphabet = std::make_shared<Alphabet>();
    const std::size_t m = rows.front().size();
    std::vector<SymbolId> cells;
    cells.reserve(rows.size() * m);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m) {
        std::ostringstream msg;
        msg << "row " << i << " has " << rows[i].size() << " entries, expected "
            << m;
        throw DimensionError(msg.str());
      }
      for (const auto& token : rows[i]) cells.push_back(alphabet->intern(token));
    }
    return Table(std::move(alphabet), m, std::move(cells));
  }

  std::size_t rows() const noexcept { return n_; }
  std::size_t columns() const noexcept { return m_; }

  RowView row(std::size_t i) const {
    return RowView(cells_).subspan(i * m_, m_);
  }
  SymbolId at(std::size_t i, std::size_t j) const { return cells_[i * m_ + j]; }

  const Alphabet& alphabet() const noexcept { return *alphabet_; }
  const std::shared_ptr<const Alphabet>& alphabet_ptr() const noexcept {
    return alphabet_;
  }

  /// Number of distinct symbols actually used.
  std::size_t alphabet_size() const { return alphabet_->size(); }

  friend bool operator==(const Table& a, const Table& b) {
    if (a.n_ != b.n_ || a.m_ != b.m_) return false;
    for (std::size_t c = 0; c < a.cells_.size(); ++c) {
      if (a.alphabet_->token(a.cells_[c]) != b.alphabet_->token(b.cells_[c])) {
        return false;
      }
    }
    return true;
  }

 private:
  std::shared_ptr<const Alphabet> alphabet_;
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<SymbolId> cells_;
};

/// An n x m grid over the table alphabet plus kStar (and kForeign when read
/// from an untrusted file).
class AnonGrid {
 public:
  AnonGrid(std::shared_ptr<const Alphabet> alphabet, std::size_t rows,
           std::size_t columns)
      : alphabet_(std::move(alphabet)),
        n_(rows),
        m_(columns),
        cells_(rows * columns, kStar) {}

  std::size_t rows() const noexcept { return n_; }
  std::size_t columns() const noexcept { return m_; }

  RowView row(std::size_t i) const {
    return RowView(cells_).subspan(i * m_, m_);
  }
  SymbolId at(std::size_t i, std::size_t j) const { return cells_[i * m_ + j]; }
  void set(std::size_t i, std::size_t j, SymbolId v) { cells_[i * m_ + j] = v; }

  std::size_t star_count() const {
    return static_cast<std::size_t>(
        std::count(cells_.begin(), cells_.end(), kStar));
  }

  const Alphabet& alphabet() const noexcept { return *alphabet_; }

  friend bool operator==(const AnonGrid& a, const AnonGrid& b) {
    return a.n_ == b.n_ && a.m_ == b.m_ && a.cells_ == b.cells_;
  }

 private:
  std::shared_ptr<const Alphabet> alphabet_;
  std::size_t n_;
  std::size_t m_;
  std::vector<SymbolId> cells_;
};

/// Partition of row indices {0..n-1} into blocks of size >= k.
///
/// Blocks are stored canonically: indices ascending within a block, blocks
/// ordered by their smallest index. Block ids are positions in that order.
class Clustering {
 public:
  Clustering(std::vector<std::vector<std::size_t>> blocks, std::size_t k)
      : blocks_(std::move(blocks)), k_(k) {
    if (k_ < 1) throw ArgumentError("k must be at least 1");
    std::size_t total = 0;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      if (blocks_[b].empty()) {
        throw ValidationError("block " + std::to_string(b) + " is empty");
      }
      total += blocks_[b].size();
    }
    std::vector<std::optional<std::size_t>> owner(total);
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      for (std::size_t row : blocks_[b]) {
        if (row >= total) {
          throw ValidationError("row " + std::to_string(row) +
                                " is outside 0.." + std::to_string(total - 1) +
                                "; blocks do not cover a contiguous index set");
        }
        if (owner[row]) {
          throw ValidationError("row " + std::to_string(row) +
                                " appears in blocks " +
                                std::to_string(*owner[row]) + " and " +
                                std::to_string(b));
        }
        owner[row] = b;
      }
    }
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      if (blocks_[b].size() < k_) {
        throw ValidationError("block " + std::to_string(b) + " has size " +
                              std::to_string(blocks_[b].size()) + " < k=" +
                              std::to_string(k_));
      }
    }
    n_ = total;
    for (auto& block : blocks_) std::sort(block.begin(), block.end());
    std::sort(blocks_.begin(), blocks_.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
  }

  /// Row i goes to the block labelled ids[i]. Labels need not be dense.
  static Clustering from_block_ids(std::span<const std::size_t> ids,
                                   std::size_t k) {
    std::map<std::size_t, std::vector<std::size_t>> by_label;
    for (std::size_t i = 0; i < ids.size(); ++i) by_label[ids[i]].push_back(i);
    std::vector<std::vector<std::size_t>> blocks;
    blocks.reserve(by_label.size());
    for (auto& [label, rows] : by_label) blocks.push_back(std::move(rows));
    return Clustering(std::move(blocks), k);
  }

  const std::vector<std::vector<std::size_t>>& blocks() const noexcept {
    return blocks_;
  }
  std::size_t k() const noexcept { return k_; }
  std::size_t rows() const noexcept { return n_; }

  std::vector<std::size_t> block_ids() const {
    std::vector<std::size_t> ids(n_);
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      for (std::size_t row : blocks_[b]) ids[row] = b;
    }
    return ids;
  }

  friend bool operator==(const Clustering&, const Clustering&) = default;

 private:
  std::vector<std::vector<std::size_t>> blocks_;
  std::size_t k_;
  std::size_t n_ = 0;
};

/// Outcome of any solver. `cost` is the number of stars in `anonymized`.
struct SolverReport {
  std::size_t cost = 0;
  AnonGrid anonymized;
  Clustering clustering;
  std::string solver;
  std::vector<std::pair<std::string, std::uint64_t>> diagnostics;
};

// ---------------------------------------------------------------------------
// Operations

/// t ~ p: p and t agree on every column p does not suppress.
inline bool matches(RowView t, const AnonPattern& p) {
  if (t.size() != p.size()) {
    throw DimensionError("row has " + std::to_string(t.size()) +
                         " columns but pattern has " + std::to_string(p.size()));
  }
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (p[j] != kStar && p[j] != t[j]) return false;
  }
  return true;
}

namespace detail {

inline void check_block(const Table& table, std::span<const std::size_t> block) {
  if (block.empty()) throw ArgumentError("block must be nonempty");
  for (std::size_t i : block) {
    if (i >= table.rows()) {
      throw ArgumentError("row index " + std::to_string(i) +
                          " out of range for a table of " +
                          std::to_string(table.rows()) + " rows");
    }
  }
}

inline void check_clustering(const Table& table, const Clustering& c) {
  if (c.rows() != table.rows()) {
    throw ValidationError("clustering covers " + std::to_string(c.rows()) +
                          " rows but the table has " +
                          std::to_string(table.rows()));
  }
}

}  // namespace detail

/// Column-wise agreement of a nonempty set of rows: the common symbol where
/// they all agree, kStar elsewhere.
inline AnonPattern closure(std::span<const RowPattern> rows) {
  if (rows.empty()) throw ArgumentError("closure of an empty row set");
  std::vector<SymbolId> out = rows.front();
  for (const auto& r : rows.subspan(1)) {
    if (r.size() != out.size()) {
      throw DimensionError("rows of different widths in closure");
    }
    for (std::size_t j = 0; j < out.size(); ++j) {
      if (out[j] != r[j]) out[j] = kStar;
    }
  }
  return AnonPattern(std::move(out));
}

inline AnonPattern closure(const Table& table,
                           std::span<const std::size_t> block) {
  detail::check_block(table, block);
  auto first = table.row(block.front());
  std::vector<SymbolId> out(first.begin(), first.end());
  for (std::size_t i : block.subspan(1)) {
    auto r = table.row(i);
    for (std::size_t j = 0; j < out.size(); ++j) {
      if (out[j] != r[j]) out[j] = kStar;
    }
  }
  return AnonPattern(std::move(out));
}

/// a(S): columns on which the rows of `block` are not all identical.
inline std::size_t bad_column_count(const Table& table,
                                    std::span<const std::size_t> block) {
  return closure(table, block).cost();
}

/// Sum over blocks of |S| * a(S).
inline std::size_t clustering_cost(const Table& table, const Clustering& c) {
  detail::check_clustering(table, c);
  std::size_t total = 0;
  for (const auto& block : c.blocks()) {
    total += block.size() * bad_column_count(table, block);
  }
  return total;
}

/// Suppresses every bad column of every block; row order is preserved.
inline AnonGrid apply_clustering(const Table& table, const Clustering& c) {
  detail::check_clustering(table, c);
  AnonGrid grid(table.alphabet_ptr(), table.rows(), table.columns());
  for (const auto& block : c.blocks()) {
    const AnonPattern shape = closure(table, block);
    for (std::size_t i : block) {
      for (std::size_t j = 0; j < table.columns(); ++j) grid.set(i, j, shape[j]);
    }
  }
  return grid;
}

/// Human-readable "<a,*,b>" form of a grid row or pattern.
inline std::string format_row(const Alphabet& alphabet,
                              std::span<const SymbolId> cells) {
  std::string out = "<";
  for (std::size_t j = 0; j < cells.size(); ++j) {
    if (j) out += ',';
    out += alphabet.token(cells[j]);
  }
  out += '>';
  return out;
}

/// Checks that `output` is a k-anonymous suppression of `input` and returns
/// its star count. Rows are grouped by exact equality of their output form.
inline std::size_t verify_solution(const Table& input, const AnonGrid& output,
                                   std::size_t k) {
  if (k < 1) throw ArgumentError("k must be at least 1");
  if (input.rows() != output.rows() || input.columns() != output.columns()) {
    std::ostringstream msg;
    msg << "output is " << output.rows() << "x" << output.columns()
        << " but input is " << input.rows() << "x" << input.columns();
    throw DimensionError(msg.str());
  }
  for (std::size_t i = 0; i < input.rows(); ++i) {
    for (std::size_t j = 0; j < input.columns(); ++j) {
      const SymbolId out = output.at(i, j);
      if (out != kStar && out != input.at(i, j)) {
        std::ostringstream msg;
        msg << "tampered cell at row " << i << ", column " << j
            << ": input has \"" << input.alphabet().token(input.at(i, j))
            << "\" but output is neither that nor \"*\"";
        throw TamperError(i, j, msg.str());
      }
    }
  }
  std::map<std::vector<SymbolId>, std::size_t> groups;
  for (std::size_t i = 0; i < output.rows(); ++i) {
    auto r = output.row(i);
    ++groups[std::vector<SymbolId>(r.begin(), r.end())];
  }
  // Report the group of the earliest row that is under-populated.
  for (std::size_t i = 0; i < output.rows(); ++i) {
    auto r = output.row(i);
    const std::vector<SymbolId> pattern(r.begin(), r.end());
    const std::size_t size = groups.at(pattern);
    if (size < k) {
      const std::string shown = format_row(output.alphabet(), pattern);
      throw AnonymityViolation(shown, size,
                               "anonymity violation: group " + shown +
                                   " has " + std::to_string(size) +
                                   " rows, fewer than k=" + std::to_string(k));
    }
  }
  return output.star_count();
}

/// Builds a report from a clustering, checking both cost views agree.
inline SolverReport make_report(const Table& table, Clustering clustering,
                                std::string solver) {
  AnonGrid grid = apply_clustering(table, clustering);
  const std::size_t cost = clustering_cost(table, clustering);
  if (grid.star_count() != cost) {
    throw InternalError("star count and clustering cost disagree");
  }
  return SolverReport{cost, std::move(grid), std::move(clustering),
                      std::move(solver), {}};
}

inline void require_feasible(const Table& table, std::size_t k) {
  if (k < 1) throw ArgumentError("k must be at least 1");
  if (k > table.rows()) {
    throw InfeasibleError("infeasible: k exceeds row count (k=" +
                          std::to_string(k) + ", n=" +
                          std::to_string(table.rows()) + ")");
  }
}

}  // namespace kanon
