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

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "kanon/error.hpp"
#include "kanon/table.hpp"

namespace kanon {

struct OracleLimits {
  std::size_t max_rows = 10;
  /// Search nodes (partial partitions) visited before giving up.
  std::uint64_t max_partitions = 200'000'000;
};

namespace detail {

// Restricted-growth enumeration of set partitions with branch and bound.
// Rows are placed in index order; row i joins an existing block or opens the
// next one. Each block tracks its closure so |S| * a(S) updates in O(m).
class PartitionSearch {
 public:
  PartitionSearch(const Table& table, std::size_t k, const OracleLimits& limits)
      : table_(table), k_(k), limits_(limits), assignment_(table.rows()) {}

  std::optional<std::vector<std::size_t>> run() {
    descend(0, 0);
    return best_;
  }

  std::size_t best_cost() const { return best_cost_; }
  std::uint64_t visited() const { return visited_; }

 private:
  struct Block {
    std::vector<SymbolId> shape;
    std::size_t size = 0;
    std::size_t bad = 0;
    std::size_t cost() const { return size * bad; }
  };

  void descend(std::size_t row, std::size_t partial_cost) {
    if (++visited_ > limits_.max_partitions) {
      throw ResourceError("bruteforce: exceeded " +
                          std::to_string(limits_.max_partitions) +
                          " partial partitions");
    }
    if (row == table_.rows()) {
      for (const auto& b : blocks_) {
        if (b.size < k_) return;
      }
      if (!best_ || partial_cost < best_cost_) {
        best_cost_ = partial_cost;
        best_ = assignment_;
      }
      return;
    }
    const auto r = table_.row(row);
    for (std::size_t b = 0; b <= blocks_.size(); ++b) {
      const bool opening = b == blocks_.size();
      Block saved;
      if (opening) {
        blocks_.push_back(Block{{r.begin(), r.end()}, 0, 0});
      } else {
        saved = blocks_[b];
      }
      Block& block = blocks_[b];
      const std::size_t before = block.cost();
      for (std::size_t j = 0; j < r.size(); ++j) {
        if (block.shape[j] != kStar && block.shape[j] != r[j]) {
          block.shape[j] = kStar;
          ++block.bad;
        }
      }
      ++block.size;
      const std::size_t cost = partial_cost - before + block.cost();
      // Block costs only grow as rows join, so `cost` is a lower bound.
      if ((!best_ || cost < best_cost_) && completable(row + 1)) {
        assignment_[row] = b;
        descend(row + 1, cost);
      }
      if (opening) {
        blocks_.pop_back();
      } else {
        blocks_[b] = std::move(saved);
      }
    }
  }

  bool completable(std::size_t next_row) const {
    std::size_t missing = 0;
    for (const auto& b : blocks_) {
      if (b.size < k_) missing += k_ - b.size;
    }
    return missing <= table_.rows() - next_row;
  }

  const Table& table_;
  std::size_t k_;
  OracleLimits limits_;
  std::vector<Block> blocks_;
  std::vector<std::size_t> assignment_;
  std::optional<std::vector<std::size_t>> best_;
  std::size_t best_cost_ = std::numeric_limits<std::size_t>::max();
  std::uint64_t visited_ = 0;
};

}  // namespace detail

/// Minimum-cost k-anonymization by exhaustive partition search. Ties go to
/// the first optimum in restricted-growth order.
inline SolverReport optimal_by_partition(const Table& table, std::size_t k,
                                         const OracleLimits& limits = {}) {
  require_feasible(table, k);
  if (table.rows() > limits.max_rows) {
    throw ResourceError("bruteforce: n=" + std::to_string(table.rows()) +
                        " exceeds the row cap of " +
                        std::to_string(limits.max_rows));
  }
  detail::PartitionSearch search(table, k, limits);
  auto ids = search.run();
  if (!ids) throw InternalError("bruteforce: no feasible partition with n >= k");
  auto report = make_report(table, Clustering::from_block_ids(*ids, k),
                            "bruteforce");
  if (report.cost != search.best_cost()) {
    throw InternalError("bruteforce: incremental cost disagrees with recount");
  }
  report.diagnostics.emplace_back("nodes", search.visited());
  return report;
}

}  // namespace kanon
