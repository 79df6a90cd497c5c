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

// Baseline solvers. Both always return feasible solutions when n >= k.

#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

#include "kanon/error.hpp"
#include "kanon/table.hpp"

namespace kanon {

/// One block holding every row; globally constant columns survive.
inline SolverReport suppress_all(const Table& table, std::size_t k) {
  require_feasible(table, k);
  std::vector<std::size_t> all(table.rows());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return make_report(table, Clustering({std::move(all)}, k), "suppress-all");
}

/// Bottom-up merging from singletons. Each step merges the pair of blocks,
/// at least one of them smaller than k, whose union raises sum |S| * a(S) the
/// least; ties go to the lowest (block id, block id). Block ids are positions
/// in the current list, which stays ordered by smallest row index.
inline SolverReport greedy_agglomerative(const Table& table, std::size_t k) {
  require_feasible(table, k);
  struct Block {
    std::vector<std::size_t> rows;
    std::vector<SymbolId> shape;
    std::size_t bad = 0;
    std::size_t cost() const { return rows.size() * bad; }
  };
  const std::size_t m = table.columns();
  std::vector<Block> blocks;
  blocks.reserve(table.rows());
  for (std::size_t i = 0; i < table.rows(); ++i) {
    auto r = table.row(i);
    blocks.push_back(Block{{i}, {r.begin(), r.end()}, 0});
  }
  auto merged_bad = [m](const Block& a, const Block& b) {
    std::size_t bad = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if (a.shape[j] == kStar || a.shape[j] != b.shape[j]) ++bad;
    }
    return bad;
  };
  auto undersized = [k](const Block& b) { return b.rows.size() < k; };

  while (std::any_of(blocks.begin(), blocks.end(), undersized)) {
    std::size_t best_i = 0, best_j = 0;
    std::size_t best_delta = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      for (std::size_t j = i + 1; j < blocks.size(); ++j) {
        if (!undersized(blocks[i]) && !undersized(blocks[j])) continue;
        const std::size_t size = blocks[i].rows.size() + blocks[j].rows.size();
        const std::size_t delta = size * merged_bad(blocks[i], blocks[j]) -
                                  blocks[i].cost() - blocks[j].cost();
        if (delta < best_delta) {
          best_delta = delta;
          best_i = i;
          best_j = j;
        }
      }
    }
    Block& into = blocks[best_i];
    Block& from = blocks[best_j];
    for (std::size_t j = 0; j < m; ++j) {
      if (into.shape[j] != from.shape[j]) into.shape[j] = kStar;
    }
    into.bad = merged_bad(into, into);
    into.rows.insert(into.rows.end(), from.rows.begin(), from.rows.end());
    blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(best_j));
  }

  std::vector<std::vector<std::size_t>> out;
  out.reserve(blocks.size());
  for (auto& b : blocks) out.push_back(std::move(b.rows));
  return make_report(table, Clustering(std::move(out), k), "greedy");
}

}  // namespace kanon
