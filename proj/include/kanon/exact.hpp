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

// Exact k-anonymization for few columns and a small alphabet.
//
// A solution attaches every row to an anonymization pattern it matches; a
// pattern is open when at least k rows are attached to it. The solver guesses
// the set of open patterns and, for each guess, solves the attachment problem
// exactly as a transportation problem:
//
//   min  sum Cost(p) * x[p][t]
//   s.t. sum_t x[p][t] >= k      for every open p
//        sum_p x[p][t]  = s(t)   for every distinct row t
//        x[p][t] >= 0 integral, only for t ~ p
//
// The constraint matrix is that of a bipartite network, so a min-cost flow
// returns an integral optimum directly.
//
// Only patterns that are starrings of rows present in the table and match at
// least k rows are candidates. Any block of a clustering anonymizes to its
// closure, which is such a starring, so the restriction loses nothing. Since
// open patterns take disjoint groups of >= k rows, at most floor(n / k) of
// them can be open at once, which bounds the subset sizes enumerated.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "kanon/error.hpp"
#include "kanon/min_cost_flow.hpp"
#include "kanon/table.hpp"

namespace kanon {

/// Distinct rows of a table with their multiplicities s(t).
struct RowCountMap {
  std::vector<RowPattern> patterns;  ///< first-appearance order
  std::vector<std::size_t> counts;
  std::vector<std::vector<std::size_t>> members;  ///< row indices, ascending

  std::size_t size() const noexcept { return patterns.size(); }
  std::size_t total() const {
    std::size_t n = 0;
    for (std::size_t c : counts) n += c;
    return n;
  }
};

/// Candidate open patterns, sorted by (cost, entries).
struct CandidateSet {
  std::vector<AnonPattern> patterns;
  std::vector<std::size_t> match_counts;  ///< sum of s(t) over t ~ p

  std::size_t size() const noexcept { return patterns.size(); }
};

/// x[p][t]: copies of distinct row t attached to open pattern p.
struct SubsetAssignment {
  std::vector<std::vector<std::size_t>> flows;
  std::size_t cost = 0;
};

struct ExactOptions {
  std::uint64_t subset_budget = std::uint64_t{1} << 20;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

inline RowCountMap row_counts(const Table& table) {
  RowCountMap out;
  std::map<RowPattern, std::size_t> index;
  for (std::size_t i = 0; i < table.rows(); ++i) {
    auto r = table.row(i);
    RowPattern key(r.begin(), r.end());
    auto [it, inserted] = index.try_emplace(key, out.patterns.size());
    if (inserted) {
      out.patterns.push_back(std::move(key));
      out.counts.push_back(0);
      out.members.emplace_back();
    }
    ++out.counts[it->second];
    out.members[it->second].push_back(i);
  }
  return out;
}

/// Widest table whose row starrings the solver will enumerate.
inline constexpr std::size_t kMaxExactColumns = 20;

inline CandidateSet enumerate_candidates(const RowCountMap& counts,
                                         std::size_t k) {
  if (k < 1) throw ArgumentError("k must be at least 1");
  CandidateSet out;
  if (counts.size() == 0) return out;
  const std::size_t m = counts.patterns.front().size();
  if (m > kMaxExactColumns) {
    throw ResourceError("exact: m=" + std::to_string(m) +
                        " columns exceeds the supported maximum of " +
                        std::to_string(kMaxExactColumns));
  }
  std::map<AnonPattern, std::size_t> seen;
  for (const auto& t : counts.patterns) {
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
      std::vector<SymbolId> entries = t;
      for (std::size_t j = 0; j < m; ++j) {
        if (mask & (std::uint32_t{1} << j)) entries[j] = kStar;
      }
      AnonPattern p(std::move(entries));
      if (seen.contains(p)) continue;
      std::size_t hits = 0;
      for (std::size_t u = 0; u < counts.size(); ++u) {
        if (matches(counts.patterns[u], p)) hits += counts.counts[u];
      }
      seen.emplace(std::move(p), hits);
    }
  }
  std::vector<std::pair<AnonPattern, std::size_t>> kept;
  for (auto& [p, hits] : seen) {
    if (hits >= k) kept.emplace_back(p, hits);
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    const auto ca = a.first.cost();
    const auto cb = b.first.cost();
    if (ca != cb) return ca < cb;
    return a.first < b.first;
  });
  for (auto& [p, hits] : kept) {
    out.patterns.push_back(std::move(p));
    out.match_counts.push_back(hits);
  }
  return out;
}

/// Optimal attachment of all rows to exactly the patterns in `open`, each
/// receiving at least k rows. nullopt when no such attachment exists.
inline std::optional<SubsetAssignment> solve_subset(
    std::span<const AnonPattern> open, const RowCountMap& counts,
    std::size_t k) {
  if (open.empty()) throw ArgumentError("solve_subset needs an open pattern");
  const std::size_t rows = counts.size();
  const std::size_t pats = open.size();
  const auto n = static_cast<MinCostCirculation::Flow>(counts.total());
  const auto kk = static_cast<MinCostCirculation::Flow>(k);
  if (kk * static_cast<MinCostCirculation::Flow>(pats) > n) return std::nullopt;

  // Nodes: rows [0, rows), patterns [rows, rows + pats), then source, sink.
  const std::size_t source = rows + pats;
  const std::size_t sink = source + 1;
  MinCostCirculation net(sink + 1);
  for (std::size_t t = 0; t < rows; ++t) {
    const auto s = static_cast<MinCostCirculation::Flow>(counts.counts[t]);
    net.add_arc(source, t, s, s, 0);
  }
  std::vector<std::vector<std::optional<std::size_t>>> handle(
      pats, std::vector<std::optional<std::size_t>>(rows));
  for (std::size_t p = 0; p < pats; ++p) {
    const auto cost = static_cast<MinCostCirculation::Cost>(open[p].cost());
    for (std::size_t t = 0; t < rows; ++t) {
      if (matches(counts.patterns[t], open[p])) {
        handle[p][t] = net.add_arc(t, rows + p, 0, n, cost);
      }
    }
    net.add_arc(rows + p, sink, kk, n, 0);
  }
  net.add_arc(sink, source, 0, n, 0);
  const auto total = net.solve();
  if (!total) return std::nullopt;

  SubsetAssignment out;
  out.flows.assign(pats, std::vector<std::size_t>(rows, 0));
  out.cost = static_cast<std::size_t>(*total);
  std::vector<std::size_t> assigned(rows, 0);
  std::size_t recount = 0;
  for (std::size_t p = 0; p < pats; ++p) {
    std::size_t load = 0;
    for (std::size_t t = 0; t < rows; ++t) {
      if (!handle[p][t]) continue;
      const auto f = net.flow(*handle[p][t]);
      if (f < 0) throw InternalError("solve_subset: negative flow");
      out.flows[p][t] = static_cast<std::size_t>(f);
      load += out.flows[p][t];
      assigned[t] += out.flows[p][t];
      recount += out.flows[p][t] * open[p].cost();
    }
    if (load < k) throw InternalError("solve_subset: open pattern below k");
  }
  for (std::size_t t = 0; t < rows; ++t) {
    if (assigned[t] != counts.counts[t]) {
      throw InternalError("solve_subset: row copies not fully assigned");
    }
  }
  if (recount != out.cost) throw InternalError("solve_subset: cost mismatch");
  return out;
}

namespace detail {

inline std::uint64_t saturating_binomial_sum(std::size_t n, std::size_t max_size,
                                             std::uint64_t cap) {
  // sum_{s=1}^{max_size} C(n, s), clamped to cap + 1.
  std::uint64_t total = 0;
  long double term = 1;
  for (std::size_t s = 1; s <= std::min(n, max_size); ++s) {
    term = term * static_cast<long double>(n - s + 1) / static_cast<long double>(s);
    total += term > static_cast<long double>(cap) ? cap + 1
                                                  : static_cast<std::uint64_t>(term + 0.5L);
    if (total > cap) return cap + 1;
  }
  return total;
}

struct SubsetWinner {
  std::size_t cost = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> subset;  ///< candidate indices, ascending
  SubsetAssignment assignment;

  bool found() const { return !subset.empty(); }
  // Enumeration order: size first, then lexicographic.
  bool beats(const SubsetWinner& other) const {
    if (!other.found()) return found();
    if (!found()) return false;
    return std::forward_as_tuple(cost, subset.size(), subset) <
           std::forward_as_tuple(other.cost, other.subset.size(), other.subset);
  }
};

}  // namespace detail

/// Minimum-cost k-anonymization by open-pattern enumeration.
inline SolverReport solve_exact(const Table& table, std::size_t k,
                                const ExactOptions& options = {}) {
  require_feasible(table, k);
  const RowCountMap counts = row_counts(table);
  if (k == 1) {
    // Grouping identical rows is free and already 1-anonymous.
    auto report = make_report(table, Clustering(counts.members, 1), "exact");
    for (const char* key : {"candidates", "subsets", "subsets_solved", "subsets_feasible"}) {
      report.diagnostics.emplace_back(key, 0);
    }
    return report;
  }
  const CandidateSet candidates = enumerate_candidates(counts, k);
  const std::size_t max_open = table.rows() / k;
  const std::uint64_t subsets = detail::saturating_binomial_sum(
      candidates.size(), max_open, options.subset_budget);
  if (subsets > options.subset_budget) {
    throw ResourceError("exact: " + std::to_string(candidates.size()) +
                        " candidate patterns exceed the subset budget of " +
                        std::to_string(options.subset_budget));
  }

  // Coverage masks for the cheap "some row matches nothing open" skip.
  const std::size_t words = (counts.size() + 63) / 64;
  std::vector<std::vector<std::uint64_t>> covers(
      candidates.size(), std::vector<std::uint64_t>(words, 0));
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    for (std::size_t t = 0; t < counts.size(); ++t) {
      if (matches(counts.patterns[t], candidates.patterns[c])) {
        covers[c][t / 64] |= std::uint64_t{1} << (t % 64);
      }
    }
  }
  std::vector<std::uint64_t> full(words, ~std::uint64_t{0});
  if (counts.size() % 64) full.back() = (std::uint64_t{1} << (counts.size() % 64)) - 1;

  // Work items: every (subset size, first member) pair, in enumeration order.
  std::vector<std::pair<std::size_t, std::size_t>> items;
  for (std::size_t s = 1; s <= std::min(max_open, candidates.size()); ++s) {
    for (std::size_t first = 0; first + s <= candidates.size(); ++first) {
      items.emplace_back(s, first);
    }
  }

  std::atomic<std::size_t> next{0};
  std::atomic<std::uint64_t> solved{0};
  std::atomic<std::uint64_t> feasible{0};
  std::mutex merge_mutex;
  detail::SubsetWinner best;
  std::exception_ptr failure;

  auto worker = [&] {
    detail::SubsetWinner local;
    std::vector<std::size_t> combo;
    std::vector<AnonPattern> open;
    std::vector<std::vector<std::uint64_t>> cover_stack;
    try {
      for (std::size_t item = next++; item < items.size(); item = next++) {
        const auto [size, first] = items[item];
        combo.assign(1, first);
        for (std::size_t i = 1; i < size; ++i) combo.push_back(first + i);
        while (true) {
          std::vector<std::uint64_t> covered(words, 0);
          for (std::size_t c : combo) {
            for (std::size_t w = 0; w < words; ++w) covered[w] |= covers[c][w];
          }
          if (covered == full) {
            open.clear();
            for (std::size_t c : combo) open.push_back(candidates.patterns[c]);
            ++solved;
            if (auto a = solve_subset(open, counts, k)) {
              ++feasible;
              detail::SubsetWinner here{a->cost, combo, std::move(*a)};
              if (here.beats(local)) local = std::move(here);
            }
          }
          // Advance to the next combination that keeps combo[0] == first.
          std::size_t i = size;
          while (i > 1 && combo[i - 1] == candidates.size() - size + i - 1) --i;
          if (i <= 1) break;
          ++combo[i - 1];
          for (std::size_t j = i; j < size; ++j) combo[j] = combo[j - 1] + 1;
        }
      }
    } catch (...) {
      std::lock_guard lock(merge_mutex);
      if (!failure) failure = std::current_exception();
      next = items.size();
      return;
    }
    std::lock_guard lock(merge_mutex);
    if (local.beats(best)) best = std::move(local);
  };

  unsigned threads = options.threads ? options.threads
                                     : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(1, items.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  if (!best.found()) {
    throw InternalError("exact: no feasible open-pattern set although n >= k");
  }

  // Expand x[p][t] into concrete rows, taking each distinct row's copies in
  // ascending index order.
  std::vector<std::size_t> cursor(counts.size(), 0);
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t p = 0; p < best.subset.size(); ++p) {
    std::vector<std::size_t> block;
    for (std::size_t t = 0; t < counts.size(); ++t) {
      for (std::size_t c = 0; c < best.assignment.flows[p][t]; ++c) {
        block.push_back(counts.members[t][cursor[t]++]);
      }
    }
    const AnonPattern& shape = candidates.patterns[best.subset[p]];
    if (closure(table, block) != shape) {
      throw InternalError("exact: optimal open pattern is not its block closure");
    }
    blocks.push_back(std::move(block));
  }
  auto report = make_report(table, Clustering(std::move(blocks), k), "exact");
  if (report.cost != best.cost) {
    throw InternalError("exact: assignment objective disagrees with star count");
  }
  report.diagnostics.emplace_back("candidates", candidates.size());
  report.diagnostics.emplace_back("subsets", subsets);
  report.diagnostics.emplace_back("subsets_solved", solved.load());
  report.diagnostics.emplace_back("subsets_feasible", feasible.load());
  return report;
}

}  // namespace kanon
