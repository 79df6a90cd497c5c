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
#include <random>
#include <string>
#include <vector>

#include "kanon/error.hpp"
#include "kanon/table.hpp"

namespace kanon {

/// Name of the i-th generated symbol: "a".."z", then "a26", "a27", ...
inline std::string generated_symbol(std::size_t i) {
  if (i < 26) return std::string(1, static_cast<char>('a' + i));
  return "a" + std::to_string(i);
}

/// Random n x m table with cells drawn uniformly from `sigma` symbols.
/// Deterministic for a given seed.
inline Table random_table(std::uint64_t seed, std::size_t n, std::size_t m,
                          std::size_t sigma) {
  if (n < 1 || m < 1 || sigma < 1) {
    throw ArgumentError("random_table needs n, m, sigma >= 1");
  }
  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::string>> rows(n, std::vector<std::string>(m));
  for (auto& row : rows) {
    for (auto& cell : row) {
      // Modulo keeps the stream identical across standard libraries.
      cell = generated_symbol(static_cast<std::size_t>(rng() % sigma));
    }
  }
  return Table::from_rows(rows);
}

}  // namespace kanon
