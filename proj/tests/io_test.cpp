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

#include <random>
#include <sstream>

#include "kanon/io.hpp"
#include "test_support.hpp"

namespace kanon {
namespace {

TEST(ReadTableTest, ParsesPlainCsv) {
  std::istringstream in("x,a,b\r\nz,c,d\n\ny,a,b\nz,c,e\n");
  const Table t = read_table(in);
  EXPECT_EQ(t.rows(), 4u);
  EXPECT_EQ(t.columns(), 3u);
  EXPECT_EQ(t, testing::sample_table());
}

TEST(ReadTableTest, RejectsMalformedInput) {
  std::istringstream star("a,*\n");
  EXPECT_THROW(read_table(star), ValidationError);
  std::istringstream ragged("a,b\nc\n");
  EXPECT_THROW(read_table(ragged), DimensionError);
  std::istringstream empty_token("a,,b\n");
  EXPECT_THROW(read_table(empty_token), ValidationError);
  std::istringstream nothing("\n\n");
  EXPECT_THROW(read_table(nothing), ValidationError);
}

TEST(ReadGridTest, MapsStarsAndForeignTokens) {
  const Table t = testing::sample_table();
  std::istringstream in("*,a,b\nz,c,*\n*,a,q\nz,c,*\n");
  const AnonGrid g = read_grid(in, t);
  EXPECT_EQ(g.at(0, 0), kStar);
  EXPECT_EQ(g.at(2, 2), kForeign);
  EXPECT_EQ(g.at(1, 1), t.at(1, 1));
}

TEST(ClusteringFileTest, ReadsBlockIds) {
  std::istringstream in("4\n9\n4\n9\n");
  const Clustering c = read_clustering(in, 2);
  EXPECT_EQ(c, Clustering({{0, 2}, {1, 3}}, 2));
  std::istringstream bad("0\nx\n");
  EXPECT_THROW(read_clustering(bad, 1), ValidationError);
  std::istringstream small("0\n1\n");
  EXPECT_THROW(read_clustering(small, 2), ValidationError);
}

// Writing then reading reproduces tables, grids and clusterings.
TEST(IoProperties, RoundTrip) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng() % 7;
    const Table t = Table::from_rows(testing::random_rows(rng, n, 1 + rng() % 4, 3));
    const Clustering c(testing::random_blocks(rng, n, 2), 2);
    const AnonGrid g = apply_clustering(t, c);

    std::stringstream table_text, grid_text, ids_text;
    write_table(table_text, t);
    write_grid(grid_text, g);
    write_clustering(ids_text, c);
    const Table t2 = read_table(table_text);
    ASSERT_EQ(t2, t);
    ASSERT_EQ(testing::to_strings(read_grid(grid_text, t2)), testing::to_strings(g));
    ASSERT_EQ(read_clustering(ids_text, 2), c);
  }
}

}  // namespace
}  // namespace kanon
