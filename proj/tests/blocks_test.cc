// Copyright 2026 The densevote Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "densevote/blocks.h"

#include <algorithm>
#include <random>
#include <set>

#include "densevote/errors.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace densevote {
namespace {

using ::testing::DoubleNear;
using ::testing::ElementsAre;
using ::testing::IsEmpty;
using testing::RandomBipartite;

// Two disjoint K_{4,4} on users 0..7 / merchants 0..7, plus `background`
// random edges between 20 further users and 20 further merchants.
BipartiteGraph TwoK44(std::uint64_t seed, std::size_t background = 20) {
  std::vector<Edge> edges;
  for (NodeIndex b = 0; b < 2; ++b) {
    for (NodeIndex u = 0; u < 4; ++u) {
      for (NodeIndex m = 0; m < 4; ++m) edges.push_back({4 * b + u, 4 * b + m});
    }
  }
  std::mt19937_64 rng(seed);
  std::set<std::pair<NodeIndex, NodeIndex>> seen;
  while (seen.size() < background) {
    const NodeIndex u = 8 + static_cast<NodeIndex>(rng() % 20);
    const NodeIndex m = 8 + static_cast<NodeIndex>(rng() % 20);
    if (seen.insert({u, m}).second) edges.push_back({u, m});
  }
  return BipartiteGraph::FromEdges(28, 28, edges);
}

TEST(SecondDifferenceTest, Examples) {
  EXPECT_THAT(SecondDifference(std::vector{10.0, 9.0, 3.0, 2.9, 2.8}),
              ElementsAre(DoubleNear(-5.0, 1e-12), DoubleNear(5.9, 1e-12),
                          DoubleNear(0.0, 1e-12)));
  EXPECT_THAT(SecondDifference(std::vector{3.0, 2.0, 1.0}), ElementsAre(0.0));
  EXPECT_THAT(SecondDifference(std::vector{1.0, 1.0, 1.0, 1.0}),
              ElementsAre(0.0, 0.0));
  EXPECT_THROW(SecondDifference(std::vector{1.0, 2.0}), ContractError);
}

TEST(TruncatingPointTest, Examples) {
  EXPECT_EQ(TruncatingPoint(std::vector{10.0, 9.0, 3.0, 2.9, 2.8}), 2);
  EXPECT_EQ(TruncatingPoint(std::vector{5.0, 4.0}), 2);
  EXPECT_EQ(TruncatingPoint(std::vector{1.0, 1.0, 1.0, 1.0}), 2);
  EXPECT_EQ(TruncatingPoint(std::vector{7.0}), 1);
  EXPECT_EQ(TruncatingPoint(std::vector<double>{}), 0);
}

TEST(DetectBlocksTest, TwoPlantedK44) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    BipartiteGraph g = TwoK44(seed);
    Detection d = DetectBlocks(g, {});
    EXPECT_EQ(d.kept, 2) << "seed " << seed;
    for (NodeIndex i = 0; i < 8; ++i) {
      EXPECT_TRUE(std::binary_search(d.detected.users.begin(),
                                     d.detected.users.end(), i));
      EXPECT_TRUE(std::binary_search(d.detected.merchants.begin(),
                                     d.detected.merchants.end(), i));
    }
  }
}

TEST(DetectBlocksTest, EdgelessGraph) {
  Detection d = DetectBlocks(BipartiteGraph::FromEdges(3, 3, {}), {});
  EXPECT_THAT(d.trace.scores, IsEmpty());
  EXPECT_EQ(d.kept, 0);
  EXPECT_TRUE(d.detected.empty());
}

TEST(DetectBlocksTest, SingleBlockWithoutTruncation) {
  BipartiteGraph g = RandomBipartite(10, 9, 0.3, 5);
  DetectConfig config;
  config.k_max = 1;
  config.truncate = false;
  Detection d = DetectBlocks(g, config);
  ScoredBlock direct = PeelDensest(g, MerchantEdgeWeights(g, {}));
  ASSERT_EQ(d.kept, 1);
  EXPECT_EQ(d.detected.users, direct.members.users);
  EXPECT_EQ(d.detected.merchants, direct.members.merchants);
  EXPECT_DOUBLE_EQ(d.objective, direct.score);
}

TEST(DetectBlocksTest, FixedKKeepsEveryBlockUpToK) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    BipartiteGraph g = RandomBipartite(20, 15, 0.25, seed);
    for (std::size_t k : {1, 3, 5, 30}) {
      DetectConfig config;
      config.k_max = k;
      config.truncate = false;
      Detection d = DetectBlocks(g, config);
      EXPECT_LE(d.trace.blocks.size(), k);
      EXPECT_EQ(d.kept, d.trace.blocks.size());
      // The eager trace is a prefix of the k_max = 30 trace.
      Detection full = DetectBlocks(g, {});
      for (std::size_t i = 0; i < d.trace.scores.size(); ++i) {
        EXPECT_EQ(d.trace.scores[i], full.trace.scores[i]);
      }
    }
  }
}

TEST(DetectBlocksTest, KeptNeverExceedsKMax) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    BipartiteGraph g = RandomBipartite(25, 20, 0.2, seed);
    for (std::size_t k : {1, 2, 4, 30}) {
      DetectConfig config;
      config.k_max = k;
      EXPECT_LE(DetectBlocks(g, config).kept, k);
    }
  }
  DetectConfig zero;
  zero.k_max = 0;
  EXPECT_THROW(DetectBlocks(RandomBipartite(3, 3, 1.0, 0), zero), ConfigError);
}

TEST(DetectBlocksTest, RemovedEdgeSetsAreDisjoint) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    BipartiteGraph g = RandomBipartite(18, 14, 0.3, seed);
    Detection d = DetectBlocks(g, {});
    BipartiteGraph residual = g;
    std::set<std::pair<NodeIndex, NodeIndex>> taken;
    double objective = 0.0;
    for (std::size_t i = 0; i < d.trace.blocks.size(); ++i) {
      const VertexSubset& s = d.trace.blocks[i].members;
      for (NodeIndex u : s.users) {
        for (NodeIndex m : s.merchants) {
          if (!residual.has_edge(u, m)) continue;
          EXPECT_TRUE(taken.insert({u, m}).second);
        }
      }
      residual = RemoveEdges(residual, s);
      if (i < d.kept) objective += d.trace.scores[i];
    }
    EXPECT_DOUBLE_EQ(d.objective, objective);
  }
}

TEST(DetectBlocksTest, ExactPeelerGivesNonIncreasingScores) {
  DetectConfig config;
  config.peeler = [](const BipartiteGraph& g, const MerchantWeights& w) {
    return BruteForceDensest(g, w);
  };
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    BipartiteGraph g = RandomBipartite(6, 6, 0.45, seed);
    Detection d = DetectBlocks(g, config);
    for (std::size_t i = 1; i < d.trace.scores.size(); ++i) {
      EXPECT_LE(d.trace.scores[i], d.trace.scores[i - 1] + 1e-12)
          << "seed " << seed << " round " << i;
    }
  }
}

}  // namespace
}  // namespace densevote
