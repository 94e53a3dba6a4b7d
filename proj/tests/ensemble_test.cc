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

#include "densevote/ensemble.h"

#include <algorithm>
#include <bit>
#include <cstdlib>

#include "densevote/errors.h"
#include "densevote/synth.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace densevote {
namespace {

using ::testing::ElementsAre;
using ::testing::IsEmpty;
using testing::RandomBipartite;

double Median(std::vector<std::uint32_t> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

TEST(DeriveSeedsTest, StableAndPrefixPreserving) {
  EXPECT_EQ(DeriveSeeds(42, 1), DeriveSeeds(42, 1));
  const auto ten = DeriveSeeds(42, 10);
  const auto four = DeriveSeeds(42, 4);
  EXPECT_TRUE(std::equal(four.begin(), four.end(), ten.begin()));
  EXPECT_THAT(DeriveSeeds(42, 0), IsEmpty());
}

TEST(DeriveSeedsTest, OneBitChangeAltersEveryPosition) {
  for (std::uint64_t master : {0ull, 7ull, 0x123456789abcdefull}) {
    const auto base = DeriveSeeds(master, 32);
    for (int bit = 0; bit < 64; ++bit) {
      const auto flipped = DeriveSeeds(master ^ (1ull << bit), 32);
      for (std::size_t i = 0; i < base.size(); ++i) {
        EXPECT_NE(base[i], flipped[i]) << "bit " << bit << " position " << i;
        // Roughly half of the output bits should move.
        const int moved = std::popcount(base[i] ^ flipped[i]);
        EXPECT_GT(moved, 8);
        EXPECT_LT(moved, 56);
      }
    }
  }
}

TEST(RunEnsembleTest, SingleFullSampleEqualsDetection) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    BipartiteGraph g = RandomBipartite(15, 12, 0.25, seed);
    g = BipartiteGraph::FromEdges(17, 13, g.Edges());  // a few isolated nodes
    EnsembleConfig config;
    config.sampler.ratio = 1.0;
    config.num_samples = 1;
    config.threshold = 1;
    config.master_seed = seed;
    EnsembleResult result = RunEnsemble(g, config);
    const Detection d = DetectBlocks(g, config.detect);
    std::vector<std::uint32_t> users(g.num_users(), 0);
    std::vector<std::uint32_t> merchants(g.num_merchants(), 0);
    for (NodeIndex u : d.detected.users) users[u] = 1;
    for (NodeIndex m : d.detected.merchants) merchants[m] = 1;
    EXPECT_EQ(result.tally.user_votes, users) << "seed " << seed;
    EXPECT_EQ(result.tally.merchant_votes, merchants) << "seed " << seed;
    EXPECT_THAT(result.blocks_kept, ElementsAre(d.kept));
  }
}

TEST(RunEnsembleTest, FullRatioVotesAreAllOrNothing) {
  BipartiteGraph g = RandomBipartite(20, 15, 0.2, 4);
  EnsembleConfig config;
  config.sampler.ratio = 1.0;
  config.num_samples = 6;
  config.threshold = 1;
  const VoteTally tally = RunEnsemble(g, config).tally;
  for (std::uint32_t v : tally.user_votes) EXPECT_TRUE(v == 0 || v == 6);
  for (std::uint32_t v : tally.merchant_votes) EXPECT_TRUE(v == 0 || v == 6);
}

TEST(RunEnsembleTest, PlantedUsersOutvoteBackground) {
  SynthConfig synth;
  synth.seed = 1;
  const SyntheticInstance inst = Generate(synth);
  EnsembleConfig config;
  config.num_samples = 80;
  config.master_seed = 7;
  const VoteTally tally = RunEnsemble(inst.graph, config).tally;
  std::vector<std::uint32_t> fraud;
  std::vector<std::uint32_t> background;
  for (NodeIndex u = 0; u < inst.graph.num_users(); ++u) {
    (inst.truth.user_block[u] >= 0 ? fraud : background)
        .push_back(tally.user_votes[u]);
  }
  EXPECT_GT(Median(fraud), Median(background));
}

TEST(RunEnsembleTest, WorkerCountDoesNotChangeTheTally) {
  BipartiteGraph g = RandomBipartite(120, 60, 0.04, 9);
  for (SamplerKind kind : {SamplerKind::kRandomEdge, SamplerKind::kOneSide,
                           SamplerKind::kTwoSide}) {
    EnsembleConfig config;
    config.sampler.kind = kind;
    config.sampler.ratio = 0.3;
    config.sampler.ratio_v = 0.5;
    config.num_samples = 24;
    config.master_seed = 99;
    config.workers = 1;
    const EnsembleResult one = RunEnsemble(g, config);
    config.workers = 8;
    const EnsembleResult eight = RunEnsemble(g, config);
    EXPECT_EQ(one.tally.user_votes, eight.tally.user_votes);
    EXPECT_EQ(one.tally.merchant_votes, eight.tally.merchant_votes);
    EXPECT_EQ(one.blocks_found, eight.blocks_found);
    EXPECT_EQ(one.blocks_kept, eight.blocks_kept);
  }
}

TEST(RunEnsembleTest, SampleErrorsNameTheSample) {
  EnsembleConfig config;
  config.num_samples = 3;
  config.threshold = 1;
  try {
    RunEnsemble(BipartiteGraph::FromEdges(2, 2, {}), config);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_THAT(e.what(), ::testing::HasSubstr("sample 0"));
  }
}

TEST(EnsembleConfigTest, ValidateRejectsBadThresholds) {
  EnsembleConfig config;
  config.num_samples = 10;
  config.threshold = 11;
  EXPECT_THROW(config.Validate(), ConfigError);
  config.threshold = 0;
  EXPECT_THROW(config.Validate(), ConfigError);
  config.threshold = 10;
  EXPECT_NO_THROW(config.Validate());
  config.num_samples = 0;
  EXPECT_THROW(config.Validate(), ConfigError);
  EXPECT_DOUBLE_EQ(EnsembleConfig{}.repetition_rate(), 8.0);
}

TEST(DefaultWorkersTest, HonorsEnvironment) {
  ::setenv("DENSEVOTE_WORKERS", "3", 1);
  EXPECT_EQ(DefaultWorkers(), 3);
  ::unsetenv("DENSEVOTE_WORKERS");
  EXPECT_GE(DefaultWorkers(), 1);
}

TEST(ApplyMajorityVoteTest, Examples) {
  VoteTally tally;
  tally.user_votes = {3, 1, 0, 2};
  tally.merchant_votes = {0, 3};
  tally.num_samples = 3;
  EXPECT_THAT(ApplyMajorityVote(tally, 2).users, ElementsAre(0, 3));
  EXPECT_THAT(ApplyMajorityVote(tally, 1).users, ElementsAre(0, 1, 3));
  EXPECT_THAT(ApplyMajorityVote(tally, 3).users, ElementsAre(0));
  EXPECT_THAT(ApplyMajorityVote(tally, 3).merchants, ElementsAre(1));
  EXPECT_THROW(ApplyMajorityVote(tally, 4), ConfigError);
  EXPECT_THROW(ApplyMajorityVote(tally, 0), ConfigError);
}

TEST(ApplyMajorityVoteTest, ThresholdOneIsTheUnionOfDetections) {
  BipartiteGraph g = RandomBipartite(40, 30, 0.1, 2);
  EnsembleConfig config;
  config.sampler.ratio = 0.4;
  config.num_samples = 5;
  config.threshold = 1;
  config.master_seed = 3;
  const VoteTally tally = RunEnsemble(g, config).tally;
  VertexSubset expected;
  for (std::uint64_t seed : DeriveSeeds(3, 5)) {
    const SampledSubgraph sub = Sample(g, config.sampler, seed);
    expected.Merge(
        sub.ToOriginal(DetectBlocks(sub.graph, config.detect).detected));
  }
  const DetectedSets got = ApplyMajorityVote(tally, 1);
  EXPECT_EQ(got.users, expected.users);
  EXPECT_EQ(got.merchants, expected.merchants);
}

TEST(ApplyMajorityVoteTest, RaisingTheThresholdOnlyShrinks) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    VoteTally tally;
    tally.num_samples = 1 + rng() % 20;
    for (int i = 0; i < 50; ++i) {
      tally.user_votes.push_back(rng() % (tally.num_samples + 1));
      tally.merchant_votes.push_back(rng() % (tally.num_samples + 1));
    }
    for (std::size_t t = 1; t < tally.num_samples; ++t) {
      const DetectedSets lo = ApplyMajorityVote(tally, t);
      const DetectedSets hi = ApplyMajorityVote(tally, t + 1);
      EXPECT_TRUE(std::includes(lo.users.begin(), lo.users.end(),
                                hi.users.begin(), hi.users.end()));
      EXPECT_TRUE(std::includes(lo.merchants.begin(), lo.merchants.end(),
                                hi.merchants.begin(), hi.merchants.end()));
    }
  }
}

TEST(VoteTallyTest, MergeAddsVotesAndSamples) {
  VoteTally a{{1, 0}, {2}, 2};
  VoteTally b{{1, 1}, {0}, 3};
  a.Merge(b);
  EXPECT_THAT(a.user_votes, ElementsAre(2, 1));
  EXPECT_THAT(a.merchant_votes, ElementsAre(2));
  EXPECT_EQ(a.num_samples, 5);
}

}  // namespace
}  // namespace densevote
