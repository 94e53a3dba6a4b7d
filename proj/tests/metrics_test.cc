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

#include "densevote/metrics.h"

#include <random>
#include <sstream>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace densevote {
namespace {

using ::testing::DoubleNear;
using ::testing::StartsWith;

TEST(EvaluateTest, PerfectDetection) {
  const std::vector<NodeIndex> truth = {1, 4, 7};
  const EvalReport r = Evaluate(truth, truth, 10);
  EXPECT_EQ(r.tp, 3);
  EXPECT_DOUBLE_EQ(r.precision, 1.0);
  EXPECT_DOUBLE_EQ(r.recall, 1.0);
  EXPECT_DOUBLE_EQ(r.f1, 1.0);
}

TEST(EvaluateTest, NothingDetected) {
  const std::vector<NodeIndex> truth = {1, 4};
  const EvalReport r = Evaluate({}, truth, 10);
  EXPECT_EQ(r.detected, 0);
  EXPECT_EQ(r.fn, 2);
  EXPECT_EQ(r.precision, 0.0);
  EXPECT_EQ(r.recall, 0.0);
  EXPECT_EQ(r.f1, 0.0);
}

TEST(EvaluateTest, HandCountedOverlap) {
  // a, b, c, d = 0, 1, 2, 3
  const std::vector<NodeIndex> detected = {0, 1, 2};
  const std::vector<NodeIndex> truth = {1, 2, 3};
  const EvalReport r = Evaluate(detected, truth, 5);
  EXPECT_EQ(r.tp, 2);
  EXPECT_EQ(r.fp, 1);
  EXPECT_EQ(r.fn, 1);
  EXPECT_THAT(r.precision, DoubleNear(2.0 / 3.0, 1e-12));
  EXPECT_THAT(r.recall, DoubleNear(2.0 / 3.0, 1e-12));
  EXPECT_THAT(r.f1, DoubleNear(2.0 / 3.0, 1e-12));
}

TEST(EvaluateTest, OrderAndRepeatsDoNotMatter) {
  const std::vector<NodeIndex> a = {5, 0, 2, 2, 9};
  const std::vector<NodeIndex> b = {9, 2, 0, 5};
  const std::vector<NodeIndex> truth = {2, 3, 9};
  const std::vector<NodeIndex> truth_shuffled = {9, 3, 2, 3};
  const EvalReport x = Evaluate(a, truth, 10);
  const EvalReport y = Evaluate(b, truth_shuffled, 10);
  EXPECT_EQ(x.detected, y.detected);
  EXPECT_EQ(x.tp, y.tp);
  EXPECT_EQ(x.fp, y.fp);
  EXPECT_EQ(x.fn, y.fn);
}

TEST(SweepThresholdTest, ZeroTally) {
  VoteTally tally;
  tally.user_votes.assign(6, 0);
  tally.num_samples = 4;
  const std::vector<NodeIndex> truth = {1};
  const auto sweep = SweepThreshold(tally, truth);
  ASSERT_EQ(sweep.size(), 4);
  for (std::size_t t = 0; t < sweep.size(); ++t) {
    EXPECT_EQ(sweep[t].threshold, t + 1);
    EXPECT_EQ(sweep[t].detected, 0);
  }
  EXPECT_TRUE(testing::SweepIsMonotone(sweep));
}

TEST(SweepThresholdTest, UnanimousFraudNodeIsPreciseAtTopThreshold) {
  VoteTally tally;
  tally.user_votes = {5, 2, 1, 0};
  tally.num_samples = 5;
  const std::vector<NodeIndex> truth = {0};
  const auto sweep = SweepThreshold(tally, truth);
  EXPECT_EQ(sweep.back().threshold, 5);
  EXPECT_EQ(sweep.back().detected, 1);
  EXPECT_DOUBLE_EQ(sweep.back().precision, 1.0);
  EXPECT_EQ(sweep[0].detected, 3);
  EXPECT_EQ(BestF1(sweep).threshold, 3);  // first T with only node 0
}

TEST(SweepThresholdTest, MatchesEvaluateAtEveryThreshold) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    VoteTally tally;
    tally.num_samples = 1 + rng() % 12;
    std::vector<NodeIndex> truth;
    for (NodeIndex u = 0; u < 80; ++u) {
      tally.user_votes.push_back(rng() % (tally.num_samples + 1));
      if (rng() % 5 == 0) truth.push_back(u);
    }
    const auto sweep = SweepThreshold(tally, truth);
    ASSERT_EQ(sweep.size(), tally.num_samples);
    for (std::size_t t = 1; t <= tally.num_samples; ++t) {
      const DetectedSets sets = ApplyMajorityVote(tally, t);
      const EvalReport direct = Evaluate(sets.users, truth, 80);
      EXPECT_EQ(sweep[t - 1].detected, direct.detected);
      EXPECT_EQ(sweep[t - 1].tp, direct.tp);
      EXPECT_DOUBLE_EQ(sweep[t - 1].f1, direct.f1);
    }
    EXPECT_TRUE(testing::SweepIsMonotone(sweep));
  }
}

TEST(WriteSweepCsvTest, HeaderAndFixedDecimals) {
  VoteTally tally;
  tally.user_votes = {2, 1, 0};
  tally.num_samples = 2;
  const std::vector<NodeIndex> truth = {0, 2};
  std::ostringstream out;
  WriteSweepCsv(SweepThreshold(tally, truth), out);
  EXPECT_EQ(out.str(),
            "T,detected,tp,fp,fn,precision,recall,f1\n"
            "1,2,1,1,1,0.500000,0.500000,0.500000\n"
            "2,1,1,0,1,1.000000,0.500000,0.666667\n");
  EXPECT_THAT(FormatSweepRow(EvalReport{}), StartsWith("0,0,0,0,0,"));
}

}  // namespace
}  // namespace densevote
