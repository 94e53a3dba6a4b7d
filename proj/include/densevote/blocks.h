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

#ifndef DENSEVOTE_BLOCKS_H_
#define DENSEVOTE_BLOCKS_H_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "densevote/bigraph.h"
#include "densevote/density.h"

namespace densevote {

struct DetectConfig {
  DensityParams density;
  // Upper bound on the number of blocks peeled off one graph.
  std::size_t k_max = 30;
  // Keep only the blocks before the sharpest drop in score. When false, every
  // detected block up to k_max is kept (fixed-k mode).
  bool truncate = true;
  PeelPriority priority = PeelPriority::kWeightedContribution;
  // Replaces the greedy peeler when set (used to plug in BruteForceDensest on
  // small graphs).
  std::function<ScoredBlock(const BipartiteGraph&, const MerchantWeights&)>
      peeler;
};

// Blocks in detection order. scores[i] == blocks[i].score.
struct DensityTrace {
  std::vector<double> scores;
  std::vector<ScoredBlock> blocks;
};

struct Detection {
  DensityTrace trace;
  // Number of leading blocks kept (the truncating point in truncate mode).
  std::size_t kept = 0;
  // Union of the kept blocks' members.
  VertexSubset detected;
  // Sum of the kept blocks' scores.
  double objective = 0.0;
};

// Repeatedly peels the densest block off the residual graph and deletes its
// internal edges, re-deriving merchant weights from the residual graph each
// round, until k_max blocks are found or no edges remain. Truncation is
// applied afterwards over the full score trace.
Detection DetectBlocks(const BipartiteGraph& graph, const DetectConfig& config);

// Delta^2(i) = s[i+1] - 2 s[i] + s[i-1] for the interior positions; entry k
// of the result belongs to 1-based position k + 2. Throws ContractError when
// fewer than three scores are given.
std::vector<double> SecondDifference(std::span<const double> scores);

// 1-based position of the minimum second difference (lowest on ties), or the
// number of scores when there are fewer than three.
std::size_t TruncatingPoint(std::span<const double> scores);

}  // namespace densevote

#endif  // DENSEVOTE_BLOCKS_H_
