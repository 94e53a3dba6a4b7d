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

#include "densevote/errors.h"

namespace densevote {

std::vector<double> SecondDifference(std::span<const double> scores) {
  if (scores.size() < 3) {
    throw ContractError("second difference needs at least 3 scores");
  }
  std::vector<double> d2;
  d2.reserve(scores.size() - 2);
  for (std::size_t i = 1; i + 1 < scores.size(); ++i) {
    d2.push_back(scores[i + 1] - 2.0 * scores[i] + scores[i - 1]);
  }
  return d2;
}

std::size_t TruncatingPoint(std::span<const double> scores) {
  if (scores.size() < 3) return scores.size();
  const std::vector<double> d2 = SecondDifference(scores);
  std::size_t best = 0;
  for (std::size_t k = 1; k < d2.size(); ++k) {
    if (d2[k] < d2[best]) best = k;
  }
  return best + 2;
}

Detection DetectBlocks(const BipartiteGraph& graph,
                       const DetectConfig& config) {
  if (config.k_max < 1) throw ConfigError("k_max must be >= 1");
  Detection result;
  BipartiteGraph residual = graph;
  while (result.trace.blocks.size() < config.k_max &&
         residual.num_edges() > 0) {
    const MerchantWeights weights =
        MerchantEdgeWeights(residual, config.density);
    ScoredBlock block = config.peeler
                            ? config.peeler(residual, weights)
                            : PeelDensest(residual, weights, config.priority);
    residual = RemoveEdges(residual, block.members);
    result.trace.scores.push_back(block.score);
    result.trace.blocks.push_back(std::move(block));
  }

  const std::size_t found = result.trace.blocks.size();
  result.kept = config.truncate ? TruncatingPoint(result.trace.scores) : found;
  for (std::size_t i = 0; i < result.kept; ++i) {
    const ScoredBlock& b = result.trace.blocks[i];
    result.detected.users.insert(result.detected.users.end(),
                                 b.members.users.begin(),
                                 b.members.users.end());
    result.detected.merchants.insert(result.detected.merchants.end(),
                                     b.members.merchants.begin(),
                                     b.members.merchants.end());
    result.objective += b.score;
  }
  result.detected.Normalize();
  return result;
}

}  // namespace densevote
