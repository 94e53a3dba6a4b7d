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

#ifndef DENSEVOTE_DENSITY_H_
#define DENSEVOTE_DENSITY_H_

#include <cstddef>
#include <vector>

#include "densevote/bigraph.h"

namespace densevote {

struct DensityParams {
  // Log-shift constant; must exceed 1 so that ln(d + c) > 0 for d >= 0.
  double c = 5.0;
};

// w_j = 1 / ln(d_j + c), one entry per merchant, from the degrees of the graph
// the weights were computed on.
using MerchantWeights = std::vector<double>;

MerchantWeights MerchantEdgeWeights(const BipartiteGraph& graph,
                                    const DensityParams& params);

// f(S) / |S|, where f(S) sums w_j over the edges (i, j) with both endpoints
// in S. Zero for the empty subset.
double DensityScore(const BipartiteGraph& graph, const VertexSubset& subset,
                    const MerchantWeights& weights);

struct ScoredBlock {
  VertexSubset members;
  double score = 0.0;
};

// What the peeling heap orders nodes by.
enum class PeelPriority {
  // User: sum of w_j over remaining neighbors. Merchant: remaining degree
  // times w_j. Removing the minimum loses the least mass.
  kWeightedContribution,
  // Plain remaining degree on both sides.
  kDegree,
};

// Optional instrumentation filled in by PeelDensest.
struct PeelTrace {
  // Node removal order. Users are [0, |U|), merchants are |U| + j.
  std::vector<std::size_t> removal_order;
  // Incrementally tracked score of H_n, H_{n-1}, ..., H_1 (one entry per
  // prefix, before each removal).
  std::vector<double> prefix_scores;
  std::size_t priority_updates = 0;
  std::size_t node_visits = 0;
};

// Greedy peeling: repeatedly removes the lowest-priority node and returns the
// intermediate node set with the highest score. Ties pick the lowest node
// index for removal and the earliest (largest) set for the result. The
// returned score is recomputed from scratch. Throws ContractError on an
// edgeless graph.
ScoredBlock PeelDensest(
    const BipartiteGraph& graph, const MerchantWeights& weights,
    PeelPriority priority = PeelPriority::kWeightedContribution,
    PeelTrace* trace = nullptr);

inline constexpr std::size_t kBruteForceMaxNodes = 20;

// Exhaustive argmax of DensityScore over all non-empty vertex subsets. Test
// oracle only. Throws ContractError for edgeless graphs or graphs with more
// than kBruteForceMaxNodes nodes.
ScoredBlock BruteForceDensest(const BipartiteGraph& graph,
                              const MerchantWeights& weights);

}  // namespace densevote

#endif  // DENSEVOTE_DENSITY_H_
