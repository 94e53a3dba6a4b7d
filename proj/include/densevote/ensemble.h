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

#ifndef DENSEVOTE_ENSEMBLE_H_
#define DENSEVOTE_ENSEMBLE_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "densevote/bigraph.h"
#include "densevote/blocks.h"
#include "densevote/sampling.h"

namespace densevote {

struct EnsembleConfig {
  SamplerSpec sampler;
  std::size_t num_samples = 80;  // N
  std::size_t threshold = 8;     // T
  DetectConfig detect;
  std::uint64_t master_seed = 0;
  // 0 means DefaultWorkers().
  std::size_t workers = 0;

  // Repetition rate S * N.
  double repetition_rate() const {
    return sampler.ratio * static_cast<double>(num_samples);
  }
  void Validate() const;
};

// Per-node count of sampled subgraphs that flagged the node.
struct VoteTally {
  std::vector<std::uint32_t> user_votes;
  std::vector<std::uint32_t> merchant_votes;
  std::size_t num_samples = 0;

  // Adds another tally over the same graph.
  void Merge(const VoteTally& other);
};

struct EnsembleResult {
  VoteTally tally;
  // Per sampled subgraph, in sample order.
  std::vector<std::size_t> blocks_found;
  std::vector<std::size_t> blocks_kept;
};

// Pure function of (master_seed, index); extending N keeps the prefix.
std::vector<std::uint64_t> DeriveSeeds(std::uint64_t master_seed,
                                       std::size_t n);

// Honors the DENSEVOTE_WORKERS environment variable, else the hardware
// concurrency (at least 1).
std::size_t DefaultWorkers();

// Samples N subgraphs, runs DetectBlocks on each and gives every original
// node one vote per subgraph in which it was detected. The result does not
// depend on the worker count. Errors from sample i are rethrown as Error with
// the index in the message.
EnsembleResult RunEnsemble(const BipartiteGraph& graph,
                           const EnsembleConfig& config);

struct DetectedSets {
  std::vector<NodeIndex> users;
  std::vector<NodeIndex> merchants;
};

// Accepts nodes with at least `threshold` votes; 1 <= threshold <= N.
DetectedSets ApplyMajorityVote(const VoteTally& tally, std::size_t threshold);

}  // namespace densevote

#endif  // DENSEVOTE_ENSEMBLE_H_
