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

#ifndef DENSEVOTE_SYNTH_H_
#define DENSEVOTE_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "densevote/bigraph.h"

namespace densevote {

struct BlockSpec {
  std::size_t users = 0;
  std::size_t merchants = 0;
  double edge_prob = 1.0;
};

// Planted-fraud generator settings. The defaults describe the standard
// instance used throughout the tests: 2000 users, 500 merchants, three dense
// 50x20 blocks and light camouflage.
struct SynthConfig {
  std::size_t num_users = 2000;
  std::size_t num_merchants = 500;
  double background_avg_user_degree = 2.0;
  std::vector<BlockSpec> blocks = {{50, 20, 0.8}, {50, 20, 0.8}, {50, 20, 0.8}};
  // Per fraud user, camouflage edges = ceil(camouflage_prob * block degree).
  double camouflage_prob = 0.2;
  std::uint64_t seed = 0;

  void Validate() const;
};

struct GroundTruth {
  std::vector<NodeIndex> fraud_users;      // sorted
  std::vector<NodeIndex> fraud_merchants;  // sorted
  // Block id per node, -1 for background.
  std::vector<int> user_block;
  std::vector<int> merchant_block;
};

struct SyntheticInstance {
  BipartiteGraph graph;
  GroundTruth truth;
  // Internal (planted) edge count per block.
  std::vector<std::size_t> block_edges;
};

// Background users draw Poisson(avg) distinct merchants uniformly; each
// planted block adds every (user, merchant) pair with its probability;
// camouflage edges go to non-planted merchants picked in proportion to their
// background degree.
// Nodes are labeled "u<i>" / "m<i>". Deterministic given the seed.
SyntheticInstance Generate(const SynthConfig& config);

// "COUNTxUSERSxMERCHANTSxPROB" or "USERSxMERCHANTSxPROB", comma separated.
std::vector<BlockSpec> ParseBlockSpecs(const std::string& text);
std::string FormatBlockSpecs(const std::vector<BlockSpec>& blocks);

// Flat key=value echo of the config.
void WriteSynthConfig(const SynthConfig& config, std::ostream& out);

}  // namespace densevote

#endif  // DENSEVOTE_SYNTH_H_
