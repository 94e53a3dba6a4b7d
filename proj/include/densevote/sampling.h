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

#ifndef DENSEVOTE_SAMPLING_H_
#define DENSEVOTE_SAMPLING_H_

#include <cstddef>
#include <cstdint>
#include <string>

#include "densevote/bigraph.h"

namespace densevote {

enum class SamplerKind {
  kRandomEdge,  // RES
  kOneSide,     // ONS
  kTwoSide,     // TNS
};

struct SamplerSpec {
  SamplerKind kind = SamplerKind::kRandomEdge;
  // Sampled side for kOneSide.
  Side side = Side::kMerchant;
  // Edge ratio for kRandomEdge, node ratio of `side` for kOneSide, user ratio
  // for kTwoSide.
  double ratio = 0.1;
  // Merchant ratio for kTwoSide.
  double ratio_v = 0.1;

  void Validate() const;
};

std::string ToString(SamplerKind kind);
SamplerKind ParseSamplerKind(const std::string& name);
std::string ToString(Side side);
Side ParseSide(const std::string& name);

// ceil(ratio * n) clamped to [1, n], tolerant of floating-point noise in the
// product.
std::size_t SampleSize(double ratio, std::size_t n);

// Picks SampleSize(ratio, |E|) edges uniformly without replacement; the node
// sets are the endpoints of the picked edges. Throws on an edgeless graph.
SampledSubgraph SampleEdges(const BipartiteGraph& graph, double ratio,
                            std::uint64_t seed);

// Picks SampleSize(ratio, |side|) nodes of `side` and keeps all their edges
// and neighbors. Throws when the side is empty.
SampledSubgraph SampleOneSide(const BipartiteGraph& graph, Side side,
                              double ratio, std::uint64_t seed);

// Picks users and merchants independently and keeps the induced subgraph.
// The merchant draw uses the same stream as SampleOneSide(kMerchant).
SampledSubgraph SampleTwoSide(const BipartiteGraph& graph, double ratio_u,
                              double ratio_v, std::uint64_t seed);

SampledSubgraph Sample(const BipartiteGraph& graph, const SamplerSpec& spec,
                       std::uint64_t seed);

}  // namespace densevote

#endif  // DENSEVOTE_SAMPLING_H_
