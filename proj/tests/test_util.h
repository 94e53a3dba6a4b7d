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

#ifndef DENSEVOTE_TESTS_TEST_UTIL_H_
#define DENSEVOTE_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "densevote/bigraph.h"
#include "densevote/metrics.h"

namespace densevote::testing {

// Complete bipartite graph K_{a,b}.
inline BipartiteGraph Complete(std::size_t a, std::size_t b) {
  std::vector<Edge> edges;
  for (NodeIndex u = 0; u < a; ++u) {
    for (NodeIndex m = 0; m < b; ++m) edges.push_back({u, m});
  }
  return BipartiteGraph::FromEdges(a, b, std::move(edges));
}

// Each of the nu x nm pairs is an edge with probability p.
inline BipartiteGraph RandomBipartite(std::size_t nu, std::size_t nm, double p,
                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution keep(p);
  std::vector<Edge> edges;
  for (NodeIndex u = 0; u < nu; ++u) {
    for (NodeIndex m = 0; m < nm; ++m) {
      if (keep(rng)) edges.push_back({u, m});
    }
  }
  return BipartiteGraph::FromEdges(nu, nm, std::move(edges));
}

// Non-increasing detected count and recall across thresholds.
inline bool SweepIsMonotone(const std::vector<EvalReport>& sweep) {
  for (std::size_t i = 1; i < sweep.size(); ++i) {
    if (sweep[i].detected > sweep[i - 1].detected) return false;
    if (sweep[i].recall > sweep[i - 1].recall) return false;
  }
  return true;
}

}  // namespace densevote::testing

#endif  // DENSEVOTE_TESTS_TEST_UTIL_H_
