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

#include "densevote/sampling.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "densevote/errors.h"
#include "densevote/random.h"

namespace densevote {
namespace {

constexpr std::uint64_t kEdgeStream = 1;
constexpr std::uint64_t kUserStream = 2;
constexpr std::uint64_t kMerchantStream = 3;

void CheckRatio(double r, const char* name) {
  if (!(r > 0.0 && r <= 1.0)) {
    throw ConfigError(std::string(name) + " must be in (0, 1], got " +
                      std::to_string(r));
  }
}

// k distinct values from [0, n) by a partial Fisher-Yates shuffle, returned
// sorted.
std::vector<NodeIndex> ChooseSorted(std::size_t n, std::size_t k,
                                    std::uint64_t seed) {
  std::vector<NodeIndex> pool(n);
  std::iota(pool.begin(), pool.end(), NodeIndex{0});
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::uint64_t SideStream(Side side) {
  return side == Side::kUser ? kUserStream : kMerchantStream;
}

}  // namespace

void SamplerSpec::Validate() const {
  CheckRatio(ratio, "sample ratio");
  if (kind == SamplerKind::kTwoSide) CheckRatio(ratio_v, "merchant ratio");
}

std::string ToString(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::kRandomEdge:
      return "res";
    case SamplerKind::kOneSide:
      return "ons";
    case SamplerKind::kTwoSide:
      return "tns";
  }
  return "?";
}

SamplerKind ParseSamplerKind(const std::string& name) {
  if (name == "res") return SamplerKind::kRandomEdge;
  if (name == "ons") return SamplerKind::kOneSide;
  if (name == "tns") return SamplerKind::kTwoSide;
  throw ConfigError("unknown sampler '" + name + "'");
}

std::string ToString(Side side) {
  return side == Side::kUser ? "user" : "merchant";
}

Side ParseSide(const std::string& name) {
  if (name == "user") return Side::kUser;
  if (name == "merchant") return Side::kMerchant;
  throw ConfigError("unknown side '" + name + "'");
}

std::size_t SampleSize(double ratio, std::size_t n) {
  if (n == 0) return 0;
  const double raw = std::ceil(ratio * static_cast<double>(n) - 1e-9);
  return std::clamp<std::size_t>(static_cast<std::size_t>(std::max(raw, 1.0)),
                                 1, n);
}

SampledSubgraph SampleEdges(const BipartiteGraph& graph, double ratio,
                            std::uint64_t seed) {
  CheckRatio(ratio, "sample ratio");
  if (graph.num_edges() == 0)
    throw ContractError("cannot sample edges of an edgeless graph");

  // Edge k of the graph is the k-th entry of the user-side CSR.
  const std::size_t k = SampleSize(ratio, graph.num_edges());
  const std::vector<NodeIndex> picked =
      ChooseSorted(graph.num_edges(), k, StreamSeed(seed, kEdgeStream));

  std::vector<Edge> original;
  original.reserve(k);
  NodeIndex u = 0;
  std::size_t row_end = graph.degree(Side::kUser, 0);
  std::size_t row_begin = 0;
  for (NodeIndex e : picked) {
    while (e >= row_end) {
      row_begin = row_end;
      ++u;
      row_end += graph.degree(Side::kUser, u);
    }
    original.push_back({u, graph.merchants_of(u)[e - row_begin]});
  }

  SampledSubgraph sub;
  sub.seed = seed;
  std::vector<NodeIndex> merchant_local(graph.num_merchants(), 0);
  std::vector<bool> merchant_used(graph.num_merchants(), false);
  for (const Edge& e : original) {
    if (sub.user_map.empty() || sub.user_map.back() != e.user) {
      sub.user_map.push_back(e.user);
    }
    merchant_used[e.merchant] = true;
  }
  for (NodeIndex m = 0; m < graph.num_merchants(); ++m) {
    if (merchant_used[m]) {
      merchant_local[m] = static_cast<NodeIndex>(sub.merchant_map.size());
      sub.merchant_map.push_back(m);
    }
  }
  std::vector<Edge> local;
  local.reserve(k);
  NodeIndex local_user = 0;
  for (std::size_t i = 0; i < original.size(); ++i) {
    if (i > 0 && original[i].user != original[i - 1].user) ++local_user;
    local.push_back({local_user, merchant_local[original[i].merchant]});
  }
  sub.graph = BipartiteGraph::FromEdges(
      sub.user_map.size(), sub.merchant_map.size(), std::move(local));
  return sub;
}

SampledSubgraph SampleOneSide(const BipartiteGraph& graph, Side side,
                              double ratio, std::uint64_t seed) {
  CheckRatio(ratio, "sample ratio");
  const std::size_t n = graph.num_nodes(side);
  if (n == 0)
    throw ContractError("cannot sample an empty " + ToString(side) + " side");
  const std::vector<NodeIndex> picked =
      ChooseSorted(n, SampleSize(ratio, n), StreamSeed(seed, SideStream(side)));

  // Opposite-side nodes reached from the picked nodes, in index order.
  const Side other = side == Side::kUser ? Side::kMerchant : Side::kUser;
  std::vector<bool> reached(graph.num_nodes(other), false);
  for (NodeIndex i : picked) {
    auto nbrs = side == Side::kUser ? graph.merchants_of(i) : graph.users_of(i);
    for (NodeIndex j : nbrs) reached[j] = true;
  }
  std::vector<NodeIndex> neighbors;
  for (NodeIndex j = 0; j < reached.size(); ++j) {
    if (reached[j]) neighbors.push_back(j);
  }
  SampledSubgraph sub = side == Side::kUser
                            ? InducedSubgraph(graph, picked, neighbors)
                            : InducedSubgraph(graph, neighbors, picked);
  sub.seed = seed;
  return sub;
}

SampledSubgraph SampleTwoSide(const BipartiteGraph& graph, double ratio_u,
                              double ratio_v, std::uint64_t seed) {
  CheckRatio(ratio_u, "user ratio");
  CheckRatio(ratio_v, "merchant ratio");
  if (graph.num_users() == 0 || graph.num_merchants() == 0) {
    throw ContractError("two-side sampling needs both sides non-empty");
  }
  const std::vector<NodeIndex> users =
      ChooseSorted(graph.num_users(), SampleSize(ratio_u, graph.num_users()),
                   StreamSeed(seed, kUserStream));
  const std::vector<NodeIndex> merchants = ChooseSorted(
      graph.num_merchants(), SampleSize(ratio_v, graph.num_merchants()),
      StreamSeed(seed, kMerchantStream));
  SampledSubgraph sub = InducedSubgraph(graph, users, merchants);
  sub.seed = seed;
  return sub;
}

SampledSubgraph Sample(const BipartiteGraph& graph, const SamplerSpec& spec,
                       std::uint64_t seed) {
  switch (spec.kind) {
    case SamplerKind::kRandomEdge:
      return SampleEdges(graph, spec.ratio, seed);
    case SamplerKind::kOneSide:
      return SampleOneSide(graph, spec.side, spec.ratio, seed);
    case SamplerKind::kTwoSide:
      return SampleTwoSide(graph, spec.ratio, spec.ratio_v, seed);
  }
  throw ConfigError("unknown sampler kind");
}

}  // namespace densevote
