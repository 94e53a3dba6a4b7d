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

#include "densevote/density.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "densevote/errors.h"

namespace densevote {
namespace {

// Tournament tree over a fixed array of priorities. Each internal slot holds
// the leaf index with the smallest (priority, index) pair below it, so ties
// resolve to the lowest index. Updates and pops are O(log n).
class MinTree {
 public:
  explicit MinTree(const std::vector<double>& priorities)
      : n_(priorities.size()) {
    while (leaves_ < n_) leaves_ <<= 1;
    values_.assign(leaves_, kRemoved);
    std::copy(priorities.begin(), priorities.end(), values_.begin());
    tree_.assign(2 * leaves_, 0);
    for (std::size_t i = 0; i < leaves_; ++i) tree_[leaves_ + i] = i;
    for (std::size_t k = leaves_ - 1; k >= 1; --k) Pull(k);
  }

  std::size_t Min() const { return tree_[1]; }

  // Lowering a value can only make `i` win more matches on its path, so the
  // walk stops at the first ancestor it does not win.
  void Decrease(std::size_t i, double v) {
    values_[i] = v;
    for (std::size_t k = (leaves_ + i) >> 1; k >= 1; k >>= 1) {
      if (tree_[k] != i && !Less(i, tree_[k])) break;
      tree_[k] = i;
    }
  }
  void Remove(std::size_t i) {
    values_[i] = kRemoved;
    for (std::size_t k = (leaves_ + i) >> 1; k >= 1; k >>= 1) Pull(k);
  }

 private:
  static constexpr double kRemoved = std::numeric_limits<double>::infinity();

  bool Less(std::size_t a, std::size_t b) const {
    return values_[a] < values_[b] || (values_[a] == values_[b] && a < b);
  }
  void Pull(std::size_t k) {
    const std::size_t l = tree_[2 * k];
    const std::size_t r = tree_[2 * k + 1];
    tree_[k] = Less(r, l) ? r : l;
  }

  std::size_t n_;
  std::size_t leaves_ = 1;
  std::vector<double> values_;
  std::vector<std::size_t> tree_;
};

void CheckWeights(const BipartiteGraph& graph, const MerchantWeights& weights) {
  if (weights.size() != graph.num_merchants()) {
    throw ContractError("weight vector has " + std::to_string(weights.size()) +
                        " entries for " +
                        std::to_string(graph.num_merchants()) + " merchants");
  }
}

}  // namespace

MerchantWeights MerchantEdgeWeights(const BipartiteGraph& graph,
                                    const DensityParams& params) {
  if (!(params.c > 1.0) || !std::isfinite(params.c)) {
    throw ConfigError("density constant c must be finite and > 1, got " +
                      std::to_string(params.c));
  }
  MerchantWeights w(graph.num_merchants());
  for (NodeIndex j = 0; j < w.size(); ++j) {
    w[j] =
        1.0 / std::log(static_cast<double>(graph.degree(Side::kMerchant, j)) +
                       params.c);
  }
  return w;
}

double DensityScore(const BipartiteGraph& graph, const VertexSubset& subset,
                    const MerchantWeights& weights) {
  CheckWeights(graph, weights);
  if (subset.empty()) return 0.0;
  std::vector<bool> in_merchants(graph.num_merchants(), false);
  for (NodeIndex m : subset.merchants) {
    if (m >= graph.num_merchants())
      throw ContractError("merchant out of range");
    in_merchants[m] = true;
  }
  double mass = 0.0;
  for (NodeIndex u : subset.users) {
    if (u >= graph.num_users()) throw ContractError("user out of range");
    for (NodeIndex m : graph.merchants_of(u)) {
      if (in_merchants[m]) mass += weights[m];
    }
  }
  return mass / static_cast<double>(subset.size());
}

ScoredBlock PeelDensest(const BipartiteGraph& graph,
                        const MerchantWeights& weights, PeelPriority priority,
                        PeelTrace* trace) {
  CheckWeights(graph, weights);
  if (graph.num_edges() == 0) throw ContractError("nothing to peel");

  const std::size_t nu = graph.num_users();
  const std::size_t n = graph.num_nodes();

  // contribution[g]: mass lost if node g is removed now.
  std::vector<double> contribution(n, 0.0);
  std::vector<double> degree(n, 0.0);
  double mass = 0.0;
  for (NodeIndex u = 0; u < nu; ++u) {
    for (NodeIndex m : graph.merchants_of(u)) {
      contribution[u] += weights[m];
      contribution[nu + m] += weights[m];
      mass += weights[m];
    }
    degree[u] = static_cast<double>(graph.degree(Side::kUser, u));
  }
  for (NodeIndex m = 0; m < graph.num_merchants(); ++m) {
    degree[nu + m] = static_cast<double>(graph.degree(Side::kMerchant, m));
    contribution[nu + m] = degree[nu + m] * weights[m];
  }
  const bool by_degree = priority == PeelPriority::kDegree;

  std::vector<bool> removed(n, false);
  std::vector<std::size_t> order;
  order.reserve(n);

  double best_score = mass / static_cast<double>(n);
  std::size_t best_removed = 0;
  if (trace != nullptr) {
    *trace = PeelTrace{};
    trace->prefix_scores.reserve(n);
    trace->prefix_scores.push_back(best_score);
  }
  auto record = [&](std::size_t g) {
    removed[g] = true;
    order.push_back(g);
    const std::size_t remaining = n - order.size();
    if (remaining == 0) return;
    if (mass < 0.0) mass = 0.0;
    const double score = mass / static_cast<double>(remaining);
    if (trace != nullptr) trace->prefix_scores.push_back(score);
    if (score > best_score) {
      best_score = score;
      best_removed = order.size();
    }
  };

  // Isolated nodes have priority 0 while every other node starts positive, so
  // the heap would pop them first in index order; do that without the heap.
  std::vector<std::size_t> active;
  std::vector<std::size_t> slot(n, 0);
  for (std::size_t g = 0; g < n; ++g) {
    if (degree[g] == 0.0) {
      record(g);
    } else {
      slot[g] = active.size();
      active.push_back(g);
    }
  }
  std::vector<double> initial(active.size());
  for (std::size_t k = 0; k < active.size(); ++k) {
    initial[k] = by_degree ? degree[active[k]] : contribution[active[k]];
  }
  // Slots preserve the global index order, so tie-breaking is unchanged.
  MinTree heap(initial);

  std::size_t updates = 0;
  auto lower = [&](std::size_t g, double w) {
    degree[g] -= 1.0;
    // A merchant's contribution is degree * w exactly; recomputing it avoids
    // drift that would break ties inconsistently.
    contribution[g] = g < nu ? contribution[g] - w : degree[g] * w;
    heap.Decrease(slot[g], by_degree ? degree[g] : contribution[g]);
    ++updates;
  };

  for (std::size_t step = 0; step < active.size(); ++step) {
    const std::size_t g = active[heap.Min()];
    heap.Remove(slot[g]);
    mass -= contribution[g];
    if (g < nu) {
      for (NodeIndex m : graph.merchants_of(static_cast<NodeIndex>(g))) {
        if (!removed[nu + m]) lower(nu + m, weights[m]);
      }
    } else {
      const NodeIndex m = static_cast<NodeIndex>(g - nu);
      for (NodeIndex u : graph.users_of(m)) {
        if (!removed[u]) lower(u, weights[m]);
      }
    }
    record(g);
  }

  std::vector<bool> dropped(n, false);
  for (std::size_t k = 0; k < best_removed; ++k) dropped[order[k]] = true;
  ScoredBlock block;
  for (std::size_t g = 0; g < n; ++g) {
    if (dropped[g]) continue;
    if (g < nu) {
      block.members.users.push_back(static_cast<NodeIndex>(g));
    } else {
      block.members.merchants.push_back(static_cast<NodeIndex>(g - nu));
    }
  }
  block.score = DensityScore(graph, block.members, weights);

  if (trace != nullptr) {
    trace->removal_order = std::move(order);
    trace->priority_updates = updates;
    trace->node_visits = n;
  }
  return block;
}

ScoredBlock BruteForceDensest(const BipartiteGraph& graph,
                              const MerchantWeights& weights) {
  CheckWeights(graph, weights);
  const std::size_t n = graph.num_nodes();
  if (n > kBruteForceMaxNodes) {
    throw ContractError("brute force limited to " +
                        std::to_string(kBruteForceMaxNodes) + " nodes, got " +
                        std::to_string(n));
  }
  if (graph.num_edges() == 0) throw ContractError("nothing to search");

  const std::size_t nu = graph.num_users();
  struct WeightedEdge {
    std::uint32_t mask;
    double w;
  };
  std::vector<WeightedEdge> edges;
  for (const Edge& e : graph.Edges()) {
    edges.push_back(
        {(1u << e.user) | (1u << (nu + e.merchant)), weights[e.merchant]});
  }

  double best = -1.0;
  std::uint32_t best_mask = 0;
  const std::uint32_t limit = 1u << n;
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    double mass = 0.0;
    for (const WeightedEdge& e : edges) {
      if ((mask & e.mask) == e.mask) mass += e.w;
    }
    const double score = mass / static_cast<double>(std::popcount(mask));
    if (score > best) {
      best = score;
      best_mask = mask;
    }
  }

  ScoredBlock block;
  for (std::size_t g = 0; g < n; ++g) {
    if (!(best_mask & (1u << g))) continue;
    if (g < nu) {
      block.members.users.push_back(static_cast<NodeIndex>(g));
    } else {
      block.members.merchants.push_back(static_cast<NodeIndex>(g - nu));
    }
  }
  block.score = DensityScore(graph, block.members, weights);
  return block;
}

}  // namespace densevote
