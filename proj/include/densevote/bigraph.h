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

#ifndef DENSEVOTE_BIGRAPH_H_
#define DENSEVOTE_BIGRAPH_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace densevote {

using NodeIndex = std::uint32_t;

enum class Side { kUser, kMerchant };

// Uniform handle for a vertex on either side of the graph.
struct NodeRef {
  Side side;
  NodeIndex index;

  friend bool operator==(const NodeRef&, const NodeRef&) = default;
};

struct Edge {
  NodeIndex user;
  NodeIndex merchant;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// A mixed set of users and merchants. Both lists are sorted and free of
// duplicates once normalized.
struct VertexSubset {
  std::vector<NodeIndex> users;
  std::vector<NodeIndex> merchants;

  static VertexSubset FromRefs(std::span<const NodeRef> refs);

  bool empty() const { return users.empty() && merchants.empty(); }
  std::size_t size() const { return users.size() + merchants.size(); }
  std::vector<NodeRef> Refs() const;
  void Normalize();
  // Set union, result normalized.
  void Merge(const VertexSubset& other);
};

// Immutable "who buys from where" graph stored as two mirrored CSR arrays.
// Copies are cheap: the adjacency and labels are shared.
class BipartiteGraph {
 public:
  BipartiteGraph();

  // Builds a simple graph. Duplicate edges are collapsed; `duplicates`, when
  // given, receives how many were dropped. Throws ContractError on an index
  // outside [0, num_users) x [0, num_merchants). Label vectors may be empty;
  // otherwise they must match the node counts.
  static BipartiteGraph FromEdges(std::size_t num_users,
                                  std::size_t num_merchants,
                                  std::vector<Edge> edges,
                                  std::vector<std::string> user_labels = {},
                                  std::vector<std::string> merchant_labels = {},
                                  std::size_t* duplicates = nullptr);

  std::size_t num_users() const { return num_users_; }
  std::size_t num_merchants() const { return num_merchants_; }
  std::size_t num_nodes() const { return num_users_ + num_merchants_; }
  std::size_t num_edges() const { return adj_->user_adj.size(); }
  std::size_t num_nodes(Side side) const {
    return side == Side::kUser ? num_users_ : num_merchants_;
  }

  std::span<const NodeIndex> merchants_of(NodeIndex user) const {
    const auto& a = *adj_;
    return {a.user_adj.data() + a.user_offsets[user],
            a.user_adj.data() + a.user_offsets[user + 1]};
  }
  std::span<const NodeIndex> users_of(NodeIndex merchant) const {
    const auto& a = *adj_;
    return {a.merchant_adj.data() + a.merchant_offsets[merchant],
            a.merchant_adj.data() + a.merchant_offsets[merchant + 1]};
  }
  std::size_t degree(Side side, NodeIndex i) const {
    const auto& offsets =
        side == Side::kUser ? adj_->user_offsets : adj_->merchant_offsets;
    return offsets[i + 1] - offsets[i];
  }
  bool has_edge(NodeIndex user, NodeIndex merchant) const;

  // External label of a node; falls back to "u<i>" / "m<i>" for unlabeled
  // graphs.
  std::string label(Side side, NodeIndex i) const;
  bool has_labels() const { return labels_ != nullptr; }

  // All edges sorted by (user, merchant).
  std::vector<Edge> Edges() const;

 private:
  struct Adjacency {
    std::vector<std::size_t> user_offsets;
    std::vector<NodeIndex> user_adj;
    std::vector<std::size_t> merchant_offsets;
    std::vector<NodeIndex> merchant_adj;
  };
  struct Labels {
    std::vector<std::string> users;
    std::vector<std::string> merchants;
  };

  std::size_t num_users_ = 0;
  std::size_t num_merchants_ = 0;
  std::shared_ptr<const Adjacency> adj_;
  std::shared_ptr<const Labels> labels_;

  friend BipartiteGraph RemoveEdges(const BipartiteGraph&, const VertexSubset&);
};

struct ParseSummary {
  std::size_t lines = 0;
  std::size_t duplicate_edges = 0;
};

// Reads "user<TAB>merchant" lines. '#' lines and blank lines are skipped.
// Labels get dense indices in order of first appearance.
BipartiteGraph ParseEdgeList(std::istream& in, ParseSummary* summary = nullptr);
BipartiteGraph ParseEdgeListFile(const std::string& path,
                                 ParseSummary* summary = nullptr);

// Writes one line per edge in (user, merchant) order.
void WriteEdgeList(const BipartiteGraph& graph, std::ostream& out);

// One user label per line; blank and '#' lines skipped.
std::vector<std::string> ParseLabelList(std::istream& in);
std::vector<std::string> ParseLabelListFile(const std::string& path);

std::vector<std::size_t> Degrees(const BipartiteGraph& graph, Side side);

// Subgraph together with the local -> original id maps.
struct SampledSubgraph {
  BipartiteGraph graph;
  std::vector<NodeIndex> user_map;
  std::vector<NodeIndex> merchant_map;
  std::uint64_t seed = 0;

  // Local ids to original ids.
  VertexSubset ToOriginal(const VertexSubset& local) const;
};

// Keeps exactly the edges with both endpoints in the subsets. Subsets are
// taken in the given order as local ids; duplicates and out-of-range indices
// throw ContractError.
SampledSubgraph InducedSubgraph(const BipartiteGraph& graph,
                                std::span<const NodeIndex> users,
                                std::span<const NodeIndex> merchants);

// Drops every edge whose endpoints both lie in `subset`. Node sets are kept.
BipartiteGraph RemoveEdges(const BipartiteGraph& graph,
                           const VertexSubset& subset);

}  // namespace densevote

#endif  // DENSEVOTE_BIGRAPH_H_
