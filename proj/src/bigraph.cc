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

#include "densevote/bigraph.h"

#include <algorithm>
#include <fstream>
#include <string_view>
#include <unordered_map>
#include <utility>

#include "densevote/errors.h"

namespace densevote {
namespace {

void SortUnique(std::vector<NodeIndex>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::string_view StripCr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

bool IsSkippable(std::string_view line) {
  if (line.empty() || line.front() == '#') return true;
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

}  // namespace

VertexSubset VertexSubset::FromRefs(std::span<const NodeRef> refs) {
  VertexSubset s;
  for (const NodeRef& r : refs) {
    (r.side == Side::kUser ? s.users : s.merchants).push_back(r.index);
  }
  s.Normalize();
  return s;
}

std::vector<NodeRef> VertexSubset::Refs() const {
  std::vector<NodeRef> refs;
  refs.reserve(size());
  for (NodeIndex u : users) refs.push_back({Side::kUser, u});
  for (NodeIndex m : merchants) refs.push_back({Side::kMerchant, m});
  return refs;
}

void VertexSubset::Normalize() {
  SortUnique(users);
  SortUnique(merchants);
}

void VertexSubset::Merge(const VertexSubset& other) {
  users.insert(users.end(), other.users.begin(), other.users.end());
  merchants.insert(merchants.end(), other.merchants.begin(),
                   other.merchants.end());
  Normalize();
}

BipartiteGraph::BipartiteGraph()
    : adj_(std::make_shared<Adjacency>(Adjacency{{0}, {}, {0}, {}})) {}

BipartiteGraph BipartiteGraph::FromEdges(
    std::size_t num_users, std::size_t num_merchants, std::vector<Edge> edges,
    std::vector<std::string> user_labels,
    std::vector<std::string> merchant_labels, std::size_t* duplicates) {
  for (const Edge& e : edges) {
    if (e.user >= num_users || e.merchant >= num_merchants) {
      throw ContractError("edge (" + std::to_string(e.user) + ", " +
                          std::to_string(e.merchant) + ") out of range");
    }
  }
  if (!std::is_sorted(edges.begin(), edges.end())) {
    std::sort(edges.begin(), edges.end());
  }
  const std::size_t before = edges.size();
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  if (duplicates != nullptr) *duplicates = before - edges.size();

  auto adj = std::make_shared<Adjacency>();
  adj->user_offsets.assign(num_users + 1, 0);
  adj->merchant_offsets.assign(num_merchants + 1, 0);
  for (const Edge& e : edges) {
    ++adj->user_offsets[e.user + 1];
    ++adj->merchant_offsets[e.merchant + 1];
  }
  for (std::size_t i = 0; i < num_users; ++i) {
    adj->user_offsets[i + 1] += adj->user_offsets[i];
  }
  for (std::size_t j = 0; j < num_merchants; ++j) {
    adj->merchant_offsets[j + 1] += adj->merchant_offsets[j];
  }
  adj->user_adj.resize(edges.size());
  adj->merchant_adj.resize(edges.size());
  // Edges are sorted by (user, merchant), so both fills produce sorted
  // neighbor lists.
  std::vector<std::size_t> cursor(adj->merchant_offsets.begin(),
                                  adj->merchant_offsets.end() - 1);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    adj->user_adj[k] = edges[k].merchant;
    adj->merchant_adj[cursor[edges[k].merchant]++] = edges[k].user;
  }

  BipartiteGraph g;
  g.num_users_ = num_users;
  g.num_merchants_ = num_merchants;
  g.adj_ = std::move(adj);
  if (!user_labels.empty() || !merchant_labels.empty()) {
    if (user_labels.size() != num_users ||
        merchant_labels.size() != num_merchants) {
      throw ContractError("label count does not match node count");
    }
    g.labels_ = std::make_shared<Labels>(
        Labels{std::move(user_labels), std::move(merchant_labels)});
  }
  return g;
}

bool BipartiteGraph::has_edge(NodeIndex user, NodeIndex merchant) const {
  if (user >= num_users_ || merchant >= num_merchants_) return false;
  auto ms = merchants_of(user);
  return std::binary_search(ms.begin(), ms.end(), merchant);
}

std::string BipartiteGraph::label(Side side, NodeIndex i) const {
  if (labels_ != nullptr) {
    return side == Side::kUser ? labels_->users[i] : labels_->merchants[i];
  }
  return (side == Side::kUser ? "u" : "m") + std::to_string(i);
}

std::vector<Edge> BipartiteGraph::Edges() const {
  std::vector<Edge> edges;
  edges.reserve(num_edges());
  for (NodeIndex u = 0; u < num_users_; ++u) {
    for (NodeIndex m : merchants_of(u)) edges.push_back({u, m});
  }
  return edges;
}

BipartiteGraph ParseEdgeList(std::istream& in, ParseSummary* summary) {
  std::unordered_map<std::string, NodeIndex> user_ids;
  std::unordered_map<std::string, NodeIndex> merchant_ids;
  std::vector<std::string> user_labels;
  std::vector<std::string> merchant_labels;
  std::vector<Edge> edges;

  auto intern = [](std::unordered_map<std::string, NodeIndex>& ids,
                   std::vector<std::string>& labels, std::string_view label) {
    auto [it, inserted] =
        ids.try_emplace(std::string(label), static_cast<NodeIndex>(ids.size()));
    if (inserted) labels.emplace_back(label);
    return it->second;
  };

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = StripCr(raw);
    if (IsSkippable(line)) continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos ||
        line.find('\t', tab + 1) != std::string_view::npos) {
      throw ParseError(line_no, "expected exactly two tab-separated fields");
    }
    std::string_view user = line.substr(0, tab);
    std::string_view merchant = line.substr(tab + 1);
    if (user.empty() || merchant.empty()) {
      throw ParseError(line_no, "empty field");
    }
    edges.push_back({intern(user_ids, user_labels, user),
                     intern(merchant_ids, merchant_labels, merchant)});
  }

  ParseSummary local;
  local.lines = line_no;
  const std::size_t nu = user_labels.size();
  const std::size_t nm = merchant_labels.size();
  BipartiteGraph g = BipartiteGraph::FromEdges(
      nu, nm, std::move(edges), std::move(user_labels),
      std::move(merchant_labels), &local.duplicate_edges);
  if (summary != nullptr) *summary = local;
  return g;
}

BipartiteGraph ParseEdgeListFile(const std::string& path,
                                 ParseSummary* summary) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return ParseEdgeList(in, summary);
}

void WriteEdgeList(const BipartiteGraph& graph, std::ostream& out) {
  for (NodeIndex u = 0; u < graph.num_users(); ++u) {
    const std::string ul = graph.label(Side::kUser, u);
    for (NodeIndex m : graph.merchants_of(u)) {
      out << ul << '\t' << graph.label(Side::kMerchant, m) << '\n';
    }
  }
}

std::vector<std::string> ParseLabelList(std::istream& in) {
  std::vector<std::string> labels;
  std::string raw;
  while (std::getline(in, raw)) {
    std::string_view line = StripCr(raw);
    if (IsSkippable(line)) continue;
    labels.emplace_back(line);
  }
  return labels;
}

std::vector<std::string> ParseLabelListFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return ParseLabelList(in);
}

std::vector<std::size_t> Degrees(const BipartiteGraph& graph, Side side) {
  std::vector<std::size_t> d(graph.num_nodes(side));
  for (NodeIndex i = 0; i < d.size(); ++i) d[i] = graph.degree(side, i);
  return d;
}

VertexSubset SampledSubgraph::ToOriginal(const VertexSubset& local) const {
  VertexSubset out;
  out.users.reserve(local.users.size());
  out.merchants.reserve(local.merchants.size());
  for (NodeIndex u : local.users) out.users.push_back(user_map.at(u));
  for (NodeIndex m : local.merchants)
    out.merchants.push_back(merchant_map.at(m));
  out.Normalize();
  return out;
}

SampledSubgraph InducedSubgraph(const BipartiteGraph& graph,
                                std::span<const NodeIndex> users,
                                std::span<const NodeIndex> merchants) {
  constexpr NodeIndex kAbsent = static_cast<NodeIndex>(-1);
  std::vector<NodeIndex> merchant_local(graph.num_merchants(), kAbsent);
  for (std::size_t k = 0; k < merchants.size(); ++k) {
    const NodeIndex m = merchants[k];
    if (m >= graph.num_merchants()) {
      throw ContractError("merchant index " + std::to_string(m) +
                          " out of range");
    }
    if (merchant_local[m] != kAbsent) {
      throw ContractError("duplicate merchant index " + std::to_string(m));
    }
    merchant_local[m] = static_cast<NodeIndex>(k);
  }
  std::vector<bool> user_seen(graph.num_users(), false);
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < users.size(); ++k) {
    const NodeIndex u = users[k];
    if (u >= graph.num_users()) {
      throw ContractError("user index " + std::to_string(u) + " out of range");
    }
    if (user_seen[u]) {
      throw ContractError("duplicate user index " + std::to_string(u));
    }
    user_seen[u] = true;
    for (NodeIndex m : graph.merchants_of(u)) {
      if (merchant_local[m] != kAbsent) {
        edges.push_back({static_cast<NodeIndex>(k), merchant_local[m]});
      }
    }
  }
  SampledSubgraph sub;
  sub.graph = BipartiteGraph::FromEdges(users.size(), merchants.size(),
                                        std::move(edges));
  sub.user_map.assign(users.begin(), users.end());
  sub.merchant_map.assign(merchants.begin(), merchants.end());
  return sub;
}

BipartiteGraph RemoveEdges(const BipartiteGraph& graph,
                           const VertexSubset& subset) {
  if (subset.users.empty() || subset.merchants.empty()) return graph;
  std::vector<bool> in_users(graph.num_users(), false);
  std::vector<bool> in_merchants(graph.num_merchants(), false);
  for (NodeIndex u : subset.users) {
    if (u < graph.num_users()) in_users[u] = true;
  }
  for (NodeIndex m : subset.merchants) {
    if (m < graph.num_merchants()) in_merchants[m] = true;
  }
  std::vector<Edge> kept;
  kept.reserve(graph.num_edges());
  for (NodeIndex u = 0; u < graph.num_users(); ++u) {
    const bool inside = in_users[u];
    for (NodeIndex m : graph.merchants_of(u)) {
      if (!(inside && in_merchants[m])) kept.push_back({u, m});
    }
  }
  BipartiteGraph out = BipartiteGraph::FromEdges(
      graph.num_users(), graph.num_merchants(), std::move(kept));
  out.labels_ = graph.labels_;
  return out;
}

}  // namespace densevote
