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

#include "densevote/synth.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_set>

#include "densevote/errors.h"
#include "densevote/random.h"

namespace densevote {
namespace {

constexpr std::uint64_t kLayoutStream = 11;
constexpr std::uint64_t kBackgroundStream = 12;
constexpr std::uint64_t kBlockStream = 13;
constexpr std::uint64_t kCamouflageStream = 14;

std::vector<NodeIndex> Permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<NodeIndex> p(n);
  std::iota(p.begin(), p.end(), NodeIndex{0});
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

std::vector<std::string> Labels(const char* prefix, std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = prefix + std::to_string(i);
  return labels;
}

std::size_t ParseCount(const std::string& s, const std::string& spec) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != s.size() || s.empty() || s.front() == '-') {
    throw ConfigError("bad block spec '" + spec + "'");
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

void SynthConfig::Validate() const {
  if (num_users == 0 || num_merchants == 0) {
    throw ConfigError("node counts must be positive");
  }
  if (!(background_avg_user_degree >= 0.0) ||
      !std::isfinite(background_avg_user_degree)) {
    throw ConfigError("background degree must be a finite value >= 0");
  }
  if (!(camouflage_prob >= 0.0 && camouflage_prob <= 1.0)) {
    throw ConfigError("camouflage probability must be in [0, 1]");
  }
  std::size_t users = 0;
  std::size_t merchants = 0;
  for (const BlockSpec& b : blocks) {
    if (b.users == 0 || b.merchants == 0) {
      throw ConfigError("blocks need at least one user and one merchant");
    }
    if (!(b.edge_prob > 0.0 && b.edge_prob <= 1.0)) {
      throw ConfigError("block edge probability must be in (0, 1]");
    }
    users += b.users;
    merchants += b.merchants;
  }
  if (users > num_users || merchants > num_merchants) {
    throw ConfigError(
        "planted blocks need " + std::to_string(users) + " users and " +
        std::to_string(merchants) + " merchants but the graph has " +
        std::to_string(num_users) + " and " + std::to_string(num_merchants));
  }
}

SyntheticInstance Generate(const SynthConfig& config) {
  config.Validate();
  const std::size_t nu = config.num_users;
  const std::size_t nm = config.num_merchants;

  SyntheticInstance inst;
  GroundTruth& truth = inst.truth;
  truth.user_block.assign(nu, -1);
  truth.merchant_block.assign(nm, -1);

  // Planted nodes are scattered over the index range.
  std::mt19937_64 layout_rng(StreamSeed(config.seed, kLayoutStream));
  const std::vector<NodeIndex> user_perm = Permutation(nu, layout_rng);
  const std::vector<NodeIndex> merchant_perm = Permutation(nm, layout_rng);
  std::vector<std::vector<NodeIndex>> block_users(config.blocks.size());
  std::vector<std::vector<NodeIndex>> block_merchants(config.blocks.size());
  std::size_t next_user = 0;
  std::size_t next_merchant = 0;
  for (std::size_t b = 0; b < config.blocks.size(); ++b) {
    for (std::size_t k = 0; k < config.blocks[b].users; ++k) {
      const NodeIndex u = user_perm[next_user++];
      block_users[b].push_back(u);
      truth.user_block[u] = static_cast<int>(b);
    }
    for (std::size_t k = 0; k < config.blocks[b].merchants; ++k) {
      const NodeIndex m = merchant_perm[next_merchant++];
      block_merchants[b].push_back(m);
      truth.merchant_block[m] = static_cast<int>(b);
    }
  }

  std::vector<Edge> edges;

  // Background purchases.
  std::mt19937_64 bg_rng(StreamSeed(config.seed, kBackgroundStream));
  std::poisson_distribution<std::size_t> degree_dist(
      std::max(config.background_avg_user_degree, 1e-9));
  std::uniform_int_distribution<NodeIndex> any_merchant(
      0, static_cast<NodeIndex>(nm - 1));
  std::vector<std::size_t> background_degree(nm, 0);
  std::unordered_set<NodeIndex> chosen;
  for (NodeIndex u = 0; u < nu; ++u) {
    if (truth.user_block[u] >= 0) continue;
    const std::size_t d = config.background_avg_user_degree > 0.0
                              ? std::min(degree_dist(bg_rng), nm)
                              : 0;
    chosen.clear();
    while (chosen.size() < d) chosen.insert(any_merchant(bg_rng));
    std::vector<NodeIndex> sorted(chosen.begin(), chosen.end());
    std::sort(sorted.begin(), sorted.end());
    for (NodeIndex m : sorted) {
      edges.push_back({u, m});
      ++background_degree[m];
    }
  }

  // Planted blocks.
  std::mt19937_64 block_rng(StreamSeed(config.seed, kBlockStream));
  std::vector<std::size_t> block_degree(nu, 0);
  inst.block_edges.assign(config.blocks.size(), 0);
  for (std::size_t b = 0; b < config.blocks.size(); ++b) {
    std::bernoulli_distribution keep(config.blocks[b].edge_prob);
    for (NodeIndex u : block_users[b]) {
      for (NodeIndex m : block_merchants[b]) {
        if (keep(block_rng)) {
          edges.push_back({u, m});
          ++block_degree[u];
          ++inst.block_edges[b];
        }
      }
    }
  }

  // Camouflage towards popular background merchants.
  std::vector<std::size_t> popularity(nm, 0);
  for (NodeIndex m = 0; m < nm; ++m) {
    if (truth.merchant_block[m] < 0) popularity[m] = background_degree[m];
  }
  const std::size_t background_edges =
      std::accumulate(popularity.begin(), popularity.end(), std::size_t{0});
  if (config.camouflage_prob > 0.0 && background_edges > 0) {
    std::mt19937_64 camo_rng(StreamSeed(config.seed, kCamouflageStream));
    std::discrete_distribution<NodeIndex> popular(popularity.begin(),
                                                  popularity.end());
    for (std::size_t b = 0; b < config.blocks.size(); ++b) {
      for (NodeIndex u : block_users[b]) {
        const auto extra = static_cast<std::size_t>(std::ceil(
            config.camouflage_prob * static_cast<double>(block_degree[u]) -
            1e-9));
        for (std::size_t k = 0; k < extra; ++k) {
          edges.push_back({u, popular(camo_rng)});
        }
      }
    }
  }

  inst.graph = BipartiteGraph::FromEdges(nu, nm, std::move(edges),
                                         Labels("u", nu), Labels("m", nm));
  for (NodeIndex u = 0; u < nu; ++u) {
    if (truth.user_block[u] >= 0) truth.fraud_users.push_back(u);
  }
  for (NodeIndex m = 0; m < nm; ++m) {
    if (truth.merchant_block[m] >= 0) truth.fraud_merchants.push_back(m);
  }
  return inst;
}

std::vector<BlockSpec> ParseBlockSpecs(const std::string& text) {
  std::vector<BlockSpec> blocks;
  std::stringstream items(text);
  std::string item;
  while (std::getline(items, item, ',')) {
    if (item.empty()) continue;
    std::vector<std::string> parts(1);
    for (char ch : item) {
      if (ch == 'x') {
        parts.emplace_back();
      } else {
        parts.back() += ch;
      }
    }
    if (parts.size() != 3 && parts.size() != 4) {
      throw ConfigError("bad block spec '" + item +
                        "' (want [COUNTx]USERSxMERCHANTSxPROB)");
    }
    const std::size_t count =
        parts.size() == 4 ? ParseCount(parts[0], item) : 1;
    const std::size_t off = parts.size() - 3;
    BlockSpec b;
    b.users = ParseCount(parts[off], item);
    b.merchants = ParseCount(parts[off + 1], item);
    std::size_t pos = 0;
    try {
      b.edge_prob = std::stod(parts[off + 2], &pos);
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
    if (pos != parts[off + 2].size()) {
      throw ConfigError("bad block probability in '" + item + "'");
    }
    if (count == 0 || b.users == 0 || b.merchants == 0 ||
        !(b.edge_prob > 0.0 && b.edge_prob <= 1.0)) {
      throw ConfigError("bad block spec '" + item + "'");
    }
    blocks.insert(blocks.end(), count, b);
  }
  return blocks;
}

std::string FormatBlockSpecs(const std::vector<BlockSpec>& blocks) {
  std::ostringstream out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i > 0) out << ',';
    out << blocks[i].users << 'x' << blocks[i].merchants << 'x'
        << blocks[i].edge_prob;
  }
  return out.str();
}

void WriteSynthConfig(const SynthConfig& config, std::ostream& out) {
  out << "users=" << config.num_users << '\n'
      << "merchants=" << config.num_merchants << '\n'
      << "avg-degree=" << config.background_avg_user_degree << '\n'
      << "blocks=" << FormatBlockSpecs(config.blocks) << '\n'
      << "camouflage=" << config.camouflage_prob << '\n'
      << "seed=" << config.seed << '\n';
}

}  // namespace densevote
