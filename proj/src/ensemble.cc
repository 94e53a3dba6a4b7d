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

#include "densevote/ensemble.h"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>

#include "densevote/errors.h"
#include "densevote/random.h"

namespace densevote {

void EnsembleConfig::Validate() const {
  sampler.Validate();
  if (num_samples < 1) throw ConfigError("number of samples must be >= 1");
  if (threshold < 1 || threshold > num_samples) {
    throw ConfigError("threshold must be in [1, " +
                      std::to_string(num_samples) + "], got " +
                      std::to_string(threshold));
  }
  if (detect.k_max < 1) throw ConfigError("k_max must be >= 1");
  if (!(detect.density.c > 1.0)) throw ConfigError("c must be > 1");
}

void VoteTally::Merge(const VoteTally& other) {
  if (user_votes.size() != other.user_votes.size() ||
      merchant_votes.size() != other.merchant_votes.size()) {
    throw ContractError("tallies cover different graphs");
  }
  for (std::size_t i = 0; i < user_votes.size(); ++i) {
    user_votes[i] += other.user_votes[i];
  }
  for (std::size_t j = 0; j < merchant_votes.size(); ++j) {
    merchant_votes[j] += other.merchant_votes[j];
  }
  num_samples += other.num_samples;
}

std::vector<std::uint64_t> DeriveSeeds(std::uint64_t master_seed,
                                       std::size_t n) {
  std::vector<std::uint64_t> seeds(n);
  const std::uint64_t base = Mix64(master_seed);
  for (std::size_t i = 0; i < n; ++i) {
    seeds[i] = Mix64(base + 0x9e3779b97f4a7c15ULL * (i + 1));
  }
  return seeds;
}

std::size_t DefaultWorkers() {
  if (const char* env = std::getenv("DENSEVOTE_WORKERS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

EnsembleResult RunEnsemble(const BipartiteGraph& graph,
                           const EnsembleConfig& config) {
  config.Validate();
  const std::size_t n = config.num_samples;
  const std::vector<std::uint64_t> seeds = DeriveSeeds(config.master_seed, n);

  struct Outcome {
    VertexSubset detected;
    std::size_t found = 0;
    std::size_t kept = 0;
    std::exception_ptr error;
  };
  std::vector<Outcome> outcomes(n);
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        const SampledSubgraph sub = Sample(graph, config.sampler, seeds[i]);
        const Detection det = DetectBlocks(sub.graph, config.detect);
        outcomes[i].detected = sub.ToOriginal(det.detected);
        outcomes[i].found = det.trace.blocks.size();
        outcomes[i].kept = det.kept;
      } catch (...) {
        outcomes[i].error = std::current_exception();
      }
    }
  };

  const std::size_t workers =
      std::min(config.workers == 0 ? DefaultWorkers() : config.workers, n);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  EnsembleResult result;
  result.tally.user_votes.assign(graph.num_users(), 0);
  result.tally.merchant_votes.assign(graph.num_merchants(), 0);
  result.tally.num_samples = n;
  result.blocks_found.reserve(n);
  result.blocks_kept.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Outcome& o = outcomes[i];
    if (o.error) {
      try {
        std::rethrow_exception(o.error);
      } catch (const std::exception& e) {
        throw Error("sample " + std::to_string(i) + ": " + e.what());
      }
    }
    for (NodeIndex u : o.detected.users) ++result.tally.user_votes[u];
    for (NodeIndex m : o.detected.merchants) ++result.tally.merchant_votes[m];
    result.blocks_found.push_back(o.found);
    result.blocks_kept.push_back(o.kept);
  }
  return result;
}

DetectedSets ApplyMajorityVote(const VoteTally& tally, std::size_t threshold) {
  if (threshold < 1 || threshold > tally.num_samples) {
    throw ConfigError("threshold must be in [1, " +
                      std::to_string(tally.num_samples) + "], got " +
                      std::to_string(threshold));
  }
  DetectedSets out;
  for (NodeIndex u = 0; u < tally.user_votes.size(); ++u) {
    if (tally.user_votes[u] >= threshold) out.users.push_back(u);
  }
  for (NodeIndex m = 0; m < tally.merchant_votes.size(); ++m) {
    if (tally.merchant_votes[m] >= threshold) out.merchants.push_back(m);
  }
  return out;
}

}  // namespace densevote
