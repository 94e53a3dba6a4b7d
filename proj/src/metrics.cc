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

#include "densevote/metrics.h"

#include <cstdio>

#include "densevote/errors.h"

namespace densevote {
namespace {

double Ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

void Finish(EvalReport& r) {
  r.precision = Ratio(r.tp, r.tp + r.fp);
  r.recall = Ratio(r.tp, r.tp + r.fn);
  r.f1 = r.precision + r.recall == 0.0
             ? 0.0
             : 2.0 * r.precision * r.recall / (r.precision + r.recall);
}

std::vector<bool> Membership(std::span<const NodeIndex> ids,
                             std::size_t universe) {
  std::vector<bool> in(universe, false);
  for (NodeIndex i : ids) {
    if (i >= universe) throw ContractError("user index outside the universe");
    in[i] = true;
  }
  return in;
}

}  // namespace

EvalReport Evaluate(std::span<const NodeIndex> detected,
                    std::span<const NodeIndex> truth, std::size_t universe) {
  const std::vector<bool> flagged = Membership(detected, universe);
  const std::vector<bool> fraud = Membership(truth, universe);
  EvalReport r;
  for (std::size_t i = 0; i < universe; ++i) {
    if (flagged[i]) {
      ++r.detected;
      ++(fraud[i] ? r.tp : r.fp);
    } else if (fraud[i]) {
      ++r.fn;
    }
  }
  Finish(r);
  return r;
}

std::vector<EvalReport> SweepThreshold(const VoteTally& tally,
                                       std::span<const NodeIndex> truth) {
  const std::size_t n = tally.num_samples;
  const std::size_t universe = tally.user_votes.size();
  const std::vector<bool> fraud = Membership(truth, universe);

  // Counts of users by vote count, split by label; then suffix sums give the
  // confusion counts for every threshold in one pass.
  std::vector<std::size_t> fraud_at(n + 1, 0);
  std::vector<std::size_t> clean_at(n + 1, 0);
  std::size_t total_fraud = 0;
  for (std::size_t i = 0; i < universe; ++i) {
    const std::size_t v = std::min<std::size_t>(tally.user_votes[i], n);
    ++(fraud[i] ? fraud_at[v] : clean_at[v]);
    total_fraud += fraud[i];
  }

  std::vector<EvalReport> rows(n);
  std::size_t tp = 0;
  std::size_t fp = 0;
  for (std::size_t t = n; t >= 1; --t) {
    tp += fraud_at[t];
    fp += clean_at[t];
    EvalReport& r = rows[t - 1];
    r.threshold = t;
    r.tp = tp;
    r.fp = fp;
    r.fn = total_fraud - tp;
    r.detected = tp + fp;
    Finish(r);
  }
  return rows;
}

const EvalReport& BestF1(const std::vector<EvalReport>& sweep) {
  if (sweep.empty()) throw ContractError("empty sweep");
  const EvalReport* best = &sweep.front();
  for (const EvalReport& r : sweep) {
    if (r.f1 > best->f1) best = &r;
  }
  return *best;
}

std::string FormatSweepRow(const EvalReport& r) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%zu,%zu,%zu,%zu,%zu,%.6f,%.6f,%.6f",
                r.threshold, r.detected, r.tp, r.fp, r.fn, r.precision,
                r.recall, r.f1);
  return buf;
}

void WriteSweepCsv(const std::vector<EvalReport>& sweep, std::ostream& out) {
  out << "T,detected,tp,fp,fn,precision,recall,f1\n";
  for (const EvalReport& r : sweep) out << FormatSweepRow(r) << '\n';
}

}  // namespace densevote
