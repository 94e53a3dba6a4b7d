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

#ifndef DENSEVOTE_METRICS_H_
#define DENSEVOTE_METRICS_H_

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "densevote/bigraph.h"
#include "densevote/ensemble.h"

namespace densevote {

// User-side confusion counts against a blacklist. Ratios with a zero
// denominator are reported as 0.
struct EvalReport {
  std::size_t threshold = 0;  // set by SweepThreshold, 0 otherwise
  std::size_t detected = 0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// `detected` and `truth` are user indices below `universe`; order and
// repeats do not matter.
EvalReport Evaluate(std::span<const NodeIndex> detected,
                    std::span<const NodeIndex> truth, std::size_t universe);

// One report per threshold T = 1..N, in order.
std::vector<EvalReport> SweepThreshold(const VoteTally& tally,
                                       std::span<const NodeIndex> truth);

// Row with the highest F1 (lowest T on ties). Requires a non-empty sweep.
const EvalReport& BestF1(const std::vector<EvalReport>& sweep);

// Header `T,detected,tp,fp,fn,precision,recall,f1`, reals with 6 decimals.
void WriteSweepCsv(const std::vector<EvalReport>& sweep, std::ostream& out);
std::string FormatSweepRow(const EvalReport& row);

}  // namespace densevote

#endif  // DENSEVOTE_METRICS_H_
