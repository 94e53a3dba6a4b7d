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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "densevote/bigraph.h"
#include "densevote/blocks.h"
#include "densevote/density.h"
#include "densevote/ensemble.h"
#include "densevote/errors.h"
#include "densevote/metrics.h"
#include "densevote/sampling.h"
#include "densevote/synth.h"

namespace py = pybind11;

namespace densevote {
namespace {

using NodeList = std::vector<NodeIndex>;

BipartiteGraph GraphFromPairs(
    std::size_t num_users, std::size_t num_merchants,
    const std::vector<std::pair<NodeIndex, NodeIndex>>& pairs) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [u, m] : pairs) edges.push_back({u, m});
  return BipartiteGraph::FromEdges(num_users, num_merchants, std::move(edges));
}

std::vector<std::pair<NodeIndex, NodeIndex>> EdgePairs(
    const BipartiteGraph& g) {
  std::vector<std::pair<NodeIndex, NodeIndex>> out;
  out.reserve(g.num_edges());
  for (const Edge& e : g.Edges()) out.emplace_back(e.user, e.merchant);
  return out;
}

SamplerSpec MakeSampler(const std::string& kind, double ratio, double ratio_v,
                        const std::string& side) {
  SamplerSpec spec;
  spec.kind = ParseSamplerKind(kind);
  spec.ratio = ratio;
  spec.ratio_v = ratio_v;
  spec.side = ParseSide(side);
  spec.Validate();
  return spec;
}

DetectConfig MakeDetect(double c, std::size_t k_max, bool truncate,
                        bool by_degree) {
  DetectConfig config;
  config.density.c = c;
  config.k_max = k_max;
  config.truncate = truncate;
  config.priority =
      by_degree ? PeelPriority::kDegree : PeelPriority::kWeightedContribution;
  return config;
}

}  // namespace
}  // namespace densevote

PYBIND11_MODULE(_core, m) {
  using namespace densevote;
  m.doc() = "Dense-block fraud detection on bipartite purchase graphs.";

  py::register_exception<Error>(m, "Error");
  // Translators registered later run first.
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConfigError& e) {
      py::set_error(PyExc_ValueError, e.what());
    } catch (const ContractError& e) {
      py::set_error(PyExc_ValueError, e.what());
    }
  });

  py::class_<BipartiteGraph>(m, "BipartiteGraph")
      .def(py::init(&GraphFromPairs), py::arg("num_users"),
           py::arg("num_merchants"), py::arg("edges"))
      .def_property_readonly("num_users", &BipartiteGraph::num_users)
      .def_property_readonly("num_merchants", &BipartiteGraph::num_merchants)
      .def_property_readonly("num_edges", &BipartiteGraph::num_edges)
      .def("edges", &EdgePairs)
      .def("user_label",
           [](const BipartiteGraph& g, NodeIndex u) {
             if (u >= g.num_users()) throw py::index_error("user out of range");
             return g.label(Side::kUser, u);
           })
      .def("merchant_label",
           [](const BipartiteGraph& g, NodeIndex v) {
             if (v >= g.num_merchants())
               throw py::index_error("merchant out of range");
             return g.label(Side::kMerchant, v);
           })
      .def("user_degrees",
           [](const BipartiteGraph& g) { return Degrees(g, Side::kUser); })
      .def("merchant_degrees",
           [](const BipartiteGraph& g) { return Degrees(g, Side::kMerchant); })
      .def("__repr__", [](const BipartiteGraph& g) {
        std::ostringstream s;
        s << "<BipartiteGraph users=" << g.num_users()
          << " merchants=" << g.num_merchants() << " edges=" << g.num_edges()
          << ">";
        return s.str();
      });

  m.def(
      "parse_edge_list",
      [](const std::string& text) {
        std::istringstream in(text);
        return ParseEdgeList(in);
      },
      py::arg("text"), "Parses tab-separated `user<TAB>merchant` lines.");
  m.def(
      "load_edge_list",
      [](const std::string& path) { return ParseEdgeListFile(path); },
      py::arg("path"));

  m.def(
      "merchant_edge_weights",
      [](const BipartiteGraph& g, double c) {
        return MerchantEdgeWeights(g, {c});
      },
      py::arg("graph"), py::arg("c") = 5.0);

  m.def(
      "density_score",
      [](const BipartiteGraph& g, NodeList users, NodeList merchants,
         double c) {
        VertexSubset s{std::move(users), std::move(merchants)};
        s.Normalize();
        return DensityScore(g, s, MerchantEdgeWeights(g, {c}));
      },
      py::arg("graph"), py::arg("users"), py::arg("merchants"),
      py::arg("c") = 5.0);

  m.def(
      "peel_densest",
      [](const BipartiteGraph& g, double c, bool by_degree) {
        ScoredBlock b =
            PeelDensest(g, MerchantEdgeWeights(g, {c}),
                        by_degree ? PeelPriority::kDegree
                                  : PeelPriority::kWeightedContribution);
        return std::make_tuple(b.members.users, b.members.merchants, b.score);
      },
      py::arg("graph"), py::arg("c") = 5.0, py::arg("by_degree") = false,
      "Returns (users, merchants, score) of the greedy densest block.");

  py::class_<Detection>(m, "Detection")
      .def_property_readonly("scores",
                             [](const Detection& d) { return d.trace.scores; })
      .def_readonly("kept", &Detection::kept)
      .def_readonly("objective", &Detection::objective)
      .def_property_readonly(
          "users", [](const Detection& d) { return d.detected.users; })
      .def_property_readonly(
          "merchants", [](const Detection& d) { return d.detected.merchants; });

  m.def(
      "detect_blocks",
      [](const BipartiteGraph& g, double c, std::size_t k_max, bool truncate,
         bool by_degree) {
        return DetectBlocks(g, MakeDetect(c, k_max, truncate, by_degree));
      },
      py::arg("graph"), py::arg("c") = 5.0, py::arg("k_max") = 30,
      py::arg("truncate") = true, py::arg("by_degree") = false);

  m.def(
      "truncating_point",
      [](const std::vector<double>& scores) { return TruncatingPoint(scores); },
      py::arg("scores"));

  m.def(
      "sample",
      [](const BipartiteGraph& g, const std::string& sampler, double ratio,
         double ratio_v, const std::string& side, std::uint64_t seed) {
        SampledSubgraph s =
            Sample(g, MakeSampler(sampler, ratio, ratio_v, side), seed);
        return std::make_tuple(s.graph, s.user_map, s.merchant_map);
      },
      py::arg("graph"), py::arg("sampler") = "res", py::arg("ratio") = 0.1,
      py::arg("ratio_v") = 0.1, py::arg("side") = "merchant",
      py::arg("seed") = 0, "Returns (subgraph, user_map, merchant_map).");

  py::class_<VoteTally>(m, "VoteTally")
      .def(py::init([](std::vector<std::uint32_t> users,
                       std::vector<std::uint32_t> merchants, std::size_t n) {
             return VoteTally{std::move(users), std::move(merchants), n};
           }),
           py::arg("user_votes"), py::arg("merchant_votes"),
           py::arg("num_samples"))
      .def_readonly("user_votes", &VoteTally::user_votes)
      .def_readonly("merchant_votes", &VoteTally::merchant_votes)
      .def_readonly("num_samples", &VoteTally::num_samples);

  m.def(
      "run_ensemble",
      [](const BipartiteGraph& g, const std::string& sampler, double ratio,
         double ratio_v, const std::string& side, std::size_t num_samples,
         double c, std::size_t k_max, bool truncate, std::uint64_t seed,
         std::size_t workers) {
        EnsembleConfig config;
        config.sampler = MakeSampler(sampler, ratio, ratio_v, side);
        config.num_samples = num_samples;
        config.threshold = 1;
        config.detect = MakeDetect(c, k_max, truncate, false);
        config.master_seed = seed;
        config.workers = workers;
        py::gil_scoped_release release;
        return RunEnsemble(g, config).tally;
      },
      py::arg("graph"), py::arg("sampler") = "res", py::arg("ratio") = 0.1,
      py::arg("ratio_v") = 0.1, py::arg("side") = "merchant",
      py::arg("num_samples") = 80, py::arg("c") = 5.0, py::arg("k_max") = 30,
      py::arg("truncate") = true, py::arg("seed") = 0, py::arg("workers") = 0);

  m.def(
      "apply_majority_vote",
      [](const VoteTally& tally, std::size_t threshold) {
        DetectedSets s = ApplyMajorityVote(tally, threshold);
        return std::make_tuple(s.users, s.merchants);
      },
      py::arg("tally"), py::arg("threshold"));

  m.def(
      "generate",
      [](std::size_t users, std::size_t merchants, double avg_degree,
         const std::string& blocks, double camouflage, std::uint64_t seed) {
        SynthConfig config;
        config.num_users = users;
        config.num_merchants = merchants;
        config.background_avg_user_degree = avg_degree;
        config.blocks = ParseBlockSpecs(blocks);
        config.camouflage_prob = camouflage;
        config.seed = seed;
        SyntheticInstance inst = Generate(config);
        return std::make_tuple(inst.graph, inst.truth.fraud_users,
                               inst.truth.fraud_merchants);
      },
      py::arg("users") = 2000, py::arg("merchants") = 500,
      py::arg("avg_degree") = 2.0, py::arg("blocks") = "3x50x20x0.8",
      py::arg("camouflage") = 0.2, py::arg("seed") = 0,
      "Returns (graph, fraud_users, fraud_merchants).");

  py::class_<EvalReport>(m, "EvalReport")
      .def_readonly("threshold", &EvalReport::threshold)
      .def_readonly("detected", &EvalReport::detected)
      .def_readonly("tp", &EvalReport::tp)
      .def_readonly("fp", &EvalReport::fp)
      .def_readonly("fn", &EvalReport::fn)
      .def_readonly("precision", &EvalReport::precision)
      .def_readonly("recall", &EvalReport::recall)
      .def_readonly("f1", &EvalReport::f1)
      .def("__repr__", [](const EvalReport& r) { return FormatSweepRow(r); });

  m.def(
      "evaluate",
      [](const NodeList& detected, const NodeList& truth,
         std::size_t universe) { return Evaluate(detected, truth, universe); },
      py::arg("detected"), py::arg("truth"), py::arg("universe"));

  m.def(
      "sweep_threshold",
      [](const VoteTally& tally, const NodeList& truth) {
        return SweepThreshold(tally, truth);
      },
      py::arg("tally"), py::arg("truth"));
}
