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

#include "cli.h"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "CLI11.hpp"
#include "densevote/bigraph.h"
#include "densevote/blocks.h"
#include "densevote/ensemble.h"
#include "densevote/errors.h"
#include "densevote/metrics.h"
#include "densevote/sampling.h"
#include "densevote/synth.h"
#include "json.hpp"

namespace densevote::cli {
namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double MillisSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

std::string Sha256File(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  std::string hex;
  char byte[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(byte, sizeof(byte), "%02x", digest[i]);
    hex += byte;
  }
  return hex;
}

// Writes to --output when given, else to `out`.
void Emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error("cannot write " + path);
  file << text;
}

struct DetectOptions {
  std::string edges;
  std::string output;
  std::string sampler = "res";
  std::string side = "merchant";
  double ratio = 0.1;
  std::optional<double> ratio_v;
  std::size_t num_samples = 80;
  std::optional<std::size_t> threshold;
  double c = 5.0;
  std::size_t kmax = 30;
  bool no_truncate = false;
  std::optional<std::size_t> fixed_k;
  std::uint64_t seed = 0;
  std::size_t workers = 0;
  bool peel_by_degree = false;
};

void AddDetectFlags(CLI::App* cmd, DetectOptions& o) {
  cmd->add_option("--edges", o.edges, "Edge list (user<TAB>merchant per line)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--output", o.output, "Output path (default: stdout)");
  cmd->add_option("--sampler", o.sampler, "Sampler")
      ->check(CLI::IsMember({"res", "ons", "tns"}))
      ->capture_default_str();
  cmd->add_option("--side", o.side, "Sampled side for ons")
      ->check(CLI::IsMember({"user", "merchant"}))
      ->capture_default_str();
  cmd->add_option("--ratio", o.ratio, "Sample ratio S")->capture_default_str();
  cmd->add_option("--ratio-v", o.ratio_v,
                  "Merchant ratio for tns (default: --ratio)");
  cmd->add_option("--num-samples", o.num_samples, "Number of sampled graphs N")
      ->capture_default_str();
  cmd->add_option("--threshold", o.threshold,
                  "Vote threshold T (default: max(1, N/10))");
  cmd->add_option("--c", o.c, "Log-shift constant of the density score")
      ->capture_default_str();
  cmd->add_option("--kmax", o.kmax, "Maximum blocks per graph")
      ->capture_default_str();
  cmd->add_flag("--no-truncate", o.no_truncate,
                "Keep every detected block instead of truncating");
  cmd->add_option("--fixed-k", o.fixed_k,
                  "Detect exactly K blocks per graph (implies --no-truncate)");
  cmd->add_option("--seed", o.seed, "Master seed")->capture_default_str();
  cmd->add_option("--workers", o.workers,
                  "Worker threads (default: DENSEVOTE_WORKERS or all cores)");
  cmd->add_flag("--peel-by-degree", o.peel_by_degree,
                "Peel by plain degree instead of weighted contribution");
}

EnsembleConfig ToEnsembleConfig(const DetectOptions& o) {
  EnsembleConfig cfg;
  cfg.sampler.kind = ParseSamplerKind(o.sampler);
  cfg.sampler.side = ParseSide(o.side);
  cfg.sampler.ratio = o.ratio;
  cfg.sampler.ratio_v = o.ratio_v.value_or(o.ratio);
  cfg.num_samples = o.num_samples;
  cfg.threshold =
      o.threshold.value_or(std::max<std::size_t>(1, o.num_samples / 10));
  cfg.detect.density.c = o.c;
  cfg.detect.k_max = o.fixed_k.value_or(o.kmax);
  cfg.detect.truncate = !o.no_truncate && !o.fixed_k.has_value();
  cfg.detect.priority = o.peel_by_degree ? PeelPriority::kDegree
                                         : PeelPriority::kWeightedContribution;
  cfg.master_seed = o.seed;
  cfg.workers = o.workers == 0 ? DefaultWorkers() : o.workers;
  cfg.Validate();
  return cfg;
}

Json ParamsJson(const EnsembleConfig& cfg) {
  Json p;
  p["sampler"] = ToString(cfg.sampler.kind);
  if (cfg.sampler.kind == SamplerKind::kOneSide) {
    p["side"] = ToString(cfg.sampler.side);
  }
  p["S"] = cfg.sampler.ratio;
  if (cfg.sampler.kind == SamplerKind::kTwoSide) {
    p["S_merchant"] = cfg.sampler.ratio_v;
  }
  p["N"] = cfg.num_samples;
  p["T"] = cfg.threshold;
  p["R"] = cfg.repetition_rate();
  p["c"] = cfg.detect.density.c;
  p["kmax"] = cfg.detect.k_max;
  p["truncate"] = cfg.detect.truncate;
  p["peel_priority"] =
      cfg.detect.priority == PeelPriority::kDegree ? "degree" : "weighted";
  p["seed"] = cfg.master_seed;
  return p;
}

struct LoadedGraph {
  BipartiteGraph graph;
  Json input;
};

LoadedGraph LoadGraph(const std::string& path) {
  ParseSummary summary;
  LoadedGraph g{ParseEdgeListFile(path, &summary), Json::object()};
  g.input["path"] = path;
  g.input["sha256"] = Sha256File(path);
  g.input["users"] = g.graph.num_users();
  g.input["merchants"] = g.graph.num_merchants();
  g.input["edges"] = g.graph.num_edges();
  g.input["duplicate_edges"] = summary.duplicate_edges;
  return g;
}

Json Histogram(const std::vector<std::uint32_t>& votes, std::size_t n) {
  std::vector<std::size_t> h(n + 1, 0);
  for (std::uint32_t v : votes) ++h[std::min<std::size_t>(v, n)];
  return h;
}

double Mean(const std::vector<std::size_t>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (std::size_t x : v) s += static_cast<double>(x);
  return s / static_cast<double>(v.size());
}

Json BaseManifest(const std::string& command, const EnsembleConfig& cfg,
                  const Json& edges_input) {
  Json m;
  m["tool"] = "densevote";
  m["version"] = kToolVersion;
  m["command"] = command;
  m["params"] = ParamsJson(cfg);
  m["inputs"]["edges"] = edges_input;
  return m;
}

int CmdDetect(const DetectOptions& o, std::ostream& out) {
  auto start = Clock::now();
  const EnsembleConfig cfg = ToEnsembleConfig(o);
  LoadedGraph loaded = LoadGraph(o.edges);
  const double parse_ms = MillisSince(start);

  start = Clock::now();
  const EnsembleResult result = RunEnsemble(loaded.graph, cfg);
  const double ensemble_ms = MillisSince(start);

  start = Clock::now();
  const DetectedSets sets = ApplyMajorityVote(result.tally, cfg.threshold);
  const double vote_ms = MillisSince(start);

  Json doc;
  doc["manifest"] = BaseManifest("detect", cfg, loaded.input);
  Json users = Json::array();
  for (NodeIndex u : sets.users)
    users.push_back(loaded.graph.label(Side::kUser, u));
  Json merchants = Json::array();
  for (NodeIndex m : sets.merchants) {
    merchants.push_back(loaded.graph.label(Side::kMerchant, m));
  }
  doc["detected_users"] = std::move(users);
  doc["detected_merchants"] = std::move(merchants);
  doc["vote_histogram"]["users"] =
      Histogram(result.tally.user_votes, cfg.num_samples);
  doc["vote_histogram"]["merchants"] =
      Histogram(result.tally.merchant_votes, cfg.num_samples);
  doc["blocks_per_sample"]["found_mean"] = Mean(result.blocks_found);
  doc["blocks_per_sample"]["kept_mean"] = Mean(result.blocks_kept);
  // Scheduling-dependent fields live here; everything above is reproducible.
  doc["execution"]["workers"] = cfg.workers;
  doc["execution"]["timings_ms"] = {
      {"parse", parse_ms}, {"ensemble", ensemble_ms}, {"vote", vote_ms}};

  Emit(o.output, doc.dump(2) + "\n", out);
  return kExitOk;
}

std::vector<NodeIndex> ResolveLabels(const BipartiteGraph& graph,
                                     const std::vector<std::string>& labels,
                                     std::size_t* unknown) {
  std::unordered_map<std::string, NodeIndex> index;
  index.reserve(graph.num_users());
  for (NodeIndex u = 0; u < graph.num_users(); ++u) {
    index.emplace(graph.label(Side::kUser, u), u);
  }
  std::vector<NodeIndex> ids;
  *unknown = 0;
  for (const std::string& l : labels) {
    auto it = index.find(l);
    if (it == index.end()) {
      ++*unknown;
    } else {
      ids.push_back(it->second);
    }
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

int CmdSweep(const DetectOptions& o, const std::string& labels_path,
             std::ostream& out, std::ostream& err) {
  const EnsembleConfig cfg = ToEnsembleConfig(o);
  LoadedGraph loaded = LoadGraph(o.edges);
  std::size_t unknown = 0;
  const std::vector<NodeIndex> truth =
      ResolveLabels(loaded.graph, ParseLabelListFile(labels_path), &unknown);
  if (unknown > 0) {
    err << "warning: " << unknown
        << " blacklisted labels do not appear in the graph and are ignored\n";
  }
  const EnsembleResult result = RunEnsemble(loaded.graph, cfg);
  const std::vector<EvalReport> sweep = SweepThreshold(result.tally, truth);

  std::ostringstream csv;
  WriteSweepCsv(sweep, csv);
  Emit(o.output, csv.str(), out);

  const EvalReport& best = BestF1(sweep);
  err << "best F1 " << FormatSweepRow(best)
      << " (T,detected,tp,fp,fn,precision,recall,f1)\n";
  return kExitOk;
}

int CmdBench(const DetectOptions& o, std::size_t baseline_k, std::ostream& out,
             std::ostream& err) {
  const EnsembleConfig cfg = ToEnsembleConfig(o);
  if (baseline_k < 1) throw ConfigError("--baseline-k must be >= 1");
  LoadedGraph loaded = LoadGraph(o.edges);

  DetectConfig baseline_cfg = cfg.detect;
  baseline_cfg.truncate = false;
  baseline_cfg.k_max = baseline_k;
  auto start = Clock::now();
  const Detection baseline = DetectBlocks(loaded.graph, baseline_cfg);
  const double baseline_s = MillisSince(start) / 1000.0;

  start = Clock::now();
  const EnsembleResult result = RunEnsemble(loaded.graph, cfg);
  const DetectedSets sets = ApplyMajorityVote(result.tally, cfg.threshold);
  const double ensemble_s = MillisSince(start) / 1000.0;

  Json doc;
  doc["manifest"] = BaseManifest("bench", cfg, loaded.input);
  doc["manifest"]["params"]["baseline_k"] = baseline_k;
  doc["baseline"]["blocks"] = baseline.trace.blocks.size();
  doc["baseline"]["detected_users"] = baseline.detected.users.size();
  doc["baseline"]["detected_merchants"] = baseline.detected.merchants.size();
  doc["ensemble"]["detected_users"] = sets.users.size();
  doc["ensemble"]["detected_merchants"] = sets.merchants.size();
  doc["ensemble"]["kept_mean"] = Mean(result.blocks_kept);
  doc["execution"]["workers"] = cfg.workers;
  doc["execution"]["baseline_seconds"] = baseline_s;
  doc["execution"]["ensemble_seconds"] = ensemble_s;
  doc["execution"]["ratio"] = baseline_s > 0.0 ? ensemble_s / baseline_s : 0.0;
  Emit(o.output, doc.dump(2) + "\n", out);

  char line[200];
  std::snprintf(line, sizeof(line),
                "baseline %.3f s, ensemble %.3f s, ratio %.3f (S=%g N=%zu "
                "workers=%zu)\n",
                baseline_s, ensemble_s,
                baseline_s > 0.0 ? ensemble_s / baseline_s : 0.0,
                cfg.sampler.ratio, cfg.num_samples, cfg.workers);
  err << line;
  return kExitOk;
}

struct GenerateOptions {
  SynthConfig config;
  std::string blocks = "3x50x20x0.8";
  std::string prefix = "synthetic";
};

int CmdGenerate(GenerateOptions& o, std::ostream& out) {
  o.config.blocks = ParseBlockSpecs(o.blocks);
  const SyntheticInstance inst = Generate(o.config);

  const std::string edges_path = o.prefix + ".tsv";
  const std::string labels_path = o.prefix + ".labels";
  const std::string config_path = o.prefix + ".cfg";
  {
    std::ofstream f(edges_path);
    if (!f) throw Error("cannot write " + edges_path);
    WriteEdgeList(inst.graph, f);
  }
  {
    std::ofstream f(labels_path);
    if (!f) throw Error("cannot write " + labels_path);
    for (NodeIndex u : inst.truth.fraud_users) {
      f << inst.graph.label(Side::kUser, u) << '\n';
    }
  }
  {
    std::ofstream f(config_path);
    if (!f) throw Error("cannot write " + config_path);
    WriteSynthConfig(o.config, f);
  }

  Json doc;
  doc["tool"] = "densevote";
  doc["version"] = kToolVersion;
  doc["command"] = "generate";
  doc["params"]["users"] = o.config.num_users;
  doc["params"]["merchants"] = o.config.num_merchants;
  doc["params"]["avg_degree"] = o.config.background_avg_user_degree;
  Json blocks = Json::array();
  for (const BlockSpec& b : o.config.blocks) {
    blocks.push_back({{"users", b.users},
                      {"merchants", b.merchants},
                      {"edge_prob", b.edge_prob}});
  }
  doc["params"]["blocks"] = std::move(blocks);
  doc["params"]["camouflage"] = o.config.camouflage_prob;
  doc["params"]["seed"] = o.config.seed;
  doc["outputs"] = {
      {"edges", edges_path}, {"labels", labels_path}, {"config", config_path}};
  doc["edges"] = inst.graph.num_edges();
  doc["fraud_users"] = inst.truth.fraud_users.size();
  doc["fraud_merchants"] = inst.truth.fraud_merchants.size();
  doc["block_edges"] = inst.block_edges;
  out << doc.dump(2) << '\n';
  return kExitOk;
}

// Splices the entries of every `--config FILE` into the argument list right
// after the subcommand name, so flags given on the command line win under the
// take-last policy. Keys are long option names without the leading dashes.
std::vector<std::string> ExpandConfigFiles(
    const std::vector<std::string>& args) {
  std::vector<std::string> from_files;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      continue;
    }
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    for (const CLI::ConfigItem& item : CLI::ConfigINI().from_config(in)) {
      if (!item.parents.empty() || item.name == "++" || item.name == "--") {
        throw ConfigError("config file " + path +
                          ": sections are not supported");
      }
      std::string value;
      for (const std::string& v : item.inputs) {
        value += (value.empty() ? "" : ",") + v;
      }
      from_files.push_back("--" + item.name + "=" + value);
    }
  }
  if (from_files.empty() || args.empty()) return args;
  std::vector<std::string> expanded;
  expanded.push_back(args.front());
  expanded.insert(expanded.end(), from_files.begin(), from_files.end());
  expanded.insert(expanded.end(), args.begin() + 1, args.end());
  return expanded;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Dense-block fraud detection on bipartite purchase graphs",
               "densevote"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  std::string config_path;  // consumed by ExpandConfigFiles

  DetectOptions detect_opts;
  CLI::App* detect = app.add_subcommand(
      "detect", "Sample, detect dense blocks and vote on fraud nodes");
  AddDetectFlags(detect, detect_opts);
  detect->add_option("--config", config_path,
                     "key=value parameter file; flags override it");

  DetectOptions sweep_opts;
  std::string labels_path;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Precision/recall/F1 for every vote threshold 1..N as CSV");
  AddDetectFlags(sweep, sweep_opts);
  sweep->add_option("--labels", labels_path, "Blacklisted user labels")
      ->required()
      ->check(CLI::ExistingFile);
  sweep->add_option("--config", config_path,
                    "key=value parameter file; flags override it");

  DetectOptions bench_opts;
  std::size_t baseline_k = 30;
  CLI::App* bench = app.add_subcommand(
      "bench", "Time full-graph fixed-k detection against the ensemble");
  AddDetectFlags(bench, bench_opts);
  bench
      ->add_option("--baseline-k", baseline_k,
                   "Blocks detected by the full-graph baseline")
      ->capture_default_str();
  bench->add_option("--config", config_path,
                    "key=value parameter file; flags override it");

  GenerateOptions gen_opts;
  CLI::App* generate = app.add_subcommand(
      "generate", "Write a synthetic graph with planted fraud blocks");
  generate->add_option("--users", gen_opts.config.num_users)
      ->capture_default_str();
  generate->add_option("--merchants", gen_opts.config.num_merchants)
      ->capture_default_str();
  generate
      ->add_option("--avg-degree", gen_opts.config.background_avg_user_degree,
                   "Mean background degree per user")
      ->capture_default_str();
  generate
      ->add_option("--blocks", gen_opts.blocks,
                   "Planted blocks, [COUNTx]USERSxMERCHANTSxPROB[,...]")
      ->capture_default_str();
  generate
      ->add_option("--camouflage", gen_opts.config.camouflage_prob,
                   "Camouflage edges per fraud user, as a fraction of "
                   "its block degree")
      ->capture_default_str();
  generate->add_option("--seed", gen_opts.config.seed)->capture_default_str();
  generate
      ->add_option("--output", gen_opts.prefix,
                   "Output prefix: writes PREFIX.tsv, PREFIX.labels, "
                   "PREFIX.cfg")
      ->capture_default_str();
  generate->add_option("--config", config_path,
                       "key=value parameter file; flags override it");

  std::vector<std::string> expanded;
  try {
    expanded = ExpandConfigFiles(args);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o;
    std::ostringstream e_stream;
    const int code = app.exit(e, o, e_stream);
    out << o.str();
    err << e_stream.str();
    if (code == 0) return kExitOk;
    err << app.help();
    return kExitUsage;
  }

  try {
    if (detect->parsed()) return CmdDetect(detect_opts, out);
    if (sweep->parsed()) return CmdSweep(sweep_opts, labels_path, out, err);
    if (bench->parsed()) return CmdBench(bench_opts, baseline_k, out, err);
    if (generate->parsed()) return CmdGenerate(gen_opts, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace densevote::cli
