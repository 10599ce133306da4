// Copyright 2026 The paulisift Authors
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

#include "src/cli.h"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "src/binning.h"
#include "src/rng.h"
#include "src/version.h"

namespace paulisift {

namespace {

uint64_t env_default_seed() {
  const char* s = std::getenv("PAULISIFT_SEED");
  if (s == nullptr || *s == '\0') return 0;
  return std::strtoull(s, nullptr, 10);
}

nlohmann::ordered_json recover_config_json(const RecoverOptions& opt) {
  nlohmann::ordered_json j;
  j["mode"] = opt.mode;
  j["xi"] = opt.xi;
  j["b"] = opt.b;
  j["c"] = opt.num_groups;
  j["p1"] = opt.p1;
  j["rep"] = opt.repetitions;
  j["eps0"] = opt.eps0;
  j["gamma1"] = opt.gamma1;
  j["gamma2"] = opt.gamma2;
  j["iters"] = opt.iterations;
  j["tau"] = opt.completion_tolerance;
  j["seed"] = opt.seed;
  j["version"] = kVersion;
  return j;
}

size_t count_above(const SparsePauliChannel& ch, double threshold) {
  size_t count = 0;
  for (size_t i = 0; i < ch.labels().size(); ++i) {
    if (ch.labels()[i] == 0) continue;
    if (ch.rates()[i] > threshold) ++count;
  }
  return count;
}

void echo_tail_counts(const SparsePauliChannel& ch) {
  std::printf("support: %zu labels (identity %.6g)\n", ch.support_size(),
              ch.identity_rate());
  for (double t : {1e-5, 1e-6, 1e-8})
    std::printf("rates > %.0e: %zu\n", t, count_above(ch, t));
}

}  // namespace

SubsamplingDesign build_design(uint32_t n, const RecoverOptions& opt) {
  uint32_t b = opt.b == 0 ? n : opt.b;
  uint64_t design_seed = splitmix64(opt.seed ^ 0x9d5c0f5b3f8a11e7ull);
  if (opt.mode == "heuristic") {
    if (b == n) return local_stabilizer_design(n, opt.num_groups, design_seed).first;
    return heuristic_random_design(n, b, opt.num_groups, design_seed);
  }
  return random_design(n, b, opt.num_groups, opt.p1, opt.repetitions,
                       /*include_basis=*/false, design_seed);
}

RecoverOutcome run_recovery(const SparsePauliChannel& truth,
                            const RecoverOptions& opt) {
  if (opt.mode != "provable" && opt.mode != "heuristic")
    throw std::invalid_argument("mode must be provable or heuristic");
  const uint32_t n = truth.num_qubits();
  SubsamplingDesign design = build_design(n, opt);

  EigenvalueOracle oracle(truth, opt.xi, splitmix64(opt.seed ^ 0x6b79a371c2e4f0d3ull),
                          EigenvalueOracle::Mode::kGaussian,
                          /*count_distinct_only=*/true);

  auto start = std::chrono::steady_clock::now();
  BinTensor bins = subsample_bins(oracle, design);

  PeelConfig cfg;
  cfg.max_iterations = opt.iterations;
  cfg.completion_tolerance = opt.completion_tolerance;
  cfg.detector.gamma1 = opt.gamma1;
  cfg.detector.gamma2 = opt.gamma2;
  if (opt.eps0 > 0.0) cfg.detector.eps0 = opt.eps0;

  RecoverOutcome outcome;
  outcome.result = (opt.mode == "heuristic") ? noisy_peel(bins, design, cfg)
                                             : peel(bins, design, cfg);
  auto stop = std::chrono::steady_clock::now();
  outcome.wall_time_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();

  BoundParams bounds;
  bounds.xi = opt.xi;
  bounds.num_bins = bins.num_bins;
  bounds.sparsity = 0;
  for (size_t i = 0; i < truth.labels().size(); ++i)
    if (opt.eps0 <= 0.0 || truth.rates()[i] >= opt.eps0) ++bounds.sparsity;
  outcome.report = compare(truth, outcome.result, opt.eps0, bounds);
  outcome.report.wall_time_ms = outcome.wall_time_ms;
  outcome.queries_total = outcome.result.total_queries;
  outcome.queries_distinct = outcome.result.distinct_queries;
  return outcome;
}

namespace {

struct GenChannelArgs {
  uint32_t n = 0;
  uint64_t s = 0;
  double eps0 = 1e-6;
  double p_id = 0.86;
  double eps_max = 1e-2;
  std::vector<std::string> plants;
  uint64_t seed = 0;
  std::string out;
};

int cmd_gen_channel(const GenChannelArgs& a) {
  SparsePauliChannel ch =
      a.s > 0 ? random_sparse_channel(a.n, a.s, a.eps0, a.p_id, a.seed, a.eps_max)
              : tail_profile_channel(a.n, a.p_id, default_tail_profile(), a.seed);
  if (!a.plants.empty()) {
    std::vector<std::pair<PauliLabel, double>> plants;
    for (const std::string& entry : a.plants) {
      size_t colon = entry.rfind(':');
      if (colon == std::string::npos)
        throw std::invalid_argument("--plant expects LABEL:RATE, got " + entry);
      plants.emplace_back(label_from_string(entry.substr(0, colon)),
                          std::stod(entry.substr(colon + 1)));
    }
    ch = plant_paulis(ch, plants);
  }

  nlohmann::ordered_json config;
  config["command"] = "gen-channel";
  config["n"] = a.n;
  config["s"] = a.s;
  config["eps0"] = a.eps0;
  config["p_id"] = a.p_id;
  config["eps_max"] = a.eps_max;
  config["plant"] = a.plants;
  config["seed"] = a.seed;
  save_channel(ch, a.out, &config);
  echo_tail_counts(ch);
  std::printf("wrote %s\n", a.out.c_str());
  return 0;
}

struct RecoverArgs {
  std::string channel;
  std::string out;
  RecoverOptions opt;
};

int cmd_recover(const RecoverArgs& a) {
  SparsePauliChannel truth = load_channel(a.channel);
  RecoverOutcome outcome = run_recovery(truth, a.opt);

  nlohmann::ordered_json config = recover_config_json(a.opt);
  config["command"] = "recover";
  config["channel"] = a.channel;
  save_result(outcome.result, a.out + ".result.json", &config);
  save_report(outcome.report, a.out + ".report.json", &config);
  save_report_csv(outcome.report, a.out + ".report.csv");

  bool complete = outcome.result.status == RecoveryStatus::kComplete;
  std::printf("status: %s\n", complete ? "complete" : "incomplete");
  std::printf("recovered: %zu labels in %u sweeps\n", outcome.result.estimates.size(),
              outcome.result.iterations_used);
  std::printf("queries: %llu total, %llu distinct\n",
              static_cast<unsigned long long>(outcome.queries_total),
              static_cast<unsigned long long>(outcome.queries_distinct));
  std::printf("linf: %.3e (bound %.3e)  tv: %.3e (bound %.3e)\n",
              outcome.report.linf, outcome.report.bound_linf, outcome.report.tv,
              outcome.report.bound_tv);
  std::printf("wall time: %.1f ms\n", outcome.wall_time_ms);
  std::printf("wrote %s.result.json, %s.report.json, %s.report.csv\n",
              a.out.c_str(), a.out.c_str(), a.out.c_str());
  return complete ? 0 : 2;
}

struct SweepArgs {
  std::string channel;
  std::string xi_list;
  uint32_t trials = 1;
  std::string out_dir;
  RecoverOptions opt;
};

int cmd_sweep(const SweepArgs& a) {
  std::vector<double> xis;
  std::stringstream ss(a.xi_list);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (!token.empty()) xis.push_back(std::stod(token));
  }
  if (xis.empty()) throw std::invalid_argument("--xi-list must name at least one noise level");

  SparsePauliChannel truth = load_channel(a.channel);
  std::filesystem::create_directories(a.out_dir);

  struct Item {
    size_t xi_index;
    uint32_t trial;
  };
  std::vector<Item> items;
  for (size_t x = 0; x < xis.size(); ++x)
    for (uint32_t t = 0; t < a.trials; ++t) items.push_back({x, t});
  std::vector<RecoverOutcome> outcomes(items.size());

  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= items.size()) return;
      RecoverOptions opt = a.opt;
      opt.xi = xis[items[i].xi_index];
      opt.seed = splitmix64(a.opt.seed ^
                            ((static_cast<uint64_t>(items[i].xi_index) << 32) |
                             items[i].trial));
      outcomes[i] = run_recovery(truth, opt);
    }
  };
  size_t threads = std::min<size_t>(std::max(1u, std::thread::hardware_concurrency()),
                                    items.size());
  std::vector<std::thread> pool;
  for (size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  std::ofstream scatter(a.out_dir + "/scatter.csv");
  std::ofstream tv(a.out_dir + "/tv.csv");
  if (!scatter || !tv) throw std::runtime_error("cannot write into " + a.out_dir);
  scatter << "xi,trial,pauli,truth,estimate\n";
  tv << "xi,trial,tv,status\n";
  char buf[160];
  size_t complete = 0;
  for (size_t i = 0; i < items.size(); ++i) {
    double xi = xis[items[i].xi_index];
    const RecoverOutcome& oc = outcomes[i];
    for (const auto& le : oc.report.per_label) {
      snprintf(buf, sizeof(buf), "%.6g,%u,%s,%.17g,%.17g", xi, items[i].trial,
               label_to_string(PauliLabel(truth.num_qubits(), le.label)).c_str(),
               le.truth, le.estimate);
      scatter << buf << "\n";
    }
    bool ok = oc.result.status == RecoveryStatus::kComplete;
    complete += ok ? 1 : 0;
    snprintf(buf, sizeof(buf), "%.6g,%u,%.17g,%s", xi, items[i].trial, oc.report.tv,
             ok ? "complete" : "incomplete");
    tv << buf << "\n";
  }
  std::printf("%zu/%zu runs complete; wrote %s/scatter.csv and %s/tv.csv\n", complete,
              items.size(), a.out_dir.c_str(), a.out_dir.c_str());
  return 0;
}

struct DesignArgs {
  uint32_t n = 0;
  size_t c = 2;
  int type = 1;
  uint64_t seed = 0;
  std::string out;
};

int cmd_design(const DesignArgs& a) {
  nlohmann::ordered_json config;
  config["command"] = "design";
  config["n"] = a.n;
  config["c"] = a.c;
  config["type"] = a.type;
  config["seed"] = a.seed;
  config["version"] = kVersion;
  if (a.type == 1) {
    auto [design, experiments] = local_stabilizer_design(a.n, a.c, a.seed);
    save_design(design, &experiments, a.out, &config);
    std::printf("type 1 design: %zu experiments (%zu groups x (2*%u+1))\n",
                experiments.experiment_count(), a.c, a.n);
  } else {
    ExperimentDesign experiments = type2_design(a.n);
    save_design(experiments, a.out, &config);
    std::printf("type 2 design: %zu experiments (1 + 8*%u*(%u-2))\n",
                experiments.experiment_count(), a.n, a.n);
  }
  std::printf("wrote %s\n", a.out.c_str());
  return 0;
}

void add_recover_options(CLI::App* cmd, RecoverOptions& opt, uint64_t default_seed,
                         bool with_xi = true) {
  cmd->add_option("--mode", opt.mode, "provable or heuristic")
      ->check(CLI::IsMember({"provable", "heuristic"}))
      ->capture_default_str();
  if (with_xi) cmd->add_option("--xi", opt.xi, "oracle noise stddev")->required();
  cmd->add_option("--b", opt.b, "bin width (0: n)")->capture_default_str();
  cmd->add_option("--c", opt.num_groups, "subsampling groups")->capture_default_str();
  cmd->add_option("--p1", opt.p1, "random offsets per group")->capture_default_str();
  cmd->add_option("--rep", opt.repetitions, "index read repetitions")
      ->capture_default_str();
  cmd->add_option("--eps0", opt.eps0, "declared minimum rate")->capture_default_str();
  cmd->add_option("--gamma1", opt.gamma1, "zero-ton slack")->capture_default_str();
  cmd->add_option("--gamma2", opt.gamma2, "single-ton slack")->capture_default_str();
  cmd->add_option("--iters", opt.iterations, "max sweeps (0: auto)")
      ->capture_default_str();
  cmd->add_option("--tau", opt.completion_tolerance, "completion tolerance (0: auto)")
      ->capture_default_str();
  opt.seed = default_seed;
  cmd->add_option("--seed", opt.seed, "master seed")->capture_default_str();
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"sparse Pauli error rate estimation via subsampled transforms"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  uint64_t default_seed = env_default_seed();

  GenChannelArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen-channel", "write a synthetic channel");
  gen_cmd->add_option("--n", gen.n, "qubits")->required();
  gen_cmd->add_option("--s", gen.s, "support size (0: tail profile)")
      ->capture_default_str();
  gen_cmd->add_option("--eps0", gen.eps0, "minimum nonzero rate")->capture_default_str();
  gen_cmd->add_option("--p-id", gen.p_id, "identity mass")->capture_default_str();
  gen_cmd->add_option("--eps-max", gen.eps_max, "rate magnitude cap")
      ->capture_default_str();
  gen_cmd->add_option("--plant", gen.plants, "extra LABEL:RATE entries");
  gen.seed = default_seed;
  gen_cmd->add_option("--seed", gen.seed, "master seed")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "output channel JSON")->required();

  RecoverArgs rec;
  CLI::App* rec_cmd = app.add_subcommand("recover", "run the recovery pipeline");
  rec_cmd->add_option("--channel", rec.channel, "channel JSON")
      ->required()
      ->check(CLI::ExistingFile);
  add_recover_options(rec_cmd, rec.opt, default_seed);
  rec_cmd->add_option("--out", rec.out, "output path prefix")->required();

  SweepArgs sweep;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "repeat recovery across noise levels");
  sweep_cmd->add_option("--channel", sweep.channel, "channel JSON")
      ->required()
      ->check(CLI::ExistingFile);
  sweep_cmd->add_option("--xi-list", sweep.xi_list, "comma-separated noise levels")
      ->required();
  sweep_cmd->add_option("--trials", sweep.trials, "trials per noise level")
      ->required();
  sweep_cmd->add_option("--out-dir", sweep.out_dir, "output directory")->required();
  add_recover_options(sweep_cmd, sweep.opt, default_seed, /*with_xi=*/false);

  DesignArgs design;
  CLI::App* design_cmd = app.add_subcommand("design", "write an experiment design");
  design_cmd->add_option("--n", design.n, "qubits")->required();
  design_cmd->add_option("--c", design.c, "subsampling groups")->capture_default_str();
  design_cmd->add_option("--type", design.type, "1 (linear) or 2 (quadratic)")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  design.seed = default_seed;
  design_cmd->add_option("--seed", design.seed, "master seed")->capture_default_str();
  design_cmd->add_option("--out", design.out, "output design JSON")->required();

  try {
    app.parse(argc, argv);
    if (gen_cmd->parsed()) return cmd_gen_channel(gen);
    if (rec_cmd->parsed()) return cmd_recover(rec);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep);
    if (design_cmd->parsed()) return cmd_design(design);
    return 1;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace paulisift
