// Copyright 2026 The ctshadow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// ctshadow: command-line runner for classical shadow experiments.
//
//   ctshadow run <config.json> [--seed S] [--workers W] [--snapshots N] [-o out.csv]
//   ctshadow figure-data <config.json> ...   (both ensembles side by side)
//   ctshadow weights [--k-max K] [--ensemble NAME ...]
//   ctshadow verify [pauli|tableau|oracle|weights|all]
//
// Exit codes: 0 success, 1 failure, 2 bad configuration or arguments.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ctshadow/experiment.hpp"
#include "ctshadow/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitBadConfig = 2;

struct RunOptions {
  std::string config_path;
  std::optional<uint64_t> seed;
  std::optional<size_t> workers;
  std::optional<uint64_t> snapshots;
  std::string output;
  std::string snapshot_log;
  bool quiet = false;
};

std::optional<uint64_t> env_seed() {
  const char* v = std::getenv("SHADOWS_SEED");
  if (v == nullptr || *v == '\0') return std::nullopt;
  try {
    size_t used = 0;
    uint64_t s = std::stoull(v, &used, 0);
    if (used != std::string(v).size()) throw std::invalid_argument("trailing characters");
    return s;
  } catch (const std::exception&) {
    throw ctshadow::ConfigError("SHADOWS_SEED", std::string("not an integer: '") + v + "'");
  }
}

int do_run(const RunOptions& opt, bool both_ensembles) {
  ctshadow::ExperimentConfig cfg = ctshadow::load_config(opt.config_path);
  // Priority: --seed, then the config file, then SHADOWS_SEED.
  if (opt.seed) cfg.master_seed = opt.seed;
  else if (!cfg.master_seed) cfg.master_seed = env_seed();
  if (opt.workers) {
    if (*opt.workers == 0) throw ctshadow::ConfigError("--workers", "must be >= 1");
    cfg.workers = *opt.workers;
  }
  if (opt.snapshots) {
    if (*opt.snapshots < 2) throw ctshadow::ConfigError("--snapshots", "need at least 2 snapshots");
    cfg.snapshots = *opt.snapshots;
  }
  if (both_ensembles) cfg.ensembles = {ctshadow::Ensemble::contractive, ctshadow::Ensemble::random_clifford};
  ctshadow::plan_jobs(cfg);  // surface geometry errors before any sampling

  std::string out_path = opt.output.empty() ? cfg.output_path : opt.output;
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!out_path.empty() && out_path != "-") {
    file.open(out_path);
    if (!file) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return kExitFailure;
    }
    out = &file;
  }

  std::ofstream log;
  ctshadow::SnapshotSink sink;
  if (!opt.snapshot_log.empty()) {
    log.open(opt.snapshot_log);
    if (!log) {
      std::cerr << "error: cannot write '" << opt.snapshot_log << "'\n";
      return kExitFailure;
    }
    sink = [&log](const ctshadow::Snapshot& s) { log << ctshadow::snapshot_log_line(s) << '\n'; };
  }

  ctshadow::run_experiment(cfg, *out, opt.quiet ? nullptr : &std::cerr, sink);
  out->flush();
  if (!*out) {
    std::cerr << "error: failed writing results\n";
    return kExitFailure;
  }
  return kExitOk;
}

void add_run_options(CLI::App* cmd, RunOptions& opt) {
  cmd->add_option("config", opt.config_path, "Experiment config (JSON)")->required();
  cmd->add_option("--seed", opt.seed, "Master seed (overrides the config and SHADOWS_SEED)");
  cmd->add_option("--workers", opt.workers, "Worker threads");
  cmd->add_option("--snapshots", opt.snapshots, "Snapshots per row");
  cmd->add_option("-o,--output", opt.output, "Output CSV path ('-' for stdout)");
  cmd->add_option("--snapshot-log", opt.snapshot_log, "Write one line per snapshot to this file");
  cmd->add_flag("-q,--quiet", opt.quiet, "No progress lines on stderr");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical shadow tomography with contractive unitaries"};
  app.require_subcommand(1);

  RunOptions run_opt, fig_opt;
  auto* run = app.add_subcommand("run", "Run an estimation sweep and write CSV");
  add_run_options(run, run_opt);
  auto* fig = app.add_subcommand("figure-data", "Run a sweep with both ensembles");
  add_run_options(fig, fig_opt);

  size_t k_max = 15;
  std::vector<std::string> table_ensembles;
  auto* weights = app.add_subcommand("weights", "Print the Pauli weight / shadow norm table");
  weights->add_option("--k-max", k_max, "Largest subsystem size")->check(CLI::PositiveNumber);
  weights->add_option("--ensemble", table_ensembles, "Table ensembles (default: all)");

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "Run the built-in self checks");
  verify->add_option("suite", suite, "pauli, tableau, oracle, weights or all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadConfig;
  }

  try {
    if (*run) return do_run(run_opt, false);
    if (*fig) return do_run(fig_opt, true);
    if (*weights) {
      if (table_ensembles.empty()) {
        for (auto e : ctshadow::weight_table_ensembles()) table_ensembles.emplace_back(e);
      }
      for (const auto& e : table_ensembles) ctshadow::weight_row(e, 1);  // validate names first
      ctshadow::write_weights_table(std::cout, k_max, table_ensembles);
      return kExitOk;
    }
    if (*verify) {
      auto checks = ctshadow::verify::checks_for(suite);
      return ctshadow::verify::run_checks(checks, std::cout) ? kExitOk : kExitFailure;
    }
  } catch (const ctshadow::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitBadConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}
