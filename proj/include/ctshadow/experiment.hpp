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

#pragma once

// Experiment configs (JSON), estimation sweeps, CSV output and the weight
// table. The CLI is a thin shell over this header.

#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ctshadow/format.hpp"
#include "ctshadow/shadows.hpp"
#include "ctshadow/stabilizer.hpp"
#include "ctshadow/weights.hpp"

namespace ctshadow {

/// A config problem, tagged with the JSON path of the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

enum class StateKind { ghz, zxz, custom };
enum class ObservableFamily { none, ghz_z, zxz_string };

struct StateConfig {
  StateKind kind = StateKind::ghz;
  size_t n = 0;        // fixed system size, or 0 when n_per_k is used
  size_t n_per_k = 0;  // system size = n_per_k * k
  std::vector<std::string> generators;

  size_t system_size(size_t k) const { return n_per_k ? n_per_k * k : n; }
};

struct ExperimentConfig {
  std::string name;
  StateConfig state;
  ObservableFamily family = ObservableFamily::none;
  std::string label;  // explicit observable when family == none
  size_t k_lo = 0, k_hi = 0;
  std::vector<Ensemble> ensembles;
  LocationMode mode = LocationMode::known;
  size_t offset = 0;
  bool random_offset = false;
  size_t block_k = 0;  // explicit block size for label observables
  uint64_t snapshots = 0;
  std::optional<uint64_t> master_seed;  // unset: caller picks a fallback
  size_t workers = 1;
  std::string output_path;

  uint64_t seed() const { return master_seed.value_or(kDefaultSeed); }
  static constexpr uint64_t kDefaultSeed = 20240917;
};

namespace detail {

using json = nlohmann::json;

inline const json& require_field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw ConfigError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(path + "." + key, "missing field");
  return *it;
}

inline uint64_t as_count(const json& v, const std::string& path) {
  if (v.is_number_unsigned()) return v.get<uint64_t>();
  if (v.is_number_integer() && v.get<int64_t>() >= 0) return static_cast<uint64_t>(v.get<int64_t>());
  throw ConfigError(path, "expected a non-negative integer");
}

inline std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path, "expected a string");
  return v.get<std::string>();
}

inline Ensemble as_ensemble(const json& v, const std::string& path) {
  try {
    return parse_ensemble(as_string(v, path));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
}

}  // namespace detail

/// Parses and validates a config document.
inline ExperimentConfig parse_config(const nlohmann::json& doc) {
  using detail::as_count;
  using detail::as_string;
  using detail::require_field;
  ExperimentConfig c;
  if (!doc.is_object()) throw ConfigError("$", "config must be a JSON object");
  c.name = doc.contains("name") ? as_string(doc["name"], "$.name") : "experiment";

  const auto& st = require_field(doc, "state", "$");
  std::string kind = as_string(require_field(st, "kind", "$.state"), "$.state.kind");
  if (kind == "ghz") c.state.kind = StateKind::ghz;
  else if (kind == "zxz") c.state.kind = StateKind::zxz;
  else if (kind == "custom") c.state.kind = StateKind::custom;
  else throw ConfigError("$.state.kind", "unknown state kind '" + kind + "' (ghz, zxz, custom)");
  if (c.state.kind == StateKind::custom) {
    const auto& gens = require_field(st, "generators", "$.state");
    if (!gens.is_array() || gens.empty()) throw ConfigError("$.state.generators", "expected a non-empty list");
    for (size_t i = 0; i < gens.size(); i++) {
      c.state.generators.push_back(as_string(gens[i], "$.state.generators[" + std::to_string(i) + "]"));
    }
    try {
      std::vector<PauliString> parsed;
      for (const auto& l : c.state.generators) parsed.push_back(PauliString::from_label(l));
      c.state.n = from_generators(parsed).num_qubits();
    } catch (const std::invalid_argument& e) {
      throw ConfigError("$.state.generators", e.what());
    }
  } else if (st.contains("n_per_k")) {
    c.state.n_per_k = as_count(st["n_per_k"], "$.state.n_per_k");
    if (c.state.n_per_k == 0) throw ConfigError("$.state.n_per_k", "must be >= 1");
  } else {
    c.state.n = as_count(require_field(st, "n", "$.state"), "$.state.n");
  }

  const auto& obs = require_field(doc, "observable", "$");
  if (obs.is_string()) {
    c.label = obs.get<std::string>();
    try {
      PauliString p = PauliString::from_label(c.label);
      if (!p.is_hermitian()) throw ConfigError("$.observable", "observable must be Hermitian");
      if (p.is_identity()) throw ConfigError("$.observable", "observable must not be the identity");
    } catch (const ParseError& e) {
      throw ConfigError("$.observable", e.what());
    }
  } else {
    std::string fam = as_string(require_field(obs, "family", "$.observable"), "$.observable.family");
    if (fam == "ghz_z") c.family = ObservableFamily::ghz_z;
    else if (fam == "zxz_string") c.family = ObservableFamily::zxz_string;
    else throw ConfigError("$.observable.family", "unknown family '" + fam + "' (ghz_z, zxz_string)");
    const auto& range = require_field(obs, "k_range", "$.observable");
    if (!range.is_array() || range.size() != 2) throw ConfigError("$.observable.k_range", "expected [lo, hi]");
    c.k_lo = as_count(range[0], "$.observable.k_range[0]");
    c.k_hi = as_count(range[1], "$.observable.k_range[1]");
    size_t min_k = c.family == ObservableFamily::zxz_string ? 3 : 1;
    if (c.k_lo < min_k || c.k_hi < c.k_lo) {
      throw ConfigError("$.observable.k_range", "need " + std::to_string(min_k) + " <= lo <= hi");
    }
  }

  const auto& ens = require_field(doc, "ensemble", "$");
  if (ens.is_array()) {
    if (ens.empty()) throw ConfigError("$.ensemble", "empty ensemble list");
    for (size_t i = 0; i < ens.size(); i++) c.ensembles.push_back(detail::as_ensemble(ens[i], "$.ensemble[" + std::to_string(i) + "]"));
  } else {
    c.ensembles.push_back(detail::as_ensemble(ens, "$.ensemble"));
  }

  if (doc.contains("location_mode")) {
    const auto& lm = doc["location_mode"];
    std::string mode = as_string(require_field(lm, "mode", "$.location_mode"), "$.location_mode.mode");
    if (mode == "known") c.mode = LocationMode::known;
    else if (mode == "sliding") c.mode = LocationMode::sliding;
    else throw ConfigError("$.location_mode.mode", "unknown mode '" + mode + "' (known, sliding)");
    if (lm.contains("offset")) c.offset = as_count(lm["offset"], "$.location_mode.offset");
    if (lm.contains("k")) c.block_k = as_count(lm["k"], "$.location_mode.k");
    if (lm.contains("random_offset")) {
      if (!lm["random_offset"].is_boolean()) throw ConfigError("$.location_mode.random_offset", "expected a boolean");
      c.random_offset = lm["random_offset"].get<bool>();
    }
  }

  c.snapshots = as_count(require_field(doc, "snapshots", "$"), "$.snapshots");
  if (c.snapshots < 2) throw ConfigError("$.snapshots", "need at least 2 snapshots");
  if (doc.contains("master_seed")) c.master_seed = as_count(doc["master_seed"], "$.master_seed");
  if (doc.contains("workers")) {
    c.workers = as_count(doc["workers"], "$.workers");
    if (c.workers == 0) throw ConfigError("$.workers", "must be >= 1");
  }
  if (doc.contains("output_path")) c.output_path = as_string(doc["output_path"], "$.output_path");
  return c;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("$", "cannot open config file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("$", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(doc);
}

/// Z_1 ... Z_k on n qubits starting at `offset` (wrapping around the ring).
inline PauliString ghz_z_observable(size_t n, size_t offset, size_t k) {
  PauliString p(n);
  for (size_t i = 0; i < k; i++) p.set((offset + i) % n, false, true);
  return p;
}

/// Z Y X ... X Y Z on k sites; at k = 3 the two Y sites coincide (Z Y Z).
inline PauliString zxz_observable(size_t n, size_t offset, size_t k) {
  if (k < 3) throw std::invalid_argument("zxz_observable: k must be >= 3");
  PauliString p(n);
  for (size_t i = 0; i < k; i++) {
    size_t q = (offset + i) % n;
    if (i == 0 || i == k - 1) p.set(q, false, true);
    else if (i == 1 || i == k - 2) p.set(q, true, true);
    else p.set(q, true, false);
  }
  return p;
}

/// One (k, ensemble) estimation job fully resolved from a config.
struct RunJob {
  size_t k = 0;
  Ensemble ensemble = Ensemble::contractive;
  StabilizerState state;
  PauliString observable;
  ProtocolSpec spec;
};

inline StabilizerState prepare_state(const StateConfig& s, size_t k) {
  size_t n = s.system_size(k);
  switch (s.kind) {
    case StateKind::ghz:
      if (n < 2) throw ConfigError("$.state", "GHZ state needs n >= 2");
      return ghz_state(n);
    case StateKind::zxz:
      if (n < 3) throw ConfigError("$.state", "cluster state needs n >= 3");
      return zxz_cluster_state(n);
    case StateKind::custom: {
      std::vector<PauliString> gens;
      for (const auto& l : s.generators) gens.push_back(PauliString::from_label(l));
      return from_generators(gens);
    }
  }
  throw ConfigError("$.state.kind", "unreachable");
}

inline constexpr uint64_t kOffsetStream = 0x6f6666736574ULL;
inline constexpr uint64_t kRowStream = 0x726f77ULL;

/// Expands a config into its jobs, in (k, ensemble) order.
inline std::vector<RunJob> plan_jobs(const ExperimentConfig& c) {
  std::vector<size_t> ks;
  if (c.family == ObservableFamily::none) {
    PauliString p = PauliString::from_label(c.label);
    size_t k = c.block_k;
    if (k == 0) {
      if (c.mode == LocationMode::sliding) throw ConfigError("$.location_mode.k", "sliding mode with a label observable needs k");
      size_t first = p.num_qubits(), last = 0;
      for (size_t q = 0; q < p.num_qubits(); q++) {
        if (p.x(q) || p.z(q)) {
          first = std::min(first, q);
          last = q;
        }
      }
      k = last - c.offset + 1;
      if (first < c.offset) throw ConfigError("$.location_mode.offset", "observable starts before the offset");
    }
    ks.push_back(k);
  } else {
    for (size_t k = c.k_lo; k <= c.k_hi; k++) ks.push_back(k);
  }

  std::vector<RunJob> jobs;
  for (size_t k : ks) {
    StabilizerState state = prepare_state(c.state, k);
    size_t n = state.num_qubits();
    if (k > n) throw ConfigError("$.observable.k_range", "k = " + std::to_string(k) + " exceeds system size " + std::to_string(n));
    size_t offset = c.offset;
    if (c.random_offset) offset = static_cast<size_t>(derive_seed(c.seed(), kOffsetStream ^ k) % n);
    PauliString obs(n);
    switch (c.family) {
      case ObservableFamily::none:
        obs = PauliString::from_label(c.label);
        if (obs.num_qubits() != n) {
          throw ConfigError("$.observable", "label has " + std::to_string(obs.num_qubits()) + " sites, system has " +
                                                std::to_string(n));
        }
        break;
      case ObservableFamily::ghz_z: obs = ghz_z_observable(n, offset, k); break;
      case ObservableFamily::zxz_string: obs = zxz_observable(n, offset, k); break;
    }
    for (size_t e = 0; e < c.ensembles.size(); e++) {
      RunJob job{k, c.ensembles[e], state, obs, {}};
      job.spec.ensemble = c.ensembles[e];
      job.spec.mode = c.mode;
      job.spec.offset = c.mode == LocationMode::known ? offset : 0;
      job.spec.k = k;
      job.spec.system_n = n;
      job.spec.snapshots = c.snapshots;
      job.spec.master_seed = derive_seed(c.seed(), kRowStream ^ (k << 8) ^ static_cast<uint64_t>(c.ensembles[e]));
      job.spec.workers = c.workers;
      if (c.mode == LocationMode::known && offset + k > n) {
        throw ConfigError("$.location_mode.offset", "block [" + std::to_string(offset) + ", " + std::to_string(offset + k) +
                                                        ") exceeds system size " + std::to_string(n));
      }
      jobs.push_back(std::move(job));
    }
  }
  return jobs;
}

/// One CSV row of a run.
struct RunRow {
  size_t k = 0;
  std::string ensemble;
  std::string mode;
  double mean = 0;
  double std_error = 0;
  double variance = 0;
  double theory_second_moment = 0;
  double exact_expectation = 0;
  uint64_t snapshots = 0;

  bool operator==(const RunRow&) const = default;
};

inline constexpr const char* kRunHeader =
    "k,ensemble,mode,mean,std_error,variance,theory_second_moment,exact_expectation,snapshots";

inline std::string format_row(const RunRow& r) {
  return std::to_string(r.k) + ',' + r.ensemble + ',' + r.mode + ',' + format_double(r.mean) + ',' +
         format_double(r.std_error) + ',' + format_double(r.variance) + ',' + format_double(r.theory_second_moment) +
         ',' + format_double(r.exact_expectation) + ',' + std::to_string(r.snapshots);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

/// Parses run CSV text (header included) back into rows.
inline std::vector<RunRow> parse_run_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kRunHeader) throw std::invalid_argument("run CSV: unexpected header");
  std::vector<RunRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != 9) throw std::invalid_argument("run CSV: expected 9 columns in '" + line + "'");
    RunRow r;
    r.k = std::stoul(cells[0]);
    r.ensemble = cells[1];
    r.mode = cells[2];
    r.mean = parse_double(cells[3]);
    r.std_error = parse_double(cells[4]);
    r.variance = parse_double(cells[5]);
    r.theory_second_moment = parse_double(cells[6]);
    r.exact_expectation = parse_double(cells[7]);
    r.snapshots = std::stoull(cells[8]);
    rows.push_back(std::move(r));
  }
  return rows;
}

inline RunRow make_row(const RunJob& job, const EstimationResult& r) {
  return RunRow{job.k,
                std::string(ensemble_name(job.ensemble)),
                std::string(location_mode_name(job.spec.mode)),
                r.mean,
                r.std_error,
                r.unbiased_variance,
                1.0 / r.weight,
                double(job.state.expectation(job.observable)),
                r.count};
}

inline RunRow execute_job(const RunJob& job, const SnapshotSink& sink = {}) {
  return make_row(job, run_estimation(job.state, job.observable, job.spec, sink));
}

/// Runs every job and writes the CSV to `out`. `progress` (optional) receives
/// one line per finished row.
inline std::vector<RunRow> run_experiment(const ExperimentConfig& c, std::ostream& out, std::ostream* progress = nullptr,
                                          const SnapshotSink& sink = {}) {
  std::vector<RunRow> rows;
  out << kRunHeader << '\n';
  for (const auto& job : plan_jobs(c)) {
    RunRow row = execute_job(job, sink);
    out << format_row(row) << '\n';
    if (progress) {
      *progress << c.name << ": k=" << row.k << ' ' << row.ensemble << " mean=" << format_double(row.mean)
                << " +- " << format_double(row.std_error) << " (exact " << format_double(row.exact_expectation) << ")\n";
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline constexpr const char* kWeightsHeader = "ensemble,k,q,weight,shadow_norm,reference";

/// Weight table for k = 1..k_max over the given table ensembles.
inline void write_weights_table(std::ostream& out, size_t k_max, const std::vector<std::string>& ensembles) {
  if (k_max == 0) throw std::invalid_argument("weights table: k_max must be >= 1");
  out << kWeightsHeader << '\n';
  for (const auto& e : ensembles) {
    for (size_t k = 1; k <= k_max; k++) {
      WeightRow row = weight_row(e, k);
      out << row.report.ensemble << ',' << k << ',' << row.report.q << ',' << format_double(row.report.pauli_weight) << ','
          << format_double(row.report.shadow_norm) << ',' << format_double(row.reference) << '\n';
    }
  }
}

}  // namespace ctshadow
