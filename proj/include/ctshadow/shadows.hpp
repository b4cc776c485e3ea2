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

// Classical shadow estimation of Pauli observables with composite unitaries
//     U = (second local layer) (block unitaries) (first local layer)
// followed by a computational-basis measurement.
//
// Reproducibility contract: snapshot i draws everything (structure, circuit,
// measurement) from streams derived from derive_seed(master_seed, i). Workers
// process contiguous index ranges and accumulate integer tallies, so results
// are bit-identical for any worker count.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ctshadow/clifford.hpp"
#include "ctshadow/format.hpp"
#include "ctshadow/pauli.hpp"
#include "ctshadow/rng.hpp"
#include "ctshadow/stabilizer.hpp"
#include "ctshadow/weights.hpp"

namespace ctshadow {

enum class LocationMode { known, sliding };

inline std::string_view location_mode_name(LocationMode m) { return m == LocationMode::known ? "known" : "sliding"; }

struct ProtocolSpec {
  Ensemble ensemble = Ensemble::contractive;
  LocationMode mode = LocationMode::known;
  size_t offset = 0;  // first block qubit, known mode only
  size_t k = 1;       // block size
  size_t system_n = 1;
  uint64_t snapshots = 0;
  uint64_t master_seed = 0;
  size_t workers = 1;

  void validate() const {
    if (k == 0) throw std::invalid_argument("protocol: block size k must be >= 1");
    if (system_n < k) throw std::invalid_argument("protocol: system_n must be >= k");
    if (mode == LocationMode::known && offset + k > system_n) {
      throw std::invalid_argument("protocol: known block [offset, offset + k) exceeds system_n");
    }
    if (workers == 0) throw std::invalid_argument("protocol: workers must be >= 1");
  }

  size_t measured_qubits() const { return mode == LocationMode::known ? k : system_n; }

  /// Known: one layout. Sliding: k layouts when k divides system_n, otherwise
  /// system_n layouts (n0 blocks of k plus one remainder block, slid one qubit
  /// at a time around the ring).
  size_t num_structures() const {
    if (mode == LocationMode::known) return 1;
    return system_n % k == 0 ? k : system_n;
  }
};

/// Sites of each block of one circuit structure.
struct BlockLayout {
  std::vector<std::vector<size_t>> blocks;
};

inline BlockLayout structure_layout(const ProtocolSpec& spec, size_t structure_id) {
  spec.validate();
  if (structure_id >= spec.num_structures()) {
    throw std::out_of_range("structure_id " + std::to_string(structure_id) + " out of range (" +
                            std::to_string(spec.num_structures()) + " structures)");
  }
  BlockLayout layout;
  if (spec.mode == LocationMode::known) {
    std::vector<size_t> sites(spec.k);
    for (size_t j = 0; j < spec.k; j++) sites[j] = spec.offset + j;
    layout.blocks.push_back(std::move(sites));
    return layout;
  }
  const size_t n = spec.system_n;
  size_t start = structure_id;
  size_t covered = 0;
  while (covered < n) {
    size_t len = std::min(spec.k, n - covered);
    std::vector<size_t> sites(len);
    for (size_t j = 0; j < len; j++) sites[j] = (start + covered + j) % n;
    layout.blocks.push_back(std::move(sites));
    covered += len;
  }
  return layout;
}

/// All layouts of a sliding protocol (or the single known-mode layout).
inline std::vector<BlockLayout> sliding_structures(const ProtocolSpec& spec) {
  std::vector<BlockLayout> out;
  for (size_t s = 0; s < spec.num_structures(); s++) out.push_back(structure_layout(spec, s));
  return out;
}

/// Exact Pauli weight of `o` under the protocol: the layout average of the
/// product of per-block weights, each depending only on the block span and how
/// many of its sites the observable touches.
inline double observable_weight(const ProtocolSpec& spec, const PauliString& o) {
  detail::require_same_size(spec.system_n, o.num_qubits(), "observable_weight");
  double total = 0;
  const size_t structures = spec.num_structures();
  for (size_t s = 0; s < structures; s++) {
    BlockLayout layout = structure_layout(spec, s);
    size_t covered_support = 0;
    double w = 1;
    for (const auto& sites : layout.blocks) {
      size_t support = 0;
      for (size_t q : sites) support += (o.x(q) || o.z(q)) ? 1 : 0;
      covered_support += support;
      w *= block_weight(spec.ensemble, sites.size(), support);
    }
    if (covered_support != o.operator_size()) {
      throw std::invalid_argument("observable " + o.str() + " is not supported inside the measured region");
    }
    total += w;
  }
  return total / double(structures);
}

namespace detail {

inline std::shared_ptr<const CliffordTableau> cached_contractive(size_t k) {
  thread_local std::map<size_t, std::shared_ptr<const CliffordTableau>> local;
  auto it = local.find(k);
  if (it != local.end()) return it->second;
  static std::mutex mu;
  static std::map<size_t, std::shared_ptr<const CliffordTableau>> shared;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = shared[k];
  if (!slot) slot = std::make_shared<const CliffordTableau>(contractive_unitary(k));
  local[k] = slot;
  return slot;
}

}  // namespace detail

/// One draw of the composite unitary, kept in factored form.
struct Composite {
  size_t structure_id = 0;
  BlockLayout layout;
  LocalLayer first;
  std::vector<std::shared_ptr<const CliffordTableau>> middle;  // per block; null = identity
  LocalLayer second;

  /// p <- U p U†. The scratch strings avoid allocation in hot loops.
  void apply(PauliString& p, PauliString& small_in, PauliString& small_out) const {
    first.apply(p);
    for (size_t b = 0; b < layout.blocks.size(); b++) {
      if (middle[b] == nullptr) continue;
      const auto& sites = layout.blocks[b];
      if (small_in.num_qubits() != sites.size()) small_in = PauliString(sites.size());
      small_in.set_phase(0);
      bool touched = false;
      for (size_t j = 0; j < sites.size(); j++) {
        bool xq = p.x(sites[j]), zq = p.z(sites[j]);
        small_in.set(j, xq, zq);
        touched = touched || xq || zq;
        p.set(sites[j], false, false);
      }
      if (!touched) continue;
      middle[b]->conjugate_into(small_in, small_out);
      for (size_t j = 0; j < sites.size(); j++) p.set(sites[j], small_out.x(j), small_out.z(j));
      p.add_phase(small_out.phase());
    }
    second.apply(p);
  }

  PauliString conjugate(const PauliString& p) const {
    PauliString out = p, a, b;
    apply(out, a, b);
    return out;
  }

  /// The full n-qubit tableau of U.
  CliffordTableau tableau() const {
    size_t n = first.element.size();
    CliffordTableau t = first.tableau();
    for (size_t b = 0; b < layout.blocks.size(); b++) {
      if (middle[b] == nullptr) continue;
      t = compose(embed(*middle[b], n, layout.blocks[b]), t);
    }
    return compose(second.tableau(), t);
  }
};

/// Draws the composite for a given structure: first local layer on every block
/// qubit, then the ensemble's block unitaries, then a second local layer.
template <class Rng>
Composite draw_composite(const ProtocolSpec& spec, size_t structure_id, Rng& rng) {
  Composite c;
  c.structure_id = structure_id;
  c.layout = structure_layout(spec, structure_id);
  std::vector<size_t> sites;
  for (const auto& block : c.layout.blocks) sites.insert(sites.end(), block.begin(), block.end());
  c.first = LocalLayer::random(spec.system_n, sites, rng);
  for (const auto& block : c.layout.blocks) {
    switch (spec.ensemble) {
      case Ensemble::identity:
        c.middle.push_back(nullptr);
        break;
      case Ensemble::contractive:
        c.middle.push_back(detail::cached_contractive(block.size()));
        break;
      case Ensemble::random_clifford:
        c.middle.push_back(std::make_shared<const CliffordTableau>(random_clifford(block.size(), rng)));
        break;
    }
  }
  c.second = LocalLayer::random(spec.system_n, sites, rng);
  return c;
}

/// Embedded tableau of one composite draw for a fixed structure.
template <class Rng>
CliffordTableau build_composite(const ProtocolSpec& spec, size_t structure_id, Rng& rng) {
  return draw_composite(spec, structure_id, rng).tableau();
}

/// The composite a snapshot with this circuit seed used (structure included).
inline Composite composite_from_seed(const ProtocolSpec& spec, uint64_t circuit_seed) {
  SplitMix64 rng(circuit_seed);
  size_t structure = spec.num_structures() == 1 ? 0 : static_cast<size_t>(rng.below(spec.num_structures()));
  return draw_composite(spec, structure, rng);
}

struct Snapshot {
  size_t structure_id = 0;
  uint64_t circuit_seed = 0;
  BitString outcome;
  std::optional<double> estimate;
};

inline std::vector<size_t> measured_sites(const ProtocolSpec& spec) {
  std::vector<size_t> sites(spec.measured_qubits());
  size_t base = spec.mode == LocationMode::known ? spec.offset : 0;
  for (size_t j = 0; j < sites.size(); j++) sites[j] = base + j;
  return sites;
}

/// Restriction of p to `sites` (which must carry all of p's support).
inline PauliString restrict_to(const PauliString& p, std::span<const size_t> sites) {
  PauliString out(sites.size());
  out.set_phase(p.phase());
  size_t kept = 0;
  for (size_t j = 0; j < sites.size(); j++) {
    out.set(j, p.x(sites[j]), p.z(sites[j]));
    kept += (p.x(sites[j]) || p.z(sites[j])) ? 1 : 0;
  }
  if (kept != p.operator_size()) throw std::invalid_argument("observable " + p.str() + " extends outside the measured qubits");
  return out;
}

namespace detail {

inline uint64_t measurement_seed(uint64_t circuit_seed) { return derive_seed(circuit_seed, 0x6d656173ULL); }

template <class Rng>
void measure_sites(StabilizerState& state, std::span<const size_t> sites, BitString& out, Rng& rng) {
  for (size_t j = 0; j < sites.size(); j++) out.set(j, state.measure(sites[j], rng));
}

}  // namespace detail

/// One snapshot from an explicit circuit seed; the estimate is left unset.
inline Snapshot sample_snapshot(const StabilizerState& prepared, const ProtocolSpec& spec, uint64_t circuit_seed) {
  spec.validate();
  detail::require_same_size(spec.system_n, prepared.num_qubits(), "sample_snapshot");
  Composite c = composite_from_seed(spec, circuit_seed);
  StabilizerState state = prepared;
  PauliString a, b;
  state.transform_rows([&](PauliString& row) { c.apply(row, a, b); });
  auto sites = measured_sites(spec);
  Snapshot snap{c.structure_id, circuit_seed, BitString(sites.size()), std::nullopt};
  SplitMix64 mrng(detail::measurement_seed(circuit_seed));
  detail::measure_sites(state, sites, snap.outcome, mrng);
  return snap;
}

template <class Rng>
Snapshot sample_snapshot(const StabilizerState& prepared, const ProtocolSpec& spec, Rng& rng) {
  return sample_snapshot(prepared, spec, static_cast<uint64_t>(rng()));
}

/// w^-1 <z| U O U† |z> with the exact analytic weight of O under the protocol.
inline double estimate_single(const Snapshot& snap, const PauliString& o, const ProtocolSpec& spec) {
  double w = observable_weight(spec, o);
  Composite c = composite_from_seed(spec, snap.circuit_seed);
  if (c.structure_id != snap.structure_id) throw std::invalid_argument("estimate_single: snapshot structure mismatch");
  PauliString evolved = c.conjugate(o);
  auto sites = measured_sites(spec);
  int trace = expectation_on_basis_state(restrict_to(evolved, sites), snap.outcome);
  return double(trace) / w;
}

/// Exact mergeable tally of estimates x = t * scale with t in {-1, 0, +1}.
struct ShadowTally {
  uint64_t count = 0;
  int64_t signed_sum = 0;  // sum of t
  uint64_t nonzero = 0;    // sum of t^2
  double scale = 1;        // 1/w

  void add(int t) {
    count++;
    signed_sum += t;
    nonzero += (t != 0);
  }

  ShadowTally& merge(const ShadowTally& other) {
    count += other.count;
    signed_sum += other.signed_sum;
    nonzero += other.nonzero;
    return *this;
  }

  bool operator==(const ShadowTally&) const = default;
};

struct EstimationResult {
  uint64_t count = 0;
  double mean = 0;
  double second_moment = 0;
  double unbiased_variance = 0;
  double std_error = 0;
  double weight = 1;  // analytic Pauli weight used for inversion
  ShadowTally tally;

  static EstimationResult from_tally(const ShadowTally& t) {
    EstimationResult r;
    r.tally = t;
    r.count = t.count;
    r.weight = 1.0 / t.scale;
    if (t.count == 0) return r;
    double n = double(t.count);
    double sum = double(t.signed_sum);
    r.mean = t.scale * sum / n;
    r.second_moment = t.scale * t.scale * double(t.nonzero) / n;
    if (t.count > 1) {
      r.unbiased_variance = t.scale * t.scale * (double(t.nonzero) - sum * sum / n) / (n - 1);
      r.std_error = std::sqrt(r.unbiased_variance / n);
    }
    return r;
  }

  /// Relative standard error of second_moment around 1/w: sqrt((1-w)/(w N)).
  double second_moment_rel_std() const { return std::sqrt((1 - weight) / (weight * double(count))); }
};

/// Optional per-snapshot record sink (called in snapshot order).
using SnapshotSink = std::function<void(const Snapshot&)>;

inline std::string snapshot_log_line(const Snapshot& s) {
  return std::to_string(s.structure_id) + '\t' + format_hex(s.circuit_seed) + '\t' + s.outcome.str() + '\t' +
         format_double(s.estimate.value_or(0.0));
}

namespace detail {

// Runs body(index_begin, index_end, worker) over contiguous chunks.
template <class F>
void parallel_chunks(uint64_t total, size_t workers, F&& body) {
  workers = std::max<size_t>(1, std::min<uint64_t>(workers, std::max<uint64_t>(total, 1)));
  if (workers == 1) {
    body(uint64_t{0}, total, size_t{0});
    return;
  }
  std::vector<std::thread> threads;
  std::exception_ptr failure;
  std::mutex mu;
  for (size_t w = 0; w < workers; w++) {
    uint64_t begin = total * w / workers;
    uint64_t end = total * (w + 1) / workers;
    threads.emplace_back([&, begin, end, w] {
      try {
        body(begin, end, w);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace detail

/// Samples spec.snapshots snapshots of `prepared` and aggregates the estimates
/// of `o`.
inline EstimationResult run_estimation(const StabilizerState& prepared, const PauliString& o, const ProtocolSpec& spec,
                                       const SnapshotSink& sink = {}) {
  spec.validate();
  if (spec.snapshots < 2) throw std::invalid_argument("run_estimation: need at least 2 snapshots");
  detail::require_same_size(spec.system_n, prepared.num_qubits(), "run_estimation");
  if (!o.is_hermitian()) throw std::invalid_argument("run_estimation: observable must be Hermitian");
  const double w = observable_weight(spec, o);
  const auto sites = measured_sites(spec);
  restrict_to(o, sites);  // support check up front
  detail::cached_contractive(spec.k);

  std::vector<ShadowTally> partial(spec.workers, ShadowTally{0, 0, 0, 1.0 / w});
  std::vector<std::vector<Snapshot>> logs(sink ? spec.workers : 0);

  detail::parallel_chunks(spec.snapshots, spec.workers, [&](uint64_t begin, uint64_t end, size_t worker) {
    StabilizerState scratch = prepared;
    PauliString evolved(spec.system_n), a, b;
    BitString outcome(sites.size());
    ShadowTally& tally = partial[worker];
    for (uint64_t i = begin; i < end; i++) {
      uint64_t seed = derive_seed(spec.master_seed, i);
      Composite c = composite_from_seed(spec, seed);
      scratch = prepared;
      scratch.transform_rows([&](PauliString& row) { c.apply(row, a, b); });
      SplitMix64 mrng(detail::measurement_seed(seed));
      detail::measure_sites(scratch, sites, outcome, mrng);
      evolved = o;
      c.apply(evolved, a, b);
      int t = 0;
      if (evolved.is_diagonal()) {
        int parity = 0;
        for (size_t j = 0; j < sites.size(); j++) parity ^= (evolved.z(sites[j]) && outcome[j]) ? 1 : 0;
        t = ((evolved.phase() == 2) ^ parity) ? -1 : 1;
      }
      tally.add(t);
      if (sink) logs[worker].push_back(Snapshot{c.structure_id, seed, outcome, double(t) / w});
    }
  });

  ShadowTally total{0, 0, 0, 1.0 / w};
  for (const auto& p : partial) total.merge(p);
  if (sink) {
    for (const auto& chunk : logs) {
      for (const auto& s : chunk) sink(s);
    }
  }
  return EstimationResult::from_tally(total);
}

/// Monte-Carlo Pauli weight: the fraction of sampled composites U for which
/// U O U† is diagonal. For Clifford U this equals (1/D) sum_z <z|U O U†|z>^2.
inline double empirical_pauli_weight(const PauliString& o, const ProtocolSpec& spec, uint64_t samples) {
  spec.validate();
  if (samples == 0) throw std::invalid_argument("empirical_pauli_weight: need at least one sample");
  detail::require_same_size(spec.system_n, o.num_qubits(), "empirical_pauli_weight");
  detail::cached_contractive(spec.k);
  std::vector<uint64_t> hits(spec.workers, 0);
  const uint64_t master = derive_seed(spec.master_seed, 0x77656967ULL);
  detail::parallel_chunks(samples, spec.workers, [&](uint64_t begin, uint64_t end, size_t worker) {
    PauliString p, a, b;
    for (uint64_t i = begin; i < end; i++) {
      Composite c = composite_from_seed(spec, derive_seed(master, i));
      p = o;
      c.apply(p, a, b);
      hits[worker] += p.is_diagonal();
    }
  });
  uint64_t total = 0;
  for (uint64_t h : hits) total += h;
  return double(total) / double(samples);
}

}  // namespace ctshadow
