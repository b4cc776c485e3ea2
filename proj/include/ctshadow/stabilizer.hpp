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

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctshadow/clifford.hpp"
#include "ctshadow/pauli.hpp"

namespace ctshadow {

namespace detail {

// Row-reduces `rows` (each a bit vector of `width` bits in words) over GF(2),
// carrying a companion matrix along. Returns the rank; rows are permuted and
// reduced in place.
struct Gf2Rows {
  size_t width;
  size_t words;
  std::vector<std::vector<uint64_t>> rows;
  std::vector<std::vector<uint64_t>> track;

  bool get(size_t r, size_t c) const { return (rows[r][c >> 6] >> (c & 63)) & 1; }

  static void xor_into(std::vector<uint64_t>& dst, const std::vector<uint64_t>& src) {
    for (size_t i = 0; i < dst.size(); i++) dst[i] ^= src[i];
  }

  // Full Gauss-Jordan. Returns pivot columns of the first `rank` rows.
  std::vector<size_t> reduce() {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < width && r < rows.size(); c++) {
      size_t found = rows.size();
      for (size_t i = r; i < rows.size(); i++) {
        if (get(i, c)) {
          found = i;
          break;
        }
      }
      if (found == rows.size()) continue;
      std::swap(rows[r], rows[found]);
      std::swap(track[r], track[found]);
      for (size_t i = 0; i < rows.size(); i++) {
        if (i != r && get(i, c)) {
          xor_into(rows[i], rows[r]);
          xor_into(track[i], track[r]);
        }
      }
      pivots.push_back(c);
      r++;
    }
    return pivots;
  }
};

}  // namespace detail

/// A pure n-qubit stabilizer state in destabilizer/stabilizer form.
///
/// Stabilizers carry exact signs; destabilizers are tracked only up to sign
/// (their signs never influence measurement or expectations).
class StabilizerState {
 public:
  StabilizerState() = default;

  /// |0...0>.
  explicit StabilizerState(size_t n) : n_(n) {
    for (size_t q = 0; q < n; q++) {
      destab_.emplace_back(n);
      destab_.back().set(q, true, false);
      stab_.emplace_back(n);
      stab_.back().set(q, false, true);
    }
  }

  /// The state stabilized by `gens`: n independent, commuting, Hermitian strings.
  /// Destabilizers are synthesized by symplectic completion.
  static StabilizerState from_generators(const std::vector<PauliString>& gens) {
    if (gens.empty()) throw std::invalid_argument("from_generators: no generators");
    size_t n = gens.front().num_qubits();
    if (gens.size() != n) {
      throw std::invalid_argument("from_generators: need exactly " + std::to_string(n) +
                                  " generators, got " + std::to_string(gens.size()));
    }
    for (const auto& g : gens) {
      detail::require_same_size(n, g.num_qubits(), "from_generators");
      if (!g.is_hermitian()) throw std::invalid_argument("from_generators: non-Hermitian generator " + g.str());
    }
    for (size_t i = 0; i < n; i++) {
      for (size_t j = i + 1; j < n; j++) {
        if (gens[i].anticommutes(gens[j])) {
          throw std::invalid_argument("from_generators: generators " + gens[i].str() + " and " + gens[j].str() +
                                      " anticommute");
        }
      }
    }

    // Independence. A dependent set either repeats a group element or yields -I.
    detail::Gf2Rows indep{2 * n, detail::words_for(2 * n), {}, {}};
    for (size_t i = 0; i < n; i++) {
      indep.rows.push_back(pack(gens[i]));
      std::vector<uint64_t> t(detail::words_for(n), 0);
      t[i >> 6] |= uint64_t{1} << (i & 63);
      indep.track.push_back(std::move(t));
    }
    size_t rank = indep.reduce().size();
    if (rank < n) {
      // Row `rank` reduced to zero; its tracked combination multiplies to ±I.
      PauliString prod(n);
      for (size_t i = 0; i < n; i++) {
        if ((indep.track[rank][i >> 6] >> (i & 63)) & 1) prod *= gens[i];
      }
      if (prod.phase() == 2) throw std::invalid_argument("from_generators: generators produce -I");
      throw std::invalid_argument("from_generators: generators are not independent");
    }

    // Solve <d_i, s_j> = delta_ij. With row_j = (z_j | x_j), <v, s_j> = row_j . v.
    detail::Gf2Rows sys{2 * n, detail::words_for(2 * n), {}, {}};
    for (size_t j = 0; j < n; j++) {
      sys.rows.push_back(pack_swapped(gens[j]));
      std::vector<uint64_t> t(detail::words_for(n), 0);
      t[j >> 6] |= uint64_t{1} << (j & 63);
      sys.track.push_back(std::move(t));
    }
    std::vector<size_t> pivots = sys.reduce();
    // Reduced row r has a single pivot at column pivots[r] and equals the
    // combination track[r] of original rows. Setting v = e_{pivot r} gives
    // reduced-row products e_r, i.e. original products = track^-1 e_r. We want
    // original products e_i: take v_i = sum_r track[r]_i e_{pivot r}.
    StabilizerState st;
    st.n_ = n;
    st.stab_ = gens;
    for (size_t i = 0; i < n; i++) {
      PauliString d(n);
      for (size_t r = 0; r < n; r++) {
        if ((sys.track[r][i >> 6] >> (i & 63)) & 1) {
          size_t c = pivots[r];
          // column c < n is an x bit of v (pairs with z of s); c >= n a z bit.
          if (c < n) {
            d.set(c, !d.x(c), d.z(c));
          } else {
            d.set(c - n, d.x(c - n), !d.z(c - n));
          }
        }
      }
      st.destab_.push_back(std::move(d));
    }
    for (size_t i = 0; i < n; i++) {
      for (size_t j = 0; j < i; j++) {
        if (st.destab_[i].anticommutes(st.destab_[j])) st.destab_[i].xor_bits(st.stab_[j]);
      }
      st.destab_[i].set_phase(0);
    }
    if (!st.is_valid()) throw std::logic_error("from_generators: destabilizer completion failed");
    return st;
  }

  size_t num_qubits() const { return n_; }
  const std::vector<PauliString>& stabilizers() const { return stab_; }
  const std::vector<PauliString>& destabilizers() const { return destab_; }

  /// Commutation pattern of the tableau.
  bool is_valid() const {
    for (size_t i = 0; i < n_; i++) {
      if (!stab_[i].is_hermitian()) return false;
      for (size_t j = 0; j < n_; j++) {
        if (stab_[i].anticommutes(stab_[j])) return false;
        if (destab_[i].anticommutes(destab_[j])) return false;
        if (destab_[i].anticommutes(stab_[j]) != (i == j)) return false;
      }
    }
    return true;
  }

  /// Conjugates every row by the tableau: |psi> -> U|psi>.
  StabilizerState& evolve(const CliffordTableau& t) {
    detail::require_same_size(n_, t.num_qubits(), "evolve");
    PauliString scratch(n_);
    for (auto* rows : {&destab_, &stab_}) {
      for (auto& row : *rows) {
        t.conjugate_into(row, scratch);
        std::swap(row, scratch);
      }
    }
    return *this;
  }

  StabilizerState& evolve(const GateOp& op) {
    detail::check_gate_targets(n_, op);
    for (auto& row : destab_) detail::conjugate_by_gate(row, op);
    for (auto& row : stab_) detail::conjugate_by_gate(row, op);
    return *this;
  }

  StabilizerState& evolve(const Circuit& circuit) {
    for (const auto& op : circuit) evolve(op);
    return *this;
  }

  /// Applies an arbitrary in-place row transform (a conjugation) to all rows.
  template <class F>
  StabilizerState& transform_rows(F&& f) {
    for (auto& row : destab_) f(row);
    for (auto& row : stab_) f(row);
    return *this;
  }

  /// Z-basis measurement of qubit q with collapse. Returns the outcome bit.
  template <class Rng>
  bool measure(size_t q, Rng& rng) {
    if (q >= n_) throw std::out_of_range("measure: qubit out of range");
    size_t p = n_;
    for (size_t i = 0; i < n_; i++) {
      if (stab_[i].x(q)) {
        p = i;
        break;
      }
    }
    if (p < n_) {
      for (size_t i = 0; i < n_; i++) {
        if (i != p && stab_[i].x(q)) stab_[i] *= stab_[p];
        if (i != p && destab_[i].x(q)) {
          destab_[i] *= stab_[p];
          destab_[i].set_phase(0);
        }
      }
      bool outcome = (rng() >> 63) != 0;
      std::swap(destab_[p], stab_[p]);
      destab_[p].set_phase(0);
      PauliString& s = stab_[p];
      for (auto& w : s.xs()) w = 0;
      for (auto& w : s.zs()) w = 0;
      s.set(q, false, true);
      s.set_phase(outcome ? 2 : 0);
      return outcome;
    }
    PauliString acc(n_);
    for (size_t i = 0; i < n_; i++) {
      if (destab_[i].x(q)) acc *= stab_[i];
    }
    return acc.phase() == 2;
  }

  /// Exact <psi|P|psi> in {-1, 0, +1}.
  int expectation(const PauliString& p) const {
    detail::require_same_size(n_, p.num_qubits(), "expectation_pauli");
    if (!p.is_hermitian()) throw std::invalid_argument("expectation_pauli: non-Hermitian observable " + p.str());
    for (const auto& s : stab_) {
      if (s.anticommutes(p)) return 0;
    }
    PauliString acc(n_);
    for (size_t i = 0; i < n_; i++) {
      if (destab_[i].anticommutes(p)) acc *= stab_[i];
    }
    return acc.phase() == p.phase() ? 1 : -1;
  }

 private:
  static std::vector<uint64_t> pack(const PauliString& p) {
    size_t n = p.num_qubits();
    std::vector<uint64_t> out(detail::words_for(2 * n), 0);
    for (size_t q = 0; q < n; q++) {
      if (p.x(q)) out[q >> 6] |= uint64_t{1} << (q & 63);
      if (p.z(q)) out[(q + n) >> 6] |= uint64_t{1} << ((q + n) & 63);
    }
    return out;
  }
  static std::vector<uint64_t> pack_swapped(const PauliString& p) {
    size_t n = p.num_qubits();
    std::vector<uint64_t> out(detail::words_for(2 * n), 0);
    for (size_t q = 0; q < n; q++) {
      if (p.z(q)) out[q >> 6] |= uint64_t{1} << (q & 63);
      if (p.x(q)) out[(q + n) >> 6] |= uint64_t{1} << ((q + n) & 63);
    }
    return out;
  }

  size_t n_ = 0;
  std::vector<PauliString> destab_;
  std::vector<PauliString> stab_;
};

inline StabilizerState from_generators(const std::vector<PauliString>& gens) {
  return StabilizerState::from_generators(gens);
}

inline StabilizerState from_generators(std::initializer_list<std::string_view> labels) {
  std::vector<PauliString> gens;
  for (auto l : labels) gens.push_back(PauliString::from_label(l));
  return StabilizerState::from_generators(gens);
}

/// GHZ state: stabilized by X...X and Z_i Z_{i+1}.
inline StabilizerState ghz_state(size_t n) {
  if (n < 2) throw std::invalid_argument("ghz_state: need at least 2 qubits");
  std::vector<PauliString> gens;
  gens.emplace_back(n);
  for (size_t q = 0; q < n; q++) gens.back().set(q, true, false);
  for (size_t q = 0; q + 1 < n; q++) {
    gens.emplace_back(n);
    gens.back().set(q, false, true);
    gens.back().set(q + 1, false, true);
  }
  return StabilizerState::from_generators(gens);
}

/// Periodic 1D cluster state: stabilized by Z_{i-1} X_i Z_{i+1} (indices mod n).
inline StabilizerState zxz_cluster_state(size_t n) {
  if (n < 3) throw std::invalid_argument("zxz_cluster_state: need at least 3 qubits");
  std::vector<PauliString> gens;
  for (size_t q = 0; q < n; q++) {
    gens.emplace_back(n);
    gens.back().set((q + n - 1) % n, false, true);
    gens.back().set(q, true, false);
    gens.back().set((q + 1) % n, false, true);
  }
  return StabilizerState::from_generators(gens);
}

inline StabilizerState evolve(StabilizerState state, const CliffordTableau& t) {
  state.evolve(t);
  return state;
}

/// Born-rule outcome of measuring `qubits` in order on a scratch copy.
template <class Rng>
BitString measure_qubits(StabilizerState state, std::span<const size_t> qubits, Rng& rng) {
  BitString out(qubits.size());
  for (size_t i = 0; i < qubits.size(); i++) out.set(i, state.measure(qubits[i], rng));
  return out;
}

template <class Rng>
BitString measure_all(StabilizerState state, Rng& rng) {
  BitString out(state.num_qubits());
  for (size_t q = 0; q < state.num_qubits(); q++) out.set(q, state.measure(q, rng));
  return out;
}

inline int expectation_pauli(const StabilizerState& state, const PauliString& p) { return state.expectation(p); }

}  // namespace ctshadow
