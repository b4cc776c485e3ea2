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

// Independent ground truth for the tableau code: a dense state-vector
// simulator (n <= 10), exhaustive weight enumeration in exact rationals, and the
// enumeration of all two-qubit symplectic classes. Nothing here reuses the
// tableau conjugation rules; dense gates are plain matrix actions.

#include <cmath>
#include <complex>
#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctshadow/clifford.hpp"
#include "ctshadow/pauli.hpp"
#include "ctshadow/stabilizer.hpp"
#include "ctshadow/weights.hpp"

namespace ctshadow::oracle {

using Complex = std::complex<double>;

inline constexpr size_t kMaxDenseQubits = 10;

/// Amplitudes indexed by basis state; bit q of the index is qubit q.
struct DenseState {
  size_t n = 0;
  std::vector<Complex> amplitudes;

  static DenseState zero(size_t n) {
    if (n == 0 || n > kMaxDenseQubits) throw std::invalid_argument("dense state: qubit count must be in 1..10");
    DenseState s{n, std::vector<Complex>(size_t{1} << n)};
    s.amplitudes[0] = 1;
    return s;
  }

  double norm_squared() const {
    double t = 0;
    for (auto a : amplitudes) t += std::norm(a);
    return t;
  }

  std::vector<double> probabilities() const {
    std::vector<double> p(amplitudes.size());
    for (size_t i = 0; i < p.size(); i++) p[i] = std::norm(amplitudes[i]);
    return p;
  }
};

namespace detail {

inline Complex ipow(int e) {
  switch (((e % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

inline void apply_1q(DenseState& s, size_t q, const Complex m[2][2]) {
  size_t bit = size_t{1} << q;
  for (size_t i = 0; i < s.amplitudes.size(); i++) {
    if (i & bit) continue;
    Complex a0 = s.amplitudes[i], a1 = s.amplitudes[i | bit];
    s.amplitudes[i] = m[0][0] * a0 + m[0][1] * a1;
    s.amplitudes[i | bit] = m[1][0] * a0 + m[1][1] * a1;
  }
}

}  // namespace detail

/// Exact matrix action of one gate.
inline void dense_apply(DenseState& s, const GateOp& op) {
  ctshadow::detail::check_gate_targets(s.n, op);
  const double r = 1.0 / std::sqrt(2.0);
  const Complex I(0, 1);
  switch (op.gate) {
    case Gate::H: {
      const Complex m[2][2] = {{r, r}, {r, -r}};
      detail::apply_1q(s, op.q0, m);
      return;
    }
    case Gate::S: {
      const Complex m[2][2] = {{1, 0}, {0, I}};
      detail::apply_1q(s, op.q0, m);
      return;
    }
    case Gate::S_DAG: {
      const Complex m[2][2] = {{1, 0}, {0, -I}};
      detail::apply_1q(s, op.q0, m);
      return;
    }
    case Gate::X: {
      const Complex m[2][2] = {{0, 1}, {1, 0}};
      detail::apply_1q(s, op.q0, m);
      return;
    }
    case Gate::Y: {
      const Complex m[2][2] = {{0, -I}, {I, 0}};
      detail::apply_1q(s, op.q0, m);
      return;
    }
    case Gate::Z: {
      const Complex m[2][2] = {{1, 0}, {0, -1}};
      detail::apply_1q(s, op.q0, m);
      return;
    }
    case Gate::CZ: {
      size_t mask = (size_t{1} << op.q0) | (size_t{1} << op.q1);
      for (size_t i = 0; i < s.amplitudes.size(); i++) {
        if ((i & mask) == mask) s.amplitudes[i] = -s.amplitudes[i];
      }
      return;
    }
    case Gate::CNOT: {
      size_t c = size_t{1} << op.q0, t = size_t{1} << op.q1;
      for (size_t i = 0; i < s.amplitudes.size(); i++) {
        if ((i & c) && !(i & t)) std::swap(s.amplitudes[i], s.amplitudes[i | t]);
      }
      return;
    }
  }
}

inline void dense_apply(DenseState& s, const Circuit& circuit) {
  for (const auto& op : circuit) dense_apply(s, op);
}

/// exp(i pi/4 Z_a Z_b) as diagonal phases.
inline void dense_apply_zz_quarter(DenseState& s, size_t a, size_t b) {
  const Complex plus = std::polar(1.0, M_PI / 4), minus = std::polar(1.0, -M_PI / 4);
  for (size_t i = 0; i < s.amplitudes.size(); i++) {
    bool parity = ((i >> a) & 1) ^ ((i >> b) & 1);
    s.amplitudes[i] *= parity ? minus : plus;
  }
}

/// out = P |psi>.
inline DenseState dense_apply_pauli(const DenseState& s, const PauliString& p) {
  ctshadow::detail::require_same_size(s.n, p.num_qubits(), "dense_apply_pauli");
  size_t xmask = 0, zmask = 0, ycount = 0;
  for (size_t q = 0; q < s.n; q++) {
    if (p.x(q)) xmask |= size_t{1} << q;
    if (p.z(q)) zmask |= size_t{1} << q;
    if (p.x(q) && p.z(q)) ycount++;
  }
  // Y = i X Z: P|j> = i^(phase + #Y) (-1)^(z . j) |j ^ x>.
  const Complex global = detail::ipow(int(p.phase()) + int(ycount));
  DenseState out{s.n, std::vector<Complex>(s.amplitudes.size())};
  for (size_t j = 0; j < s.amplitudes.size(); j++) {
    double sign = (std::popcount(j & zmask) & 1) ? -1.0 : 1.0;
    out.amplitudes[j ^ xmask] += global * sign * s.amplitudes[j];
  }
  return out;
}

inline Complex dense_expectation(const DenseState& s, const PauliString& p) {
  DenseState ps = dense_apply_pauli(s, p);
  Complex t = 0;
  for (size_t i = 0; i < s.amplitudes.size(); i++) t += std::conj(s.amplitudes[i]) * ps.amplitudes[i];
  return t;
}

/// The state fixed by all stabilizers, from the projector product
/// prod_i (I + S_i)/2 applied to the first basis vector it does not annihilate.
inline DenseState dense_from_stabilizer(const StabilizerState& st) {
  size_t n = st.num_qubits();
  if (n > kMaxDenseQubits) throw std::invalid_argument("dense_from_stabilizer: too many qubits");
  for (size_t ref = 0; ref < (size_t{1} << n); ref++) {
    DenseState v{n, std::vector<Complex>(size_t{1} << n)};
    v.amplitudes[ref] = 1;
    for (const auto& g : st.stabilizers()) {
      DenseState gv = dense_apply_pauli(v, g);
      for (size_t i = 0; i < v.amplitudes.size(); i++) v.amplitudes[i] = 0.5 * (v.amplitudes[i] + gv.amplitudes[i]);
    }
    double nrm = v.norm_squared();
    if (nrm > 1e-9) {
      double scale = 1.0 / std::sqrt(nrm);
      for (auto& a : v.amplitudes) a *= scale;
      for (const auto& g : st.stabilizers()) {
        if (std::abs(dense_expectation(v, g) - 1.0) > 1e-9) {
          throw std::invalid_argument("dense_from_stabilizer: inconsistent generators");
        }
      }
      return v;
    }
  }
  throw std::invalid_argument("dense_from_stabilizer: generators stabilize no state");
}

/// U P U† computed from dense matrices of the circuit, identified as a signed
/// Pauli string. Throws if the result is not proportional to a Pauli.
inline PauliString dense_conjugate_check(size_t n, const Circuit& circuit, const PauliString& p) {
  if (n > 6) throw std::invalid_argument("dense_conjugate_check: n must be <= 6");
  ctshadow::detail::require_same_size(n, p.num_qubits(), "dense_conjugate_check");
  const size_t dim = size_t{1} << n;
  // Columns of U, then M = U P U† column by column: M|j> = U P (U†|j>).
  std::vector<std::vector<Complex>> u(dim);
  for (size_t j = 0; j < dim; j++) {
    DenseState e{n, std::vector<Complex>(dim)};
    e.amplitudes[j] = 1;
    dense_apply(e, circuit);
    u[j] = e.amplitudes;  // column j
  }
  auto u_dagger_col = [&](size_t j) {
    DenseState v{n, std::vector<Complex>(dim)};
    for (size_t i = 0; i < dim; i++) v.amplitudes[i] = std::conj(u[i][j]);
    return v;
  };
  std::vector<std::vector<Complex>> m(dim);  // m[j] = column j of U P U†
  for (size_t j = 0; j < dim; j++) {
    DenseState pv = dense_apply_pauli(u_dagger_col(j), p);
    std::vector<Complex> col(dim);
    for (size_t c = 0; c < dim; c++) {
      for (size_t i = 0; i < dim; i++) col[i] += u[c][i] * pv.amplitudes[c];
    }
    m[j] = std::move(col);
  }
  // Column 0 of c*Q is nonzero only at row x; column 2^q reveals z_q by sign.
  size_t xmask = dim;
  for (size_t i = 0; i < dim; i++) {
    if (std::abs(m[0][i]) > 0.5) {
      xmask = i;
      break;
    }
  }
  if (xmask == dim) throw std::runtime_error("dense_conjugate_check: result is not a Pauli");
  PauliString q(n);
  for (size_t b = 0; b < n; b++) {
    size_t col = size_t{1} << b;
    Complex ratio = m[col][col ^ xmask] / m[0][xmask];
    bool zbit = ratio.real() < 0;
    q.set(b, (xmask >> b) & 1, zbit);
  }
  // Fix the phase from the (x, 0) entry, then verify every entry.
  DenseState e0{n, std::vector<Complex>(dim)};
  e0.amplitudes[0] = 1;
  Complex base = dense_apply_pauli(e0, q).amplitudes[xmask];
  Complex c = m[0][xmask] / base;
  int phase = -1;
  for (int t = 0; t < 4; t++) {
    if (std::abs(c - detail::ipow(t)) < 1e-9) phase = t;
  }
  if (phase < 0) throw std::runtime_error("dense_conjugate_check: result is not a Pauli (phase)");
  q.set_phase(static_cast<uint8_t>(phase));
  for (size_t j = 0; j < dim; j++) {
    DenseState ej{n, std::vector<Complex>(dim)};
    ej.amplitudes[j] = 1;
    DenseState qj = dense_apply_pauli(ej, q);
    for (size_t i = 0; i < dim; i++) {
      if (std::abs(qj.amplitudes[i] - m[j][i]) > 1e-9) {
        throw std::runtime_error("dense_conjugate_check: result is not proportional to a Pauli");
      }
    }
  }
  return q;
}

/// Exact Pauli weight by enumeration: the average over all 3^s local
/// rotations P of the non-defect sites of 3^-size(G P G†), where G is the
/// contractive unitary or the identity. Defect sites stay identity.
inline exact::Rational brute_force_weight(size_t k, Ensemble ensemble,
                                                   const std::vector<bool>& defect_mask = {}) {
  using exact::Integer;
  using exact::Rational;
  if (k == 0 || k > 8) throw std::invalid_argument("brute_force_weight: k must be in 1..8");
  if (!defect_mask.empty() && defect_mask.size() != k) {
    throw std::invalid_argument("brute_force_weight: defect mask length must equal k");
  }
  if (ensemble == Ensemble::random_clifford) {
    throw std::invalid_argument("brute_force_weight: only identity and contractive ensembles");
  }
  std::vector<size_t> sites;
  for (size_t q = 0; q < k; q++) {
    if (defect_mask.empty() || !defect_mask[q]) sites.push_back(q);
  }
  if (sites.empty()) throw std::invalid_argument("brute_force_weight: all sites are defects");
  std::optional<CliffordTableau> g;
  if (ensemble == Ensemble::contractive) g = contractive_unitary(k);

  // Sum of 3^(k - size) over all strings, divided by 3^k * 3^s at the end.
  Integer total = 0;
  std::vector<Integer> pow3(k + 1);
  pow3[0] = 1;
  for (size_t i = 1; i <= k; i++) pow3[i] = pow3[i - 1] * 3;
  std::vector<uint8_t> digit(sites.size(), 0);
  size_t count = 1;
  for (size_t i = 0; i < sites.size(); i++) count *= 3;
  PauliString p(k);
  for (size_t idx = 0; idx < count; idx++) {
    size_t r = idx;
    for (size_t i = 0; i < sites.size(); i++) {
      switch (r % 3) {
        case 0: p.set(sites[i], true, false); break;
        case 1: p.set(sites[i], true, true); break;
        default: p.set(sites[i], false, true); break;
      }
      r /= 3;
    }
    size_t size = g ? g->conjugate(p).operator_size() : p.operator_size();
    total += pow3[k - size];
  }
  return Rational(total) / Rational(pow3[k] * Integer(count));
}

/// Every two-qubit Clifford up to Pauli signs, from breadth-first closure of
/// {H1, H2, S1, S2, CZ}. Signs of the returned images are all +.
inline std::vector<CliffordTableau> enumerate_two_qubit_symplectics() {
  auto strip = [](CliffordTableau t) {
    std::vector<PauliString> xs, zs;
    for (size_t q = 0; q < 2; q++) {
      PauliString x = t.x_image(q), z = t.z_image(q);
      x.set_phase(0);
      z.set_phase(0);
      xs.push_back(x);
      zs.push_back(z);
    }
    return std::pair{xs, zs};
  };
  auto key = [](const std::pair<std::vector<PauliString>, std::vector<PauliString>>& im) {
    unsigned k = 0, b = 0;
    for (const auto* v : {&im.first, &im.second}) {
      for (const auto& p : *v) {
        for (size_t q = 0; q < 2; q++) {
          k |= unsigned(p.x(q)) << b++;
          k |= unsigned(p.z(q)) << b++;
        }
      }
    }
    return k;
  };
  const std::vector<GateOp> gens = {
      {Gate::H, 0, 0}, {Gate::H, 1, 0}, {Gate::S, 0, 0}, {Gate::S, 1, 0}, {Gate::CZ, 0, 1}};
  std::vector<CliffordTableau> out;
  std::set<unsigned> seen;
  std::deque<CliffordTableau> queue;
  CliffordTableau id = CliffordTableau::identity(2);
  seen.insert(key(strip(id)));
  queue.push_back(id);
  while (!queue.empty()) {
    CliffordTableau t = queue.front();
    queue.pop_front();
    auto im = strip(t);
    out.push_back(CliffordTableau::from_images(im.first, im.second));
    for (const auto& op : gens) {
      CliffordTableau next = t;
      next.apply(op);
      unsigned kk = key(strip(next));
      if (seen.insert(kk).second) queue.push_back(next);
    }
  }
  return out;
}

/// Number of the nine size-2 two-qubit strings that T maps to size 1.
inline int contraction_count(const CliffordTableau& t) {
  if (t.num_qubits() != 2) throw std::invalid_argument("contraction_count: tableau must act on two qubits");
  int count = 0;
  const char* letters = "XYZ";
  for (int a = 0; a < 3; a++) {
    for (int b = 0; b < 3; b++) {
      std::string label{letters[a], letters[b]};
      if (t.conjugate(PauliString::from_label(label)).operator_size() == 1) count++;
    }
  }
  return count;
}

/// Born-rule probabilities of measuring `sites` in Z; outcome bit i is site i.
inline std::vector<double> dense_marginal(const DenseState& s, std::span<const size_t> sites) {
  std::vector<double> out(size_t{1} << sites.size(), 0.0);
  for (size_t j = 0; j < s.amplitudes.size(); j++) {
    size_t o = 0;
    for (size_t i = 0; i < sites.size(); i++) o |= ((j >> sites[i]) & 1) << i;
    out[o] += std::norm(s.amplitudes[j]);
  }
  return out;
}

}  // namespace ctshadow::oracle
