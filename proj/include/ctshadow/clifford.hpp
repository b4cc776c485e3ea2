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

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ctshadow/pauli.hpp"
#include "ctshadow/rng.hpp"

namespace ctshadow {

enum class Gate : uint8_t { H, S, S_DAG, X, Y, Z, CZ, CNOT };

inline constexpr bool is_two_qubit(Gate g) { return g == Gate::CZ || g == Gate::CNOT; }

inline std::string_view gate_name(Gate g) {
  switch (g) {
    case Gate::H: return "H";
    case Gate::S: return "S";
    case Gate::S_DAG: return "S_DAG";
    case Gate::X: return "X";
    case Gate::Y: return "Y";
    case Gate::Z: return "Z";
    case Gate::CZ: return "CZ";
    case Gate::CNOT: return "CNOT";
  }
  return "?";
}

/// One gate application. `q1` is ignored for single-qubit gates.
struct GateOp {
  Gate gate;
  size_t q0 = 0;
  size_t q1 = 0;
};

using Circuit = std::vector<GateOp>;

namespace detail {

inline void check_gate_targets(size_t n, const GateOp& op) {
  if (op.q0 >= n || (is_two_qubit(op.gate) && op.q1 >= n)) {
    throw std::out_of_range(std::string("qubit index out of range for gate ") +
                            std::string(gate_name(op.gate)));
  }
  if (is_two_qubit(op.gate) && op.q0 == op.q1) {
    throw std::invalid_argument(std::string("repeated qubit index for gate ") +
                                std::string(gate_name(op.gate)));
  }
}

// p <- G p G†. Phases follow the Aaronson-Gottesman update rules with Y as a symbol.
inline void conjugate_by_gate(PauliString& p, const GateOp& op) {
  const size_t a = op.q0;
  const size_t b = op.q1;
  bool xa = p.x(a), za = p.z(a);
  switch (op.gate) {
    case Gate::H:
      if (xa && za) p.add_phase(2);
      p.set(a, za, xa);
      return;
    case Gate::S:
      if (xa && za) p.add_phase(2);
      p.set(a, xa, za ^ xa);
      return;
    case Gate::S_DAG:
      if (xa && !za) p.add_phase(2);
      p.set(a, xa, za ^ xa);
      return;
    case Gate::X:
      if (za) p.add_phase(2);
      return;
    case Gate::Y:
      if (xa ^ za) p.add_phase(2);
      return;
    case Gate::Z:
      if (xa) p.add_phase(2);
      return;
    case Gate::CZ: {
      bool xb = p.x(b), zb = p.z(b);
      if (xa && xb && (za ^ zb)) p.add_phase(2);
      p.set(a, xa, za ^ xb);
      p.set(b, xb, zb ^ xa);
      return;
    }
    case Gate::CNOT: {
      bool xb = p.x(b), zb = p.z(b);
      if (xa && zb && !(xb ^ za)) p.add_phase(2);
      p.set(a, xa, za ^ zb);
      p.set(b, xb ^ xa, zb);
      return;
    }
  }
}

template <class Rng>
uint64_t uniform_below(Rng& rng, uint64_t bound) {
  static_assert(Rng::min() == 0 && Rng::max() == ~uint64_t{0}, "needs a full 64-bit generator");
  while (true) {
    __uint128_t m = static_cast<__uint128_t>(rng()) * bound;
    auto low = static_cast<uint64_t>(m);
    if (low >= bound || low >= (-bound) % bound) return static_cast<uint64_t>(m >> 64);
  }
}

}  // namespace detail

/// The conjugation action P -> U P U† of a Clifford unitary U (modulo global
/// phase), stored as the signed images of the generators X_q and Z_q.
class CliffordTableau {
 public:
  CliffordTableau() = default;

  /// The identity on n qubits.
  explicit CliffordTableau(size_t n) : n_(n) {
    xs_.reserve(n);
    zs_.reserve(n);
    for (size_t q = 0; q < n; q++) {
      xs_.emplace_back(n);
      xs_.back().set(q, true, false);
      zs_.emplace_back(n);
      zs_.back().set(q, false, true);
    }
  }

  static CliffordTableau identity(size_t n) {
    if (n == 0) throw std::invalid_argument("identity: need at least one qubit");
    return CliffordTableau(n);
  }

  static CliffordTableau from_circuit(size_t n, const Circuit& circuit) {
    CliffordTableau t(n);
    for (const GateOp& op : circuit) t.apply(op);
    return t;
  }

  /// Builds a tableau from explicit images. Validates hermiticity and the
  /// symplectic commutation pattern.
  static CliffordTableau from_images(std::vector<PauliString> x_images, std::vector<PauliString> z_images) {
    CliffordTableau t;
    t.n_ = x_images.size();
    t.xs_ = std::move(x_images);
    t.zs_ = std::move(z_images);
    if (t.zs_.size() != t.n_) throw std::invalid_argument("from_images: image count mismatch");
    for (size_t q = 0; q < t.n_; q++) {
      if (t.xs_[q].num_qubits() != t.n_ || t.zs_[q].num_qubits() != t.n_) {
        throw std::invalid_argument("from_images: image has wrong qubit count");
      }
    }
    if (!t.is_valid()) throw std::invalid_argument("from_images: images are not a valid Clifford tableau");
    return t;
  }

  /// Skips validation; for constructions that are correct by design.
  static CliffordTableau from_images_unchecked(std::vector<PauliString> x_images, std::vector<PauliString> z_images) {
    CliffordTableau t;
    t.n_ = x_images.size();
    t.xs_ = std::move(x_images);
    t.zs_ = std::move(z_images);
    return t;
  }

  size_t num_qubits() const { return n_; }
  const PauliString& x_image(size_t q) const { return xs_[q]; }
  const PauliString& z_image(size_t q) const { return zs_[q]; }

  /// Writes U p U† into `out`, reusing its storage.
  void conjugate_into(const PauliString& p, PauliString& out) const {
    detail::require_same_size(n_, p.num_qubits(), "conjugate");
    if (out.num_qubits() != n_) out = PauliString(n_);
    for (auto& w : out.xs()) w = 0;
    for (auto& w : out.zs()) w = 0;
    out.set_phase(p.phase());
    auto px = p.xs();
    auto pz = p.zs();
    for (size_t w = 0; w < px.size(); w++) {
      uint64_t live = px[w] | pz[w];
      while (live) {
        size_t bit = static_cast<size_t>(std::countr_zero(live));
        live &= live - 1;
        size_t q = w * 64 + bit;
        bool xq = (px[w] >> bit) & 1;
        bool zq = (pz[w] >> bit) & 1;
        if (xq) out *= xs_[q];
        if (zq) out *= zs_[q];
        if (xq && zq) out.add_phase(1);  // Y = i X Z
      }
    }
  }

  PauliString conjugate(const PauliString& p) const {
    PauliString out(n_);
    conjugate_into(p, out);
    return out;
  }

  /// this <- G ∘ this (the gate acts after the current unitary).
  CliffordTableau& apply(const GateOp& op) {
    detail::check_gate_targets(n_, op);
    for (auto& img : xs_) detail::conjugate_by_gate(img, op);
    for (auto& img : zs_) detail::conjugate_by_gate(img, op);
    return *this;
  }

  /// The unitary U^-1 with U^-1 (U P U†) U = P.
  CliffordTableau inverse() const {
    CliffordTableau inv(n_);
    for (size_t q = 0; q < n_; q++) {
      inv.xs_[q] = preimage(generator(q, true, false));
      inv.zs_[q] = preimage(generator(q, false, true));
    }
    return inv;
  }

  /// Symplectic commutation pattern holds and every image is Hermitian.
  bool is_valid() const {
    for (size_t i = 0; i < n_; i++) {
      if (!xs_[i].is_hermitian() || !zs_[i].is_hermitian()) return false;
      for (size_t j = 0; j < n_; j++) {
        if (xs_[i].anticommutes(xs_[j]) || zs_[i].anticommutes(zs_[j])) return false;
        if (xs_[i].anticommutes(zs_[j]) != (i == j)) return false;
      }
    }
    return true;
  }

  /// Debug form, one generator per line: "X0 -> +XZ".
  std::string str() const {
    std::ostringstream out;
    for (size_t q = 0; q < n_; q++) out << 'X' << q << " -> " << xs_[q].str() << '\n';
    for (size_t q = 0; q < n_; q++) out << 'Z' << q << " -> " << zs_[q].str() << '\n';
    return out.str();
  }

  bool operator==(const CliffordTableau&) const = default;

 private:
  PauliString generator(size_t q, bool x, bool z) const {
    PauliString g(n_);
    g.set(q, x, z);
    return g;
  }

  // The Pauli mapped to `target`. Its bits follow from the symplectic pairing of
  // the images; its sign is fixed by one forward conjugation.
  PauliString preimage(const PauliString& target) const {
    PauliString pre(n_);
    for (size_t j = 0; j < n_; j++) pre.set(j, target.anticommutes(zs_[j]), target.anticommutes(xs_[j]));
    PauliString fwd = conjugate(pre);
    if (fwd.phase() != target.phase()) pre.add_phase(2);
    return pre;
  }

  size_t n_ = 0;
  std::vector<PauliString> xs_;
  std::vector<PauliString> zs_;
};

inline CliffordTableau identity(size_t n) { return CliffordTableau::identity(n); }

inline CliffordTableau apply_gate(CliffordTableau t, Gate gate, std::span<const size_t> qubits) {
  size_t need = is_two_qubit(gate) ? 2 : 1;
  if (qubits.size() != need) {
    throw std::invalid_argument(std::string("gate ") + std::string(gate_name(gate)) + " takes " +
                                std::to_string(need) + " qubit index(es)");
  }
  t.apply(GateOp{gate, qubits[0], need == 2 ? qubits[1] : 0});
  return t;
}

inline CliffordTableau apply_gate(CliffordTableau t, Gate gate, std::initializer_list<size_t> qubits) {
  std::vector<size_t> q(qubits);
  return apply_gate(std::move(t), gate, std::span<const size_t>(q));
}

/// R with R(P) = A(B(P)), i.e. B acts first.
inline CliffordTableau compose(const CliffordTableau& a, const CliffordTableau& b) {
  detail::require_same_size(a.num_qubits(), b.num_qubits(), "compose");
  size_t n = a.num_qubits();
  std::vector<PauliString> xs, zs;
  xs.reserve(n);
  zs.reserve(n);
  for (size_t q = 0; q < n; q++) {
    xs.push_back(a.conjugate(b.x_image(q)));
    zs.push_back(a.conjugate(b.z_image(q)));
  }
  return CliffordTableau::from_images(std::move(xs), std::move(zs));
}

inline PauliString conjugate(const CliffordTableau& t, const PauliString& p) { return t.conjugate(p); }

/// Places a k-qubit tableau on `sites` of an n-qubit register, identity elsewhere.
inline CliffordTableau embed(const CliffordTableau& t, size_t n, std::span<const size_t> sites) {
  if (sites.size() != t.num_qubits()) throw std::invalid_argument("embed: site count mismatch");
  std::vector<PauliString> xs, zs;
  for (size_t q = 0; q < n; q++) {
    xs.emplace_back(n);
    xs.back().set(q, true, false);
    zs.emplace_back(n);
    zs.back().set(q, false, true);
  }
  auto lift = [&](const PauliString& small) {
    PauliString big(n);
    big.set_phase(small.phase());
    for (size_t j = 0; j < sites.size(); j++) big.set(sites[j], small.x(j), small.z(j));
    return big;
  };
  for (size_t j = 0; j < sites.size(); j++) {
    if (sites[j] >= n) throw std::out_of_range("embed: site out of range");
    xs[sites[j]] = lift(t.x_image(j));
    zs[sites[j]] = lift(t.z_image(j));
  }
  return CliffordTableau::from_images(std::move(xs), std::move(zs));
}

// ---------------------------------------------------------------------------
// Single-qubit Clifford group.

/// The 24 single-qubit Cliffords (modulo phase), generated by closure of {H, S}
/// in breadth-first order; element 0 is the identity.
inline const std::vector<CliffordTableau>& single_qubit_clifford_group() {
  static const std::vector<CliffordTableau> group = [] {
    std::vector<CliffordTableau> found{CliffordTableau(1)};
    for (size_t head = 0; head < found.size(); head++) {
      for (Gate g : {Gate::H, Gate::S}) {
        CliffordTableau next = found[head];
        next.apply(GateOp{g, 0, 0});
        bool seen = false;
        for (const auto& f : found) seen = seen || f == next;
        if (!seen) found.push_back(std::move(next));
      }
    }
    return found;
  }();
  return group;
}

/// Lookup form of a single-qubit Clifford: for each input symbol code
/// (x | z << 1: 0=I, 1=X, 2=Z, 3=Y) the output code and whether a -1 appears.
struct LocalClifford {
  std::array<uint8_t, 4> code{0, 1, 2, 3};
  std::array<bool, 4> negate{false, false, false, false};

  static LocalClifford from_tableau(const CliffordTableau& t) {
    LocalClifford c;
    PauliString y(1);
    y.set(0, true, true);
    const PauliString imgs[4] = {PauliString(1), t.x_image(0), t.z_image(0), t.conjugate(y)};
    for (int s = 1; s < 4; s++) {
      c.code[s] = static_cast<uint8_t>(imgs[s].x(0) | (imgs[s].z(0) << 1));
      c.negate[s] = imgs[s].phase() == 2;
    }
    return c;
  }

  /// p <- u p u† with u acting on qubit q.
  void apply(PauliString& p, size_t q) const {
    int s = p.x(q) | (p.z(q) << 1);
    if (s == 0) return;
    if (negate[s]) p.add_phase(2);
    p.set(q, code[s] & 1, code[s] >> 1);
  }
};

inline const std::array<LocalClifford, 24>& local_clifford_table() {
  static const std::array<LocalClifford, 24> table = [] {
    std::array<LocalClifford, 24> t{};
    const auto& group = single_qubit_clifford_group();
    for (size_t i = 0; i < 24; i++) t[i] = LocalClifford::from_tableau(group[i]);
    return t;
  }();
  return table;
}

/// A tensor product of single-qubit Cliffords; element[q] indexes
/// local_clifford_table() and 0 means identity.
struct LocalLayer {
  std::vector<uint8_t> element;

  template <class Rng>
  static LocalLayer random(size_t n, std::span<const size_t> sites, Rng& rng) {
    LocalLayer layer{std::vector<uint8_t>(n, 0)};
    for (size_t q : sites) {
      if (q >= n) throw std::out_of_range("random_local_layer: site out of range");
      layer.element[q] = static_cast<uint8_t>(detail::uniform_below(rng, 24));
    }
    return layer;
  }

  /// p <- L p L†.
  void apply(PauliString& p) const {
    const auto& table = local_clifford_table();
    auto px = p.xs();
    auto pz = p.zs();
    for (size_t w = 0; w < px.size(); w++) {
      uint64_t live = px[w] | pz[w];
      while (live) {
        size_t q = w * 64 + static_cast<size_t>(std::countr_zero(live));
        live &= live - 1;
        if (element[q]) table[element[q]].apply(p, q);
      }
    }
  }

  CliffordTableau tableau() const {
    size_t n = element.size();
    std::vector<PauliString> xs, zs;
    for (size_t q = 0; q < n; q++) {
      xs.emplace_back(n);
      xs.back().set(q, true, false);
      apply(xs.back());
      zs.emplace_back(n);
      zs.back().set(q, false, true);
      apply(zs.back());
    }
    return CliffordTableau::from_images(std::move(xs), std::move(zs));
  }
};

/// Independent uniform single-qubit Cliffords on `sites`, identity elsewhere.
/// An empty site set yields the identity.
template <class Rng>
CliffordTableau random_local_layer(size_t n, std::span<const size_t> sites, Rng& rng) {
  return LocalLayer::random(n, sites, rng).tableau();
}

// ---------------------------------------------------------------------------
// Multi-qubit constructions.

namespace detail {

// Turns a spanning list of a non-degenerate symplectic subspace into pairs
// (e, f) with <e, f> = 1 and all cross pairs commuting.
inline std::vector<PauliString> symplectic_basis(std::vector<PauliString> vecs) {
  std::vector<PauliString> out;
  auto drop_zeros = [](std::vector<PauliString>& v) {
    std::erase_if(v, [](const PauliString& p) { return p.is_identity(); });
  };
  drop_zeros(vecs);
  while (!vecs.empty()) {
    PauliString u = std::move(vecs.front());
    vecs.erase(vecs.begin());
    size_t partner = vecs.size();
    for (size_t i = 0; i < vecs.size(); i++) {
      if (u.anticommutes(vecs[i])) {
        partner = i;
        break;
      }
    }
    if (partner == vecs.size()) throw std::logic_error("symplectic_basis: degenerate subspace");
    PauliString w = std::move(vecs[partner]);
    vecs.erase(vecs.begin() + static_cast<std::ptrdiff_t>(partner));
    for (auto& v : vecs) {
      bool vw = v.anticommutes(w);
      bool vu = v.anticommutes(u);
      if (vw) v.xor_bits(u);
      if (vu) v.xor_bits(w);
    }
    drop_zeros(vecs);
    out.push_back(std::move(u));
    out.push_back(std::move(w));
  }
  return out;
}

template <class Rng>
PauliString random_combination(const std::vector<PauliString>& basis, size_t n, Rng& rng) {
  PauliString v(n);
  uint64_t bits = 0;
  for (size_t i = 0; i < basis.size(); i++) {
    if (i % 64 == 0) bits = rng();
    if ((bits >> (i % 64)) & 1) v.xor_bits(basis[i]);
  }
  return v;
}

// Same construction as random_clifford on single-word vectors (x bits low, z
// bits high) for k <= 32. Consumes the generator identically.
inline bool packed_anticommute(uint64_t u, uint64_t v) {
  uint64_t m = (u & 0xffffffffu & (v >> 32)) ^ ((u >> 32) & v & 0xffffffffu);
  return std::popcount(m) & 1;
}

inline size_t packed_symplectic_basis(uint64_t* vecs, size_t count, uint64_t* out) {
  auto drop_zeros = [&] { count = static_cast<size_t>(std::remove(vecs, vecs + count, uint64_t{0}) - vecs); };
  size_t produced = 0;
  drop_zeros();
  while (count > 0) {
    uint64_t u = vecs[0];
    std::copy(vecs + 1, vecs + count, vecs);
    count--;
    size_t partner = count;
    for (size_t i = 0; i < count; i++) {
      if (packed_anticommute(u, vecs[i])) {
        partner = i;
        break;
      }
    }
    if (partner == count) throw std::logic_error("symplectic_basis: degenerate subspace");
    uint64_t w = vecs[partner];
    std::copy(vecs + partner + 1, vecs + count, vecs + partner);
    count--;
    for (size_t i = 0; i < count; i++) {
      uint64_t v = vecs[i];
      if (packed_anticommute(v, w)) vecs[i] ^= u;
      if (packed_anticommute(v, u)) vecs[i] ^= w;
    }
    drop_zeros();
    out[produced++] = u;
    out[produced++] = w;
  }
  return produced;
}

template <class Rng>
uint64_t packed_random_combination(const uint64_t* basis, size_t count, Rng& rng) {
  uint64_t v = 0;
  uint64_t bits = 0;
  for (size_t i = 0; i < count; i++) {
    if (i % 64 == 0) bits = rng();
    if ((bits >> (i % 64)) & 1) v ^= basis[i];
  }
  return v;
}

template <class Rng>
CliffordTableau random_clifford_packed(size_t k, Rng& rng) {
  std::array<uint64_t, 64> basis{}, scratch{};
  size_t count = 2 * k;
  for (size_t q = 0; q < k; q++) {
    basis[2 * q] = uint64_t{1} << q;
    basis[2 * q + 1] = uint64_t{1} << (q + 32);
  }
  std::array<uint64_t, 32> xa{}, zb{};
  for (size_t i = 0; i < k; i++) {
    uint64_t a = packed_random_combination(basis.data(), count, rng);
    while (a == 0) a = packed_random_combination(basis.data(), count, rng);
    uint64_t b = packed_random_combination(basis.data(), count, rng);
    while (!packed_anticommute(a, b)) b = packed_random_combination(basis.data(), count, rng);
    for (size_t j = 0; j < count; j++) {
      uint64_t v = basis[j];
      if (packed_anticommute(v, b)) basis[j] ^= a;
      if (packed_anticommute(v, a)) basis[j] ^= b;
    }
    scratch = basis;
    count = packed_symplectic_basis(scratch.data(), count, basis.data());
    xa[i] = a;
    zb[i] = b;
  }
  std::vector<PauliString> xs, zs;
  xs.reserve(k);
  zs.reserve(k);
  auto unpack = [k](uint64_t v) {
    PauliString p(k);
    for (size_t q = 0; q < k; q++) p.set(q, (v >> q) & 1, (v >> (q + 32)) & 1);
    return p;
  };
  for (size_t i = 0; i < k; i++) {
    xs.push_back(unpack(xa[i]));
    zs.push_back(unpack(zb[i]));
  }
  uint64_t signs = 0;
  for (size_t i = 0; i < 2 * k; i++) {
    if (i % 64 == 0) signs = rng();
    PauliString& img = i < k ? xs[i] : zs[i - k];
    if ((signs >> (i % 64)) & 1) img.set_phase(2);
  }
  return CliffordTableau::from_images_unchecked(std::move(xs), std::move(zs));
}

}  // namespace detail

namespace detail {
template <class Rng>
CliffordTableau random_clifford_general(size_t k, Rng& rng);
}  // namespace detail

/// Uniformly random k-qubit Clifford (modulo global phase).
///
/// Builds the images of X_1, Z_1, X_2, ... one symplectic pair at a time: the X
/// image is uniform over the nonzero vectors of the still-unused subspace, the Z
/// image uniform over its anticommuting partners there, and the subspace then
/// shrinks to their symplectic complement. Signs are 2k fair coins.
template <class Rng>
CliffordTableau random_clifford(size_t k, Rng& rng) {
  if (k == 0) throw std::invalid_argument("random_clifford: need at least one qubit");
  if (k <= 32) return detail::random_clifford_packed(k, rng);
  return detail::random_clifford_general(k, rng);
}

namespace detail {

template <class Rng>
CliffordTableau random_clifford_general(size_t k, Rng& rng) {
  std::vector<PauliString> basis;
  for (size_t q = 0; q < k; q++) {
    basis.emplace_back(k);
    basis.back().set(q, true, false);
    basis.emplace_back(k);
    basis.back().set(q, false, true);
  }
  std::vector<PauliString> xs, zs;
  xs.reserve(k);
  zs.reserve(k);
  for (size_t i = 0; i < k; i++) {
    PauliString a = detail::random_combination(basis, k, rng);
    while (a.is_identity()) a = detail::random_combination(basis, k, rng);
    PauliString b = detail::random_combination(basis, k, rng);
    while (!a.anticommutes(b)) b = detail::random_combination(basis, k, rng);
    for (auto& v : basis) {
      bool vb = v.anticommutes(b);
      bool va = v.anticommutes(a);
      if (vb) v.xor_bits(a);
      if (va) v.xor_bits(b);
    }
    basis = detail::symplectic_basis(std::move(basis));
    xs.push_back(std::move(a));
    zs.push_back(std::move(b));
  }
  uint64_t signs = 0;
  for (size_t i = 0; i < 2 * k; i++) {
    if (i % 64 == 0) signs = rng();
    PauliString& img = i < k ? xs[i] : zs[i - k];
    if ((signs >> (i % 64)) & 1) img.set_phase(2);
  }
  return CliffordTableau::from_images(std::move(xs), std::move(zs));
}

}  // namespace detail

/// Gate list of the contractive unitary prod_{i<j} exp(i pi/4 Z_i Z_j) on k
/// qubits: CZ on every pair followed by S_DAG^(k-1) on every qubit.
///
/// Each two-qubit factor equals CZ (S_DAG ⊗ S_DAG) up to a global phase; this
/// sign convention sends X_1 Z_2 to -Y_1 and Z_1 X_2 to -Y_2.
inline Circuit contractive_circuit(size_t k) {
  Circuit c;
  for (size_t i = 0; i < k; i++) {
    for (size_t j = i + 1; j < k; j++) c.push_back(GateOp{Gate::CZ, i, j});
  }
  for (size_t i = 0; i < k; i++) {
    for (size_t r = 0; r < (k - 1) % 4; r++) c.push_back(GateOp{Gate::S_DAG, i, 0});
  }
  return c;
}

inline CliffordTableau contractive_unitary(size_t k) {
  if (k == 0) throw std::invalid_argument("contractive_unitary: need at least one qubit");
  return CliffordTableau::from_circuit(k, contractive_circuit(k));
}

}  // namespace ctshadow
