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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ctshadow {

/// Thrown when a text label cannot be parsed. `position()` is the index of the
/// offending character in the input.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, size_t position)
      : std::invalid_argument(what), position_(position) {}
  size_t position() const { return position_; }

 private:
  size_t position_;
};

namespace detail {

inline size_t words_for(size_t bits) { return (bits + 63) / 64; }

inline void require_same_size(size_t a, size_t b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": qubit count mismatch (" +
                                std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

}  // namespace detail

/// A packed string of classical bits, little-endian: character 0 is qubit 0.
class BitString {
 public:
  BitString() = default;
  explicit BitString(size_t n) : n_(n), words_(detail::words_for(n), 0) {}

  static BitString from_string(std::string_view text) {
    BitString out(text.size());
    for (size_t i = 0; i < text.size(); i++) {
      if (text[i] == '1') {
        out.set(i, true);
      } else if (text[i] != '0') {
        throw ParseError("invalid bit character '" + std::string(1, text[i]) + "'", i);
      }
    }
    return out;
  }

  size_t size() const { return n_; }
  bool operator[](size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set(size_t i, bool v) {
    uint64_t mask = uint64_t{1} << (i & 63);
    if (v) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }
  std::span<const uint64_t> words() const { return words_; }

  std::string str() const {
    std::string out(n_, '0');
    for (size_t i = 0; i < n_; i++) {
      if ((*this)[i]) out[i] = '1';
    }
    return out;
  }

  bool operator==(const BitString&) const = default;

 private:
  size_t n_ = 0;
  std::vector<uint64_t> words_;
};

/// An n-qubit Pauli operator i^phase * (s_0 ⊗ s_1 ⊗ ... ⊗ s_{n-1}), where each
/// site symbol s_q is I, X, Y or Z encoded as (x, z) = (0,0), (1,0), (1,1), (0,1).
///
/// The phase is relative to the symbols themselves (Y is a symbol, not i*X*Z), so
/// a Hermitian string always has phase 0 or 2. Bits are packed 64 sites per word
/// and all whole-string operations are word-parallel.
class PauliString {
 public:
  PauliString() = default;

  /// The identity on n qubits.
  explicit PauliString(size_t n) : n_(n), words_(detail::words_for(n)), bits_(2 * words_, 0) {}

  /// Parses an optional prefix "+", "-", "+i", "-i" or "i" followed by I/X/Y/Z
  /// characters ('_' is accepted as I).
  static PauliString from_label(std::string_view label) {
    size_t pos = 0;
    uint8_t phase = 0;
    if (pos < label.size() && (label[pos] == '+' || label[pos] == '-')) {
      phase = label[pos] == '-' ? 2 : 0;
      pos++;
    }
    if (pos < label.size() && label[pos] == 'i') {
      phase = (phase + 1) & 3;
      pos++;
    }
    if (pos == label.size()) {
      throw ParseError("empty Pauli label", pos);
    }
    PauliString out(label.size() - pos);
    out.phase_ = phase;
    for (size_t q = 0; pos < label.size(); pos++, q++) {
      switch (label[pos]) {
        case 'I':
        case '_':
          break;
        case 'X':
          out.set(q, true, false);
          break;
        case 'Y':
          out.set(q, true, true);
          break;
        case 'Z':
          out.set(q, false, true);
          break;
        default:
          throw ParseError("invalid Pauli character '" + std::string(1, label[pos]) +
                               "' at position " + std::to_string(pos),
                           pos);
      }
    }
    return out;
  }

  /// Canonical label: always carries a sign prefix ("+", "-", "+i" or "-i").
  std::string str() const {
    static constexpr const char* kPrefix[4] = {"+", "+i", "-", "-i"};
    std::string out = kPrefix[phase_];
    out.reserve(out.size() + n_);
    for (size_t q = 0; q < n_; q++) out.push_back(symbol(q));
    return out;
  }

  size_t num_qubits() const { return n_; }
  size_t num_words() const { return words_; }
  uint8_t phase() const { return phase_; }
  void set_phase(uint8_t p) { phase_ = p & 3; }
  void add_phase(uint8_t p) { phase_ = (phase_ + p) & 3; }
  bool is_hermitian() const { return (phase_ & 1) == 0; }
  /// -1 sign of a Hermitian string.
  bool sign() const { return phase_ == 2; }

  bool x(size_t q) const { return (bits_[q >> 6] >> (q & 63)) & 1; }
  bool z(size_t q) const { return (bits_[words_ + (q >> 6)] >> (q & 63)) & 1; }

  char symbol(size_t q) const { return "IXZY"[x(q) | (z(q) << 1)]; }

  void set(size_t q, bool xv, bool zv) {
    uint64_t mask = uint64_t{1} << (q & 63);
    uint64_t& xw = bits_[q >> 6];
    uint64_t& zw = bits_[words_ + (q >> 6)];
    xw = xv ? (xw | mask) : (xw & ~mask);
    zw = zv ? (zw | mask) : (zw & ~mask);
  }

  std::span<uint64_t> xs() { return {bits_.data(), words_}; }
  std::span<uint64_t> zs() { return {bits_.data() + words_, words_}; }
  std::span<const uint64_t> xs() const { return {bits_.data(), words_}; }
  std::span<const uint64_t> zs() const { return {bits_.data() + words_, words_}; }

  /// Number of non-identity sites.
  size_t operator_size() const {
    size_t total = 0;
    for (size_t w = 0; w < words_; w++) total += std::popcount(bits_[w] | bits_[words_ + w]);
    return total;
  }

  /// Number of X or Y sites (sites with the x bit set).
  size_t count_xy() const {
    size_t total = 0;
    for (size_t w = 0; w < words_; w++) total += std::popcount(bits_[w]);
    return total;
  }

  bool is_identity() const {
    for (uint64_t w : bits_) {
      if (w) return false;
    }
    return true;
  }

  /// True iff no site carries X or Y.
  bool is_diagonal() const {
    for (size_t w = 0; w < words_; w++) {
      if (bits_[w]) return false;
    }
    return true;
  }

  /// this <- this * rhs, with exact i-power phase.
  PauliString& operator*=(const PauliString& rhs) {
    detail::require_same_size(n_, rhs.n_, "multiply");
    phase_ = (phase_ + rhs.phase_ + inplace_mul_bits(rhs)) & 3;
    return *this;
  }

  friend PauliString operator*(PauliString lhs, const PauliString& rhs) {
    lhs *= rhs;
    return lhs;
  }

  /// Symplectic inner product parity: true iff the two strings anticommute.
  bool anticommutes(const PauliString& rhs) const {
    detail::require_same_size(n_, rhs.n_, "commutes");
    uint64_t acc = 0;
    for (size_t w = 0; w < words_; w++) {
      acc ^= (bits_[w] & rhs.bits_[words_ + w]) ^ (bits_[words_ + w] & rhs.bits_[w]);
    }
    return std::popcount(acc) & 1;
  }
  bool commutes(const PauliString& rhs) const { return !anticommutes(rhs); }

  /// XOR of the bit vectors, ignoring phase (group product modulo phase).
  void xor_bits(const PauliString& rhs) {
    for (size_t w = 0; w < 2 * words_; w++) bits_[w] ^= rhs.bits_[w];
  }

  bool same_bits(const PauliString& rhs) const { return n_ == rhs.n_ && bits_ == rhs.bits_; }

  bool operator==(const PauliString&) const = default;

  friend std::ostream& operator<<(std::ostream& out, const PauliString& p) { return out << p.str(); }

 private:
  // XORs rhs bits into this and returns the i-power picked up by multiplying the
  // site symbols: XY=iZ, YZ=iX, ZX=iY contribute +1, the reversed orders -1.
  uint8_t inplace_mul_bits(const PauliString& rhs) {
    int64_t plus = 0;
    int64_t minus = 0;
    for (size_t w = 0; w < words_; w++) {
      uint64_t x1 = bits_[w], z1 = bits_[words_ + w];
      uint64_t x2 = rhs.bits_[w], z2 = rhs.bits_[words_ + w];
      uint64_t X1 = x1 & ~z1, Y1 = x1 & z1, Z1 = ~x1 & z1;
      uint64_t X2 = x2 & ~z2, Y2 = x2 & z2, Z2 = ~x2 & z2;
      plus += std::popcount((X1 & Y2) | (Y1 & Z2) | (Z1 & X2));
      minus += std::popcount((Y1 & X2) | (Z1 & Y2) | (X1 & Z2));
      bits_[w] = x1 ^ x2;
      bits_[words_ + w] = z1 ^ z2;
    }
    return static_cast<uint8_t>((plus - minus) & 3);
  }

  size_t n_ = 0;
  size_t words_ = 0;
  std::vector<uint64_t> bits_;  // [x words | z words]
  uint8_t phase_ = 0;
};

inline PauliString parse_label(std::string_view label) { return PauliString::from_label(label); }

inline PauliString multiply(const PauliString& p, const PauliString& q) { return p * q; }

inline bool commutes(const PauliString& p, const PauliString& q) { return p.commutes(q); }

/// <z| P |z> for a computational basis state: 0 when P has any X/Y site,
/// otherwise the real sign of P times (-1)^(number of Z sites hitting a 1 bit).
inline int expectation_on_basis_state(const PauliString& p, const BitString& bits) {
  detail::require_same_size(p.num_qubits(), bits.size(), "expectation_on_basis_state");
  if (!p.is_diagonal()) return 0;
  if (!p.is_hermitian()) {
    throw std::invalid_argument("diagonal Pauli with imaginary phase is not an observable: " + p.str());
  }
  auto zs = p.zs();
  auto ws = bits.words();
  int parity = 0;
  for (size_t w = 0; w < zs.size(); w++) parity ^= std::popcount(zs[w] & ws[w]) & 1;
  return ((p.phase() == 2) ^ parity) ? -1 : 1;
}

}  // namespace ctshadow
