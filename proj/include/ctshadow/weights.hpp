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

// Pauli weights w and shadow norms 1/w of Pauli string observables under the
// locally scrambled ensembles U = L2 G L1 (L1, L2 random single-qubit Clifford
// layers, G the ensemble's global unitary). For a size-m image the probability
// that the final local layer leaves it diagonal is 3^-m, so
//     w = sum_m pi(m) / 3^m
// with pi the size distribution of G L1 O L1† G†.
//
// Naming convention for defects: a block of span k holding an operator with q
// identity sites has operator size k - q (the "k tilde" of the derivation).
//
// Every closed form has a double-precision version (runtime default) and an
// exact rational version in `exact::` (test oracle; 9^k overflows 64 bits fast).

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ctshadow {

enum class Ensemble { identity, random_clifford, contractive };

inline std::string_view ensemble_name(Ensemble e) {
  switch (e) {
    case Ensemble::identity: return "identity";
    case Ensemble::random_clifford: return "random_clifford";
    case Ensemble::contractive: return "contractive";
  }
  return "?";
}

inline Ensemble parse_ensemble(std::string_view name) {
  if (name == "identity") return Ensemble::identity;
  if (name == "random_clifford" || name == "rc") return Ensemble::random_clifford;
  if (name == "contractive" || name == "ct") return Ensemble::contractive;
  throw std::invalid_argument("unknown ensemble '" + std::string(name) + "'");
}

struct SizeDistribution {
  size_t k = 0;
  std::vector<double> probs;  // indexed by size m = 0..k

  bool is_valid(double tol = 1e-12) const {
    if (probs.size() != k + 1) return false;
    double total = 0;
    for (double p : probs) {
      if (p < 0) return false;
      total += p;
    }
    return std::abs(total - 1.0) <= tol;
  }
};

struct WeightReport {
  std::string ensemble;
  size_t k = 0;
  size_t q = 0;
  double pauli_weight = 1;
  double shadow_norm = 1;

  static WeightReport make(std::string ensemble, size_t k, size_t q, double w) {
    return WeightReport{std::move(ensemble), k, q, w, 1.0 / w};
  }
};

namespace detail {

inline void require_k(size_t k, const char* what) {
  if (k == 0) throw std::invalid_argument(std::string(what) + ": k must be >= 1");
}

// Exact while the result fits in 53 bits.
inline double binomial(size_t n, size_t r) {
  double out = 1;
  for (size_t i = 0; i < r; i++) out = out * double(n - i) / double(i + 1);
  return out;
}

}  // namespace detail

inline double weight_from_distribution(const SizeDistribution& d) {
  double w = 0;
  for (size_t m = 0; m < d.probs.size(); m++) w += d.probs[m] * std::pow(3.0, -double(m));
  return w;
}

/// Size distribution of U_ct L1 O L1† U_ct† for a size-k string: an odd number
/// N of X/Y sites contracts the string to size N; even N leaves size k.
inline SizeDistribution size_distribution_contractive(size_t k) {
  detail::require_k(k, "size_distribution_contractive");
  SizeDistribution d{k, std::vector<double>(k + 1, 0.0)};
  // Each N_XY count occurs C(k,N) 2^N times among the 3^k rotated strings.
  for (size_t n_xy = 0; n_xy <= k; n_xy++) {
    double mass = detail::binomial(k, n_xy) * std::pow(2.0 / 3.0, double(n_xy)) * std::pow(1.0 / 3.0, double(k - n_xy));
    d.probs[n_xy % 2 == 1 ? n_xy : k] += mass;
  }
  return d;
}

/// pi(m) = C(k,m) 3^m / (4^k - 1): a random Clifford sends a nontrivial string
/// to a uniformly random nontrivial one.
inline SizeDistribution size_distribution_random_clifford(size_t k) {
  detail::require_k(k, "size_distribution_random_clifford");
  SizeDistribution d{k, std::vector<double>(k + 1, 0.0)};
  double denom = std::pow(4.0, double(k)) - 1.0;
  for (size_t m = 1; m <= k; m++) d.probs[m] = detail::binomial(k, m) * std::pow(3.0, double(m)) / denom;
  return d;
}

inline double weight_identity(size_t k) { return std::pow(3.0, -double(k)); }

/// (1/2)[3^-k + (-1)^k 9^-k] + (1/2)[(5/9)^k - 9^-k].
inline double weight_contractive(size_t k) {
  detail::require_k(k, "weight_contractive");
  double kk = double(k);
  double sign = (k % 2 == 0) ? 1.0 : -1.0;
  return 0.5 * (std::pow(3.0, -kk) + sign * std::pow(9.0, -kk)) + 0.5 * (std::pow(5.0 / 9.0, kk) - std::pow(9.0, -kk));
}

/// The same weight as the explicit even/odd binomial double sum, term by term.
inline double weight_contractive_binomial_sum(size_t k) {
  detail::require_k(k, "weight_contractive_binomial_sum");
  double even = 0, odd = 0;
  for (size_t n = 0; n <= k; n++) {
    double configs = detail::binomial(k, n) * std::pow(2.0, double(n));
    if (n % 2 == 0) {
      even += configs * std::pow(3.0, -double(k));
    } else {
      odd += configs * std::pow(3.0, -double(n));
    }
  }
  return (even + odd) * std::pow(3.0, -double(k));
}

inline double weight_random_clifford(size_t k) {
  detail::require_k(k, "weight_random_clifford");
  return 1.0 / (std::pow(2.0, double(k)) + 1.0);
}

/// Contractive weight of an operator of size k - q inside a block of span k.
/// When the X/Y count is odd the q identity sites turn into Z, costing 3^-q.
inline double weight_contractive_defects(size_t k, size_t q) {
  if (q >= k) throw std::invalid_argument("weight_contractive_defects: need q < k");
  double kt = double(k - q);
  double sign = ((k - q) % 2 == 0) ? 1.0 : -1.0;
  return 0.5 * (std::pow(3.0, -kt) + sign * std::pow(9.0, -kt)) +
         0.5 * (std::pow(5.0 / 9.0, kt) - std::pow(9.0, -kt)) * std::pow(3.0, -double(q));
}

/// gamma with (5/3)^gamma * 1.8 = 2: the defect density at which the leading
/// contractive norm (5/3)^(gamma k) 2 * 1.8^k matches the random-Clifford 2^k.
inline double defect_crossover_gamma() { return std::log(2.0 / 1.8) / std::log(5.0 / 3.0); }

namespace detail {
// Weight of a size-a piece in a contractive block of span k; a = 0 is identity.
inline double contractive_piece(size_t a, size_t k) { return a == 0 ? 1.0 : weight_contractive_defects(k, k - a); }
}  // namespace detail

/// Sliding trick, contractive blocks of size k: one of k equally likely layouts
/// aligns with the operator, the rest split it into pieces k1 and k - k1.
inline double weight_sliding_contractive(size_t k) {
  detail::require_k(k, "weight_sliding_contractive");
  double total = 0;
  for (size_t k1 = 1; k1 <= k; k1++) total += detail::contractive_piece(k1, k) * detail::contractive_piece(k - k1, k);
  return total / double(k);
}

inline double weight_sliding_random_clifford(size_t k) {
  detail::require_k(k, "weight_sliding_random_clifford");
  double w = weight_random_clifford(k);
  return w / double(k) + (double(k) - 1.0) / double(k) * w * w;
}

/// Weight contributed by one block of span `span` under `e` when the operator
/// restricted to it has `support` non-identity sites.
inline double block_weight(Ensemble e, size_t span, size_t support) {
  if (support > span) throw std::invalid_argument("block_weight: support exceeds span");
  if (support == 0) return 1.0;
  switch (e) {
    case Ensemble::identity: return std::pow(3.0, -double(support));
    case Ensemble::random_clifford: return weight_random_clifford(span);
    case Ensemble::contractive: return weight_contractive_defects(span, span - support);
  }
  return 1.0;
}

namespace exact {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer ipow(unsigned base, size_t e) {
  Integer r = 1;
  for (size_t i = 0; i < e; i++) r *= base;
  return r;
}

inline Rational rpow(const Rational& base, size_t e) {
  Rational r = 1;
  for (size_t i = 0; i < e; i++) r *= base;
  return r;
}

inline Integer binomial(size_t n, size_t r) {
  Integer out = 1;
  for (size_t i = 0; i < r; i++) {
    out *= (n - i);
    out /= (i + 1);
  }
  return out;
}

inline std::vector<Rational> size_distribution_contractive(size_t k) {
  detail::require_k(k, "exact::size_distribution_contractive");
  std::vector<Rational> p(k + 1, Rational(0));
  Integer denom = ipow(3, k);
  for (size_t n = 0; n <= k; n++) p[n % 2 == 1 ? n : k] += Rational(binomial(k, n) * ipow(2, n), denom);
  return p;
}

inline std::vector<Rational> size_distribution_random_clifford(size_t k) {
  detail::require_k(k, "exact::size_distribution_random_clifford");
  std::vector<Rational> p(k + 1, Rational(0));
  Integer denom = ipow(4, k) - 1;
  for (size_t m = 1; m <= k; m++) p[m] = Rational(binomial(k, m) * ipow(3, m), denom);
  return p;
}

inline Rational weight_from_distribution(const std::vector<Rational>& p) {
  Rational w = 0;
  for (size_t m = 0; m < p.size(); m++) w += p[m] / Rational(ipow(3, m));
  return w;
}

inline Rational weight_contractive(size_t k) {
  detail::require_k(k, "exact::weight_contractive");
  Rational third(1, 3), ninth(1, 9), five_ninths(5, 9);
  Rational sign = (k % 2 == 0) ? 1 : -1;
  return Rational(1, 2) * (rpow(third, k) + sign * rpow(ninth, k)) +
         Rational(1, 2) * (rpow(five_ninths, k) - rpow(ninth, k));
}

/// The even/odd binomial double sum, evaluated exactly.
inline Rational weight_contractive_binomial_sum(size_t k) {
  detail::require_k(k, "exact::weight_contractive_binomial_sum");
  Rational total = 0;
  Integer three_k = ipow(3, k);
  for (size_t n = 0; n <= k; n++) {
    Integer configs = binomial(k, n) * ipow(2, n);
    Integer size_cost = (n % 2 == 0) ? three_k : ipow(3, n);
    total += Rational(configs, three_k * size_cost);
  }
  return total;
}

inline Rational weight_random_clifford(size_t k) {
  detail::require_k(k, "exact::weight_random_clifford");
  return Rational(Integer(1), ipow(2, k) + 1);
}

inline Rational weight_contractive_defects(size_t k, size_t q) {
  if (q >= k) throw std::invalid_argument("exact::weight_contractive_defects: need q < k");
  size_t kt = k - q;
  Rational third(1, 3), ninth(1, 9), five_ninths(5, 9);
  Rational sign = (kt % 2 == 0) ? 1 : -1;
  return Rational(1, 2) * (rpow(third, kt) + sign * rpow(ninth, kt)) +
         Rational(1, 2) * (rpow(five_ninths, kt) - rpow(ninth, kt)) * rpow(third, q);
}

inline Rational weight_sliding_contractive(size_t k) {
  detail::require_k(k, "exact::weight_sliding_contractive");
  auto piece = [k](size_t a) { return a == 0 ? Rational(1) : weight_contractive_defects(k, k - a); };
  Rational total = 0;
  for (size_t k1 = 1; k1 <= k; k1++) total += piece(k1) * piece(k - k1);
  return total / Rational(k);
}

inline Rational weight_sliding_random_clifford(size_t k) {
  Rational w = weight_random_clifford(k);
  return w / Rational(k) + Rational(k - 1, k) * w * w;
}

}  // namespace exact

/// Weight table rows for documentation: ensemble, k, q, weight, shadow norm and
/// the asymptotic reference scaling for that ensemble.
struct WeightRow {
  WeightReport report;
  double reference;
};

inline std::vector<std::string_view> weight_table_ensembles() {
  return {"identity", "random_clifford", "contractive", "sliding_contractive", "sliding_random_clifford"};
}

inline WeightRow weight_row(std::string_view ensemble, size_t k, size_t q = 0) {
  double kk = double(k);
  std::string name(ensemble);
  if (ensemble == "identity") return {WeightReport::make(name, k, q, weight_identity(k - q)), std::pow(3.0, kk - double(q))};
  if (ensemble == "random_clifford") return {WeightReport::make(name, k, q, weight_random_clifford(k)), std::pow(2.0, kk) + 1};
  if (ensemble == "contractive") {
    return {WeightReport::make(name, k, q, weight_contractive_defects(k, q)),
            std::pow(5.0 / 3.0, double(q)) * 2.0 * std::pow(1.8, kk)};
  }
  if (ensemble == "sliding_contractive") {
    return {WeightReport::make(name, k, q, weight_sliding_contractive(k)), 32.0 / 19.0 * kk * std::pow(1.8, kk)};
  }
  if (ensemble == "sliding_random_clifford") {
    return {WeightReport::make(name, k, q, weight_sliding_random_clifford(k)), kk * (std::pow(2.0, kk) + 1)};
  }
  throw std::invalid_argument("unknown weight-table ensemble '" + name + "'");
}

}  // namespace ctshadow
