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

// Self-check suites run by `ctshadow verify`. Each check is a quick, seeded
// version of a module invariant and reports pass/fail with a short detail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "ctshadow/clifford.hpp"
#include "ctshadow/format.hpp"
#include "ctshadow/oracle.hpp"
#include "ctshadow/pauli.hpp"
#include "ctshadow/rng.hpp"
#include "ctshadow/stabilizer.hpp"
#include "ctshadow/weights.hpp"

namespace ctshadow::verify {

struct Check {
  std::string suite;
  std::string name;
  std::function<std::string()> run;  // returns "" on success, else a failure detail
};

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

namespace detail {

inline PauliString random_pauli(size_t n, SplitMix64& rng) {
  PauliString p(n);
  for (size_t q = 0; q < n; q++) p.set(q, rng.coin(), rng.coin());
  p.set_phase(static_cast<uint8_t>(rng.below(4)));
  return p;
}

inline Circuit random_circuit(size_t n, size_t depth, SplitMix64& rng) {
  static constexpr Gate kSingle[] = {Gate::H, Gate::S, Gate::S_DAG, Gate::X, Gate::Y, Gate::Z};
  Circuit c;
  for (size_t i = 0; i < depth; i++) {
    if (n >= 2 && rng.below(3) == 0) {
      size_t a = rng.below(n), b = rng.below(n - 1);
      if (b >= a) b++;
      c.push_back({rng.coin() ? Gate::CZ : Gate::CNOT, a, b});
    } else {
      c.push_back({kSingle[rng.below(6)], rng.below(n), 0});
    }
  }
  return c;
}

inline std::string fail_if(bool bad, const std::string& msg) { return bad ? msg : std::string(); }

}  // namespace detail

inline std::vector<Check> pauli_checks() {
  return {
      {"pauli", "label round trip", [] {
         SplitMix64 rng(1);
         for (int i = 0; i < 2000; i++) {
           PauliString p = detail::random_pauli(1 + rng.below(130), rng);
           if (PauliString::from_label(p.str()) != p) return "round trip failed for " + p.str();
         }
         return std::string();
       }},
      {"pauli", "associative products", [] {
         SplitMix64 rng(2);
         for (int i = 0; i < 5000; i++) {
           size_t n = 1 + rng.below(6);
           auto a = detail::random_pauli(n, rng), b = detail::random_pauli(n, rng), c = detail::random_pauli(n, rng);
           if ((a * b) * c != a * (b * c)) return "(PQ)R != P(QR) for " + a.str() + " " + b.str() + " " + c.str();
         }
         return std::string();
       }},
      {"pauli", "commutation from product phases", [] {
         SplitMix64 rng(3);
         for (int i = 0; i < 5000; i++) {
           size_t n = 1 + rng.below(100);
           auto a = detail::random_pauli(n, rng), b = detail::random_pauli(n, rng);
           int diff = (int((a * b).phase()) - int((b * a).phase()) + 4) % 4;
           if (commutes(a, b) != (diff == 0)) return "commutes() disagrees for " + a.str() + " " + b.str();
         }
         return std::string();
       }},
  };
}

inline std::vector<Check> tableau_checks() {
  return {
      {"tableau", "conjugation vs dense matrices", [] {
         SplitMix64 rng(4);
         for (int i = 0; i < 300; i++) {
           size_t n = 1 + rng.below(4);
           auto c = detail::random_circuit(n, 1 + rng.below(20), rng);
           auto p = detail::random_pauli(n, rng);
           if (CliffordTableau::from_circuit(n, c).conjugate(p) != oracle::dense_conjugate_check(n, c, p)) {
             return "mismatch on " + p.str();
           }
         }
         return std::string();
       }},
      {"tableau", "contractive size law (k <= 8 exhaustive)", [] {
         for (size_t k = 1; k <= 8; k++) {
           auto u = contractive_unitary(k);
           size_t total = 1;
           for (size_t i = 0; i < k; i++) total *= 3;
           PauliString p(k);
           for (size_t idx = 0; idx < total; idx++) {
             size_t r = idx;
             for (size_t q = 0; q < k; q++, r /= 3) p.set(q, r % 3 != 2, r % 3 != 0);
             size_t xy = p.count_xy();
             if (u.conjugate(p).operator_size() != (xy % 2 ? xy : k)) return "size law fails for " + p.str();
           }
         }
         return std::string();
       }},
      {"tableau", "random Cliffords preserve commutation", [] {
         SplitMix64 rng(5);
         for (int i = 0; i < 500; i++) {
           size_t n = 1 + rng.below(6);
           auto t = random_clifford(n, rng);
           if (!t.is_valid()) return std::string("invalid tableau");
           auto a = detail::random_pauli(n, rng), b = detail::random_pauli(n, rng);
           if (commutes(a, b) != commutes(t.conjugate(a), t.conjugate(b))) return std::string("commutation broken");
         }
         return std::string();
       }},
      {"tableau", "24-element single-qubit group", [] {
         const auto& g = single_qubit_clifford_group();
         if (g.size() != 24) return "group has " + std::to_string(g.size()) + " elements";
         for (const auto& a : g) {
           for (const auto& b : g) {
             if (std::find(g.begin(), g.end(), compose(a, b)) == g.end()) return std::string("not closed");
           }
         }
         return std::string();
       }},
  };
}

inline std::vector<Check> oracle_checks() {
  return {
      {"oracle", "720 two-qubit classes, at most 4 contractions", [] {
         auto all = oracle::enumerate_two_qubit_symplectics();
         if (all.size() != 720) return "enumerated " + std::to_string(all.size()) + " classes";
         int best = 0;
         for (const auto& t : all) best = std::max(best, oracle::contraction_count(t));
         if (best != 4) return "max contraction count " + std::to_string(best);
         return detail::fail_if(oracle::contraction_count(contractive_unitary(2)) != 4, "U12 does not contract 4");
       }},
      {"oracle", "stabilizer expectations vs dense", [] {
         SplitMix64 rng(6);
         for (int i = 0; i < 100; i++) {
           size_t n = 1 + rng.below(5);
           StabilizerState s(n);
           s.evolve(detail::random_circuit(n, 25, rng));
           auto dense = oracle::dense_from_stabilizer(s);
           for (int j = 0; j < 10; j++) {
             auto p = detail::random_pauli(n, rng);
             p.set_phase(static_cast<uint8_t>(p.phase() & 2));
             if (std::abs(oracle::dense_expectation(dense, p) - double(s.expectation(p))) > 1e-10) {
               return "expectation mismatch for " + p.str();
             }
           }
         }
         return std::string();
       }},
  };
}

inline std::vector<Check> weights_checks() {
  return {
      {"weights", "closed form == double sum (k <= 30)", [] {
         for (size_t k = 1; k <= 30; k++) {
           if (exact::weight_contractive(k) != exact::weight_contractive_binomial_sum(k)) return "k=" + std::to_string(k);
           double a = weight_contractive(k), b = weight_contractive_binomial_sum(k);
           if (std::abs(a - b) > 1e-12 * b) return "double precision mismatch at k=" + std::to_string(k);
         }
         return std::string();
       }},
      {"weights", "brute force == closed form (k <= 8, defects q <= 2)", [] {
         for (size_t k = 1; k <= 8; k++) {
           if (oracle::brute_force_weight(k, Ensemble::contractive) != exact::weight_contractive(k)) {
             return "k=" + std::to_string(k);
           }
           for (size_t q = 1; q <= 2 && q < k; q++) {
             std::vector<bool> mask(k, false);
             for (size_t i = 0; i < q; i++) mask[i * (k - 1)] = true;
             if (oracle::brute_force_weight(k, Ensemble::contractive, mask) != exact::weight_contractive_defects(k, q)) {
               return "defects k=" + std::to_string(k) + " q=" + std::to_string(q);
             }
           }
         }
         return std::string();
       }},
      {"weights", "sliding weights 89/729 and 97/2187", [] {
         using exact::Rational;
         if (exact::weight_sliding_contractive(2) != Rational(89, 729)) return std::string("k=2");
         return detail::fail_if(exact::weight_sliding_contractive(3) != Rational(97, 2187), "k=3");
       }},
      {"weights", "asymptotic ratios", [] {
         for (size_t k = 20; k <= 60; k++) {
           if (std::abs(weight_contractive(k) * std::pow(1.8, double(k)) - 0.5) > 1e-4) return "k=" + std::to_string(k);
         }
         for (size_t k = 25; k <= 60; k++) {
           double r = weight_sliding_contractive(k) * double(k) * std::pow(1.8, double(k)) / (19.0 / 32);
           if (std::abs(r - 1) > 0.02) return "sliding k=" + std::to_string(k);
         }
         return std::string();
       }},
  };
}

inline std::vector<std::string> suite_names() { return {"pauli", "tableau", "oracle", "weights", "all"}; }

inline std::vector<Check> checks_for(const std::string& suite) {
  std::vector<Check> out;
  auto add = [&](std::vector<Check> v) { out.insert(out.end(), v.begin(), v.end()); };
  if (suite == "pauli" || suite == "all") add(pauli_checks());
  if (suite == "tableau" || suite == "all") add(tableau_checks());
  if (suite == "oracle" || suite == "all") add(oracle_checks());
  if (suite == "weights" || suite == "all") add(weights_checks());
  if (out.empty()) throw std::invalid_argument("unknown verify suite '" + suite + "'");
  return out;
}

/// Runs the checks, printing one timed line each; returns true if all pass.
inline bool run_checks(const std::vector<Check>& checks, std::ostream& out, std::vector<CheckResult>* results = nullptr) {
  bool all = true;
  for (const auto& c : checks) {
    auto start = std::chrono::steady_clock::now();
    CheckResult r{c.suite, c.name, false, "", 0};
    try {
      r.detail = c.run();
      r.passed = r.detail.empty();
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char secs[32];
    std::snprintf(secs, sizeof(secs), "%.3f", r.seconds);
    out << (r.passed ? "ok   " : "FAIL ") << r.suite << ": " << r.name << " (" << secs << " s)";
    if (!r.passed) out << " -- " << r.detail;
    out << '\n';
    all = all && r.passed;
    if (results) results->push_back(std::move(r));
  }
  return all;
}

}  // namespace ctshadow::verify
