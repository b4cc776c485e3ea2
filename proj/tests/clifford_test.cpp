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

#include <gtest/gtest.h>

#include <array>
#include <map>

#include "ctshadow/clifford.hpp"
#include "ctshadow/oracle.hpp"
#include "test_support.hpp"

namespace cs = ctshadow;
using cs::CliffordTableau;
using cs::Gate;
using cs::GateOp;
using cs::PauliString;
using cs::SplitMix64;

namespace {

PauliString L(const char* s) { return cs::parse_label(s); }

TEST(CliffordBasics, Identity) {
  CliffordTableau t = cs::identity(1);
  EXPECT_EQ(t.x_image(0).str(), "+X");
  EXPECT_EQ(t.z_image(0).str(), "+Z");
  EXPECT_EQ(cs::conjugate(cs::identity(3), L("ZYX")), L("ZYX"));
  EXPECT_THROW(cs::identity(0), std::invalid_argument);
}

TEST(CliffordBasics, GateRules) {
  auto h = cs::apply_gate(cs::identity(1), Gate::H, {0});
  EXPECT_EQ(h.x_image(0).str(), "+Z");
  EXPECT_EQ(h.z_image(0).str(), "+X");
  auto s = cs::apply_gate(cs::identity(1), Gate::S, {0});
  EXPECT_EQ(s.x_image(0).str(), "+Y");
  EXPECT_EQ(s.z_image(0).str(), "+Z");
  auto cz = cs::apply_gate(cs::identity(2), Gate::CZ, {0, 1});
  EXPECT_EQ(cz.x_image(0).str(), "+XZ");
  EXPECT_EQ(cz.z_image(0).str(), "+ZI");
}

TEST(CliffordBasics, GateTargetErrors) {
  EXPECT_THROW(cs::apply_gate(cs::identity(2), Gate::H, {2}), std::out_of_range);
  EXPECT_THROW(cs::apply_gate(cs::identity(2), Gate::CZ, {1, 1}), std::invalid_argument);
  EXPECT_THROW(cs::apply_gate(cs::identity(2), Gate::CZ, {0}), std::invalid_argument);
}

TEST(CliffordBasics, Compose) {
  auto h = cs::apply_gate(cs::identity(1), Gate::H, {0});
  EXPECT_EQ(cs::compose(h, h), cs::identity(1));
  auto s = cs::apply_gate(cs::identity(1), Gate::S, {0});
  EXPECT_EQ(cs::compose(s, s).conjugate(L("X")).str(), "-X");
  EXPECT_THROW(cs::compose(h, cs::identity(2)), std::invalid_argument);
}

TEST(CliffordBasics, ComposeMatchesSequentialConjugation) {
  SplitMix64 rng(21);
  for (int i = 0; i < 300; i++) {
    size_t n = 1 + rng.below(5);
    auto a = cs::random_clifford(n, rng);
    auto b = cs::random_clifford(n, rng);
    auto p = cs::testing::random_pauli(n, rng, false);
    EXPECT_EQ(cs::compose(a, b).conjugate(p), a.conjugate(b.conjugate(p)));
    EXPECT_EQ(cs::compose(a.inverse(), a), cs::identity(n));
    EXPECT_EQ(cs::compose(a, a.inverse()), cs::identity(n));
  }
}

TEST(CliffordBasics, DebugFormat) {
  auto t = cs::apply_gate(cs::identity(2), Gate::CZ, {0, 1});
  EXPECT_EQ(t.str(), "X0 -> +XZ\nX1 -> +ZX\nZ0 -> +ZI\nZ1 -> +IZ\n");
}

TEST(CliffordDense, GatesMatchDenseMatrices) {
  for (Gate g : {Gate::H, Gate::S, Gate::S_DAG, Gate::X, Gate::Y, Gate::Z, Gate::CZ, Gate::CNOT}) {
    cs::Circuit c{GateOp{g, 0, cs::is_two_qubit(g) ? size_t{1} : size_t{0}}};
    auto t = CliffordTableau::from_circuit(2, c);
    for (const char* p : {"XI", "ZI", "IX", "IZ", "YY", "-XZ"}) {
      EXPECT_EQ(t.conjugate(L(p)), cs::oracle::dense_conjugate_check(2, c, L(p))) << cs::gate_name(g) << " " << p;
    }
  }
}

TEST(CliffordDense, RandomCircuitsMatchDense) {
  SplitMix64 rng(22);
  for (int i = 0; i < 500; i++) {
    size_t n = 1 + rng.below(4);
    auto circuit = cs::testing::random_circuit(n, 1 + rng.below(20), rng);
    auto p = cs::testing::random_pauli(n, rng, false);
    auto t = CliffordTableau::from_circuit(n, circuit);
    EXPECT_EQ(t.conjugate(p), cs::oracle::dense_conjugate_check(n, circuit, p));
  }
}

TEST(CliffordDense, IdentityCircuit) {
  SplitMix64 rng(23);
  for (int i = 0; i < 20; i++) {
    auto p = cs::testing::random_pauli(3, rng, false);
    EXPECT_EQ(cs::oracle::dense_conjugate_check(3, {}, p), p);
  }
}

TEST(CliffordDense, SymplecticPreservation) {
  SplitMix64 rng(24);
  for (int i = 0; i < 300; i++) {
    size_t n = 1 + rng.below(6);
    auto t = cs::random_clifford(n, rng);
    EXPECT_TRUE(t.is_valid());
    auto p = cs::testing::random_pauli(n, rng);
    auto q = cs::testing::random_pauli(n, rng);
    EXPECT_EQ(cs::commutes(p, q), cs::commutes(t.conjugate(p), t.conjugate(q)));
  }
}

// The gate decomposition must equal prod_{i<j} exp(i pi/4 Z_i Z_j) up to one
// global phase.
TEST(ContractiveUnitary, MatchesZZExponentials) {
  SplitMix64 rng(25);
  for (size_t k = 2; k <= 5; k++) {
    auto a = cs::oracle::DenseState::zero(k);
    cs::oracle::dense_apply(a, cs::testing::random_circuit(k, 30, rng));
    auto b = a;
    cs::oracle::dense_apply(a, cs::contractive_circuit(k));
    for (size_t i = 0; i < k; i++) {
      for (size_t j = i + 1; j < k; j++) cs::oracle::dense_apply_zz_quarter(b, i, j);
    }
    cs::oracle::Complex overlap = 0;
    for (size_t x = 0; x < a.amplitudes.size(); x++) overlap += std::conj(a.amplitudes[x]) * b.amplitudes[x];
    EXPECT_NEAR(std::abs(overlap), 1.0, 1e-12) << "k=" << k;
  }
}

TEST(ContractiveUnitary, TwoQubitRules) {
  auto u = cs::contractive_unitary(2);
  EXPECT_EQ(u.conjugate(L("XZ")).str(), "-YI");
  EXPECT_EQ(u.conjugate(L("ZX")).str(), "-IY");
  EXPECT_EQ(u.conjugate(L("ZZ")).str(), "+ZZ");
  EXPECT_EQ(u.conjugate(L("XX")).str(), "+XX");
  EXPECT_EQ(u.z_image(0).str(), "+ZI");
  EXPECT_EQ(u.x_image(0).operator_size(), 2u);
  EXPECT_TRUE(u.x_image(0).x(0) && u.x_image(0).z(0) && u.x_image(0).z(1) && !u.x_image(0).x(1));
  EXPECT_EQ(cs::oracle::dense_conjugate_check(2, cs::contractive_circuit(2), L("XZ")).str(), "-YI");
}

TEST(ContractiveUnitary, SmallCases) {
  EXPECT_EQ(cs::contractive_unitary(1), cs::identity(1));
  auto img = cs::contractive_unitary(3).conjugate(L("ZZX"));
  EXPECT_EQ(img.operator_size(), 1u);
  EXPECT_TRUE(img.x(2));
  for (size_t k = 1; k <= 12; k++) {
    auto u = cs::contractive_unitary(k);
    for (size_t q = 0; q < k; q++) {
      PauliString z(k);
      z.set(q, false, true);
      EXPECT_EQ(u.conjugate(z), z);
    }
  }
}

size_t expected_size(const PauliString& p) {
  size_t xy = p.count_xy();
  return xy % 2 ? xy : p.num_qubits();
}

TEST(ContractiveUnitary, SizeLawExhaustive) {
  for (size_t k = 1; k <= 8; k++) {
    auto u = cs::contractive_unitary(k);
    size_t total = 1;
    for (size_t i = 0; i < k; i++) total *= 3;
    PauliString p(k);
    for (size_t idx = 0; idx < total; idx++) {
      size_t r = idx;
      for (size_t q = 0; q < k; q++, r /= 3) p.set(q, r % 3 != 2, r % 3 != 0);
      auto img = u.conjugate(p);
      ASSERT_EQ(img.operator_size(), expected_size(p)) << p;
      // Even count_xy: Z sites and support are untouched; X and Y may trade
      // places when k is odd, and for even k the string commutes outright.
      if (p.count_xy() % 2 == 0) {
        for (size_t q = 0; q < k; q++) {
          ASSERT_EQ(img.x(q), p.x(q));
          if (!p.x(q)) ASSERT_TRUE(img.z(q));
          if (p.x(q) && k % 2 == 1) ASSERT_NE(img.z(q), p.z(q));
        }
        if (k % 2 == 0) ASSERT_TRUE(img.same_bits(p));
      }
    }
  }
}

TEST(ContractiveUnitary, SizeLawSampledLarge) {
  SplitMix64 rng(26);
  for (size_t k : {9, 10, 40}) {
    auto u = cs::contractive_unitary(k);
    for (int i = 0; i < 2000; i++) {
      auto p = cs::testing::random_full_support(k, rng);
      EXPECT_EQ(u.conjugate(p).operator_size(), expected_size(p));
    }
  }
}

// With identity sites and odd count_xy, identities become Z and Z sites
// become identity; X/Y sites keep support.
TEST(ContractiveUnitary, DefectConversion) {
  SplitMix64 rng(27);
  for (int i = 0; i < 3000; i++) {
    size_t k = 2 + rng.below(9);
    auto p = cs::testing::random_pauli(k, rng);
    p.set_phase(0);
    if (p.count_xy() % 2 == 0) continue;
    auto img = cs::contractive_unitary(k).conjugate(p);
    for (size_t q = 0; q < k; q++) {
      bool was_identity = !p.x(q) && !p.z(q);
      bool was_z = !p.x(q) && p.z(q);
      if (was_identity) EXPECT_TRUE(!img.x(q) && img.z(q));
      if (was_z) EXPECT_TRUE(!img.x(q) && !img.z(q));
      if (p.x(q)) EXPECT_TRUE(img.x(q));
    }
  }
}

TEST(SingleQubitGroup, Structure) {
  const auto& g = cs::single_qubit_clifford_group();
  ASSERT_EQ(g.size(), 24u);
  EXPECT_EQ(g[0], cs::identity(1));
  for (size_t i = 0; i < 24; i++) {
    for (size_t j = 0; j < 24; j++) {
      if (i != j) EXPECT_FALSE(g[i] == g[j]);
      auto c = cs::compose(g[i], g[j]);
      EXPECT_TRUE(std::find(g.begin(), g.end(), c) != g.end());
    }
  }
  // Every axis maps to every signed axis exactly four times.
  for (const char* from : {"X", "Y", "Z"}) {
    std::map<std::string, int> hits;
    for (const auto& t : g) hits[t.conjugate(L(from)).str()]++;
    ASSERT_EQ(hits.size(), 6u);
    for (const auto& [label, count] : hits) EXPECT_EQ(count, 4) << from << " -> " << label;
  }
}

TEST(RandomClifford, SingleQubitUniform) {
  const auto& g = cs::single_qubit_clifford_group();
  SplitMix64 rng(28);
  const int draws = 48000;
  std::array<int, 24> counts{};
  for (int i = 0; i < draws; i++) {
    auto t = cs::random_clifford(1, rng);
    auto it = std::find(g.begin(), g.end(), t);
    ASSERT_TRUE(it != g.end());
    counts[it - g.begin()]++;
  }
  double expect = draws / 24.0, chi2 = 0;
  for (int c : counts) chi2 += (c - expect) * (c - expect) / expect;
  // 23 degrees of freedom: mean 23, sd sqrt(46).
  EXPECT_LT(chi2, 23 + 5 * std::sqrt(46.0));
}

TEST(RandomClifford, TwoQubitSizeDistribution) {
  SplitMix64 rng(29);
  const uint64_t draws = 100000;
  uint64_t size1 = 0;
  for (uint64_t i = 0; i < draws; i++) size1 += cs::random_clifford(2, rng).conjugate(L("XX")).operator_size() == 1;
  EXPECT_LT(cs::testing::binomial_z(size1, draws, 6.0 / 15), 5.0);
}

TEST(RandomClifford, ValidForManySizes) {
  SplitMix64 rng(30);
  for (int i = 0; i < 1000; i++) EXPECT_TRUE(cs::random_clifford(1 + rng.below(12), rng).is_valid());
  EXPECT_TRUE(cs::random_clifford(70, rng).is_valid());
}

TEST(RandomClifford, PackedPathMatchesGeneral) {
  for (size_t k = 1; k <= 32; k += (k < 12 ? 1 : 5)) {
    for (uint64_t seed = 0; seed < 20; seed++) {
      SplitMix64 a(seed), b(seed);
      EXPECT_EQ(cs::detail::random_clifford_packed(k, a), cs::detail::random_clifford_general(k, b)) << "k=" << k;
      EXPECT_EQ(a(), b());
    }
  }
}

TEST(LocalLayerTest, AxisUniform) {
  SplitMix64 rng(31);
  const uint64_t draws = 30000;
  std::array<uint64_t, 3> axis{};
  std::array<size_t, 1> site{1};
  for (uint64_t i = 0; i < draws; i++) {
    auto layer = cs::LocalLayer::random(3, site, rng);
    PauliString z = L("IZI");
    layer.apply(z);
    ASSERT_FALSE(z.x(0) || z.z(0) || z.x(2) || z.z(2));
    axis[(z.x(1) | (z.z(1) << 1)) - 1]++;
  }
  for (auto c : axis) EXPECT_LT(cs::testing::binomial_z(c, draws, 1.0 / 3), 5.0);
}

TEST(LocalLayerTest, EmptySitesIsIdentity) {
  SplitMix64 rng(32);
  std::vector<size_t> none;
  EXPECT_EQ(cs::random_local_layer(4, none, rng), cs::identity(4));
}

TEST(LocalLayerTest, LookupMatchesTableau) {
  SplitMix64 rng(33);
  std::vector<size_t> sites{0, 2, 3};
  for (int i = 0; i < 200; i++) {
    auto layer = cs::LocalLayer::random(5, sites, rng);
    auto t = layer.tableau();
    auto p = cs::testing::random_pauli(5, rng);
    auto q = p;
    layer.apply(q);
    EXPECT_EQ(q, t.conjugate(p));
  }
}

TEST(EmbedTest, ActsOnChosenSites) {
  auto u = cs::contractive_unitary(2);
  std::vector<size_t> sites{3, 1};
  auto big = cs::embed(u, 5, sites);
  EXPECT_EQ(big.conjugate(L("IZIXI")).str(), "-IIIYI");
  EXPECT_EQ(big.conjugate(L("XIIIZ")), L("XIIIZ"));
}

}  // namespace
