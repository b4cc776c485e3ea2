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

#include <map>

#include "ctshadow/oracle.hpp"
#include "ctshadow/stabilizer.hpp"
#include "test_support.hpp"

namespace cs = ctshadow;
using cs::PauliString;
using cs::SplitMix64;
using cs::StabilizerState;

namespace {

PauliString L(const char* s) { return cs::parse_label(s); }

// Z Y X...X Y Z on k sites starting at `offset` of an n-qubit register.
PauliString zxz_string(size_t n, size_t offset, size_t k) {
  PauliString p(n);
  for (size_t i = 0; i < k; i++) {
    size_t q = (offset + i) % n;
    if (i == 0 || i == k - 1) p.set(q, false, true);
    else if (i == 1 || i == k - 2) p.set(q, true, true);
    else p.set(q, true, false);
  }
  return p;
}

PauliString z_string(size_t n, size_t k) {
  PauliString p(n);
  for (size_t i = 0; i < k; i++) p.set(i, false, true);
  return p;
}

TEST(StabilizerPrep, FromGenerators) {
  auto zero = cs::from_generators({"+Z"});
  EXPECT_EQ(cs::expectation_pauli(zero, L("Z")), 1);
  EXPECT_THROW(cs::from_generators({"+X", "+Z"}), std::invalid_argument);
  EXPECT_THROW(cs::from_generators({"+ZZ", "+ZZ"}), std::invalid_argument);
  EXPECT_THROW(cs::from_generators({"+ZI", "+IZ", "-ZZ"}), std::invalid_argument);
  EXPECT_THROW(cs::from_generators({"+ZI", "-ZI"}), std::invalid_argument);
  EXPECT_THROW(cs::from_generators({"+iZ"}), std::invalid_argument);
  auto bell = cs::from_generators({"+ZZ", "+XX"});
  EXPECT_TRUE(bell.is_valid());
  SplitMix64 rng(40);
  for (int i = 0; i < 50; i++) {
    auto p = cs::testing::random_pauli(2, rng);
    EXPECT_EQ(cs::expectation_pauli(bell, p), cs::expectation_pauli(cs::ghz_state(2), p));
  }
}

TEST(StabilizerPrep, Ghz) {
  EXPECT_EQ(cs::expectation_pauli(cs::ghz_state(4), L("ZZZZ")), 1);
  EXPECT_EQ(cs::expectation_pauli(cs::ghz_state(3), L("ZZZ")), 0);
  EXPECT_EQ(cs::expectation_pauli(cs::ghz_state(4), L("ZZII")), 1);
  EXPECT_EQ(cs::expectation_pauli(cs::ghz_state(5), L("XXXXX")), 1);
  for (size_t k = 1; k <= 12; k++) {
    EXPECT_EQ(cs::expectation_pauli(cs::ghz_state(12), z_string(12, k)), k % 2 ? 0 : 1) << k;
  }
  EXPECT_THROW(cs::ghz_state(1), std::invalid_argument);
}

TEST(StabilizerPrep, Cluster) {
  auto s = cs::zxz_cluster_state(6);
  for (const auto& g : s.stabilizers()) EXPECT_EQ(cs::expectation_pauli(s, g), 1);
  EXPECT_EQ(cs::expectation_pauli(s, L("XIIIII")), 0);
  EXPECT_EQ(cs::expectation_pauli(s, zxz_string(6, 0, 6)), 1);
  auto big = cs::zxz_cluster_state(12);
  for (size_t k = 4; k <= 12; k++) {
    for (size_t off = 0; off < 12; off++) {
      EXPECT_EQ(cs::expectation_pauli(big, zxz_string(12, off, k)), k % 2 ? -1 : 1) << k << " " << off;
    }
  }
  // At k = 3 the two Y sites coincide and the string ZYZ is not in the group.
  EXPECT_EQ(cs::expectation_pauli(big, zxz_string(12, 0, 3)), 0);
  EXPECT_THROW(cs::zxz_cluster_state(2), std::invalid_argument);
}

TEST(StabilizerEvolve, Basics) {
  StabilizerState s(1);
  s.evolve(cs::GateOp{cs::Gate::H, 0, 0});
  EXPECT_EQ(cs::expectation_pauli(s, L("X")), 1);
  auto g = cs::ghz_state(3);
  auto same = cs::evolve(g, cs::identity(3));
  for (const char* p : {"ZZI", "XXX", "ZIZ", "XII"}) EXPECT_EQ(same.expectation(L(p)), g.expectation(L(p)));
  EXPECT_THROW(cs::evolve(g, cs::identity(2)), std::invalid_argument);
}

TEST(StabilizerEvolve, InverseRestoresExpectations) {
  SplitMix64 rng(41);
  for (int i = 0; i < 40; i++) {
    size_t n = 2 + rng.below(6);
    auto state = cs::zxz_cluster_state(std::max<size_t>(n, 3));
    n = state.num_qubits();
    auto t = cs::random_clifford(n, rng);
    auto back = cs::evolve(cs::evolve(state, t), t.inverse());
    EXPECT_TRUE(back.is_valid());
    for (int j = 0; j < 50; j++) {
      auto p = cs::testing::random_pauli(n, rng);
      EXPECT_EQ(back.expectation(p), state.expectation(p));
    }
  }
}

TEST(StabilizerMeasure, DeterministicAndBell) {
  SplitMix64 rng(42);
  auto s01 = cs::from_generators({"+ZI", "-IZ"});
  for (int i = 0; i < 100; i++) EXPECT_EQ(cs::measure_all(s01, rng).str(), "01");

  auto ghz = cs::ghz_state(3);
  const uint64_t shots = 10000;
  uint64_t zeros = 0;
  for (uint64_t i = 0; i < shots; i++) {
    auto bits = cs::measure_all(ghz, rng).str();
    ASSERT_TRUE(bits == "000" || bits == "111");
    zeros += bits == "000";
  }
  EXPECT_LT(cs::testing::binomial_z(zeros, shots, 0.5), 5.0);

  auto plus_zero = cs::from_generators({"+XI", "+IZ"});
  uint64_t ones = 0;
  for (uint64_t i = 0; i < shots; i++) {
    auto bits = cs::measure_all(plus_zero, rng);
    ASSERT_FALSE(bits[1]);
    ones += bits[0];
  }
  EXPECT_LT(cs::testing::binomial_z(ones, shots, 0.5), 5.0);
}

TEST(StabilizerMeasure, PostMeasurementStateStabilizesOutcome) {
  SplitMix64 rng(43);
  for (int i = 0; i < 200; i++) {
    size_t n = 1 + rng.below(6);
    StabilizerState s(n);
    s.evolve(cs::testing::random_circuit(n, 30, rng));
    for (size_t q = 0; q < n; q++) {
      bool bit = s.measure(q, rng);
      ASSERT_TRUE(s.is_valid());
      PauliString z(n);
      z.set(q, false, true);
      EXPECT_EQ(s.expectation(z), bit ? -1 : 1);
    }
  }
}

// Expectations and outcome statistics agree with the dense simulator.
TEST(StabilizerOracle, ExpectationsMatchDense) {
  SplitMix64 rng(44);
  for (int i = 0; i < 200; i++) {
    size_t n = 1 + rng.below(5);
    StabilizerState s(n);
    s.evolve(cs::testing::random_circuit(n, 25, rng));
    auto dense = cs::oracle::dense_from_stabilizer(s);
    EXPECT_NEAR(dense.norm_squared(), 1.0, 1e-10);
    for (int j = 0; j < 10; j++) {
      auto p = cs::testing::random_pauli(n, rng);
      auto v = cs::oracle::dense_expectation(dense, p);
      EXPECT_NEAR(v.imag(), 0.0, 1e-10);
      EXPECT_EQ(std::lround(v.real()), s.expectation(p));
      EXPECT_NEAR(v.real(), s.expectation(p), 1e-10);
    }
  }
}

TEST(StabilizerOracle, MeasurementDistributionMatchesDense) {
  SplitMix64 rng(45);
  const uint64_t shots = 20000;
  for (int i = 0; i < 10; i++) {
    size_t n = 2 + rng.below(4);
    StabilizerState s(n);
    s.evolve(cs::testing::random_circuit(n, 30, rng));
    auto probs = cs::oracle::dense_from_stabilizer(s).probabilities();
    std::vector<uint64_t> counts(probs.size());
    for (uint64_t k = 0; k < shots; k++) {
      auto bits = cs::measure_all(s, rng);
      size_t idx = 0;
      for (size_t q = 0; q < n; q++) idx |= size_t(bits[q]) << q;
      counts[idx]++;
    }
    for (size_t o = 0; o < probs.size(); o++) EXPECT_LT(cs::testing::binomial_z(counts[o], shots, probs[o]), 5.0);
  }
}

TEST(StabilizerOracle, DenseStateExamples) {
  auto bell = cs::oracle::dense_from_stabilizer(cs::ghz_state(2));
  EXPECT_NEAR(std::abs(bell.amplitudes[0]), std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(std::abs(bell.amplitudes[3]), std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(std::abs(bell.amplitudes[1]) + std::abs(bell.amplitudes[2]), 0.0, 1e-12);
  auto zero = cs::oracle::dense_from_stabilizer(cs::from_generators({"+Z"}));
  EXPECT_NEAR(std::abs(zero.amplitudes[0] - 1.0), 0.0, 1e-12);
  auto cluster = cs::oracle::dense_from_stabilizer(cs::zxz_cluster_state(3));
  EXPECT_NEAR(cs::oracle::dense_expectation(cluster, L("XZZ")).real(), 1.0, 1e-12);
  auto h = cs::oracle::DenseState::zero(1);
  cs::oracle::dense_apply(h, cs::Circuit{{cs::Gate::H, 0, 0}});
  EXPECT_NEAR(h.amplitudes[1].real(), std::sqrt(0.5), 1e-12);
  auto cz = cs::oracle::DenseState::zero(2);
  cs::oracle::dense_apply(cz, cs::Circuit{{cs::Gate::H, 0, 0}, {cs::Gate::H, 1, 0}});
  auto before = cz;
  cs::oracle::dense_apply(cz, cs::Circuit{{cs::Gate::CZ, 0, 1}, {cs::Gate::CZ, 0, 1}});
  for (size_t i = 0; i < 4; i++) EXPECT_NEAR(std::abs(cz.amplitudes[i] - before.amplitudes[i]), 0.0, 1e-12);
  EXPECT_THROW(cs::oracle::DenseState::zero(11), std::invalid_argument);
}

TEST(StabilizerOracle, ZZQuarterPhases) {
  auto s = cs::oracle::DenseState::zero(2);
  cs::oracle::dense_apply(s, cs::Circuit{{cs::Gate::H, 0, 0}, {cs::Gate::H, 1, 0}});
  cs::oracle::dense_apply_zz_quarter(s, 0, 1);
  const double pi4 = M_PI / 4;
  const double expect[4] = {pi4, -pi4, -pi4, pi4};
  for (size_t i = 0; i < 4; i++) EXPECT_NEAR(std::arg(s.amplitudes[i]), expect[i], 1e-12);
}

}  // namespace
