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

#include "ctshadow/pauli.hpp"
#include "test_support.hpp"

using ctshadow::BitString;
using ctshadow::PauliString;
using ctshadow::SplitMix64;

namespace {

PauliString L(const char* s) { return ctshadow::parse_label(s); }

TEST(PauliParse, Encoding) {
  PauliString p = L("ZYX");
  EXPECT_FALSE(p.x(0));
  EXPECT_TRUE(p.x(1));
  EXPECT_TRUE(p.x(2));
  EXPECT_TRUE(p.z(0));
  EXPECT_TRUE(p.z(1));
  EXPECT_FALSE(p.z(2));
  EXPECT_EQ(p.phase(), 0);

  PauliString q = L("-YI");
  EXPECT_TRUE(q.x(0) && q.z(0));
  EXPECT_FALSE(q.x(1) || q.z(1));
  EXPECT_EQ(q.phase(), 2);
}

TEST(PauliParse, RejectsBadCharacter) {
  try {
    L("A");
    FAIL() << "expected a parse error";
  } catch (const ctshadow::ParseError& e) {
    EXPECT_EQ(e.position(), 0u);
  }
  EXPECT_THROW(L("+XQ"), ctshadow::ParseError);
  EXPECT_THROW(L(""), ctshadow::ParseError);
  EXPECT_THROW(L("-"), ctshadow::ParseError);
}

TEST(PauliParse, LabelRoundTrip) {
  for (const char* s : {"+XYZ", "-IIZ", "+iX", "-iYYI", "+I"}) EXPECT_EQ(L(s).str(), s);
  EXPECT_EQ(L("XZ").str(), "+XZ");
  SplitMix64 rng(11);
  for (int i = 0; i < 500; i++) {
    PauliString p = ctshadow::testing::random_pauli(1 + rng.below(70), rng, false);
    EXPECT_EQ(L(p.str().c_str()), p);
  }
}

TEST(PauliSize, Examples) {
  EXPECT_EQ(L("XIZ").operator_size(), 2u);
  EXPECT_EQ(L("III").operator_size(), 0u);
  EXPECT_EQ(L("ZYXXZ").operator_size(), 5u);
  EXPECT_EQ(L("ZZX").count_xy(), 1u);
  EXPECT_EQ(L("XYZ").count_xy(), 2u);
  EXPECT_EQ(L("ZZZ").count_xy(), 0u);
}

TEST(PauliSize, CountsAcrossWords) {
  SplitMix64 rng(5);
  for (int i = 0; i < 200; i++) {
    size_t n = 1 + rng.below(200);
    PauliString p = ctshadow::testing::random_pauli(n, rng);
    size_t identities = 0, xy = 0;
    for (size_t q = 0; q < n; q++) {
      identities += !p.x(q) && !p.z(q);
      xy += p.x(q);
    }
    EXPECT_EQ(p.operator_size() + identities, n);
    EXPECT_EQ(p.count_xy(), xy);
    EXPECT_LE(p.count_xy(), p.operator_size());
  }
}

TEST(PauliMultiply, Examples) {
  EXPECT_EQ(ctshadow::multiply(L("X"), L("Z")).str(), "-iY");
  EXPECT_EQ(ctshadow::multiply(L("Z"), L("X")).str(), "+iY");
  EXPECT_EQ(ctshadow::multiply(L("XX"), L("XX")).str(), "+II");
  EXPECT_EQ(ctshadow::multiply(L("ZI"), L("IX")).str(), "+ZX");
  EXPECT_EQ(ctshadow::multiply(L("XY"), L("YZ")).str(), "-ZX");
  EXPECT_EQ(L("Y") * L("Y"), L("I"));
  EXPECT_THROW(L("X") * L("XX"), std::invalid_argument);
}

TEST(PauliMultiply, AssociativeWithPhase) {
  SplitMix64 rng(7);
  for (int i = 0; i < 2000; i++) {
    size_t n = 1 + rng.below(6);
    auto p = ctshadow::testing::random_pauli(n, rng, false);
    auto q = ctshadow::testing::random_pauli(n, rng, false);
    auto r = ctshadow::testing::random_pauli(n, rng, false);
    EXPECT_EQ((p * q) * r, p * (q * r));
  }
}

TEST(PauliMultiply, WideStringsMatchSitewise) {
  SplitMix64 rng(8);
  for (int i = 0; i < 100; i++) {
    size_t n = 60 + rng.below(100);
    auto p = ctshadow::testing::random_pauli(n, rng);
    auto q = ctshadow::testing::random_pauli(n, rng);
    PauliString expect(n);
    expect.set_phase(static_cast<uint8_t>(p.phase() + q.phase()));
    for (size_t s = 0; s < n; s++) {
      PauliString a(1), b(1);
      a.set(0, p.x(s), p.z(s));
      b.set(0, q.x(s), q.z(s));
      PauliString c = a * b;
      expect.set(s, c.x(0), c.z(0));
      expect.add_phase(c.phase());
    }
    EXPECT_EQ(p * q, expect);
  }
}

TEST(PauliCommute, Examples) {
  EXPECT_TRUE(ctshadow::commutes(L("XX"), L("ZZ")));
  EXPECT_FALSE(ctshadow::commutes(L("XI"), L("ZI")));
  EXPECT_TRUE(ctshadow::commutes(L("XI"), L("IZ")));
}

TEST(PauliCommute, AgreesWithProductPhases) {
  SplitMix64 rng(9);
  for (int i = 0; i < 2000; i++) {
    size_t n = 1 + rng.below(90);
    auto p = ctshadow::testing::random_pauli(n, rng);
    auto q = ctshadow::testing::random_pauli(n, rng);
    int diff = (int((p * q).phase()) - int((q * p).phase()) + 4) % 4;
    EXPECT_EQ(ctshadow::commutes(p, q), diff == 0);
    EXPECT_TRUE(diff == 0 || diff == 2);
  }
}

TEST(PauliExpectation, BasisStates) {
  EXPECT_EQ(ctshadow::expectation_on_basis_state(L("ZZ"), BitString::from_string("01")), -1);
  EXPECT_EQ(ctshadow::expectation_on_basis_state(L("XI"), BitString::from_string("00")), 0);
  EXPECT_EQ(ctshadow::expectation_on_basis_state(L("-ZI"), BitString::from_string("00")), -1);
  EXPECT_EQ(ctshadow::expectation_on_basis_state(L("IZ"), BitString::from_string("01")), -1);
  EXPECT_THROW(ctshadow::expectation_on_basis_state(L("+iZ"), BitString::from_string("0")), std::invalid_argument);
  EXPECT_THROW(ctshadow::expectation_on_basis_state(L("ZZ"), BitString::from_string("0")), std::invalid_argument);
}

TEST(BitStringTest, RoundTrip) {
  EXPECT_EQ(BitString::from_string("0110").str(), "0110");
  EXPECT_TRUE(BitString::from_string("01")[1]);
  EXPECT_THROW(BitString::from_string("012"), std::invalid_argument);
}

}  // namespace
