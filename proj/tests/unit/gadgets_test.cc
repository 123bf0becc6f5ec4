// Copyright 2026 The devreg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "devreg/circuit/gadgets.h"

#include <gtest/gtest.h>

#include <random>

#include "devreg/crypto/eddsa.h"
#include "devreg/crypto/poseidon.h"
#include "test_util.h"

namespace devreg::circuit {
namespace {

using testing::random_field;

std::array<uint8_t, 32> seed_of(uint64_t v) {
  std::array<uint8_t, 32> s{};
  for (int i = 0; i < 8; ++i) s[i] = static_cast<uint8_t>(v >> (8 * i));
  return s;
}

bool satisfied(const Builder& b) {
  return !b.system().first_unsatisfied(b.assignment()).has_value();
}

TEST(Gadgets, HashMatchesNativeOnRandomInputs) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 100; ++i) {
    std::vector<Fr> in(1 + rng() % 11);
    for (auto& x : in) x = random_field<Fr>(rng);
    Builder b;
    std::vector<LC> vars;
    for (const auto& x : in) vars.push_back(b.witness(x));
    LC out = hash_fields(b, vars);
    EXPECT_EQ(b.value(out), crypto::hash_fields(in)) << i;
    EXPECT_TRUE(satisfied(b)) << i;
  }
}

TEST(Gadgets, BitsAndComparison) {
  Builder b;
  Var x = b.witness(Fr::from_u64(1000));
  auto bits = to_bits(b, x, 10);
  enforce_bits_below(b, bits, ff::U256(1001));
  EXPECT_TRUE(satisfied(b));

  Builder c;
  Var y = c.witness(Fr::from_u64(1001));
  auto ybits = to_bits(c, y, 10);
  enforce_bits_below(c, ybits, ff::U256(1001));
  EXPECT_FALSE(satisfied(c));

  Builder d;
  Var z = d.witness(Fr::from_u64(1024));
  to_bits(d, z, 10);
  EXPECT_FALSE(satisfied(d));

  Builder e;
  to_bits_strict(e, e.witness(-Fr::one()));
  EXPECT_TRUE(satisfied(e));
}

TEST(Gadgets, PointOpsMatchNative) {
  std::mt19937_64 rng(62);
  crypto::Point p = crypto::mul_base8(random_field<crypto::Fs>(rng));
  crypto::Point q = crypto::mul_base8(random_field<crypto::Fs>(rng));
  Builder b;
  PointVar pv{b.witness(p.x), b.witness(p.y)};
  PointVar qv{b.witness(q.x), b.witness(q.y)};
  PointVar sum = point_add(b, pv, qv);
  EXPECT_EQ(b.value(sum.x), (p + q).x);
  EXPECT_EQ(b.value(sum.y), (p + q).y);
  Fr k = random_field<Fr>(rng);
  auto bits = to_bits_strict(b, b.witness(k));
  PointVar kp = scalar_mul(b, bits, pv);
  EXPECT_EQ(b.value(kp.x), p.mul(k.to_u256()).x);
  PointVar kb = fixed_base_mul(b, bits, crypto::base8());
  EXPECT_EQ(b.value(kb.y), crypto::base8().mul(k.to_u256()).y);
  enforce_on_curve(b, pv);
  EXPECT_TRUE(satisfied(b));
}

// The gadget accepts exactly the signatures crypto::verify_digest accepts.
TEST(Gadgets, EddsaAgreesWithNativeVerify) {
  std::mt19937_64 rng(63);
  int accepted = 0;
  for (int i = 0; i < 100; ++i) {
    crypto::KeyPair k = crypto::keygen(seed_of(500 + i % 7));
    Fr m = random_field<Fr>(rng);
    crypto::Signature sig = crypto::sign_digest(k.secret, m);
    crypto::Point pub = k.pub;
    switch (i % 4) {
      case 1: m += Fr::one(); break;
      case 2: sig.S += crypto::Fs::one(); break;
      case 3: pub = crypto::keygen(seed_of(900 + i)).pub; break;
      default: break;
    }
    const bool native = crypto::verify_digest(pub, m, sig);
    Builder b;
    PointVar pv{b.input(pub.x), b.input(pub.y)};
    Var mv = b.witness(m);
    PointVar rv{b.witness(sig.R.x), b.witness(sig.R.y)};
    Var sv = b.witness(Fr::reduce(sig.S.to_u256()));
    verify_eddsa(b, pv, mv, rv, sv);
    EXPECT_EQ(satisfied(b), native) << i;
    accepted += native;
  }
  EXPECT_EQ(accepted, 25);
}

TEST(Gadgets, EddsaRejectsOffCurveR) {
  crypto::KeyPair k = crypto::keygen(seed_of(1));
  crypto::Signature sig = crypto::sign_digest(k.secret, Fr::from_u64(3));
  Builder b;
  PointVar pv{b.input(k.pub.x), b.input(k.pub.y)};
  PointVar rv{b.witness(sig.R.x + Fr::one()), b.witness(sig.R.y)};
  verify_eddsa(b, pv, b.witness(Fr::from_u64(3)), rv,
               b.witness(Fr::reduce(sig.S.to_u256())));
  EXPECT_FALSE(satisfied(b));
}

}  // namespace
}  // namespace devreg::circuit
