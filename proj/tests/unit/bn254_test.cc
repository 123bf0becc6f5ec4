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

#include <random>

#include "devreg/ec/bn254.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace devreg::ec {
namespace {

using ff::Fr;

TEST(Bn254Test, GeneratorsOnCurveAndOfOrderR) {
  EXPECT_TRUE(g1_generator().is_on_curve());
  EXPECT_TRUE(g2_generator().is_on_curve());
  EXPECT_TRUE(G1(g1_generator()).mul(Fr::kModulus).is_identity());
  EXPECT_TRUE(g2_in_subgroup(g2_generator()));
}

TEST(Bn254Test, GroupLaw) {
  std::mt19937_64 rng(11);
  Fr a = testing::random_field<Fr>(rng);
  Fr b = testing::random_field<Fr>(rng);
  G1 g(g1_generator());
  EXPECT_EQ(g.mul(a) + g.mul(b), g.mul(a + b));
  EXPECT_EQ(g.mul(a).dbl(), g.mul(a + a));
  EXPECT_EQ(g.mul(a) - g.mul(a), G1::identity());
  EXPECT_EQ(g.mul(a).add_affine(g.mul(b).to_affine()), g.mul(a + b));
  G2 h(g2_generator());
  EXPECT_EQ(h.mul(a) + h.mul(b), h.mul(a + b));
  EXPECT_TRUE(h.mul(a).to_affine().is_on_curve());
}

TEST(Bn254Test, PairingIsBilinearAndNonDegenerate) {
  std::mt19937_64 rng(12);
  Fr a = testing::random_field<Fr>(rng);
  Fr b = testing::random_field<Fr>(rng);
  const G1Affine& p = g1_generator();
  const G2Affine& q = g2_generator();
  Fq12 base = pairing(p, q);
  EXPECT_FALSE(base.is_one());
  Fq12 lhs = pairing(G1(p).mul(a).to_affine(), G2(q).mul(b).to_affine());
  Fq12 rhs = pairing(G1(p).mul(a * b).to_affine(), q);
  EXPECT_EQ(lhs, rhs);
  EXPECT_EQ(pairing(p, G2(q).mul(a * b).to_affine()), rhs);
  // The pairing lands in the order-r subgroup.
  EXPECT_TRUE(base.pow(ff::BigLimbs(Fr::kModulus.w.begin(), Fr::kModulus.w.end())).is_one());
}

TEST(Bn254Test, PairingProductCheck) {
  std::mt19937_64 rng(13);
  Fr a = testing::random_field<Fr>(rng);
  G1Affine pa = G1(g1_generator()).mul(a).to_affine();
  G2Affine qa = G2(g2_generator()).mul(a).to_affine();
  // e(aP, Q) * e(-P, aQ) == 1
  std::vector<std::pair<G1Affine, G2Affine>> pairs = {
      {pa, g2_generator()}, {-g1_generator(), qa}};
  EXPECT_TRUE(pairing_product_is_one(pairs));
  pairs[0].first = G1(pa).dbl().to_affine();
  EXPECT_FALSE(pairing_product_is_one(pairs));
}

TEST(Bn254Test, FrobeniusMatchesPower) {
  Fq12 x = pairing(g1_generator(), g2_generator());
  ff::BigLimbs p(ff::Fq::kModulus.w.begin(), ff::Fq::kModulus.w.end());
  EXPECT_EQ(x.frobenius(1), x.pow(p));
}

TEST(Bn254Test, SerializationRoundTripAndRejection) {
  std::mt19937_64 rng(14);
  G1Affine p = G1(g1_generator()).mul(testing::random_field<Fr>(rng)).to_affine();
  std::array<uint8_t, kG1Bytes> buf;
  write_g1(p, buf);
  EXPECT_EQ(read_g1(buf), p);
  buf[5] ^= 1;
  EXPECT_THROW(read_g1(buf), std::invalid_argument);
  G2Affine q = G2(g2_generator()).mul(testing::random_field<Fr>(rng)).to_affine();
  std::array<uint8_t, kG2Bytes> buf2;
  write_g2(q, buf2);
  EXPECT_EQ(read_g2(buf2), q);
  std::array<uint8_t, kG1Bytes> zero{};
  EXPECT_TRUE(read_g1(zero).infinity);
}

}  // namespace
}  // namespace devreg::ec
