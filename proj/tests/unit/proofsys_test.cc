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

#include "devreg/proofsys/proofsys.h"

#include "devreg/proofsys/common.h"

#include <gtest/gtest.h>

#include <random>

#include "devreg/circuit/gadgets.h"
#include "devreg/credential/credential.h"
#include "devreg/scenario/scenario.h"

namespace devreg::proofsys {
namespace {

using circuit::Circuit;
using circuit::Witness;
using r1cs::Builder;
using r1cs::LC;
using r1cs::Var;

// y = x^3 + x + 5 repeated `rounds` times, with y and k public.
std::pair<Circuit, Witness> toy(uint64_t x0, size_t rounds, uint8_t tag = 0,
                                bool wrong = false) {
  Builder b;
  Fr x = Fr::from_u64(x0);
  Fr y = x;
  for (size_t i = 0; i < rounds; ++i) y = y * y * y + y + Fr::from_u64(5);
  Var out = b.input(wrong ? y + Fr::one() : y);
  Var k = b.input(Fr::from_u64(rounds));
  (void)k;
  LC cur = b.witness(x);
  for (size_t i = 0; i < rounds; ++i) {
    Var sq = circuit::mul(b, cur, cur);
    Var cube = circuit::mul(b, sq, cur);
    cur = circuit::materialize(b, LC(cube) + cur + LC::constant(Fr::from_u64(5)));
  }
  b.enforce(cur, LC::one(), out);
  Circuit c;
  c.layout = {{"y", 0, 1}, {"k", 1, 1}};
  c.spec_id = crypto::sha256(std::vector<uint8_t>{tag, static_cast<uint8_t>(rounds)});
  Witness w{b.assignment(), 2};
  c.cs = b.take_system();
  return {std::move(c), std::move(w)};
}

std::vector<Fr> pub_of(const Witness& w) {
  auto p = w.public_inputs();
  return {p.begin(), p.end()};
}

const UniversalSrs& small_srs() {
  static const UniversalSrs srs = universal_setup(256, std::vector<uint8_t>{7});
  return srs;
}

class SchemeTest : public ::testing::TestWithParam<SchemeId> {};

TEST_P(SchemeTest, RoundTripAndSerialization) {
  const SchemeId s = GetParam();
  auto [c, w] = toy(3, 20);
  auto [pk, vk] = setup(s, c, &small_srs());
  EXPECT_EQ(pk.spec_id, c.spec_id);
  EXPECT_EQ(vk.spec_id, c.spec_id);
  Proof proof = prove(s, c, w, pk);
  EXPECT_TRUE(verify(s, proof, pub_of(w), vk));

  auto pk2 = ProvingKey::deserialize(pk.serialize());
  auto vk2 = VerificationKey::deserialize(vk.serialize());
  auto proof2 = Proof::deserialize(proof.serialize());
  EXPECT_EQ(pk2, pk);
  EXPECT_EQ(vk2.hash(), vk.hash());
  EXPECT_TRUE(verify(s, proof2, pub_of(w), vk2));
  EXPECT_THROW(Proof::deserialize(vk.serialize()), std::invalid_argument);

  // A second proof with fresh randomness verifies too and has the same size.
  Proof again = prove(s, c, w, pk);
  EXPECT_EQ(again.size(), proof.size());
  EXPECT_NE(again.bytes, proof.bytes);
  EXPECT_TRUE(verify(s, again, pub_of(w), vk));
}

TEST_P(SchemeTest, RejectsPerturbedInputsAndMalformedProofs) {
  const SchemeId s = GetParam();
  auto [c, w] = toy(4, 12);
  auto [pk, vk] = setup(s, c, &small_srs());
  Proof proof = prove(s, c, w, pk);
  const auto pub = pub_of(w);
  for (size_t i = 0; i < pub.size(); ++i) {
    auto bad = pub;
    bad[i] += Fr::one();
    EXPECT_FALSE(verify(s, proof, bad, vk)) << i;
  }
  for (size_t cut : {size_t{0}, size_t{1}, proof.bytes.size() / 2, proof.bytes.size() - 1}) {
    Proof t = proof;
    t.bytes.resize(cut);
    EXPECT_FALSE(verify(s, t, pub, vk)) << cut;
  }
  auto longer = pub;
  longer.push_back(Fr::one());
  EXPECT_THROW(verify(s, proof, longer, vk), ProofError);
  EXPECT_THROW(verify(s, proof, std::span(pub).first(1), vk), ProofError);
}

TEST_P(SchemeTest, RandomizedSoundnessTrials) {
  const SchemeId s = GetParam();
  auto [c, w] = toy(5, 8);
  auto [pk, vk] = setup(s, c, &small_srs());
  Proof proof = prove(s, c, w, pk);
  const auto pub = pub_of(w);
  std::mt19937_64 rng(s == SchemeId::kPerCircuitSetup ? 11 : 12);
  int accepted = 0;
  for (int t = 0; t < 120; ++t) {
    if (t % 2 == 0) {
      auto bad = pub;
      bad[rng() % bad.size()] += Fr::from_u64(1 + rng() % 1000);
      accepted += verify(s, proof, bad, vk);
    } else {
      Proof bad = proof;
      bad.bytes[rng() % bad.bytes.size()] ^= static_cast<uint8_t>(1 + rng() % 255);
      accepted += verify(s, bad, pub, vk);
    }
  }
  EXPECT_EQ(accepted, 0);

  // Every witness mutation is refused before a proof exists.
  int refused = 0;
  for (int t = 0; t < 100; ++t) {
    Witness bad = w;
    bad.z[3 + rng() % (bad.z.size() - 3)] += Fr::from_u64(1 + rng() % 7);
    try {
      prove(s, c, bad, pk);
    } catch (const ProofError&) {
      ++refused;
    }
  }
  EXPECT_EQ(refused, 100);
}

TEST_P(SchemeTest, KeysAreBoundToTheirCircuit) {
  const SchemeId s = GetParam();
  auto [ca, wa] = toy(3, 10, 1);
  auto [cb, wb] = toy(3, 11, 2);
  auto [pka, vka] = setup(s, ca, &small_srs());
  auto [pkb, vkb] = setup(s, cb, &small_srs());
  Proof pb = prove(s, cb, wb, pkb);
  EXPECT_TRUE(verify(s, pb, pub_of(wb), vkb));
  EXPECT_FALSE(verify(s, pb, pub_of(wb), vka));
  // Same layout and spec id, independent setups: keys are not interchangeable.
  auto [pka2, vka2] = setup(s, ca, &small_srs());
  Proof pa = prove(s, ca, wa, pka);
  if (s == SchemeId::kPerCircuitSetup) {
    EXPECT_FALSE(verify(s, pa, pub_of(wa), vka2));
  } else {
    // The index is deterministic for one SRS.
    EXPECT_EQ(vka2.bytes, vka.bytes);
  }
  EXPECT_THROW(prove(s, cb, wb, pka), ProofError);
  auto [cw, ww] = toy(3, 10, 1, true);
  EXPECT_THROW(prove(s, cw, ww, pka), ProofError);
}

INSTANTIATE_TEST_SUITE_P(Both, SchemeTest,
                         ::testing::Values(SchemeId::kPerCircuitSetup,
                                           SchemeId::kUniversalSetup),
                         [](const auto& info) {
                           return info.param == SchemeId::kPerCircuitSetup
                                      ? "PerCircuit"
                                      : "Universal";
                         });

TEST(UniversalSrs, BoundsEntropyAndSerialization) {
  auto [c, w] = toy(2, 200);
  EXPECT_THROW(setup(SchemeId::kUniversalSetup, c, nullptr), ProofError);
  UniversalSrs tiny = universal_setup(64, std::vector<uint8_t>{1});
  try {
    setup(SchemeId::kUniversalSetup, c, &tiny);
    FAIL();
  } catch (const ProofError& e) {
    EXPECT_STREQ(e.what(), "SRS too small");
  }
  UniversalSrs a = universal_setup(1024, std::vector<uint8_t>{1});
  UniversalSrs b = universal_setup(1024, std::vector<uint8_t>{2});
  EXPECT_NE(a.entropy_commitment, b.entropy_commitment);
  EXPECT_NE(a.srs.powers[1], b.srs.powers[1]);
  for (const UniversalSrs* srs : {&a, &b}) {
    auto [pk, vk] = setup(SchemeId::kUniversalSetup, c, srs);
    EXPECT_TRUE(verify(SchemeId::kUniversalSetup,
                       prove(SchemeId::kUniversalSetup, c, w, pk), pub_of(w), vk));
  }
  UniversalSrs back = UniversalSrs::deserialize(a.serialize());
  EXPECT_EQ(back.srs.powers, a.srs.powers);
  EXPECT_EQ(back.entropy_commitment, a.entropy_commitment);
  auto bytes = a.serialize();
  bytes.resize(bytes.size() - 5);
  EXPECT_THROW(UniversalSrs::deserialize(bytes), std::invalid_argument);
}

TEST(UniversalSrs, SizedForLargerCircuits) {
  // An SRS for 2^16 constraints serves a 2^15-constraint circuit.
  UniversalSrs srs = universal_setup(1 << 16, std::vector<uint8_t>{3});
  auto [c, w] = toy(9, ((1 << 15) - 2) / 3);
  ASSERT_LE(c.constraint_count(), size_t{1} << 15);
  ASSERT_GT(c.constraint_count(), size_t{1} << 14);
  auto [pk, vk] = setup(SchemeId::kUniversalSetup, c, &srs);
  EXPECT_TRUE(verify(SchemeId::kUniversalSetup,
                     prove(SchemeId::kUniversalSetup, c, w, pk), pub_of(w), vk));
}

TEST(Randomness, SeededRunsReproduceArtifacts) {
  auto [c, w] = toy(6, 5);
  std::vector<std::vector<uint8_t>> runs;
  for (int i = 0; i < 2; ++i) {
    seed_randomness(std::vector<uint8_t>{42});
    auto srs = universal_setup(64, std::vector<uint8_t>{1});
    for (SchemeId s : {SchemeId::kPerCircuitSetup, SchemeId::kUniversalSetup}) {
      auto [pk, vk] = setup(s, c, &srs);
      auto bytes = prove(s, c, w, pk).serialize();
      auto more = vk.serialize();
      bytes.insert(bytes.end(), more.begin(), more.end());
      runs.push_back(bytes);
    }
  }
  seed_randomness({});
  EXPECT_EQ(runs[0], runs[2]);
  EXPECT_EQ(runs[1], runs[3]);
  uint8_t a[40], b[40];
  random_bytes(a);
  random_bytes(b);
  EXPECT_FALSE(std::equal(a, a + 40, b));
}

// The registration circuit itself, end to end under both schemes.
TEST(RegistrationCircuit, BothSchemesAndKeySizes) {
  auto schema = scenario::device_schema();
  std::array<uint8_t, 32> s1{1}, s2{2};
  auto issuer = crypto::keygen(s1), device = crypto::keygen(s2);
  auto spec = scenario::condition_spec(scenario::ConditionKind::kRange, schema);
  Circuit c = circuit::compile(spec, schema);
  auto vc = credential::attest(scenario::device_claims(Fr::from_u64(77), device.pub),
                               issuer, schema);
  circuit::PublicInputs pub;
  pub.issuer_pubkey = issuer.pub;
  pub.device_key = device.pub;
  pub.aux = circuit::spec_aux(spec);
  pub.owner_binding = Fr::from_u64(99);
  Witness w = circuit::assign(spec, schema, c, vc, pub);
  const auto flat = pub.flatten();
  UniversalSrs srs = universal_setup(c.constraint_count(), std::vector<uint8_t>{4});
  for (SchemeId s : {SchemeId::kPerCircuitSetup, SchemeId::kUniversalSetup}) {
    auto [pk, vk] = setup(s, c, &srs);
    Proof proof = prove(s, c, w, pk);
    EXPECT_TRUE(verify(s, proof, flat, vk));
    for (size_t i = 0; i < flat.size(); ++i) {
      auto bad = flat;
      bad[i] += Fr::one();
      EXPECT_FALSE(verify(s, proof, bad, vk)) << scheme_name(s) << " input " << i;
    }
    EXPECT_GE(pk.serialize().size(), 100 * vk.serialize().size()) << scheme_name(s);
  }
}

}  // namespace
}  // namespace devreg::proofsys
