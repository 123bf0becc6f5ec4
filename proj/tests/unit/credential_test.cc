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

#include "devreg/credential/credential.h"

#include <gtest/gtest.h>

#include <random>

#include "devreg/crypto/poseidon.h"

namespace devreg::credential {
namespace {

std::array<uint8_t, 32> seed_of(uint64_t v) {
  std::array<uint8_t, 32> s{};
  for (int i = 0; i < 8; ++i) s[i] = static_cast<uint8_t>(v >> (8 * i));
  return s;
}

CredentialSchema device_schema() {
  return {"device",
          "acme",
          {{0, "device_key", ValueKind::kPoint},
           {1, "firmware", ValueKind::kUint},
           {2, "postcode", ValueKind::kString},
           {3, "built", ValueKind::kDate}}};
}

std::vector<Claim> device_claims(const Fr& subject) {
  return {{subject, 0, AttributeValue::point_value(
                           crypto::keygen(seed_of(77)).pub)},
          {subject, 1, AttributeValue::uint(7)},
          {subject, 2, AttributeValue::string("10115")}};
}

TEST(ClaimMessage, LayoutAndSeparation) {
  Fr s = Fr::from_u64(11), d = Fr::from_u64(22);
  auto m = claim_message(s, d, 3, AttributeValue::uint(7));
  ASSERT_EQ(m.size(), 4u);
  EXPECT_EQ(m[0], s);
  EXPECT_EQ(m[2], Fr::from_u64(3));
  EXPECT_EQ(m[3], Fr::from_u64(7));
  EXPECT_NE(m, claim_message(s, d, 4, AttributeValue::uint(7)));
  EXPECT_NE(m, claim_message(Fr::from_u64(12), d, 3, AttributeValue::uint(7)));
}

TEST(Attest, RoundTripAndPreconditions) {
  KeyPair issuer = crypto::keygen(seed_of(1));
  CredentialSchema schema = device_schema();
  auto claims = device_claims(Fr::from_u64(42));
  VerifiableCredential vc = attest(claims, issuer, schema);
  ASSERT_EQ(vc.claims.size(), 3u);
  EXPECT_TRUE(verify_vc(vc, issuer.pub, schema));

  auto mixed = claims;
  mixed[1].subject_id = Fr::from_u64(43);
  EXPECT_THROW(attest(mixed, issuer, schema), std::invalid_argument);
  auto wrong_kind = claims;
  wrong_kind[1].value = AttributeValue::string("7");
  try {
    attest(wrong_kind, issuer, schema);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("firmware"), std::string::npos);
  }
  EXPECT_THROW(attest({}, issuer, schema), std::invalid_argument);
}

TEST(VerifyVc, TamperingAndKeyMismatch) {
  KeyPair issuer = crypto::keygen(seed_of(2));
  CredentialSchema schema = device_schema();
  VerifiableCredential vc = attest(device_claims(Fr::from_u64(5)), issuer, schema);

  auto v1 = vc;
  v1.claims[1].claim.value.number = 8;
  EXPECT_FALSE(verify_vc(v1, issuer.pub, schema));
  auto v2 = vc;
  v2.claims[2].claim.subject_id = Fr::from_u64(6);
  EXPECT_FALSE(verify_vc(v2, issuer.pub, schema));
  auto v3 = vc;
  v3.claims[0].signature.S += crypto::Fs::one();
  EXPECT_FALSE(verify_vc(v3, issuer.pub, schema));
  auto v4 = vc;
  v4.claims[1].claim.attribute_id = 3;
  EXPECT_FALSE(verify_vc(v4, issuer.pub, schema));
  auto v5 = vc;
  v5.claims[1].claim.attribute_id = 9;
  EXPECT_THROW(verify_vc(v5, issuer.pub, schema), std::invalid_argument);

  for (uint64_t i = 0; i < 50; ++i) {
    KeyPair a = crypto::keygen(seed_of(1000 + 2 * i));
    KeyPair b = crypto::keygen(seed_of(1001 + 2 * i));
    auto va = attest({{Fr::from_u64(i), 1, AttributeValue::uint(i)}}, a, schema);
    EXPECT_TRUE(verify_vc(va, a.pub, schema));
    va.issuer_pubkey = b.pub;
    EXPECT_FALSE(verify_vc(va, b.pub, schema)) << i;
  }
}

TEST(Attest, RandomSchemasRoundTrip) {
  std::mt19937_64 rng(41);
  KeyPair issuer = crypto::keygen(seed_of(3));
  for (int t = 0; t < 20; ++t) {
    CredentialSchema s{"s" + std::to_string(t), "", {}};
    size_t n = 1 + rng() % 16;
    std::vector<Claim> claims;
    Fr subject = Fr::from_u64(rng());
    auto make = [&](ValueKind k) {
      return k == ValueKind::kString
                 ? AttributeValue::string(std::to_string(rng()))
                 : AttributeValue{k, rng(), {}, {}};
    };
    for (uint32_t i = 0; i < n; ++i) {
      ValueKind k = static_cast<ValueKind>(rng() % 3);
      s.attributes.push_back({i, "a" + std::to_string(i), k});
      if (i == 0 || rng() % 2) claims.push_back({subject, i, make(k)});
    }
    VerifiableCredential vc = attest(claims, issuer, s);
    EXPECT_TRUE(verify_vc(vc, issuer.pub, s));
    EXPECT_EQ(VerifiableCredential::parse_wallet_text(vc.to_wallet_text()), vc);
  }
}

TEST(Schema, CanonicalTextAndId) {
  CredentialSchema s = device_schema();
  EXPECT_EQ(CredentialSchema::parse(s.canonical_text()), s);
  EXPECT_EQ(s.schema_id(), CredentialSchema::parse(s.canonical_text()).schema_id());
  CredentialSchema t = s;
  t.attributes[1].name = "fw";
  EXPECT_NE(t.schema_id(), s.schema_id());
  t.attributes[1].id = 5;
  EXPECT_THROW(t.check(), std::invalid_argument);
}

}  // namespace
}  // namespace devreg::credential
