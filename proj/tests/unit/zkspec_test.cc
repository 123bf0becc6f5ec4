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

#include "devreg/zkspec/zkspec.h"

#include <gtest/gtest.h>

#include <random>
#include <set>

namespace devreg::zkspec {
namespace {

using credential::AttributeDef;

CredentialSchema schema() {
  return {"device",
          "acme",
          {{0, "device_key", ValueKind::kPoint},
           {1, "firmware", ValueKind::kUint},
           {2, "postcode", ValueKind::kString},
           {3, "measurement", ValueKind::kString},
           {4, "calibrated", ValueKind::kDate}}};
}

ZkSpec base_spec(std::vector<ClaimRequirement> reqs) {
  return {schema().schema_id(), std::move(reqs), 0};
}

ZkSpec firmware_spec() {
  return base_spec({{1, Condition::range(5, std::nullopt)}});
}

std::vector<AttributeValue> strings(std::initializer_list<const char*> xs) {
  std::vector<AttributeValue> out;
  for (const char* x : xs) out.push_back(AttributeValue::string(x));
  return out;
}

TEST(Validate, FindingsForIllTypedSpecs) {
  const CredentialSchema s = schema();
  EXPECT_TRUE(validate_spec(firmware_spec(), s).empty());

  auto codes = [&](const ZkSpec& z) {
    std::set<std::string> out;
    for (const auto& f : validate_spec(z, s)) out.insert(f.code);
    return out;
  };
  EXPECT_TRUE(codes(base_spec({{2, Condition::range(1, 2)}})).count("kind mismatch"));
  EXPECT_TRUE(codes(base_spec({{2, Condition::membership({})}})).count("empty set"));
  EXPECT_TRUE(codes(base_spec({{1, Condition::range(std::nullopt, std::nullopt)}}))
                  .count("missing bound"));
  EXPECT_TRUE(codes(base_spec({{1, Condition::range(9, 3)}})).count("empty range"));
  EXPECT_TRUE(codes(base_spec({{1, Condition::relative_time(5, TimeDirection::kNotOlderThan)}}))
                  .count("kind mismatch"));
  EXPECT_TRUE(codes(base_spec({})).count("no requirements"));
  EXPECT_TRUE(codes(base_spec({{9, Condition::range(1, 2)}})).count("unknown attribute"));
  ZkSpec bad_key = firmware_spec();
  bad_key.device_key_attribute_id = 1;
  EXPECT_TRUE(codes(bad_key).count("kind mismatch"));
  ZkSpec other_schema = firmware_spec();
  other_schema.schema_ref = Fr::from_u64(1);
  EXPECT_TRUE(codes(other_schema).count("schema mismatch"));
  std::vector<AttributeValue> big;
  for (int i = 0; i < 65; ++i) big.push_back(AttributeValue::string(std::to_string(i)));
  EXPECT_TRUE(codes(base_spec({{2, Condition::membership(big)}})).count("set too large"));
  EXPECT_TRUE(validate_spec(base_spec({{2, Condition::membership(big)}}), s, 100).empty());
}

TEST(CanonicalBytes, OrderIndependentAndSensitive) {
  ZkSpec a = base_spec({{1, Condition::range(5, 10)},
                        {2, Condition::membership(strings({"10117", "10115"}))}});
  ZkSpec b = base_spec({{2, Condition::membership(strings({"10115", "10117"}))},
                        {1, Condition::range(5, 10)}});
  EXPECT_EQ(canonical_bytes(a), canonical_bytes(b));
  ZkSpec c = a;
  c.requirements[0].condition.max = 11;
  EXPECT_NE(canonical_bytes(a), canonical_bytes(c));
  ZkSpec committed = a;
  committed.key_mode = KeyMode::kCommitted;
  EXPECT_NE(canonical_bytes(a), canonical_bytes(committed));
  EXPECT_EQ(decode_spec(canonical_bytes(committed)), committed.normalized());
  EXPECT_EQ(decode_spec(canonical_bytes(a)), a.normalized());
  auto bytes = canonical_bytes(a);
  bytes.push_back(0);
  EXPECT_THROW(decode_spec(bytes), std::invalid_argument);
  bytes.resize(10);
  EXPECT_THROW(decode_spec(bytes), std::invalid_argument);
}

Condition random_condition(std::mt19937_64& rng, ValueKind* kind) {
  switch (rng() % 4) {
    case 0:
      *kind = ValueKind::kUint;
      return Condition::equality(AttributeValue::uint(rng()));
    case 1: {
      *kind = ValueKind::kUint;
      std::optional<uint64_t> lo, hi;
      if (rng() % 2) lo = rng() % 1000;
      if (!lo || rng() % 2) hi = 1000 + rng() % 1000;
      return Condition::range(lo, hi);
    }
    case 2: {
      *kind = ValueKind::kString;
      std::vector<AttributeValue> set;
      for (size_t i = 0, n = 1 + rng() % 5; i < n; ++i) {
        set.push_back(AttributeValue::string(std::to_string(rng())));
      }
      return Condition::membership(set);
    }
    default:
      *kind = ValueKind::kDate;
      return Condition::relative_time(static_cast<int64_t>(rng() % 100000) - 50000,
                                      rng() % 2 ? TimeDirection::kNotOlderThan
                                                : TimeDirection::kNotNewerThan);
  }
}

TEST(CanonicalBytes, RandomRoundTripAndInjectiveIds) {
  std::mt19937_64 rng(51);
  std::set<crypto::Digest32> ids;
  std::set<std::vector<uint8_t>> encodings;
  for (int i = 0; i < 10000; ++i) {
    ZkSpec s;
    s.schema_ref = Fr::from_u64(rng() % 3);
    s.device_key_attribute_id = 0;
    s.key_mode = rng() % 2 ? KeyMode::kPlain : KeyMode::kCommitted;
    for (size_t r = 0, n = 1 + rng() % 3; r < n; ++r) {
      ValueKind k;
      Condition c = random_condition(rng, &k);
      s.requirements.push_back({static_cast<uint32_t>(1 + rng() % 8), c});
    }
    ZkSpec norm = s.normalized();
    if (i < 500) {
      ASSERT_EQ(decode_spec(canonical_bytes(s)), norm);
    }
    ids.insert(spec_id(s));
    encodings.insert(canonical_bytes(s));
  }
  // Distinct specs never share an id.
  EXPECT_GT(encodings.size(), 9900u);
  EXPECT_EQ(ids.size(), encodings.size());
}

TEST(TextForm, RoundTrip) {
  const CredentialSchema s = schema();
  ZkSpec z = base_spec(
      {{1, Condition::range(5, std::nullopt)},
       {2, Condition::membership(strings({"10115", "10117"}))},
       {3, Condition::equality(AttributeValue::string("temperature"))},
       {4, Condition::relative_time(86400 * 30, TimeDirection::kNotOlderThan)}});
  std::string text = to_text(z, s);
  EXPECT_EQ(parse_text(text, s), z.normalized());
  EXPECT_NE(text.find("\"firmware\""), std::string::npos);
  EXPECT_THROW(parse_text("{\"version\":\"devreg.zkspec.v1\","
                          "\"device_key_attribute\":\"nope\",\"requirements\":[]}",
                          s),
               std::invalid_argument);
}

TEST(EvalCondition, Semantics) {
  EXPECT_TRUE(eval_condition(Condition::range(5, std::nullopt), AttributeValue::uint(5)));
  EXPECT_FALSE(eval_condition(Condition::range(5, std::nullopt), AttributeValue::uint(4)));
  EXPECT_TRUE(eval_condition(Condition::range(std::nullopt, 9), AttributeValue::uint(9)));
  EXPECT_FALSE(eval_condition(Condition::range(std::nullopt, 9), AttributeValue::uint(10)));
  EXPECT_FALSE(eval_condition(Condition::membership(strings({"10115", "10117"})),
                              AttributeValue::string("10119")));
  EXPECT_TRUE(eval_condition(Condition::membership(strings({"10115", "10117"})),
                             AttributeValue::string("10117")));
  EXPECT_TRUE(eval_condition(Condition::equality(AttributeValue::string("t")),
                             AttributeValue::string("t")));
  const uint64_t now = 1700000000, day = 86400;
  Condition fresh = Condition::relative_time(30 * day, TimeDirection::kNotOlderThan);
  EXPECT_FALSE(eval_condition(fresh, AttributeValue::date(now - 31 * day), now));
  EXPECT_TRUE(eval_condition(fresh, AttributeValue::date(now - 30 * day), now));
  Condition old = Condition::relative_time(30 * day, TimeDirection::kNotNewerThan);
  EXPECT_TRUE(eval_condition(old, AttributeValue::date(now - 31 * day), now));
  EXPECT_FALSE(eval_condition(old, AttributeValue::date(now - 29 * day), now));
  EXPECT_THROW(eval_condition(fresh, AttributeValue::date(now)), std::invalid_argument);
  EXPECT_THROW(eval_condition(Condition::range(1, 2), AttributeValue::string("x")),
               std::invalid_argument);
}

TEST(ZkVpr, BuildIntegrityAndDistinctIds) {
  std::vector<uint8_t> pk = {1, 2, 3, 4};
  ZkSpec range = firmware_spec();
  ZkSpec member = base_spec({{2, Condition::membership(strings({"10115"}))}});
  ZkSpec equal = base_spec({{3, Condition::equality(AttributeValue::string("temperature"))}});
  std::set<std::string> ids;
  for (const ZkSpec& z : {range, member, equal}) {
    ZkVpr v = build_zkvpr(z, pk, spec_id(z), "artifacts/pk", "schema-id",
                          proofsys::SchemeId::kPerCircuitSetup, {"initiator", 7, {}});
    EXPECT_TRUE(v.proving_key_matches(pk));
    EXPECT_EQ(ZkVpr::parse_text(v.to_text()), v);
    ids.insert(v.id());
  }
  EXPECT_EQ(ids.size(), 3u);
  ZkVpr v = build_zkvpr(range, pk, spec_id(range), "pk", "cs",
                        proofsys::SchemeId::kUniversalSetup);
  std::vector<uint8_t> swapped = {1, 2, 3, 5};
  EXPECT_FALSE(v.proving_key_matches(swapped));
  EXPECT_THROW(build_zkvpr(range, pk, spec_id(member), "pk", "cs",
                           proofsys::SchemeId::kUniversalSetup),
               std::invalid_argument);
}

}  // namespace
}  // namespace devreg::zkspec
