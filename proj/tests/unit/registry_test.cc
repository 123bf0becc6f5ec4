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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "devreg/flow/flow.h"
#include "devreg/registry/audit.h"
#include "devreg/registry/chain.h"
#include "devreg/registry/vdr.h"
#include "devreg/scenario/scenario.h"

namespace devreg::registry {
namespace {

using proofsys::SchemeId;
using scenario::ConditionKind;
using zkspec::Condition;

std::vector<uint8_t> bytes_of(std::string_view s) { return {s.begin(), s.end()}; }

crypto::KeyPair key_from(uint8_t a, uint8_t b = 0) {
  std::array<uint8_t, 32> seed{a, b};
  return crypto::keygen(seed);
}

TEST(Vdr, ContentAddressingInMemory) {
  Vdr vdr;
  const auto id = vdr.publish(RecordKind::kSchema, "schema text");
  EXPECT_EQ(id, crypto::hex_encode(crypto::sha256("schema text")));
  EXPECT_EQ(vdr.publish(RecordKind::kSchema, "schema text"), id);
  EXPECT_EQ(vdr.ids().size(), 1u);
  EXPECT_EQ(vdr.fetch(id).text(), "schema text");
  EXPECT_EQ(vdr.fetch(id).kind, RecordKind::kSchema);
  EXPECT_THROW(vdr.publish(RecordKind::kZkVpr, ""), std::invalid_argument);
  EXPECT_THROW(vdr.fetch(std::string(64, '0')), std::out_of_range);
}

TEST(Vdr, DirectoryBackedDetectsTampering) {
  const auto root = std::filesystem::temp_directory_path() / "devreg_vdr_test";
  std::filesystem::remove_all(root);
  std::string id;
  {
    Vdr vdr(root);
    id = vdr.publish(RecordKind::kZkVpr, "request");
    EXPECT_EQ(vdr.publish(RecordKind::kZkVpr, "request"), id);
  }
  Vdr reopened(root);
  EXPECT_TRUE(reopened.contains(id));
  EXPECT_EQ(reopened.fetch(id).text(), "request");
  EXPECT_EQ(reopened.fetch(id).kind, RecordKind::kZkVpr);
  std::ofstream(root / "zkvpr" / id, std::ios::trunc) << "forged";
  EXPECT_THROW(reopened.fetch(id), IntegrityError);
  EXPECT_FALSE(reopened.contains("../../etc/passwd"));
  std::filesystem::remove_all(root);
}

TEST(ZkVp, SerializationRoundTrip) {
  ZkVp v;
  v.issuer_pubkey = key_from(1).pub;
  v.commitment = Fr::from_u64(5);
  v.aux = {Fr::from_u64(1), Fr::from_u64(2)};
  v.owner_binding = owner_binding_for("alice");
  v.now_ts = 99;
  v.proof.bytes = {1, 2, 3};
  const auto back = ZkVp::deserialize(v.serialize());
  EXPECT_EQ(back.serialize(), v.serialize());
  EXPECT_EQ(back.aux, v.aux);
  EXPECT_FALSE(back.device_key.has_value());
  auto bytes = v.serialize();
  bytes.pop_back();
  EXPECT_THROW(ZkVp::deserialize(bytes), std::invalid_argument);
  EXPECT_NE(owner_binding_for("alice"), owner_binding_for("bob"));
}

// One issuer, a few devices, the scenario schema and a per-circuit setup.
class RegistryTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    world_ = new World();
  }
  static void TearDownTestSuite() { delete world_; }

  struct World {
    credential::CredentialSchema schema = scenario::device_schema();
    crypto::KeyPair issuer = key_from(10);
    crypto::KeyPair other_issuer = key_from(11);
    // Keys are generated once; setups are cached per spec.
    std::map<std::string, std::pair<proofsys::ProvingKey, proofsys::VerificationKey>> keys;
  };

  static crypto::KeyPair device(uint8_t i) { return key_from(100, i); }

  static credential::VerifiableCredential credential_for(
      const crypto::KeyPair& dev, uint64_t subject,
      const scenario::DeviceProfile& profile = {},
      const crypto::KeyPair* issuer = nullptr) {
    return credential::attest(
        scenario::device_claims(Fr::from_u64(subject), dev.pub, profile),
        issuer ? *issuer : world_->issuer, world_->schema);
  }

  flow::Deployment deploy(const zkspec::ZkSpec& spec) {
    flow::InitiateOptions opts;
    std::vector<Point> issuers{world_->issuer.pub};
    return flow::initiate(spec, world_->schema, issuers, vdr_, chain_, opts);
  }

  flow::Presentation present(const flow::Deployment& d,
                             const credential::VerifiableCredential& vc,
                             std::string owner, std::optional<Fr> rand = std::nullopt) {
    flow::PresentOptions opts;
    opts.owner = std::move(owner);
    opts.commitment_randomness = rand;
    opts.now_ts = chain_.next_timestamp();
    return flow::present(vdr_, d.zkvpr_id, d.pk, vc, opts);
  }

  static World* world_;
  Vdr vdr_;
  Chain chain_;
};
RegistryTest::World* RegistryTest::world_ = nullptr;

TEST_F(RegistryTest, DeploymentPreconditionsAndIsolation) {
  auto spec = scenario::condition_spec(ConditionKind::kEquality, world_->schema);
  auto d1 = deploy(spec);
  auto d2 = deploy(spec);
  EXPECT_NE(d1.contract, d2.contract);
  EXPECT_FALSE(chain_.is_registered(d1.contract, device(1).pub));
  EXPECT_EQ(chain_.height(), 2u);

  RegistrationConfig bad = chain_.registration(d1.contract);
  bad.allowed_issuer_keys.clear();
  EXPECT_THROW(chain_.deploy_registration(bad, "x"), ChainError);
  bad = chain_.registration(d1.contract);
  bad.allowed_aux.clear();
  EXPECT_THROW(chain_.deploy_registration(bad, "x"), ChainError);
  EXPECT_EQ(chain_.height(), 2u);  // failed preconditions are not mined
  EXPECT_THROW(chain_.is_registered("0xnope", device(1).pub), ChainError);

  auto vp = present(d1, credential_for(device(1), 1), "alice");
  EXPECT_THROW(chain_.submit_registration("0xnope", vp.zkvp, "alice"), ChainError);
  EXPECT_TRUE(chain_.submit_registration(d1.contract, vp.zkvp, "alice").accepted);
  EXPECT_TRUE(chain_.is_registered(d1.contract, device(1).pub));
  EXPECT_FALSE(chain_.is_registered(d2.contract, device(1).pub));
}

TEST_F(RegistryTest, RegistrationRejectionReasons) {
  auto d = deploy(scenario::condition_spec(ConditionKind::kRange, world_->schema));
  auto honest = present(d, credential_for(device(1), 1), "alice").zkvp;

  // Wrong sender first: the proof is bound to alice.
  auto r = chain_.submit_registration(d.contract, honest, "mallory");
  EXPECT_EQ(r.reason, Reason::kOwnerMismatch);
  EXPECT_FALSE(chain_.is_registered(d.contract, device(1).pub));

  r = chain_.submit_registration(d.contract, honest, "alice");
  ASSERT_TRUE(r.accepted) << r.to_text();
  EXPECT_EQ(r.reason, Reason::kNone);
  EXPECT_TRUE(chain_.is_registered(d.contract, device(1).pub));

  EXPECT_EQ(chain_.submit_registration(d.contract, honest, "bob").reason, Reason::kOwnerMismatch);
  EXPECT_EQ(chain_.submit_registration(d.contract, honest, "alice").reason,
            Reason::kDuplicateDevice);

  // Aux outside the whitelist (a weaker firmware bound).
  auto weaker = honest;
  weaker.device_key = device(2).pub;
  weaker.aux[0] = Fr::from_u64(1);
  EXPECT_EQ(chain_.submit_registration(d.contract, weaker, "alice").reason,
            Reason::kInputNotAllowed);

  // Issuer outside the whitelist, with an otherwise honest proof.
  auto foreign_vc = credential_for(device(3), 3, {}, &world_->other_issuer);
  auto foreign = present(d, foreign_vc, "carol").zkvp;
  EXPECT_EQ(chain_.submit_registration(d.contract, foreign, "carol").reason,
            Reason::kInputNotAllowed);

  // Claiming someone else's device key under an honest proof.
  auto swapped = present(d, credential_for(device(4), 4), "dave").zkvp;
  swapped.device_key = device(5).pub;
  EXPECT_EQ(chain_.submit_registration(d.contract, swapped, "dave").reason,
            Reason::kProofInvalid);
  EXPECT_FALSE(chain_.is_registered(d.contract, device(5).pub));
  EXPECT_FALSE(chain_.is_registered(d.contract, device(4).pub));

  // Presence must match the mode.
  auto shaped = swapped;
  shaped.device_key.reset();
  shaped.commitment = Fr::one();
  EXPECT_EQ(chain_.submit_registration(d.contract, shaped, "dave").reason,
            Reason::kInputNotAllowed);

  // Every registry entry traces back to exactly one accepted receipt.
  for (const auto& e : chain_.entries(d.contract)) {
    const auto& rec = chain_.receipts().at(e.tx_index);
    EXPECT_TRUE(rec.accepted);
    EXPECT_EQ(rec.kind, TxKind::kSubmitRegistration);
    EXPECT_EQ(rec.contract, d.contract);
  }
  EXPECT_EQ(chain_.entries(d.contract).size(), 1u);
}

TEST_F(RegistryTest, ReplayReproducesStateAndCosts) {
  auto d = deploy(scenario::condition_spec(ConditionKind::kEquality, world_->schema));
  auto vp = present(d, credential_for(device(1), 1), "alice").zkvp;
  auto r1 = chain_.submit_registration(d.contract, vp, "alice");
  auto r2 = chain_.submit_registration(d.contract, vp, "bob");
  ASSERT_TRUE(r1.accepted);
  EXPECT_GT(r1.verify_work, 0u);
  EXPECT_EQ(cost_of(r1), r1.cost_units);
  EXPECT_EQ(r2.verify_work, 0u);  // rejected before verification
  EXPECT_LT(cost_of(r2), cost_of(r1));

  Chain replayed = Chain::replay(chain_.params(), chain_.log());
  EXPECT_EQ(replayed.state_hash(), chain_.state_hash());
  EXPECT_EQ(replayed.receipts(), chain_.receipts());

  Chain imported = Chain::import_bytes(chain_.export_bytes());
  EXPECT_EQ(imported.state_hash(), chain_.state_hash());
  EXPECT_EQ(imported.export_bytes(), chain_.export_bytes());

  // The same transaction in a fresh chain costs the same.
  Chain fresh;
  fresh.deploy_registration(chain_.registration(d.contract), "initiator");
  auto again = fresh.submit_registration(fresh.receipts()[0].contract, vp, "alice");
  EXPECT_EQ(again.cost_units, r1.cost_units);

  auto bytes = chain_.export_bytes();
  bytes[bytes.size() - 1] ^= 1;
  EXPECT_THROW(Chain::import_bytes(bytes), ChainError);
  bytes = chain_.export_bytes();
  bytes.resize(bytes.size() / 2);
  EXPECT_THROW(Chain::import_bytes(bytes), ChainError);

  for (const auto& r : chain_.receipts()) {
    EXPECT_EQ(r.timestamp, chain_.params().genesis_timestamp + r.height * 12);
  }
}

TEST_F(RegistryTest, TimestampTolerance) {
  zkspec::ZkSpec spec;
  spec.schema_ref = world_->schema.schema_id();
  spec.device_key_attribute_id = scenario::kDeviceKeyAttr;
  spec.requirements = {{scenario::kManufacturedAttr,
                        Condition::relative_time(365 * 86400,
                                                 zkspec::TimeDirection::kNotOlderThan)}};
  auto d = deploy(spec);
  EXPECT_TRUE(chain_.registration(d.contract).requires_timestamp);
  auto vc = credential_for(device(1), 1);
  flow::PresentOptions opts;
  opts.owner = "alice";
  opts.now_ts = chain_.next_timestamp() + 3 * chain_.params().block_time;
  auto early = flow::present(vdr_, d.zkvpr_id, d.pk, vc, opts).zkvp;
  EXPECT_EQ(chain_.submit_registration(d.contract, early, "alice").reason,
            Reason::kStaleTimestamp);
  // Two blocks later the same presentation is one block ahead: tolerated.
  EXPECT_EQ(chain_.submit_registration(d.contract, early, "alice").reason,
            Reason::kStaleTimestamp);
  EXPECT_TRUE(chain_.submit_registration(d.contract, early, "alice").accepted);

  auto late_vc = credential_for(device(2), 2);
  opts.now_ts = chain_.timestamp() - 2 * chain_.params().block_time;
  auto late = flow::present(vdr_, d.zkvpr_id, d.pk, late_vc, opts).zkvp;
  EXPECT_EQ(chain_.submit_registration(d.contract, late, "alice").reason,
            Reason::kStaleTimestamp);
  auto missing = late;
  missing.now_ts.reset();
  EXPECT_EQ(chain_.submit_registration(d.contract, missing, "alice").reason,
            Reason::kInputNotAllowed);
}

TEST_F(RegistryTest, ApplicationGateOnPlainRegistry) {
  auto d = deploy(scenario::condition_spec(ConditionKind::kEquality, world_->schema));
  auto dev = device(1);
  ASSERT_TRUE(chain_
                  .submit_registration(d.contract,
                                       present(d, credential_for(dev, 1), "alice").zkvp,
                                       "alice")
                  .accepted);
  auto app = flow::deploy_application(chain_, d.contract, SchemeId::kPerCircuitSetup,
                                      nullptr, "operator");
  EXPECT_FALSE(app.auth_circuit.has_value());

  const auto payload = bytes_of("temperature=21.5C");
  const auto sig = crypto::sign(dev.secret, std::vector{crypto::bytes_digest(payload)});
  EXPECT_TRUE(chain_.provision_data(app.contract, payload, sig, dev.pub, "alice").accepted);

  auto stranger = device(9);
  const auto ssig = crypto::sign(stranger.secret, std::vector{crypto::bytes_digest(payload)});
  EXPECT_EQ(chain_.provision_data(app.contract, payload, ssig, stranger.pub, "x").reason,
            Reason::kUnregisteredDevice);
  auto mutated = payload;
  mutated.back() ^= 1;
  EXPECT_EQ(chain_.provision_data(app.contract, mutated, sig, dev.pub, "alice").reason,
            Reason::kBadSignature);

  registry::ApplicationConfig cfg{d.contract, d.vk};
  EXPECT_THROW(chain_.deploy_application(cfg, "operator"), ChainError);
}

TEST_F(RegistryTest, CommittedModeKeepsDeviceKeyOffChain) {
  auto spec = scenario::condition_spec(ConditionKind::kRange, world_->schema,
                                       zkspec::KeyMode::kCommitted);
  auto d = deploy(spec);
  auto dev = device(1);
  const Fr rand = Fr::from_u64(0xC0FFEE);
  auto vc = credential_for(dev, 1);
  auto vp = present(d, vc, "alice", rand).zkvp;
  EXPECT_FALSE(vp.device_key.has_value());
  ASSERT_TRUE(chain_.submit_registration(d.contract, vp, "alice").accepted);
  const Fr commitment = circuit::key_commitment(dev.pub, rand);
  EXPECT_TRUE(chain_.is_registered(d.contract, commitment));
  EXPECT_EQ(chain_.submit_registration(d.contract, vp, "bob").reason, Reason::kOwnerMismatch);

  auto app = flow::deploy_application(chain_, d.contract, SchemeId::kPerCircuitSetup,
                                      nullptr, "operator");
  ASSERT_TRUE(app.auth_circuit.has_value());
  const auto payload = bytes_of("humidity=40%");
  EXPECT_TRUE(flow::authenticate(chain_, app, payload, dev, rand, "alice").accepted);
  // A proof against another commitment to the same key.
  EXPECT_EQ(flow::authenticate(chain_, app, payload, dev, rand + Fr::one(), "alice").reason,
            Reason::kUnknownCommitment);
  // A registered commitment presented with a proof for different data.
  const Fr digest = crypto::bytes_digest(payload);
  const auto sig = crypto::sign(dev.secret, std::vector{digest});
  const auto w = circuit::assign_auth(*app.auth_circuit, dev.pub, rand, digest, sig);
  const auto proof = proofsys::prove(app.scheme, *app.auth_circuit, w, *app.auth_pk);
  EXPECT_EQ(chain_.authenticate_committed(app.contract, proof, commitment, digest + Fr::one(),
                                          "alice")
                .reason,
            Reason::kProofInvalid);

  const auto needles = credential_needles(vc, world_->schema, d.spec);
  const auto exported = chain_.export_bytes();
  EXPECT_TRUE(find_leaks(exported, needles).empty());
  EXPECT_TRUE(find_leaks(chain_.state_bytes(), needles).empty());
  // The scan itself finds what it is looking for.
  auto planted = exported;
  const auto key = dev.pub.to_bytes();
  planted.insert(planted.end(), key.begin(), key.end());
  EXPECT_FALSE(find_leaks(planted, needles).empty());
}

TEST_F(RegistryTest, PlainModeStateHoldsNoCredentialSecrets) {
  for (auto kind : scenario::kAllConditions) {
    // One chain per spec: a value one contract whitelists is public everywhere.
    chain_ = Chain();
    auto d = deploy(scenario::condition_spec(kind, world_->schema));
    auto vc = credential_for(device(static_cast<uint8_t>(kind) + 1), 7);
    ASSERT_TRUE(
        chain_.submit_registration(d.contract, present(d, vc, "alice").zkvp, "alice").accepted);
    const auto needles = credential_needles(vc, world_->schema, d.spec);
    EXPECT_GE(needles.size(), 10u);
    for (const auto& leak : find_leaks(chain_.export_bytes(), needles)) {
      ADD_FAILURE() << scenario::condition_kind_name(kind) << ": " << leak;
    }
  }
}

TEST_F(RegistryTest, OwnerSideIntegrityChecks) {
  auto d = deploy(scenario::condition_spec(ConditionKind::kRange, world_->schema));
  auto vc = credential_for(device(1), 1);
  auto corrupted = d.pk;
  corrupted.bytes[corrupted.bytes.size() / 2] ^= 1;
  flow::PresentOptions opts;
  try {
    flow::present(vdr_, d.zkvpr_id, corrupted, vc, opts);
    FAIL();
  } catch (const IntegrityError& e) {
    EXPECT_NE(std::string(e.what()).find("integrity check failed"), std::string::npos);
  }
  scenario::DeviceProfile old_fw;
  old_fw.firmware = 4;
  try {
    flow::present(vdr_, d.zkvpr_id, d.pk, credential_for(device(2), 2, old_fw), opts);
    FAIL();
  } catch (const circuit::AssignError& e) {
    EXPECT_STREQ(e.what(), "condition unsatisfied: firmware");
  }
}

}  // namespace
}  // namespace devreg::registry
