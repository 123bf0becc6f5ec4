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

// The three phases of device registration wired end to end: the initiator
// compiles a spec, runs setup, publishes the proof request and deploys the
// registration contract; the device owner fetches and checks the request,
// recompiles the spec locally, and proves; the chain verifies.

#ifndef DEVREG_FLOW_FLOW_H_
#define DEVREG_FLOW_FLOW_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "devreg/circuit/circuit.h"
#include "devreg/credential/credential.h"
#include "devreg/proofsys/proofsys.h"
#include "devreg/registry/chain.h"
#include "devreg/registry/vdr.h"
#include "devreg/zkspec/zkspec.h"

namespace devreg::flow {

using credential::CredentialSchema;
using credential::VerifiableCredential;
using crypto::Fr;
using crypto::Point;
using proofsys::SchemeId;
using zkspec::ZkSpec;

struct Deployment {
  ZkSpec spec;  // normalized
  SchemeId scheme = SchemeId::kPerCircuitSetup;
  circuit::Circuit circuit;
  proofsys::ProvingKey pk;
  proofsys::VerificationKey vk;
  std::string schema_id;  // VDR record ids
  std::string zkvpr_id;
  std::string contract;
  double compile_s = 0;
  double setup_s = 0;  // key generation only; SRS generation is separate
};

struct InitiateOptions {
  SchemeId scheme = SchemeId::kPerCircuitSetup;
  const proofsys::UniversalSrs* srs = nullptr;
  std::string initiator = "initiator";  // chain account and zkVPR metadata
  std::string pk_locator;               // where owners find the proving key
};

// Throws std::invalid_argument on an invalid spec and proofsys::ProofError
// on setup failure (e.g. a missing or too small SRS).
Deployment initiate(const ZkSpec& spec, const CredentialSchema& schema,
                    std::span<const Point> issuer_keys, registry::Vdr& vdr,
                    registry::Chain& chain, const InitiateOptions& opts);

struct Presentation {
  registry::ZkVp zkvp;
  double compile_s = 0;  // owner-side recompilation
  double witness_s = 0;
  double prove_s = 0;
};

struct PresentOptions {
  std::string owner = "owner";  // account that will submit
  std::optional<uint64_t> now_ts;
  std::optional<Fr> commitment_randomness;  // committed key mode
};

// Owner side. Fetches the proof request and schema from the VDR, checks the
// proving key hash, recompiles the spec and checks the key belongs to it,
// then assigns and proves. Throws registry::IntegrityError on any integrity
// failure, circuit::AssignError if the credential does not qualify.
Presentation present(const registry::Vdr& vdr, std::string_view zkvpr_id,
                     const proofsys::ProvingKey& pk, const VerifiableCredential& vc,
                     const PresentOptions& opts);

// The device key attested in `vc` under `spec`; throws std::invalid_argument
// if absent or not a point.
Point attested_device_key(const VerifiableCredential& vc, const ZkSpec& spec);

struct Application {
  std::string contract;
  SchemeId scheme = SchemeId::kPerCircuitSetup;
  std::optional<circuit::Circuit> auth_circuit;  // committed registrations
  std::optional<proofsys::ProvingKey> auth_pk;
};

// Deploys an application contract gated on `registration`. For committed
// registrations this also sets up the authentication circuit.
Application deploy_application(registry::Chain& chain, std::string_view registration,
                               SchemeId scheme, const proofsys::UniversalSrs* srs,
                               std::string_view sender);

// Committed-mode device authentication: signs the payload digest with the
// device key and proves the hidden key opens the registered commitment.
registry::Receipt authenticate(registry::Chain& chain, const Application& app,
                               std::span<const uint8_t> payload,
                               const crypto::KeyPair& device, const Fr& randomness,
                               std::string_view sender);

}  // namespace devreg::flow

#endif  // DEVREG_FLOW_FLOW_H_
