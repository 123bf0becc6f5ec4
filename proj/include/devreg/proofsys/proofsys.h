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

// Uniform setup/prove/verify over both scheme families, with versioned binary
// envelopes for keys, proofs and the universal SRS.

#ifndef DEVREG_PROOFSYS_PROOFSYS_H_
#define DEVREG_PROOFSYS_PROOFSYS_H_

#include <stdexcept>
#include <utility>
#include <vector>

#include "devreg/circuit/circuit.h"
#include "devreg/crypto/digest.h"
#include "devreg/proofsys/kzg.h"
#include "devreg/proofsys/scheme.h"

namespace devreg::proofsys {

// Setup, proving and layout errors. Verification failures are not errors.
class ProofError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ArtifactKind : uint8_t {
  kSrs = 1,
  kProvingKey = 2,
  kVerificationKey = 3,
  kProof = 4,
};

// {magic "DRPS", version, kind, scheme, spec id, payload}.
struct Envelope {
  ArtifactKind kind = ArtifactKind::kProof;
  SchemeId scheme = SchemeId::kPerCircuitSetup;
  crypto::Digest32 spec_id{};
  std::vector<uint8_t> payload;

  std::vector<uint8_t> serialize() const;
  // Throws std::invalid_argument on a malformed envelope or another kind.
  static Envelope parse(std::span<const uint8_t> bytes, ArtifactKind expected);
};

struct UniversalSrs {
  uint64_t max_constraints = 0;
  crypto::Digest32 entropy_commitment{};  // SHA-256 of the operator entropy
  kzg::Srs srs;

  std::vector<uint8_t> serialize() const;
  static UniversalSrs deserialize(std::span<const uint8_t> bytes);
};

// The operator entropy is mixed with random_bytes(), so unless the process is
// seeded the trapdoor is not reproducible from the entropy alone.
UniversalSrs universal_setup(uint64_t max_constraints, std::span<const uint8_t> entropy);

struct Artifact {
  SchemeId scheme = SchemeId::kPerCircuitSetup;
  crypto::Digest32 spec_id{};
  std::vector<uint8_t> bytes;  // scheme-specific payload

  crypto::Digest32 hash() const;
  size_t size() const { return bytes.size(); }
  friend bool operator==(const Artifact&, const Artifact&) = default;
};

struct ProvingKey : Artifact {
  std::vector<uint8_t> serialize() const;
  static ProvingKey deserialize(std::span<const uint8_t> bytes);
};
struct VerificationKey : Artifact {
  std::vector<uint8_t> serialize() const;
  static VerificationKey deserialize(std::span<const uint8_t> bytes);
};
struct Proof : Artifact {
  std::vector<uint8_t> serialize() const;
  static Proof deserialize(std::span<const uint8_t> bytes);
};

// UniversalSetup requires srs; PerCircuitSetup ignores it.
std::pair<ProvingKey, VerificationKey> setup(SchemeId scheme,
                                             const circuit::Circuit& circuit,
                                             const UniversalSrs* srs = nullptr);

Proof prove(SchemeId scheme, const circuit::Circuit& circuit,
            const circuit::Witness& witness, const ProvingKey& pk);

// False for any invalid or mismatched proof. Throws ProofError when the
// public inputs do not fit the key's layout.
bool verify(SchemeId scheme, const Proof& proof, std::span<const ff::Fr> public_inputs,
            const VerificationKey& vk);

}  // namespace devreg::proofsys

#endif  // DEVREG_PROOFSYS_PROOFSYS_H_
