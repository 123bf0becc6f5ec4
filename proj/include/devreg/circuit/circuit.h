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

#ifndef DEVREG_CIRCUIT_CIRCUIT_H_
#define DEVREG_CIRCUIT_CIRCUIT_H_

// Compiles a zkSpec into a constraint system and assigns witnesses from a
// verifiable credential.
//
// Public input layout, in order:
//   issuer_pubkey (x, y)
//   device_key (x, y)          plain key mode
//   commitment                 committed key mode
//   aux...                     per requirement, in normalized spec order
//   owner_binding
//   now_ts                     only if the spec has a relative-time condition
//
// Aux per requirement: equality -> target; range -> [min], [max];
// membership -> each member; relative time -> offset. Numeric values embed
// directly; strings contribute their preimage [len, chunks...] and are hashed
// inside the circuit.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "devreg/credential/credential.h"
#include "devreg/crypto/digest.h"
#include "devreg/r1cs/r1cs.h"
#include "devreg/zkspec/zkspec.h"

namespace devreg::circuit {

using credential::CredentialSchema;
using credential::VerifiableCredential;
using crypto::Point;
using r1cs::Fr;
using zkspec::ZkSpec;

struct LayoutEntry {
  std::string name;
  size_t offset = 0;
  size_t length = 0;
  friend bool operator==(const LayoutEntry&, const LayoutEntry&) = default;
};

struct Circuit {
  r1cs::ConstraintSystem cs;
  std::vector<LayoutEntry> layout;
  crypto::Digest32 spec_id{};

  size_t constraint_count() const { return cs.constraint_count(); }
  size_t num_public() const { return cs.num_public; }

  std::vector<uint8_t> serialize() const;
  static Circuit deserialize(std::span<const uint8_t> bytes);
  // JSON manifest of the public-input layout.
  std::string manifest() const;
  crypto::Digest32 id() const { return crypto::sha256(serialize()); }
};

struct PublicInputs {
  Point issuer_pubkey;
  std::optional<Point> device_key;
  std::optional<Fr> commitment;
  std::vector<Fr> aux;
  Fr owner_binding;
  std::optional<uint64_t> now_ts;

  std::vector<Fr> flatten() const;
};

struct Witness {
  std::vector<Fr> z;  // z[0] = 1, then public inputs, then private values
  size_t num_public = 0;
  std::span<const Fr> public_inputs() const {
    return std::span(z).subspan(1, num_public);
  }
};

class AssignError : public std::runtime_error {
 public:
  enum class Kind {
    kMissingClaim,
    kConditionUnsatisfied,
    kSignatureInvalid,
    kSubjectMismatch,
    kBindingFailed,
    kLayoutMismatch,
  };
  AssignError(Kind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// The canonical aux vector a spec induces.
std::vector<Fr> spec_aux(const ZkSpec& spec);

// Throws std::invalid_argument listing validation findings.
Circuit compile(const ZkSpec& spec, const CredentialSchema& schema);

// Throws AssignError naming the first failing check.
Witness assign(const ZkSpec& spec, const CredentialSchema& schema,
               const Circuit& circuit, const VerifiableCredential& vc,
               const PublicInputs& pub,
               std::optional<Fr> commitment_randomness = std::nullopt);

// hash_fields([x, y, randomness]).
Fr key_commitment(const Point& key, const Fr& randomness);

// Authentication circuit for committed-key registries. Public inputs are
// [commitment, payload_digest]; it proves knowledge of a key opening the
// commitment that signed [payload_digest].
Circuit compile_auth();
Witness assign_auth(const Circuit& circuit, const Point& device_key,
                    const Fr& randomness, const Fr& payload_digest,
                    const crypto::Signature& sig);

}  // namespace devreg::circuit

#endif  // DEVREG_CIRCUIT_CIRCUIT_H_
