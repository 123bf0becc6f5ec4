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

#ifndef DEVREG_CREDENTIAL_CREDENTIAL_H_
#define DEVREG_CREDENTIAL_CREDENTIAL_H_

// Credential schemas, claims, and issuer attestation. Each claim is signed
// on its own so a presentation can load only the claims it needs.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "devreg/crypto/eddsa.h"
#include "devreg/crypto/encoding.h"

namespace devreg::credential {

using crypto::AttributeValue;
using crypto::Fr;
using crypto::KeyPair;
using crypto::Point;
using crypto::Signature;
using crypto::ValueKind;

struct AttributeDef {
  uint32_t id = 0;
  std::string name;
  ValueKind kind = ValueKind::kUint;
  friend bool operator==(const AttributeDef&, const AttributeDef&) = default;
};

struct CredentialSchema {
  std::string name;
  std::string issuer;  // free-form issuer metadata
  std::vector<AttributeDef> attributes;  // ids dense 0..n-1, in id order

  friend bool operator==(const CredentialSchema&,
                         const CredentialSchema&) = default;

  // Throws std::invalid_argument if ids are not dense or names repeat.
  void check() const;
  const AttributeDef* find(uint32_t id) const;
  const AttributeDef* find(std::string_view name) const;
  // Throws std::invalid_argument naming the attribute.
  const AttributeDef& at(std::string_view name) const;

  // Poseidon digest of canonical_text().
  Fr schema_id() const;
  std::string canonical_text() const;
  static CredentialSchema parse(std::string_view text);
};

struct Claim {
  Fr subject_id;
  uint32_t attribute_id = 0;
  AttributeValue value;
  friend bool operator==(const Claim&, const Claim&) = default;
};

struct VerifiableClaim {
  Claim claim;
  Signature signature;
  friend bool operator==(const VerifiableClaim&,
                         const VerifiableClaim&) = default;
};

struct VerifiableCredential {
  Fr schema_id;
  Point issuer_pubkey;
  std::vector<VerifiableClaim> claims;

  friend bool operator==(const VerifiableCredential&,
                         const VerifiableCredential&) = default;

  const VerifiableClaim* find(uint32_t attribute_id) const;

  // Wallet file: canonical JSON with sorted keys and hex field elements.
  std::string to_wallet_text() const;
  static VerifiableCredential parse_wallet_text(std::string_view text);
};

// [schema_id, subject_id, attribute_id, encode_value(value)].
std::vector<Fr> claim_message(const Fr& schema_id, const Fr& subject_id,
                              uint32_t attribute_id,
                              const AttributeValue& value);

// Throws std::invalid_argument on an empty credential, mixed subjects, an
// unknown attribute, a kind mismatch, or a repeated attribute.
VerifiableCredential attest(const std::vector<Claim>& claims,
                            const KeyPair& issuer,
                            const CredentialSchema& schema);

// False on any bad signature, issuer or schema mismatch, or mixed subjects.
// Throws std::invalid_argument on an attribute id unknown to the schema.
bool verify_vc(const VerifiableCredential& vc, const Point& issuer_pubkey,
               const CredentialSchema& schema);

}  // namespace devreg::credential

#endif  // DEVREG_CREDENTIAL_CREDENTIAL_H_
