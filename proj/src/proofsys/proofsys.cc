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

#include <algorithm>

#include "devreg/proofsys/common.h"
#include "devreg/proofsys/groth16.h"
#include "devreg/proofsys/marlin.h"

namespace devreg::proofsys {
namespace {

constexpr std::string_view kMagic = "DRPS";
constexpr uint8_t kVersion = 1;

void check_scheme(uint8_t s) {
  if (s != static_cast<uint8_t>(SchemeId::kPerCircuitSetup) &&
      s != static_cast<uint8_t>(SchemeId::kUniversalSetup)) {
    throw std::invalid_argument("unknown scheme id");
  }
}

template <class T>
T from_envelope(std::span<const uint8_t> bytes, ArtifactKind kind) {
  Envelope e = Envelope::parse(bytes, kind);
  T out;
  out.scheme = e.scheme;
  out.spec_id = e.spec_id;
  out.bytes = std::move(e.payload);
  return out;
}

std::vector<uint8_t> to_envelope(const Artifact& a, ArtifactKind kind) {
  return Envelope{kind, a.scheme, a.spec_id, a.bytes}.serialize();
}

}  // namespace

std::vector<uint8_t> Envelope::serialize() const {
  util::ByteWriter w;
  w.raw(std::span(reinterpret_cast<const uint8_t*>(kMagic.data()), kMagic.size()));
  w.u8(kVersion);
  w.u8(static_cast<uint8_t>(kind));
  w.u8(static_cast<uint8_t>(scheme));
  w.raw(spec_id);
  w.bytes(payload);
  return w.take();
}

Envelope Envelope::parse(std::span<const uint8_t> bytes, ArtifactKind expected) {
  util::ByteReader r(bytes);
  auto magic = r.raw(kMagic.size());
  if (!std::equal(magic.begin(), magic.end(), kMagic.begin())) {
    throw std::invalid_argument("not a devreg artifact");
  }
  if (r.u8() != kVersion) throw std::invalid_argument("unsupported artifact version");
  Envelope e;
  e.kind = static_cast<ArtifactKind>(r.u8());
  if (e.kind != expected) throw std::invalid_argument("unexpected artifact kind");
  const uint8_t s = r.u8();
  check_scheme(s);
  e.scheme = static_cast<SchemeId>(s);
  auto id = r.raw(32);
  std::copy(id.begin(), id.end(), e.spec_id.begin());
  auto payload = r.bytes();
  e.payload.assign(payload.begin(), payload.end());
  r.expect_end();
  return e;
}

std::vector<uint8_t> UniversalSrs::serialize() const {
  util::ByteWriter w;
  w.u64(max_constraints);
  w.raw(entropy_commitment);
  w.u64(srs.max_degree);
  put_g1s(w, srs.powers);
  put_g1s(w, srs.gamma_powers);
  put_g2(w, srs.h);
  put_g2(w, srs.beta_h);
  // The SRS is not bound to a spec.
  return Envelope{ArtifactKind::kSrs, SchemeId::kUniversalSetup, {}, w.take()}
      .serialize();
}

UniversalSrs UniversalSrs::deserialize(std::span<const uint8_t> bytes) {
  Envelope e = Envelope::parse(bytes, ArtifactKind::kSrs);
  util::ByteReader r(e.payload);
  UniversalSrs u;
  u.max_constraints = r.u64();
  auto c = r.raw(32);
  std::copy(c.begin(), c.end(), u.entropy_commitment.begin());
  u.srs.max_degree = r.u64();
  u.srs.powers = get_g1s(r);
  u.srs.gamma_powers = get_g1s(r);
  u.srs.h = get_g2(r);
  u.srs.beta_h = get_g2(r);
  r.expect_end();
  if (u.srs.powers.size() != u.srs.max_degree + 1 ||
      u.srs.gamma_powers.size() != kzg::kHidingPolyLen ||
      u.srs.max_degree < marlin::srs_degree_for(u.max_constraints)) {
    throw std::invalid_argument("malformed SRS");
  }
  return u;
}

UniversalSrs universal_setup(uint64_t max_constraints, std::span<const uint8_t> entropy) {
  if (max_constraints == 0 || max_constraints > (uint64_t{1} << 22)) {
    throw ProofError("max_constraints out of range");
  }
  uint8_t os[64];
  random_bytes(os);
  util::ByteWriter seed;
  seed.bytes(entropy);
  seed.raw(os);
  UniversalSrs u;
  u.max_constraints = max_constraints;
  u.entropy_commitment = crypto::sha256(entropy);
  u.srs = kzg::generate(marlin::srs_degree_for(max_constraints), seed.data());
  return u;
}

crypto::Digest32 Artifact::hash() const { return crypto::sha256(bytes); }

std::vector<uint8_t> ProvingKey::serialize() const {
  return to_envelope(*this, ArtifactKind::kProvingKey);
}
ProvingKey ProvingKey::deserialize(std::span<const uint8_t> bytes) {
  return from_envelope<ProvingKey>(bytes, ArtifactKind::kProvingKey);
}
std::vector<uint8_t> VerificationKey::serialize() const {
  return to_envelope(*this, ArtifactKind::kVerificationKey);
}
VerificationKey VerificationKey::deserialize(std::span<const uint8_t> bytes) {
  return from_envelope<VerificationKey>(bytes, ArtifactKind::kVerificationKey);
}
std::vector<uint8_t> Proof::serialize() const {
  return to_envelope(*this, ArtifactKind::kProof);
}
Proof Proof::deserialize(std::span<const uint8_t> bytes) {
  return from_envelope<Proof>(bytes, ArtifactKind::kProof);
}

std::pair<ProvingKey, VerificationKey> setup(SchemeId scheme,
                                             const circuit::Circuit& circuit,
                                             const UniversalSrs* srs) {
  ProvingKey pk;
  VerificationKey vk;
  pk.scheme = vk.scheme = scheme;
  pk.spec_id = vk.spec_id = circuit.spec_id;
  if (circuit.cs.constraints.empty()) throw ProofError("malformed constraint system");
  if (scheme == SchemeId::kPerCircuitSetup) {
    auto [p, v] = groth16::setup(circuit.cs);
    pk.bytes = p.serialize();
    vk.bytes = v.serialize();
  } else {
    if (!srs) throw ProofError("SRS required");
    try {
      auto [p, v] = marlin::index(srs->srs, srs->max_constraints, circuit.cs);
      pk.bytes = p.serialize();
      vk.bytes = v.serialize();
    } catch (const std::invalid_argument& e) {
      throw ProofError(e.what());
    }
  }
  return {std::move(pk), std::move(vk)};
}

Proof prove(SchemeId scheme, const circuit::Circuit& circuit,
            const circuit::Witness& witness, const ProvingKey& pk) {
  if (pk.scheme != scheme || pk.spec_id != circuit.spec_id) {
    throw ProofError("proving key does not match the circuit");
  }
  if (circuit.cs.first_unsatisfied(witness.z)) throw ProofError("unsatisfied witness");
  Proof proof;
  proof.scheme = scheme;
  proof.spec_id = circuit.spec_id;
  try {
    if (scheme == SchemeId::kPerCircuitSetup) {
      auto key = groth16::ProvingKey::deserialize(pk.bytes);
      proof.bytes = groth16::prove(circuit.cs, witness.z, key).serialize();
    } else {
      auto key = marlin::ProvingKey::deserialize(pk.bytes);
      proof.bytes = marlin::prove(circuit.cs, witness.z, key).serialize();
    }
  } catch (const std::invalid_argument& e) {
    throw ProofError(e.what());
  }
  return proof;
}

bool verify(SchemeId scheme, const Proof& proof, std::span<const ff::Fr> public_inputs,
            const VerificationKey& vk) {
  if (proof.scheme != scheme || vk.scheme != scheme || proof.spec_id != vk.spec_id) {
    return false;
  }
  if (scheme == SchemeId::kPerCircuitSetup) {
    groth16::VerifyingKey key;
    try {
      key = groth16::VerifyingKey::deserialize(vk.bytes);
    } catch (const std::invalid_argument& e) {
      throw ProofError(std::string("malformed verification key: ") + e.what());
    }
    if (public_inputs.size() + 1 != key.ic.size()) {
      throw ProofError("public input layout mismatch");
    }
    groth16::Proof p;
    try {
      p = groth16::Proof::deserialize(proof.bytes);
    } catch (const std::invalid_argument&) {
      return false;
    }
    return groth16::verify(key, public_inputs, p);
  }
  marlin::VerifyingKey key;
  try {
    key = marlin::VerifyingKey::deserialize(vk.bytes);
  } catch (const std::invalid_argument& e) {
    throw ProofError(std::string("malformed verification key: ") + e.what());
  }
  if (public_inputs.size() != key.info.num_public) {
    throw ProofError("public input layout mismatch");
  }
  marlin::Proof p;
  try {
    p = marlin::Proof::deserialize(proof.bytes);
  } catch (const std::invalid_argument&) {
    return false;
  }
  return marlin::verify(key, public_inputs, p);
}

}  // namespace devreg::proofsys
