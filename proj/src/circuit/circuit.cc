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

#include "devreg/circuit/circuit.h"

#include <algorithm>
#include <array>
#include <json.hpp>
#include <map>
#include <set>

#include "devreg/circuit/gadgets.h"
#include "devreg/crypto/encoding.h"
#include "devreg/crypto/poseidon.h"
#include "devreg/util/codec.h"

namespace devreg::circuit {
namespace {

using crypto::AttributeValue;
using crypto::ValueKind;
using zkspec::Condition;
using zkspec::ConditionType;
using zkspec::KeyMode;

constexpr std::string_view kMagic = "DRCC";
constexpr uint8_t kFormat = 1;
// Time differences fit in 66 bits for 64-bit timestamps and offsets below
// 2^62, so a negative difference can never pass the decomposition.
constexpr size_t kTimeBits = 66;
constexpr size_t kValueBits = 64;

size_t value_width(const AttributeValue& v) {
  return v.kind == ValueKind::kString ? crypto::string_preimage(v.text).size() : 1;
}

void append_value_aux(std::vector<Fr>& out, const AttributeValue& v) {
  if (v.kind == ValueKind::kString) {
    auto pre = crypto::string_preimage(v.text);
    out.insert(out.end(), pre.begin(), pre.end());
  } else {
    out.push_back(Fr::from_u64(v.number));
  }
}

// Values feeding synthesis. All zero when compiling.
struct ClaimValues {
  Fr enc;
  Point r{Fr::zero(), Fr::zero()};
  Fr s;
};

struct SynthValues {
  std::vector<Fr> pub;  // flattened public inputs
  Point device_key{Fr::zero(), Fr::zero()};
  Fr randomness;
  Fr subject;
  std::map<uint32_t, ClaimValues> claims;
};

std::string attr_name(const CredentialSchema& schema, uint32_t id) {
  const auto* d = schema.find(id);
  return d ? d->name : "#" + std::to_string(id);
}

std::set<uint32_t> used_attributes(const ZkSpec& spec) {
  std::set<uint32_t> s{spec.device_key_attribute_id};
  for (const auto& r : spec.requirements) s.insert(r.attribute_id);
  return s;
}

std::vector<LayoutEntry> make_layout(const ZkSpec& spec,
                                     const CredentialSchema& schema) {
  std::vector<LayoutEntry> out;
  size_t off = 0;
  auto add = [&](std::string name, size_t len) {
    out.push_back({std::move(name), off, len});
    off += len;
  };
  add("issuer_pubkey", 2);
  if (spec.key_mode == KeyMode::kPlain) {
    add("device_key", 2);
  } else {
    add("commitment", 1);
  }
  for (const auto& r : spec.requirements) {
    const Condition& c = r.condition;
    size_t len = 0;
    switch (c.type) {
      case ConditionType::kEquality: len = value_width(c.target); break;
      case ConditionType::kRange: len = (c.min ? 1 : 0) + (c.max ? 1 : 0); break;
      case ConditionType::kMembership:
        for (const auto& m : c.set) len += value_width(m);
        break;
      case ConditionType::kRelativeTime: len = 1; break;
    }
    add("aux:" + attr_name(schema, r.attribute_id) + ":" +
            std::string(zkspec::condition_name(c.type)),
        len);
  }
  add("owner_binding", 1);
  if (spec.has_relative_time()) add("now_ts", 1);
  return out;
}

// Reads a value's aux slice and returns its encoding as a circuit LC.
LC aux_encoding(Builder& b, const AttributeValue& shape,
                const std::vector<Var>& aux, size_t& pos) {
  if (shape.kind != ValueKind::kString) return aux[pos++];
  const size_t w = value_width(shape);
  std::vector<LC> pre(aux.begin() + pos, aux.begin() + pos + w);
  pos += w;
  return hash_fields(b, pre);
}

void synthesize(Builder& b, const ZkSpec& spec, const CredentialSchema& schema,
                const SynthValues& v) {
  const size_t aux_len = spec_aux(spec).size();
  size_t pi = 0;
  auto next_pub = [&]() { return b.input(v.pub[pi++]); };

  b.set_label("public");
  PointVar issuer{next_pub(), next_pub()};
  PointVar dk;
  std::optional<Var> commitment;
  if (spec.key_mode == KeyMode::kPlain) {
    dk = {next_pub(), next_pub()};
  } else {
    commitment = next_pub();
  }
  std::vector<Var> aux;
  for (size_t i = 0; i < aux_len; ++i) aux.push_back(next_pub());
  Var owner = next_pub();
  std::optional<Var> now;
  if (spec.has_relative_time()) now = next_pub();

  if (commitment) {
    b.set_label("binding");
    dk = {b.witness(v.device_key.x), b.witness(v.device_key.y)};
    Var rand = b.witness(v.randomness);
    std::array<LC, 3> open{dk.x, dk.y, rand};
    enforce_equal(b, poseidon(b, open), *commitment);
  }

  // One subject variable feeds every claim message, which is what forces all
  // loaded claims to describe the same device.
  b.set_label("subject");
  Var subject = b.witness(v.subject);

  std::map<uint32_t, LC> enc;
  for (uint32_t attr : used_attributes(spec)) {
    const ClaimValues& cv = v.claims.at(attr);
    if (attr == spec.device_key_attribute_id) {
      b.set_label("binding");
      std::array<LC, 2> xy{dk.x, dk.y};
      enc[attr] = poseidon(b, xy);
    } else {
      b.set_label("sig:" + attr_name(schema, attr));
      enc[attr] = b.witness(cv.enc);
    }
    b.set_label("sig:" + attr_name(schema, attr));
    std::array<LC, 4> msg{LC::constant(spec.schema_ref), subject,
                          LC::constant(Fr::from_u64(attr)), enc[attr]};
    LC m = poseidon(b, msg);
    PointVar r{b.witness(cv.r.x), b.witness(cv.r.y)};
    Var s = b.witness(cv.s);
    verify_eddsa(b, issuer, m, r, s);
  }

  size_t pos = 0;
  for (const auto& req : spec.requirements) {
    const Condition& c = req.condition;
    const LC& value = enc.at(req.attribute_id);
    b.set_label("cond:" + attr_name(schema, req.attribute_id));
    switch (c.type) {
      case ConditionType::kEquality:
        enforce_equal(b, value, aux_encoding(b, c.target, aux, pos));
        break;
      case ConditionType::kRange:
        to_bits(b, value, kValueBits);
        if (c.min) to_bits(b, value - LC(aux[pos++]), kValueBits);
        if (c.max) to_bits(b, LC(aux[pos++]) - value, kValueBits);
        break;
      case ConditionType::kMembership: {
        LC prod;
        for (size_t i = 0; i < c.set.size(); ++i) {
          LC diff = value - aux_encoding(b, c.set[i], aux, pos);
          prod = i == 0 ? diff : LC(mul(b, prod, diff));
        }
        enforce_equal(b, prod, LC());
        break;
      }
      case ConditionType::kRelativeTime: {
        LC off = aux[pos++];
        LC d = c.direction == zkspec::TimeDirection::kNotOlderThan
                   ? value - LC(*now) + off
                   : LC(*now) - off - value;
        to_bits(b, d, kTimeBits);
        break;
      }
    }
  }

  // Ties the proof to the submitting account.
  b.set_label("owner");
  mul(b, owner, owner);
}

Circuit finish(Builder& b, std::vector<LayoutEntry> layout,
               const crypto::Digest32& spec_id) {
  Circuit c;
  c.cs = b.take_system();
  c.layout = std::move(layout);
  c.spec_id = spec_id;
  return c;
}

void check_layout(const Circuit& circuit, const std::vector<Fr>& flat) {
  if (flat.size() != circuit.num_public()) {
    throw AssignError(AssignError::Kind::kLayoutMismatch,
                      "public inputs do not match the circuit layout");
  }
}

const crypto::Digest32& auth_spec_id() {
  static const crypto::Digest32 id = crypto::sha256("devreg.auth.v1");
  return id;
}

void synthesize_auth(Builder& b, const std::array<Fr, 2>& pub,
                     const Point& key, const Fr& rand, const Fr& r_x,
                     const Fr& r_y, const Fr& s) {
  b.set_label("public");
  Var commitment = b.input(pub[0]);
  Var digest = b.input(pub[1]);
  b.set_label("binding");
  PointVar dk{b.witness(key.x), b.witness(key.y)};
  enforce_on_curve(b, dk);
  std::array<LC, 3> open{dk.x, dk.y, b.witness(rand)};
  enforce_equal(b, poseidon(b, open), commitment);
  b.set_label("sig:payload");
  std::array<LC, 1> msg{digest};
  verify_eddsa(b, dk, poseidon(b, msg), {b.witness(r_x), b.witness(r_y)},
               b.witness(s));
}

}  // namespace

std::vector<Fr> PublicInputs::flatten() const {
  std::vector<Fr> out{issuer_pubkey.x, issuer_pubkey.y};
  if (device_key) {
    out.push_back(device_key->x);
    out.push_back(device_key->y);
  }
  if (commitment) out.push_back(*commitment);
  out.insert(out.end(), aux.begin(), aux.end());
  out.push_back(owner_binding);
  if (now_ts) out.push_back(Fr::from_u64(*now_ts));
  return out;
}

std::vector<Fr> spec_aux(const ZkSpec& spec_in) {
  const ZkSpec spec = spec_in.normalized();
  std::vector<Fr> out;
  for (const auto& r : spec.requirements) {
    const Condition& c = r.condition;
    switch (c.type) {
      case ConditionType::kEquality: append_value_aux(out, c.target); break;
      case ConditionType::kRange:
        if (c.min) out.push_back(Fr::from_u64(*c.min));
        if (c.max) out.push_back(Fr::from_u64(*c.max));
        break;
      case ConditionType::kMembership:
        for (const auto& m : c.set) append_value_aux(out, m);
        break;
      case ConditionType::kRelativeTime:
        out.push_back(Fr::from_i64(c.offset_seconds));
        break;
    }
  }
  return out;
}

Fr key_commitment(const Point& key, const Fr& randomness) {
  return crypto::hash_fields({key.x, key.y, randomness});
}

Circuit compile(const ZkSpec& spec_in, const CredentialSchema& schema) {
  auto findings = zkspec::validate_spec(spec_in, schema);
  if (!findings.empty()) {
    std::string msg = "spec does not validate:";
    for (const auto& f : findings) msg += " [" + f.code + "] " + f.message + ";";
    throw std::invalid_argument(msg);
  }
  const ZkSpec spec = spec_in.normalized();
  auto layout = make_layout(spec, schema);
  SynthValues v;
  v.pub.assign(layout.back().offset + layout.back().length, Fr::zero());
  for (uint32_t a : used_attributes(spec)) v.claims[a] = {};
  Builder b;
  synthesize(b, spec, schema, v);
  return finish(b, std::move(layout), zkspec::spec_id(spec));
}

Witness assign(const ZkSpec& spec_in, const CredentialSchema& schema,
               const Circuit& circuit, const VerifiableCredential& vc,
               const PublicInputs& pub, std::optional<Fr> randomness) {
  using Kind = AssignError::Kind;
  const ZkSpec spec = spec_in.normalized();
  if (zkspec::spec_id(spec) != circuit.spec_id) {
    throw AssignError(Kind::kLayoutMismatch, "circuit was compiled from another spec");
  }
  const bool plain = spec.key_mode == KeyMode::kPlain;
  if (plain != pub.device_key.has_value() || plain == pub.commitment.has_value() ||
      spec.has_relative_time() != pub.now_ts.has_value() ||
      pub.aux.size() != spec_aux(spec).size() || (!plain && !randomness)) {
    throw AssignError(Kind::kLayoutMismatch,
                      "public inputs do not match the circuit layout");
  }
  SynthValues v;
  v.pub = pub.flatten();
  check_layout(circuit, v.pub);

  std::optional<Fr> subject;
  for (uint32_t attr : used_attributes(spec)) {
    const auto* vcl = vc.find(attr);
    if (!vcl) {
      throw AssignError(Kind::kMissingClaim,
                        "missing claim: " + attr_name(schema, attr));
    }
    if (subject && *subject != vcl->claim.subject_id) {
      throw AssignError(Kind::kSubjectMismatch, "subject mismatch");
    }
    subject = vcl->claim.subject_id;
    v.claims[attr] = {crypto::encode_value(vcl->claim.value), vcl->signature.R,
                      Fr::reduce(vcl->signature.S.to_u256())};
  }
  v.subject = *subject;

  const auto& key_claim = vc.find(spec.device_key_attribute_id)->claim;
  if (key_claim.value.kind != ValueKind::kPoint) {
    throw AssignError(Kind::kBindingFailed, "device-key binding failed");
  }
  v.device_key = key_claim.value.point;
  if (plain ? *pub.device_key != v.device_key
            : key_commitment(v.device_key, *randomness) != *pub.commitment) {
    throw AssignError(Kind::kBindingFailed, "device-key binding failed");
  }
  if (randomness) v.randomness = *randomness;

  Builder b;
  synthesize(b, spec, schema, v);
  if (b.system().constraint_count() != circuit.constraint_count()) {
    throw AssignError(Kind::kLayoutMismatch, "circuit structure mismatch");
  }
  if (auto bad = b.system().first_unsatisfied(b.assignment())) {
    const std::string& label = b.system().label_of(*bad);
    if (label.starts_with("sig:")) {
      throw AssignError(Kind::kSignatureInvalid, "signature invalid: " + label.substr(4));
    }
    if (label.starts_with("cond:")) {
      throw AssignError(Kind::kConditionUnsatisfied,
                        "condition unsatisfied: " + label.substr(5));
    }
    throw AssignError(Kind::kBindingFailed, "device-key binding failed");
  }
  return {b.take_assignment(), circuit.num_public()};
}

Circuit compile_auth() {
  Builder b;
  synthesize_auth(b, {Fr::zero(), Fr::zero()}, Point{Fr::zero(), Fr::zero()},
                  Fr::zero(), Fr::zero(), Fr::zero(), Fr::zero());
  return finish(b, {{"commitment", 0, 1}, {"payload_digest", 1, 1}}, auth_spec_id());
}

Witness assign_auth(const Circuit& circuit, const Point& device_key,
                    const Fr& randomness, const Fr& payload_digest,
                    const crypto::Signature& sig) {
  Builder b;
  synthesize_auth(b, {key_commitment(device_key, randomness), payload_digest},
                  device_key, randomness, sig.R.x, sig.R.y,
                  Fr::reduce(sig.S.to_u256()));
  if (b.system().constraint_count() != circuit.constraint_count()) {
    throw AssignError(AssignError::Kind::kLayoutMismatch, "not the auth circuit");
  }
  if (auto bad = b.system().first_unsatisfied(b.assignment())) {
    throw AssignError(b.system().label_of(*bad) == "binding"
                          ? AssignError::Kind::kBindingFailed
                          : AssignError::Kind::kSignatureInvalid,
                      "authentication witness invalid: " + b.system().label_of(*bad));
  }
  return {b.take_assignment(), circuit.num_public()};
}

std::vector<uint8_t> Circuit::serialize() const {
  util::ByteWriter w;
  w.raw(std::span(reinterpret_cast<const uint8_t*>(kMagic.data()), kMagic.size()));
  w.u8(kFormat);
  w.raw(spec_id);
  w.u64(layout.size());
  for (const auto& e : layout) {
    w.str(e.name);
    w.u64(e.offset);
    w.u64(e.length);
  }
  w.bytes(cs.serialize());
  return w.take();
}

Circuit Circuit::deserialize(std::span<const uint8_t> bytes) {
  util::ByteReader r(bytes);
  auto magic = r.raw(kMagic.size());
  if (!std::equal(magic.begin(), magic.end(), kMagic.begin()) || r.u8() != kFormat) {
    throw std::invalid_argument("not a circuit encoding");
  }
  Circuit c;
  auto id = r.raw(32);
  std::copy(id.begin(), id.end(), c.spec_id.begin());
  uint64_t n = r.length(24);
  for (uint64_t i = 0; i < n; ++i) {
    LayoutEntry e;
    e.name = r.str();
    e.offset = r.u64();
    e.length = r.u64();
    c.layout.push_back(std::move(e));
  }
  c.cs = r1cs::ConstraintSystem::deserialize(r.bytes());
  r.expect_end();
  return c;
}

std::string Circuit::manifest() const {
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& e : layout) {
    entries.push_back({{"name", e.name}, {"offset", e.offset}, {"length", e.length}});
  }
  nlohmann::ordered_json j{{"version", "devreg.layout.v1"},
                           {"spec_id", crypto::hex_encode(spec_id)},
                           {"constraints", constraint_count()},
                           {"public_inputs", num_public()},
                           {"layout", entries}};
  return j.dump(2) + "\n";
}

}  // namespace devreg::circuit
