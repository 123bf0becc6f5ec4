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

#include <json.hpp>
#include <set>
#include <stdexcept>

#include "devreg/crypto/poseidon.h"

namespace devreg::credential {
namespace {

using nlohmann::json;

constexpr std::string_view kSchemaVersion = "devreg.schema.v1";
constexpr std::string_view kWalletVersion = "devreg.vc.v1";

json parse_object(std::string_view text, std::string_view what,
                  std::string_view version) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw std::invalid_argument(std::string(what) + " is not a JSON object");
  }
  if (j.value("version", "") != version) {
    throw std::invalid_argument("unsupported " + std::string(what) +
                                " version");
  }
  return j;
}

Fr fr_from_hex(const json& j) { return Fr::parse("0x" + j.get<std::string>()); }

json value_to_json(const AttributeValue& v) {
  return json{{"kind", crypto::kind_name(v.kind)},
              {"value", crypto::format_value(v)}};
}

AttributeValue value_from_json(const json& j) {
  return crypto::parse_value(crypto::parse_kind(j.at("kind").get<std::string>()),
                             j.at("value").get<std::string>());
}

}  // namespace

void CredentialSchema::check() const {
  std::set<std::string> names;
  for (size_t i = 0; i < attributes.size(); ++i) {
    if (attributes[i].id != i) {
      throw std::invalid_argument("schema attribute ids must be dense 0..n-1");
    }
    if (attributes[i].name.empty() || !names.insert(attributes[i].name).second) {
      throw std::invalid_argument("schema attribute names must be unique: " +
                                  attributes[i].name);
    }
  }
  if (attributes.empty()) throw std::invalid_argument("schema has no attributes");
}

const AttributeDef* CredentialSchema::find(uint32_t id) const {
  return id < attributes.size() ? &attributes[id] : nullptr;
}

const AttributeDef* CredentialSchema::find(std::string_view n) const {
  for (const auto& a : attributes) {
    if (a.name == n) return &a;
  }
  return nullptr;
}

const AttributeDef& CredentialSchema::at(std::string_view n) const {
  const AttributeDef* a = find(n);
  if (!a) throw std::invalid_argument("unknown attribute: " + std::string(n));
  return *a;
}

std::string CredentialSchema::canonical_text() const {
  json attrs = json::array();
  for (const auto& a : attributes) {
    attrs.push_back({{"id", a.id}, {"kind", crypto::kind_name(a.kind)},
                     {"name", a.name}});
  }
  json j{{"attributes", attrs},
         {"issuer", issuer},
         {"name", name},
         {"version", kSchemaVersion}};
  return j.dump(2) + "\n";
}

Fr CredentialSchema::schema_id() const {
  return crypto::hash_fields(crypto::string_preimage(canonical_text()));
}

CredentialSchema CredentialSchema::parse(std::string_view text) {
  json j = parse_object(text, "schema", kSchemaVersion);
  CredentialSchema s;
  s.name = j.at("name").get<std::string>();
  s.issuer = j.value("issuer", "");
  for (const auto& a : j.at("attributes")) {
    s.attributes.push_back({a.at("id").get<uint32_t>(),
                            a.at("name").get<std::string>(),
                            crypto::parse_kind(a.at("kind").get<std::string>())});
  }
  s.check();
  return s;
}

const VerifiableClaim* VerifiableCredential::find(uint32_t attribute_id) const {
  for (const auto& c : claims) {
    if (c.claim.attribute_id == attribute_id) return &c;
  }
  return nullptr;
}

std::string VerifiableCredential::to_wallet_text() const {
  json cl = json::array();
  for (const auto& c : claims) {
    cl.push_back({{"attribute_id", c.claim.attribute_id},
                  {"signature", c.signature.to_hex()},
                  {"subject_id", c.claim.subject_id.to_hex_string()},
                  {"value", value_to_json(c.claim.value)}});
  }
  json j{{"claims", cl},
         {"issuer_pubkey", issuer_pubkey.to_hex()},
         {"schema_id", schema_id.to_hex_string()},
         {"version", kWalletVersion}};
  return j.dump(2) + "\n";
}

VerifiableCredential VerifiableCredential::parse_wallet_text(
    std::string_view text) {
  json j = parse_object(text, "wallet file", kWalletVersion);
  VerifiableCredential vc;
  vc.schema_id = fr_from_hex(j.at("schema_id"));
  vc.issuer_pubkey = Point::from_hex(j.at("issuer_pubkey").get<std::string>());
  for (const auto& c : j.at("claims")) {
    VerifiableClaim v;
    v.claim.attribute_id = c.at("attribute_id").get<uint32_t>();
    v.claim.subject_id = fr_from_hex(c.at("subject_id"));
    v.claim.value = value_from_json(c.at("value"));
    v.signature = Signature::from_hex(c.at("signature").get<std::string>());
    vc.claims.push_back(std::move(v));
  }
  return vc;
}

std::vector<Fr> claim_message(const Fr& schema_id, const Fr& subject_id,
                              uint32_t attribute_id,
                              const AttributeValue& value) {
  return {schema_id, subject_id, Fr::from_u64(attribute_id),
          crypto::encode_value(value)};
}

VerifiableCredential attest(const std::vector<Claim>& claims,
                            const KeyPair& issuer,
                            const CredentialSchema& schema) {
  if (claims.empty()) throw std::invalid_argument("credential has no claims");
  VerifiableCredential vc{schema.schema_id(), issuer.pub, {}};
  std::set<uint32_t> seen;
  for (const auto& c : claims) {
    const AttributeDef* def = schema.find(c.attribute_id);
    if (!def) {
      throw std::invalid_argument("unknown attribute id " +
                                  std::to_string(c.attribute_id));
    }
    if (def->kind != c.value.kind) {
      throw std::invalid_argument("attribute " + def->name + " expects kind " +
                                  std::string(crypto::kind_name(def->kind)));
    }
    if (c.subject_id != claims.front().subject_id) {
      throw std::invalid_argument("claims refer to different subjects");
    }
    if (!seen.insert(c.attribute_id).second) {
      throw std::invalid_argument("attribute " + def->name + " claimed twice");
    }
    auto msg = claim_message(vc.schema_id, c.subject_id, c.attribute_id, c.value);
    vc.claims.push_back({c, crypto::sign(issuer.secret, msg)});
  }
  return vc;
}

bool verify_vc(const VerifiableCredential& vc, const Point& issuer_pubkey,
               const CredentialSchema& schema) {
  for (const auto& c : vc.claims) {
    if (!schema.find(c.claim.attribute_id)) {
      throw std::invalid_argument("unknown attribute id " +
                                  std::to_string(c.claim.attribute_id));
    }
  }
  const Fr sid = schema.schema_id();
  if (vc.claims.empty() || vc.schema_id != sid ||
      vc.issuer_pubkey != issuer_pubkey) {
    return false;
  }
  std::set<uint32_t> seen;
  for (const auto& c : vc.claims) {
    const AttributeDef* def = schema.find(c.claim.attribute_id);
    if (def->kind != c.claim.value.kind ||
        c.claim.subject_id != vc.claims.front().claim.subject_id ||
        !seen.insert(c.claim.attribute_id).second) {
      return false;
    }
    auto msg = claim_message(sid, c.claim.subject_id, c.claim.attribute_id,
                             c.claim.value);
    if (!crypto::verify_sig(issuer_pubkey, msg, c.signature)) return false;
  }
  return true;
}

}  // namespace devreg::credential
