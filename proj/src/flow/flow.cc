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

#include "devreg/flow/flow.h"

#include <chrono>

#include "devreg/crypto/encoding.h"

namespace devreg::flow {
namespace {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace

Deployment initiate(const ZkSpec& spec, const CredentialSchema& schema,
                    std::span<const Point> issuer_keys, registry::Vdr& vdr,
                    registry::Chain& chain, const InitiateOptions& opts) {
  Deployment d;
  d.scheme = opts.scheme;
  d.spec = spec.normalized();
  Stopwatch compile_clock;
  d.circuit = circuit::compile(d.spec, schema);
  d.compile_s = compile_clock.seconds();

  Stopwatch setup_clock;
  std::tie(d.pk, d.vk) = proofsys::setup(opts.scheme, d.circuit, opts.srs);
  d.setup_s = setup_clock.seconds();

  d.schema_id = vdr.publish(registry::RecordKind::kSchema, schema.canonical_text());
  zkspec::ZkVprMeta meta;
  meta.initiator = opts.initiator;
  meta.created_at = chain.timestamp();
  const auto zkvpr = zkspec::build_zkvpr(d.spec, d.pk.serialize(), d.pk.spec_id,
                                         opts.pk_locator, d.schema_id, opts.scheme, meta);
  d.zkvpr_id = vdr.publish(registry::RecordKind::kZkVpr, zkvpr.to_text());

  registry::RegistrationConfig cfg;
  cfg.vk = d.vk;
  cfg.zkvpr_ref = d.zkvpr_id;
  cfg.allowed_issuer_keys.assign(issuer_keys.begin(), issuer_keys.end());
  cfg.allowed_aux = {circuit::spec_aux(d.spec)};
  cfg.mode = d.spec.key_mode;
  cfg.requires_timestamp = d.spec.has_relative_time();
  d.contract = chain.deploy_registration(cfg, opts.initiator);
  return d;
}

Point attested_device_key(const VerifiableCredential& vc, const ZkSpec& spec) {
  const auto* c = vc.find(spec.device_key_attribute_id);
  if (c == nullptr || c->claim.value.kind != crypto::ValueKind::kPoint) {
    throw std::invalid_argument("credential carries no device key");
  }
  return c->claim.value.point;
}

Presentation present(const registry::Vdr& vdr, std::string_view zkvpr_id,
                     const proofsys::ProvingKey& pk, const VerifiableCredential& vc,
                     const PresentOptions& opts) {
  const auto zkvpr = zkspec::ZkVpr::parse_text(vdr.fetch(zkvpr_id).text());
  if (!zkvpr.proving_key_matches(pk.serialize())) {
    throw registry::IntegrityError("integrity check failed: proving key hash mismatch");
  }
  if (pk.scheme != zkvpr.scheme) {
    throw registry::IntegrityError("integrity check failed: proving key scheme mismatch");
  }
  const auto schema = CredentialSchema::parse(vdr.fetch(zkvpr.cs_ref).text());
  if (schema.schema_id() != zkvpr.spec.schema_ref) {
    throw registry::IntegrityError("integrity check failed: schema does not match the spec");
  }

  Presentation out;
  Stopwatch compile_clock;
  const circuit::Circuit circ = circuit::compile(zkvpr.spec, schema);
  out.compile_s = compile_clock.seconds();
  if (circ.spec_id != pk.spec_id) {
    throw registry::IntegrityError("integrity check failed: proving key is for another spec");
  }

  circuit::PublicInputs pub;
  pub.issuer_pubkey = vc.issuer_pubkey;
  const Point key = attested_device_key(vc, zkvpr.spec);
  if (zkvpr.spec.key_mode == zkspec::KeyMode::kPlain) {
    pub.device_key = key;
  } else {
    if (!opts.commitment_randomness) {
      throw std::invalid_argument("committed key mode needs commitment randomness");
    }
    pub.commitment = circuit::key_commitment(key, *opts.commitment_randomness);
  }
  pub.aux = circuit::spec_aux(zkvpr.spec);
  pub.owner_binding = registry::owner_binding_for(opts.owner);
  if (zkvpr.spec.has_relative_time()) {
    if (!opts.now_ts) throw std::invalid_argument("spec needs a timestamp");
    pub.now_ts = opts.now_ts;
  }

  Stopwatch witness_clock;
  const auto w = circuit::assign(zkvpr.spec, schema, circ, vc, pub, opts.commitment_randomness);
  out.witness_s = witness_clock.seconds();

  Stopwatch prove_clock;
  out.zkvp.proof = proofsys::prove(zkvpr.scheme, circ, w, pk);
  out.prove_s = prove_clock.seconds();

  out.zkvp.issuer_pubkey = pub.issuer_pubkey;
  out.zkvp.device_key = pub.device_key;
  out.zkvp.commitment = pub.commitment;
  out.zkvp.aux = pub.aux;
  out.zkvp.owner_binding = pub.owner_binding;
  out.zkvp.now_ts = pub.now_ts;
  return out;
}

Application deploy_application(registry::Chain& chain, std::string_view registration,
                               SchemeId scheme, const proofsys::UniversalSrs* srs,
                               std::string_view sender) {
  Application app;
  app.scheme = scheme;
  registry::ApplicationConfig cfg;
  cfg.registration = std::string(registration);
  if (chain.registration(registration).mode == zkspec::KeyMode::kCommitted) {
    app.auth_circuit = circuit::compile_auth();
    auto [pk, vk] = proofsys::setup(scheme, *app.auth_circuit, srs);
    app.auth_pk = std::move(pk);
    cfg.auth_vk = std::move(vk);
  }
  app.contract = chain.deploy_application(cfg, sender);
  return app;
}

registry::Receipt authenticate(registry::Chain& chain, const Application& app,
                               std::span<const uint8_t> payload,
                               const crypto::KeyPair& device, const Fr& randomness,
                               std::string_view sender) {
  if (!app.auth_circuit || !app.auth_pk) {
    throw std::invalid_argument("application is not gated on a committed registration");
  }
  const Fr digest = crypto::bytes_digest(payload);
  const auto sig = crypto::sign(device.secret, std::vector{digest});
  const auto w = circuit::assign_auth(*app.auth_circuit, device.pub, randomness, digest, sig);
  const auto proof = proofsys::prove(app.scheme, *app.auth_circuit, w, *app.auth_pk);
  return chain.authenticate_committed(app.contract, proof,
                                      circuit::key_commitment(device.pub, randomness), digest,
                                      sender);
}

}  // namespace devreg::flow
