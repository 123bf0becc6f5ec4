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

#include "devreg/registry/chain.h"

#include <omp.h>

#include <algorithm>
#include <sstream>
#include <variant>

#include "devreg/crypto/encoding.h"
#include "devreg/crypto/poseidon.h"
#include "devreg/util/codec.h"

namespace devreg::registry {
namespace {

constexpr std::string_view kZkVpMagic = "DRVP";
constexpr std::string_view kStateMagic = "DRST";
constexpr std::string_view kExportMagic = "DRCH";
constexpr uint8_t kFormatVersion = 1;

void put_magic(util::ByteWriter& w, std::string_view magic) {
  w.raw(std::span(reinterpret_cast<const uint8_t*>(magic.data()), magic.size()));
  w.u8(kFormatVersion);
}

void expect_magic(util::ByteReader& r, std::string_view magic) {
  auto m = r.raw(magic.size());
  if (!std::equal(m.begin(), m.end(), magic.begin()) || r.u8() != kFormatVersion) {
    throw std::invalid_argument("bad magic or version");
  }
}

void put_point(util::ByteWriter& w, const Point& p) {
  w.field(p.x);
  w.field(p.y);
}

Point get_point(util::ByteReader& r) {
  Point p{r.field<Fr>(), r.field<Fr>()};
  if (!p.is_on_curve()) throw std::invalid_argument("point not on curve");
  return p;
}

std::vector<uint8_t> fields_bytes(std::span<const Fr> fs) {
  util::ByteWriter w;
  for (const Fr& f : fs) w.field(f);
  return w.take();
}

std::vector<uint8_t> entry_key(const Point& p) { return fields_bytes(std::vector{p.x, p.y}); }
std::vector<uint8_t> entry_key(const Fr& c) { return fields_bytes(std::vector{c}); }

void put_registration_config(util::ByteWriter& w, const RegistrationConfig& c) {
  w.bytes(c.vk.serialize());
  w.str(c.zkvpr_ref);
  w.u64(c.allowed_issuer_keys.size());
  for (const Point& k : c.allowed_issuer_keys) put_point(w, k);
  w.u64(c.allowed_aux.size());
  for (const auto& aux : c.allowed_aux) w.fields<Fr>(aux);
  w.u8(static_cast<uint8_t>(c.mode));
  w.u8(c.requires_timestamp ? 1 : 0);
}

RegistrationConfig get_registration_config(util::ByteReader& r) {
  RegistrationConfig c;
  c.vk = proofsys::VerificationKey::deserialize(r.bytes());
  c.zkvpr_ref = r.str();
  for (uint64_t n = r.length(64); n > 0; --n) c.allowed_issuer_keys.push_back(get_point(r));
  for (uint64_t n = r.length(8); n > 0; --n) c.allowed_aux.push_back(r.fields<Fr>());
  const uint8_t mode = r.u8();
  if (mode != static_cast<uint8_t>(KeyMode::kPlain) &&
      mode != static_cast<uint8_t>(KeyMode::kCommitted)) {
    throw std::invalid_argument("unknown key mode");
  }
  c.mode = static_cast<KeyMode>(mode);
  c.requires_timestamp = r.u8() != 0;
  return c;
}

void put_application_config(util::ByteWriter& w, const ApplicationConfig& c) {
  w.str(c.registration);
  w.u8(c.auth_vk ? 1 : 0);
  if (c.auth_vk) w.bytes(c.auth_vk->serialize());
}

ApplicationConfig get_application_config(util::ByteReader& r) {
  ApplicationConfig c;
  c.registration = r.str();
  if (r.u8() != 0) c.auth_vk = proofsys::VerificationKey::deserialize(r.bytes());
  return c;
}

struct SubmitCall {
  std::string address;
  ZkVp zkvp;
};
struct ProvisionCall {
  std::string address;
  std::vector<uint8_t> payload;
  crypto::Signature sig;
  Point device_key;
};
struct AuthCall {
  std::string address;
  proofsys::Proof proof;
  Fr commitment;
  Fr digest;
};
using Call = std::variant<RegistrationConfig, SubmitCall, ApplicationConfig, ProvisionCall, AuthCall>;

Call decode(const Transaction& tx) {
  try {
    util::ByteReader r(tx.body);
    Call call;
    switch (tx.kind) {
      case TxKind::kDeployRegistration:
        call = get_registration_config(r);
        break;
      case TxKind::kSubmitRegistration: {
        SubmitCall c;
        c.address = r.str();
        c.zkvp = ZkVp::deserialize(r.bytes());
        call = std::move(c);
        break;
      }
      case TxKind::kDeployApplication:
        call = get_application_config(r);
        break;
      case TxKind::kProvisionData: {
        ProvisionCall c;
        c.address = r.str();
        auto p = r.bytes();
        c.payload.assign(p.begin(), p.end());
        c.sig = crypto::Signature::from_bytes(r.raw(crypto::kSignatureBytes)
                                                  .first<crypto::kSignatureBytes>());
        c.device_key = get_point(r);
        call = std::move(c);
        break;
      }
      case TxKind::kAuthenticateCommitted: {
        AuthCall c;
        c.address = r.str();
        c.proof = proofsys::Proof::deserialize(r.bytes());
        c.commitment = r.field<Fr>();
        c.digest = r.field<Fr>();
        call = std::move(c);
        break;
      }
      default:
        throw std::invalid_argument("unknown transaction kind");
    }
    r.expect_end();
    return call;
  } catch (const std::invalid_argument& e) {
    throw ChainError(std::string("malformed transaction: ") + e.what());
  }
}

// Verifies on one thread so the counted work, and thus the cost, does not
// depend on the host's core count.
struct Measured {
  bool ok = false;
  uint64_t work = 0;
};

template <class Fn>
Measured measure(Fn&& fn) {
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const uint64_t before = ff::tl_field_mul_count;
  Measured m;
  try {
    m.ok = fn();
  } catch (const proofsys::ProofError&) {
    m.ok = false;
  }
  m.work = ff::tl_field_mul_count - before;
  omp_set_num_threads(saved);
  return m;
}

uint64_t tx_cost(size_t body_bytes, size_t proof_bytes, size_t publics, uint64_t work) {
  return CostModel::kBase + CostModel::kPerCalldataByte * (body_bytes - proof_bytes) +
         CostModel::kPerProofByte * proof_bytes + CostModel::kPerPublicInput * publics +
         work / CostModel::kWorkPerUnit;
}

}  // namespace

std::string_view reason_name(Reason r) {
  switch (r) {
    case Reason::kNone: return "none";
    case Reason::kProofInvalid: return "proof_invalid";
    case Reason::kInputNotAllowed: return "input_not_allowed";
    case Reason::kOwnerMismatch: return "owner_mismatch";
    case Reason::kStaleTimestamp: return "stale_timestamp";
    case Reason::kDuplicateDevice: return "duplicate_device";
    case Reason::kUnregisteredDevice: return "unregistered_device";
    case Reason::kBadSignature: return "bad_signature";
    case Reason::kUnknownCommitment: return "unknown_commitment";
  }
  return "unknown";
}

std::string_view tx_kind_name(TxKind k) {
  switch (k) {
    case TxKind::kDeployRegistration: return "deploy_registration";
    case TxKind::kSubmitRegistration: return "submit_registration";
    case TxKind::kDeployApplication: return "deploy_application";
    case TxKind::kProvisionData: return "provision_data";
    case TxKind::kAuthenticateCommitted: return "authenticate_committed";
  }
  return "unknown";
}

Fr owner_binding_for(std::string_view account) {
  return crypto::hash_fields({crypto::encode_value(crypto::AttributeValue::string(std::string(account)))});
}

circuit::PublicInputs ZkVp::public_inputs() const {
  circuit::PublicInputs p;
  p.issuer_pubkey = issuer_pubkey;
  p.device_key = device_key;
  p.commitment = commitment;
  p.aux = aux;
  p.owner_binding = owner_binding;
  p.now_ts = now_ts;
  return p;
}

std::vector<uint8_t> ZkVp::serialize() const {
  util::ByteWriter w;
  put_magic(w, kZkVpMagic);
  put_point(w, issuer_pubkey);
  w.u8((device_key ? 1 : 0) | (commitment ? 2 : 0) | (now_ts ? 4 : 0));
  if (device_key) put_point(w, *device_key);
  if (commitment) w.field(*commitment);
  w.fields<Fr>(aux);
  w.field(owner_binding);
  if (now_ts) w.u64(*now_ts);
  w.bytes(proof.serialize());
  return w.take();
}

ZkVp ZkVp::deserialize(std::span<const uint8_t> bytes) {
  util::ByteReader r(bytes);
  expect_magic(r, kZkVpMagic);
  ZkVp v;
  v.issuer_pubkey = get_point(r);
  const uint8_t flags = r.u8();
  if (flags & ~7) throw std::invalid_argument("unknown zkVP flags");
  if (flags & 1) v.device_key = get_point(r);
  if (flags & 2) v.commitment = r.field<Fr>();
  v.aux = r.fields<Fr>();
  v.owner_binding = r.field<Fr>();
  if (flags & 4) v.now_ts = r.u64();
  v.proof = proofsys::Proof::deserialize(r.bytes());
  r.expect_end();
  return v;
}

std::string Receipt::to_text() const {
  std::ostringstream os;
  os << "tx=" << tx_index << " height=" << height << " time=" << timestamp
     << " kind=" << tx_kind_name(kind) << " sender=" << sender << " contract=" << contract
     << " status=" << (accepted ? "accepted" : "rejected")
     << " reason=" << reason_name(reason) << " cost=" << cost_units;
  return os.str();
}

uint64_t cost_of(const Receipt& r) { return r.cost_units; }

Chain::Chain(ChainParams params) : params_(params), timestamp_(params.genesis_timestamp) {
  if (params_.block_time == 0) throw ChainError("block time must be positive");
}

const Chain::Registration& Chain::reg(std::string_view address) const {
  auto it = registrations_.find(address);
  if (it == registrations_.end()) {
    throw ChainError("unknown registration contract " + std::string(address));
  }
  return it->second;
}

const Chain::Application& Chain::app(std::string_view address) const {
  auto it = applications_.find(address);
  if (it == applications_.end()) {
    throw ChainError("unknown application contract " + std::string(address));
  }
  return it->second;
}

std::string Chain::next_address() const {
  util::ByteWriter w;
  w.str("devreg.contract");
  w.u64(log_.size());
  return "0x" + crypto::hex_encode(crypto::sha256(w.data())).substr(0, 40);
}

Receipt Chain::apply(Transaction tx) {
  Call call = decode(tx);
  // Preconditions: failing transactions are not mined.
  if (auto* c = std::get_if<RegistrationConfig>(&call)) {
    if (c->vk.bytes.empty()) throw ChainError("empty verification key");
    if (c->allowed_issuer_keys.empty()) throw ChainError("allowed issuer set is empty");
    if (c->allowed_aux.empty()) throw ChainError("allowed aux set is empty");
  } else if (auto* c = std::get_if<SubmitCall>(&call)) {
    reg(c->address);
  } else if (auto* c = std::get_if<ApplicationConfig>(&call)) {
    const auto& r = reg(c->registration);
    const bool committed = r.config.mode == KeyMode::kCommitted;
    if (committed != c->auth_vk.has_value()) {
      throw ChainError(committed ? "committed registrations need an authentication key"
                                 : "plain registrations take no authentication key");
    }
  } else if (auto* c = std::get_if<ProvisionCall>(&call)) {
    if (reg(app(c->address).config.registration).config.mode != KeyMode::kPlain) {
      throw ChainError("provision_data needs a plain-key registration");
    }
  } else if (auto* c = std::get_if<AuthCall>(&call)) {
    app(c->address);
  }

  ++height_;
  timestamp_ += params_.block_time;
  Receipt r;
  r.tx_index = log_.size();
  r.height = height_;
  r.timestamp = timestamp_;
  r.kind = tx.kind;
  r.sender = tx.sender;
  const size_t body_bytes = tx.body.size();
  log_.push_back(std::move(tx));
  const std::string& sender = log_.back().sender;

  std::visit(
      [&](auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, RegistrationConfig>) {
          r.contract = next_address();
          registrations_[r.contract].config = std::move(c);
          r.accepted = true;
          r.cost_units = tx_cost(body_bytes, 0, 0, 0);
        } else if constexpr (std::is_same_v<T, ApplicationConfig>) {
          r.contract = next_address();
          applications_[r.contract].config = std::move(c);
          r.accepted = true;
          r.cost_units = tx_cost(body_bytes, 0, 0, 0);
        } else if constexpr (std::is_same_v<T, SubmitCall>) {
          r.contract = c.address;
          auto& contract = registrations_.find(c.address)->second;
          const auto& cfg = contract.config;
          const ZkVp& vp = c.zkvp;
          const auto pub = vp.public_inputs().flatten();
          const bool plain = cfg.mode == KeyMode::kPlain;
          const bool shape_ok = (plain ? vp.device_key && !vp.commitment
                                       : vp.commitment && !vp.device_key) &&
                                vp.now_ts.has_value() == cfg.requires_timestamp;
          const auto key = !shape_ok ? std::vector<uint8_t>()
                           : plain   ? entry_key(*vp.device_key)
                                     : entry_key(*vp.commitment);
          Measured m;
          if (!shape_ok ||
              std::find(cfg.allowed_issuer_keys.begin(), cfg.allowed_issuer_keys.end(),
                        vp.issuer_pubkey) == cfg.allowed_issuer_keys.end() ||
              std::find(cfg.allowed_aux.begin(), cfg.allowed_aux.end(), vp.aux) ==
                  cfg.allowed_aux.end()) {
            r.reason = Reason::kInputNotAllowed;
          } else if (vp.owner_binding != owner_binding_for(sender)) {
            r.reason = Reason::kOwnerMismatch;
          } else if (vp.now_ts && (*vp.now_ts + params_.block_time < timestamp_ ||
                                   *vp.now_ts > timestamp_ + params_.block_time)) {
            r.reason = Reason::kStaleTimestamp;
          } else if (contract.registry.contains(key)) {
            r.reason = Reason::kDuplicateDevice;
          } else {
            m = measure([&] { return proofsys::verify(vp.proof.scheme, vp.proof, pub, cfg.vk); });
            if (m.ok) {
              RegistryEntry e;
              e.device = plain ? std::vector<Fr>{vp.device_key->x, vp.device_key->y}
                               : std::vector<Fr>{*vp.commitment};
              e.owner_binding = vp.owner_binding;
              e.tx_index = r.tx_index;
              contract.registry.emplace(key, std::move(e));
              r.accepted = true;
            } else {
              r.reason = Reason::kProofInvalid;
            }
          }
          r.verify_work = m.work;
          r.cost_units = tx_cost(body_bytes, vp.proof.bytes.size(), pub.size(), m.work);
        } else if constexpr (std::is_same_v<T, ProvisionCall>) {
          r.contract = c.address;
          auto& application = applications_.find(c.address)->second;
          const auto& contract = registrations_.find(application.config.registration)->second;
          const auto key = entry_key(c.device_key);
          const Fr digest = crypto::bytes_digest(c.payload);
          Measured m;
          if (!contract.registry.contains(key)) {
            r.reason = Reason::kUnregisteredDevice;
          } else {
            m = measure([&] { return crypto::verify_sig(c.device_key, std::vector{digest}, c.sig); });
            if (m.ok) {
              application.provisioned.emplace_back(key, digest);
              r.accepted = true;
            } else {
              r.reason = Reason::kBadSignature;
            }
          }
          r.verify_work = m.work;
          r.cost_units = tx_cost(body_bytes, 0, 0, m.work);
        } else if constexpr (std::is_same_v<T, AuthCall>) {
          r.contract = c.address;
          auto& application = applications_.find(c.address)->second;
          const auto& contract = registrations_.find(application.config.registration)->second;
          const auto key = entry_key(c.commitment);
          const std::vector<Fr> pub{c.commitment, c.digest};
          Measured m;
          if (!contract.registry.contains(key)) {
            r.reason = Reason::kUnknownCommitment;
          } else {
            const auto& vk = *application.config.auth_vk;
            m = measure([&] { return proofsys::verify(c.proof.scheme, c.proof, pub, vk); });
            if (m.ok) {
              application.provisioned.emplace_back(key, c.digest);
              r.accepted = true;
            } else {
              r.reason = Reason::kProofInvalid;
            }
          }
          r.verify_work = m.work;
          r.cost_units = tx_cost(body_bytes, c.proof.bytes.size(), pub.size(), m.work);
        }
      },
      call);
  receipts_.push_back(r);
  return r;
}

std::string Chain::deploy_registration(const RegistrationConfig& config,
                                       std::string_view sender) {
  util::ByteWriter w;
  put_registration_config(w, config);
  return apply({TxKind::kDeployRegistration, std::string(sender), w.take()}).contract;
}

Receipt Chain::submit_registration(std::string_view address, const ZkVp& zkvp,
                                   std::string_view sender) {
  util::ByteWriter w;
  w.str(address);
  w.bytes(zkvp.serialize());
  return apply({TxKind::kSubmitRegistration, std::string(sender), w.take()});
}

std::string Chain::deploy_application(const ApplicationConfig& config,
                                      std::string_view sender) {
  util::ByteWriter w;
  put_application_config(w, config);
  return apply({TxKind::kDeployApplication, std::string(sender), w.take()}).contract;
}

Receipt Chain::provision_data(std::string_view app, std::span<const uint8_t> payload,
                              const crypto::Signature& device_sig, const Point& device_key,
                              std::string_view sender) {
  util::ByteWriter w;
  w.str(app);
  w.bytes(payload);
  w.raw(device_sig.to_bytes());
  put_point(w, device_key);
  return apply({TxKind::kProvisionData, std::string(sender), w.take()});
}

Receipt Chain::authenticate_committed(std::string_view app, const proofsys::Proof& proof,
                                      const Fr& commitment, const Fr& payload_digest,
                                      std::string_view sender) {
  util::ByteWriter w;
  w.str(app);
  w.bytes(proof.serialize());
  w.field(commitment);
  w.field(payload_digest);
  return apply({TxKind::kAuthenticateCommitted, std::string(sender), w.take()});
}

bool Chain::is_registered(std::string_view address, const Point& device_key) const {
  return reg(address).registry.contains(entry_key(device_key));
}

bool Chain::is_registered(std::string_view address, const Fr& commitment) const {
  return reg(address).registry.contains(entry_key(commitment));
}

std::vector<RegistryEntry> Chain::entries(std::string_view address) const {
  std::vector<RegistryEntry> out;
  for (const auto& [_, e] : reg(address).registry) out.push_back(e);
  return out;
}

const RegistrationConfig& Chain::registration(std::string_view address) const {
  return reg(address).config;
}

std::vector<uint8_t> Chain::state_bytes() const {
  util::ByteWriter w;
  put_magic(w, kStateMagic);
  w.u64(params_.block_time);
  w.u64(params_.genesis_timestamp);
  w.u64(height_);
  w.u64(timestamp_);
  w.u64(registrations_.size());
  for (const auto& [addr, r] : registrations_) {
    w.str(addr);
    put_registration_config(w, r.config);
    w.u64(r.registry.size());
    for (const auto& [key, e] : r.registry) {
      w.bytes(key);
      w.field(e.owner_binding);
      w.u64(e.tx_index);
    }
  }
  w.u64(applications_.size());
  for (const auto& [addr, a] : applications_) {
    w.str(addr);
    put_application_config(w, a.config);
    w.u64(a.provisioned.size());
    for (const auto& [key, digest] : a.provisioned) {
      w.bytes(key);
      w.field(digest);
    }
  }
  w.u64(receipts_.size());
  for (const Receipt& r : receipts_) {
    w.u64(r.tx_index);
    w.u64(r.height);
    w.u64(r.timestamp);
    w.u8(static_cast<uint8_t>(r.kind));
    w.str(r.sender);
    w.str(r.contract);
    w.u8(r.accepted ? 1 : 0);
    w.u8(static_cast<uint8_t>(r.reason));
    w.u64(r.cost_units);
    w.u64(r.verify_work);
  }
  return w.take();
}

crypto::Digest32 Chain::state_hash() const { return crypto::sha256(state_bytes()); }

std::vector<uint8_t> Chain::export_bytes() const {
  util::ByteWriter w;
  put_magic(w, kExportMagic);
  w.u64(params_.block_time);
  w.u64(params_.genesis_timestamp);
  w.u64(log_.size());
  for (const Transaction& tx : log_) {
    w.u8(static_cast<uint8_t>(tx.kind));
    w.str(tx.sender);
    w.bytes(tx.body);
  }
  w.raw(state_hash());
  return w.take();
}

Chain Chain::replay(const ChainParams& params, std::span<const Transaction> log) {
  Chain chain(params);
  for (const Transaction& tx : log) chain.apply(tx);
  return chain;
}

Chain Chain::import_bytes(std::span<const uint8_t> bytes) {
  ChainParams params;
  std::vector<Transaction> log;
  crypto::Digest32 recorded;
  try {
    util::ByteReader r(bytes);
    expect_magic(r, kExportMagic);
    params.block_time = r.u64();
    params.genesis_timestamp = r.u64();
    for (uint64_t n = r.length(17); n > 0; --n) {
      Transaction tx;
      tx.kind = static_cast<TxKind>(r.u8());
      tx.sender = r.str();
      auto body = r.bytes();
      tx.body.assign(body.begin(), body.end());
      log.push_back(std::move(tx));
    }
    auto h = r.raw(32);
    std::copy(h.begin(), h.end(), recorded.begin());
    r.expect_end();
  } catch (const std::invalid_argument& e) {
    throw ChainError(std::string("malformed chain file: ") + e.what());
  }
  Chain chain = replay(params, log);
  if (chain.state_hash() != recorded) throw ChainError("replayed state hash differs");
  return chain;
}

}  // namespace devreg::registry
