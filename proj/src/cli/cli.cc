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

#include "devreg/cli/cli.h"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>

#include "devreg/circuit/circuit.h"
#include "devreg/cli/bench.h"
#include "devreg/credential/credential.h"
#include "devreg/flow/flow.h"
#include "devreg/proofsys/common.h"
#include "devreg/proofsys/proofsys.h"
#include "devreg/registry/chain.h"
#include "devreg/registry/vdr.h"
#include "devreg/scenario/scenario.h"

namespace devreg::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using crypto::Fr;
using crypto::Point;
using proofsys::SchemeId;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class Rejected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<uint8_t> read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw UsageError("cannot read " + p.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string read_text(const fs::path& p) {
  auto b = read_bytes(p);
  return {b.begin(), b.end()};
}

void write_bytes(const fs::path& p, std::span<const uint8_t> data) {
  fs::create_directories(p.parent_path());
  const fs::path tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out) throw UsageError("cannot write " + p.string());
  }
  fs::rename(tmp, p);
}

void write_text(const fs::path& p, std::string_view text) {
  write_bytes(p, std::span(reinterpret_cast<const uint8_t*>(text.data()), text.size()));
}

void check_name(std::string_view name) {
  const bool ok = !name.empty() && name.front() != '.' &&
                  std::all_of(name.begin(), name.end(), [](char c) {
                    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' ||
                           c == '.';
                  });
  if (!ok) throw UsageError("bad name '" + std::string(name) + "': use [A-Za-z0-9._-]");
}

class Workspace {
 public:
  static constexpr const char* kDirs[] = {"keys", "wallet", "vdr", "chain", "artifacts"};

  explicit Workspace(const std::string& root) : root_(fs::absolute(root).lexically_normal()) {}

  const fs::path& root() const { return root_; }

  // Resolves a workspace-relative path; nothing may escape the root.
  fs::path at(std::string_view rel) const {
    const fs::path r(rel);
    const fs::path p = (root_ / r).lexically_normal();
    auto [a, b] = std::mismatch(root_.begin(), root_.end(), p.begin(), p.end());
    if (r.is_absolute() || a != root_.end() || b == p.end()) {
      throw UsageError("path escapes the workspace: " + std::string(rel));
    }
    return p;
  }

  void require() const {
    for (const char* d : kDirs) {
      if (!fs::is_directory(root_ / d)) {
        throw UsageError("workspace not initialized at " + root_.string() +
                         "; run `devreg workspace init`");
      }
    }
  }

  registry::Vdr vdr() const { return registry::Vdr(root_ / "vdr"); }

  registry::Chain chain() const {
    const fs::path p = root_ / "chain" / "chain.bin";
    if (!fs::exists(p)) return registry::Chain();
    try {
      return registry::Chain::import_bytes(read_bytes(p));
    } catch (const registry::ChainError& e) {
      throw Rejected(std::string("chain state rejected: ") + e.what());
    }
  }

  void save(const registry::Chain& c) const {
    write_bytes(root_ / "chain" / "chain.bin", c.export_bytes());
  }

 private:
  fs::path root_;
};

struct Globals {
  std::string workspace = "workspace";
  std::string seed_hex;
  std::optional<std::vector<uint8_t>> seed;
};

std::array<uint8_t, 32> derive_seed(const Globals& g, std::string_view label) {
  std::array<uint8_t, 32> out{};
  if (g.seed) {
    std::vector<uint8_t> buf = *g.seed;
    buf.insert(buf.end(), label.begin(), label.end());
    out = crypto::sha256(buf);
  } else {
    proofsys::random_bytes(out);
  }
  return out;
}

crypto::KeyPair load_keypair(const Workspace& ws, std::string_view name) {
  check_name(name);
  try {
    return crypto::read_key_file(read_text(ws.at("keys/" + std::string(name) + ".key")));
  } catch (const std::invalid_argument& e) {
    throw UsageError("bad key file for " + std::string(name) + ": " + e.what());
  }
}

Point load_public_key(const Workspace& ws, std::string_view name) {
  check_name(name);
  try {
    return crypto::read_public_key_file(read_text(ws.at("keys/" + std::string(name) + ".pub")));
  } catch (const std::invalid_argument& e) {
    throw UsageError("bad public key file for " + std::string(name) + ": " + e.what());
  }
}

credential::CredentialSchema fetch_schema(const registry::Vdr& vdr, std::string_view id) {
  try {
    return credential::CredentialSchema::parse(vdr.fetch(id).text());
  } catch (const std::out_of_range&) {
    throw UsageError("unknown schema record " + std::string(id));
  }
}

// Finds the published schema whose id the spec text references.
credential::CredentialSchema schema_for_spec(const registry::Vdr& vdr, const json& spec) {
  if (!spec.contains("schema")) throw UsageError("spec has no schema reference; pass --schema");
  const Fr want = Fr::parse("0x" + spec.at("schema").get<std::string>());
  for (const auto& id : vdr.ids()) {
    auto rec = vdr.fetch(id);
    if (rec.kind != registry::RecordKind::kSchema) continue;
    auto s = credential::CredentialSchema::parse(rec.text());
    if (s.schema_id() == want) return s;
  }
  throw UsageError("the spec's schema is not published in the VDR");
}

proofsys::UniversalSrs load_srs(const Workspace& ws, std::string_view rel) {
  try {
    return proofsys::UniversalSrs::deserialize(read_bytes(ws.at(rel)));
  } catch (const std::invalid_argument& e) {
    throw UsageError("bad SRS file " + std::string(rel) + ": " + e.what());
  }
}

std::string hex_of(const Fr& f) {
  uint8_t b[32];
  f.to_bytes(std::span<uint8_t, 32>(b, 32));
  return crypto::hex_encode(b);
}

Fr fr_from_hex(std::string_view text) {
  auto b = crypto::hex_decode(text);
  if (b.size() != 32) throw UsageError("expected 64 hex digits");
  return Fr::from_bytes(std::span<const uint8_t, 32>(b.data(), 32));
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// ---- commands ------------------------------------------------------------

int cmd_workspace_init(const Globals& g, bool examples, std::ostream& out) {
  Workspace ws(g.workspace);
  for (const char* d : Workspace::kDirs) fs::create_directories(ws.root() / d);
  ws.vdr();
  if (!fs::exists(ws.root() / "chain" / "chain.bin")) ws.save(registry::Chain());
  out << "workspace " << ws.root().string() << "\n";
  if (examples) {
    const auto schema = scenario::device_schema();
    const fs::path t = ws.root() / "artifacts" / "templates";
    write_text(t / "schema.json", schema.canonical_text());
    for (auto c : scenario::kAllConditions) {
      for (auto mode : {zkspec::KeyMode::kPlain, zkspec::KeyMode::kCommitted}) {
        const std::string name = std::string(scenario::condition_kind_name(c)) +
                                 (mode == zkspec::KeyMode::kPlain ? "" : "-committed");
        write_text(t / ("spec-" + name + ".json"),
                   zkspec::to_text(scenario::condition_spec(c, schema, mode), schema));
      }
    }
    const scenario::DeviceProfile p;
    json claims{{"subject", "1001"},
                {"claims",
                 {{"device_key", "key:device"},
                  {"firmware", std::to_string(p.firmware)},
                  {"postcode", p.postcode},
                  {"measurement_type", p.measurement},
                  {"manufactured", crypto::format_value(crypto::AttributeValue::date(p.manufactured))}}}};
    write_text(t / "claims-device.json", claims.dump(2) + "\n");
    out << "templates " << t.string() << "\n";
  }
  return kExitOk;
}

int cmd_keygen(const Globals& g, const std::string& name, bool force, std::ostream& out) {
  Workspace ws(g.workspace);
  ws.require();
  check_name(name);
  const fs::path key = ws.at("keys/" + name + ".key");
  if (fs::exists(key) && !force) throw UsageError("key " + name + " exists; pass --force");
  const auto kp = crypto::keygen(derive_seed(g, "key:" + name));
  write_text(key, crypto::write_key_file(kp));
  fs::permissions(key, fs::perms::owner_read | fs::perms::owner_write);
  write_text(ws.at("keys/" + name + ".pub"), crypto::write_public_key_file(kp.pub));
  const auto pub = kp.pub.to_bytes();
  out << "key " << name << " " << crypto::hex_encode(pub) << "\n";
  return kExitOk;
}

int cmd_publish_schema(const Globals& g, const std::string& file, std::ostream& out) {
  Workspace ws(g.workspace);
  ws.require();
  credential::CredentialSchema schema;
  try {
    schema = credential::CredentialSchema::parse(read_text(file));
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("bad schema: ") + e.what());
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad schema: ") + e.what());
  }
  auto vdr = ws.vdr();
  out << "schema " << vdr.publish(registry::RecordKind::kSchema, schema.canonical_text()) << "\n";
  out << "schema_id " << hex_of(schema.schema_id()) << "\n";
  return kExitOk;
}

int cmd_attest(const Globals& g, const std::string& issuer, const std::string& schema_id,
               const std::string& claims_file, const std::string& out_name, std::ostream& out) {
  Workspace ws(g.workspace);
  ws.require();
  check_name(out_name);
  const auto kp = load_keypair(ws, issuer);
  const auto schema = fetch_schema(ws.vdr(), schema_id);
  json j;
  try {
    j = json::parse(read_text(claims_file));
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad claims file: ") + e.what());
  }
  if (!j.contains("subject") || !j.contains("claims") || !j["claims"].is_object()) {
    throw UsageError("claims file needs \"subject\" and a \"claims\" object");
  }
  const Fr subject = Fr::parse(j["subject"].get<std::string>());
  std::vector<credential::Claim> claims;
  for (const auto& [name, v] : j["claims"].items()) {
    const auto* def = schema.find(std::string_view(name));
    if (!def) throw Rejected("attribute " + name + ": not in schema " + schema.name);
    if (!v.is_string()) throw Rejected("attribute " + name + ": value must be a string");
    const std::string text = v.get<std::string>();
    crypto::AttributeValue value;
    try {
      if (def->kind == crypto::ValueKind::kPoint && text.rfind("key:", 0) == 0) {
        value = crypto::AttributeValue::point_value(load_public_key(ws, text.substr(4)));
      } else {
        value = crypto::parse_value(def->kind, text);
      }
    } catch (const std::invalid_argument& e) {
      throw Rejected("attribute " + name + ": not a valid " +
                     std::string(crypto::kind_name(def->kind)) + " (" + e.what() + ")");
    }
    claims.push_back({subject, def->id, value});
  }
  credential::VerifiableCredential vc;
  try {
    vc = credential::attest(claims, kp, schema);
  } catch (const std::invalid_argument& e) {
    throw Rejected(e.what());
  }
  const fs::path dest = ws.at("wallet/" + out_name + ".vc");
  write_text(dest, vc.to_wallet_text());
  out << "credential " << dest.string() << " claims=" << vc.claims.size() << "\n";
  return kExitOk;
}

int cmd_universal_setup(const Globals& g, uint64_t max_constraints, const std::string& entropy,
                        const std::string& out_name, std::ostream& out) {
  Workspace ws(g.workspace);
  ws.require();
  check_name(out_name);
  std::vector<uint8_t> ent(entropy.begin(), entropy.end());
  proofsys::UniversalSrs srs;
  try {
    srs = proofsys::universal_setup(max_constraints, ent);
  } catch (const proofsys::ProofError& e) {
    throw UsageError(e.what());
  }
  const std::string rel = "artifacts/" + out_name + ".srs";
  const auto bytes = srs.serialize();
  write_bytes(ws.at(rel), bytes);
  out << "srs " << rel << " max_constraints=" << max_constraints << " bytes=" << bytes.size()
      << " entropy_commitment=" << crypto::hex_encode(srs.entropy_commitment) << "\n";
  return kExitOk;
}

int cmd_setup(const Globals& g, const std::string& spec_file, const std::string& scheme_name,
              const std::string& srs_path, const std::vector<std::string>& issuers,
              const std::string& schema_id, const std::string& account, std::ostream& out) {
  Workspace ws(g.workspace);
  ws.require();
  SchemeId scheme;
  try {
    scheme = proofsys::parse_scheme(scheme_name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  auto vdr = ws.vdr();
  const std::string text = read_text(spec_file);
  json sj = json::parse(text, nullptr, false);
  if (sj.is_discarded()) throw UsageError("spec file is not JSON");
  const auto schema = schema_id.empty() ? schema_for_spec(vdr, sj) : fetch_schema(vdr, schema_id);
  zkspec::ZkSpec spec;
  try {
    spec = zkspec::parse_text(text, schema);
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad spec: ") + e.what());
  }
  if (auto findings = zkspec::validate_spec(spec, schema); !findings.empty()) {
    std::string msg = "spec does not validate:";
    for (const auto& f : findings) msg += "\n  " + f.code + ": " + f.message;
    throw UsageError(msg);
  }
  std::optional<proofsys::UniversalSrs> srs;
  if (!srs_path.empty()) srs = load_srs(ws, srs_path);
  if (scheme == SchemeId::kUniversalSetup && !srs) {
    throw UsageError("SRS required: run `devreg init universal-setup` and pass --srs");
  }
  std::vector<Point> keys;
  for (const auto& name : issuers) keys.push_back(load_public_key(ws, name));

  auto chain = ws.chain();
  const std::string dir = "artifacts/deploy-" + std::to_string(chain.height() + 1);
  flow::InitiateOptions io;
  io.scheme = scheme;
  io.srs = srs ? &*srs : nullptr;
  io.initiator = account;
  io.pk_locator = dir + "/pk.bin";
  flow::Deployment d;
  try {
    d = flow::initiate(spec, schema, keys, vdr, chain, io);
  } catch (const proofsys::ProofError& e) {
    throw UsageError(e.what());
  } catch (const registry::ChainError& e) {
    throw UsageError(e.what());
  }
  write_bytes(ws.at(dir + "/pk.bin"), d.pk.serialize());
  write_bytes(ws.at(dir + "/vk.bin"), d.vk.serialize());
  json manifest{{"contract", d.contract},
                {"zkvpr", d.zkvpr_id},
                {"schema", d.schema_id},
                {"scheme", proofsys::scheme_name(scheme)},
                {"constraints", d.circuit.constraint_count()},
                {"pk", dir + "/pk.bin"},
                {"vk", dir + "/vk.bin"},
                {"layout", json::parse(d.circuit.manifest())}};
  write_text(ws.at(dir + "/deployment.json"), manifest.dump(2) + "\n");
  ws.save(chain);
  out << "contract " << d.contract << "\n"
      << "zkvpr " << d.zkvpr_id << "\n"
      << "constraints " << d.circuit.constraint_count() << "\n"
      << "pk " << dir << "/pk.bin bytes=" << d.pk.serialize().size() << "\n"
      << "vk " << dir << "/vk.bin bytes=" << d.vk.serialize().size() << "\n"
      << "setup_s " << d.setup_s << "\n";
  return kExitOk;
}

int cmd_prove(const Globals& g, const std::string& zkvpr_id, const std::string& cred,
              const std::string& account, const std::string& out_name,
              const std::string& randomness_hex, std::ostream& out) {
  Workspace ws(g.workspace);
  ws.require();
  check_name(cred);
  check_name(out_name);
  const auto vdr = ws.vdr();
  zkspec::ZkVpr zkvpr;
  try {
    zkvpr = zkspec::ZkVpr::parse_text(vdr.fetch(zkvpr_id).text());
  } catch (const std::out_of_range&) {
    throw UsageError("unknown zkVPR " + zkvpr_id);
  } catch (const registry::IntegrityError& e) {
    throw Rejected(e.what());
  }
  // Hash the raw file before parsing anything out of it.
  const auto pk_bytes = read_bytes(ws.at(zkvpr.proving_key.locator));
  if (!zkvpr.proving_key_matches(pk_bytes)) {
    throw Rejected("integrity check failed: proving key hash mismatch");
  }
  const auto pk = proofsys::ProvingKey::deserialize(pk_bytes);
  credential::VerifiableCredential vc;
  try {
    vc = credential::VerifiableCredential::parse_wallet_text(
        read_text(ws.at("wallet/" + cred + ".vc")));
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("bad credential: ") + e.what());
  }

  flow::PresentOptions po;
  po.owner = account;
  const auto chain = ws.chain();
  if (zkvpr.spec.has_relative_time()) po.now_ts = chain.next_timestamp();
  if (zkvpr.spec.key_mode == zkspec::KeyMode::kCommitted) {
    po.commitment_randomness =
        randomness_hex.empty() ? proofsys::random_fr() : fr_from_hex(randomness_hex);
    write_text(ws.at("wallet/" + out_name + ".rand"), hex_of(*po.commitment_randomness) + "\n");
  }
  flow::Presentation p;
  try {
    p = flow::present(vdr, zkvpr_id, pk, vc, po);
  } catch (const circuit::AssignError& e) {
    throw Rejected(e.what());
  } catch (const registry::IntegrityError& e) {
    throw Rejected(e.what());
  }
  const std::string rel = "wallet/" + out_name + ".zkvp";
  write_bytes(ws.at(rel), p.zkvp.serialize());
  out << "zkvp " << rel << " proof_bytes=" << p.zkvp.proof.serialize().size()
      << " witness_s=" << p.witness_s << " prove_s=" << p.prove_s << "\n";
  if (p.zkvp.commitment) out << "commitment " << hex_of(*p.zkvp.commitment) << "\n";
  return kExitOk;
}

int cmd_register(const Globals& g, const std::string& contract, const std::string& zkvp_name,
                 const std::string& account, std::ostream& out) {
  Workspace ws(g.workspace);
  ws.require();
  check_name(zkvp_name);
  registry::ZkVp vp;
  try {
    vp = registry::ZkVp::deserialize(read_bytes(ws.at("wallet/" + zkvp_name + ".zkvp")));
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("bad zkVP file: ") + e.what());
  }
  auto chain = ws.chain();
  registry::Receipt r;
  try {
    r = chain.submit_registration(contract, vp, account);
  } catch (const registry::ChainError& e) {
    throw UsageError(e.what());
  }
  ws.save(chain);
  out << r.to_text() << "\n";
  return r.accepted ? kExitOk : kExitRejected;
}

int cmd_chain_status(const Globals& g, std::ostream& out) {
  Workspace ws(g.workspace);
  ws.require();
  const auto chain = ws.chain();
  out << "height " << chain.height() << "\n"
      << "timestamp " << chain.timestamp() << "\n"
      << "transactions " << chain.log().size() << "\n"
      << "state_hash " << crypto::hex_encode(chain.state_hash()) << "\n";
  return kExitOk;
}

int cmd_chain_receipts(const Globals& g, std::ostream& out) {
  Workspace ws(g.workspace);
  ws.require();
  for (const auto& r : ws.chain().receipts()) out << r.to_text() << "\n";
  return kExitOk;
}

int cmd_is_registered(const Globals& g, const std::string& contract, const std::string& key,
                      const std::string& commitment, std::ostream& out) {
  Workspace ws(g.workspace);
  ws.require();
  if (key.empty() == commitment.empty()) {
    throw UsageError("pass exactly one of --key and --commitment");
  }
  const auto chain = ws.chain();
  bool yes;
  try {
    yes = key.empty() ? chain.is_registered(contract, fr_from_hex(commitment))
                      : chain.is_registered(contract, load_public_key(ws, key));
  } catch (const registry::ChainError& e) {
    throw UsageError(e.what());
  }
  out << (yes ? "true" : "false") << "\n";
  return yes ? kExitOk : kExitRejected;
}

int cmd_replay(const Globals& g, std::ostream& out) {
  Workspace ws(g.workspace);
  ws.require();
  const auto chain = ws.chain();  // import replays and checks the hash
  out << "replay ok transactions=" << chain.log().size()
      << " state_hash=" << crypto::hex_encode(chain.state_hash()) << "\n";
  return kExitOk;
}

int cmd_app_deploy(const Globals& g, const std::string& registration,
                   const std::string& scheme_name, const std::string& srs_path,
                   const std::string& account, std::ostream& out) {
  Workspace ws(g.workspace);
  ws.require();
  SchemeId scheme;
  try {
    scheme = proofsys::parse_scheme(scheme_name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::optional<proofsys::UniversalSrs> srs;
  if (!srs_path.empty()) srs = load_srs(ws, srs_path);
  auto chain = ws.chain();
  const std::string dir = "artifacts/app-" + std::to_string(chain.height() + 1);
  flow::Application app;
  try {
    app = flow::deploy_application(chain, registration, scheme, srs ? &*srs : nullptr, account);
  } catch (const registry::ChainError& e) {
    throw UsageError(e.what());
  } catch (const proofsys::ProofError& e) {
    throw UsageError(e.what());
  }
  json manifest{{"contract", app.contract},
                {"registration", registration},
                {"scheme", proofsys::scheme_name(scheme)}};
  if (app.auth_pk) {
    write_bytes(ws.at(dir + "/auth_pk.bin"), app.auth_pk->serialize());
    manifest["auth_pk"] = dir + "/auth_pk.bin";
  }
  write_text(ws.at("artifacts/apps/" + app.contract + ".json"), manifest.dump(2) + "\n");
  ws.save(chain);
  out << "application " << app.contract << "\n";
  return kExitOk;
}

int cmd_provision(const Globals& g, const std::string& app, const std::string& key,
                  const std::string& payload, const std::string& rand_name,
                  const std::string& account, std::ostream& out) {
  Workspace ws(g.workspace);
  ws.require();
  check_name(app);
  const auto device = load_keypair(ws, key);
  const std::vector<uint8_t> data(payload.begin(), payload.end());
  auto chain = ws.chain();
  registry::Receipt r;
  try {
    if (rand_name.empty()) {
      const auto sig = crypto::sign(device.secret, std::vector{crypto::bytes_digest(data)});
      r = chain.provision_data(app, data, sig, device.pub, account);
    } else {
      check_name(rand_name);
      const json m = json::parse(read_text(ws.at("artifacts/apps/" + app + ".json")));
      if (!m.contains("auth_pk")) throw UsageError("application is not committed-mode");
      flow::Application a;
      a.contract = app;
      a.scheme = proofsys::parse_scheme(m.at("scheme").get<std::string>());
      a.auth_circuit = circuit::compile_auth();
      a.auth_pk = proofsys::ProvingKey::deserialize(
          read_bytes(ws.at(m.at("auth_pk").get<std::string>())));
      std::string rand_hex = read_text(ws.at("wallet/" + rand_name + ".rand"));
      rand_hex.erase(std::remove_if(rand_hex.begin(), rand_hex.end(), ::isspace), rand_hex.end());
      r = flow::authenticate(chain, a, data, device, fr_from_hex(rand_hex), account);
    }
  } catch (const registry::ChainError& e) {
    throw UsageError(e.what());
  }
  ws.save(chain);
  out << r.to_text() << "\n";
  return r.accepted ? kExitOk : kExitRejected;
}

int cmd_bench(const Globals& g, const std::string& schemes, const std::string& conditions,
              int repeat, bool check, uint64_t max_constraints, const std::string& out_name,
              std::ostream& out, std::ostream& err) {
  Workspace ws(g.workspace);
  ws.require();
  check_name(out_name);
  BenchOptions opts;
  try {
    opts.schemes.clear();
    for (const auto& s : split_csv(schemes)) opts.schemes.push_back(proofsys::parse_scheme(s));
    opts.conditions.clear();
    for (const auto& c : split_csv(conditions)) {
      opts.conditions.push_back(scenario::parse_condition_kind(c));
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (opts.schemes.empty() || opts.conditions.empty() || repeat < 1) {
    throw UsageError("need at least one scheme, one condition and --repeat >= 1");
  }
  opts.repeat = repeat;
  opts.max_constraints = max_constraints;
  opts.seed = g.seed;
  BenchReport report;
  try {
    report = run_bench(opts, &err);
  } catch (const std::runtime_error& e) {
    throw Rejected(e.what());
  }
  const std::string rel = "artifacts/" + out_name + ".json";
  write_text(ws.at(rel), report.to_json());
  out << report.to_table() << "report " << rel << "\n";
  if (!check) return kExitOk;
  const auto violations = check_report(report);
  for (const auto& v : violations) out << "CHECK FAIL " << v << "\n";
  if (violations.empty()) out << "CHECK PASS\n";
  return violations.empty() ? kExitOk : kExitRejected;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"devreg: credential-based device registration with zero-knowledge proofs"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("-w,--workspace", g.workspace, "workspace root")
      ->envname(kWorkspaceEnv)
      ->capture_default_str();
  app.add_option("--seed", g.seed_hex, "hex seed; makes keys, setups and proofs reproducible");

  std::function<int()> action;
  // Each option binds its own variable; CLI11 applies defaults eagerly.
  std::string name, file, issuer, schema, claims, out_name, srs_out, bench_out, scheme, srs,
      entropy, spec, zkvpr, cred, account, setup_account, app_account, contract, key,
      commitment, randomness, payload, schemes = "per-circuit,universal",
      conditions = "range,membership,equality";
  std::vector<std::string> issuers;
  bool force = false, examples = false, check = false;
  uint64_t max_constraints = 65536;
  int repeat = 1;

  auto* wsc = app.add_subcommand("workspace", "workspace management");
  wsc->require_subcommand(1);
  auto* wsinit = wsc->add_subcommand("init", "create the workspace layout");
  wsinit->add_flag("--examples", examples, "write schema, spec and claims templates");
  wsinit->callback([&] { action = [&] { return cmd_workspace_init(g, examples, out); }; });

  auto* isc = app.add_subcommand("issuer", "issuer persona");
  isc->require_subcommand(1);
  auto* ikey = isc->add_subcommand("keygen", "generate an issuer key pair");
  ikey->add_option("--name", name, "key name")->required();
  ikey->add_flag("--force", force, "overwrite an existing key");
  ikey->callback([&] { action = [&] { return cmd_keygen(g, name, force, out); }; });
  auto* ipub = isc->add_subcommand("publish-schema", "publish a credential schema to the VDR");
  ipub->add_option("--schema", file, "schema JSON file")->required();
  ipub->callback([&] { action = [&] { return cmd_publish_schema(g, file, out); }; });
  auto* iatt = isc->add_subcommand("attest", "sign claims into a wallet credential");
  iatt->add_option("--issuer", issuer, "issuer key name")->required();
  iatt->add_option("--schema", schema, "schema VDR record id")->required();
  iatt->add_option("--claims", claims, "claims JSON file")->required();
  iatt->add_option("--out", out_name, "wallet credential name")->required();
  iatt->callback([&] {
    action = [&] { return cmd_attest(g, issuer, schema, claims, out_name, out); };
  });

  auto* inc = app.add_subcommand("init", "initiator persona");
  inc->require_subcommand(1);
  auto* iuni = inc->add_subcommand("universal-setup", "generate a universal SRS");
  iuni->add_option("--max-constraints", max_constraints, "largest circuit served")
      ->capture_default_str();
  iuni->add_option("--entropy", entropy, "operator entropy mixed into the trapdoor");
  iuni->add_option("--out", srs_out, "artifact name (artifacts/<name>.srs)")
      ->default_val("srs");
  iuni->callback([&] {
    action = [&] { return cmd_universal_setup(g, max_constraints, entropy, srs_out, out); };
  });
  auto* iset = inc->add_subcommand("setup", "compile a spec, run setup, deploy the contract");
  iset->add_option("--spec", spec, "zkSpec JSON file")->required();
  iset->add_option("--scheme", scheme, "per-circuit | universal")->required();
  iset->add_option("--srs", srs, "workspace-relative SRS file (universal scheme)");
  iset->add_option("--issuer", issuers, "allowed issuer key name (repeatable)")->required();
  iset->add_option("--schema", schema, "schema VDR record id (default: from the spec)");
  iset->add_option("--account", setup_account, "initiator account")->default_val("initiator");
  iset->callback([&] {
    action = [&] {
      return cmd_setup(g, spec, scheme, srs, issuers, schema, setup_account, out);
    };
  });

  auto* owc = app.add_subcommand("owner", "device owner persona");
  owc->require_subcommand(1);
  auto* okey = owc->add_subcommand("keygen", "generate a device key pair");
  okey->add_option("--name", name, "key name")->required();
  okey->add_flag("--force", force, "overwrite an existing key");
  okey->callback([&] { action = [&] { return cmd_keygen(g, name, force, out); }; });
  auto* oprove = owc->add_subcommand("prove", "build a zkVP for a proof request");
  oprove->add_option("--zkvpr", zkvpr, "zkVPR record id")->required();
  oprove->add_option("--credential", cred, "wallet credential name")->required();
  oprove->add_option("--account", account, "account that will submit")->required();
  oprove->add_option("--out", out_name, "zkVP name (wallet/<name>.zkvp)")->required();
  oprove->add_option("--randomness", randomness, "commitment randomness, 64 hex digits");
  oprove->callback([&] {
    action = [&] { return cmd_prove(g, zkvpr, cred, account, out_name, randomness, out); };
  });
  auto* oreg = owc->add_subcommand("register", "submit a zkVP to a registration contract");
  oreg->add_option("--contract", contract, "registration contract address")->required();
  oreg->add_option("--zkvp", name, "zkVP name")->required();
  oreg->add_option("--account", account, "submitting account")->required();
  oreg->callback([&] { action = [&] { return cmd_register(g, contract, name, account, out); }; });

  auto* chc = app.add_subcommand("chain", "chain operator persona");
  chc->require_subcommand(1);
  chc->add_subcommand("status", "height, time and state hash")->callback([&] {
    action = [&] { return cmd_chain_status(g, out); };
  });
  chc->add_subcommand("receipts", "print every receipt")->callback([&] {
    action = [&] { return cmd_chain_receipts(g, out); };
  });
  chc->add_subcommand("replay", "replay the log and check the state hash")->callback([&] {
    action = [&] { return cmd_replay(g, out); };
  });
  auto* creg = chc->add_subcommand("is-registered", "query a registration contract");
  creg->add_option("--contract", contract, "registration contract address")->required();
  creg->add_option("--key", key, "device public key name");
  creg->add_option("--commitment", commitment, "device key commitment, 64 hex digits");
  creg->callback([&] {
    action = [&] { return cmd_is_registered(g, contract, key, commitment, out); };
  });

  auto* apc = app.add_subcommand("app", "application contract");
  apc->require_subcommand(1);
  auto* adep = apc->add_subcommand("deploy", "deploy an application gated on a registry");
  adep->add_option("--registration", contract, "registration contract address")->required();
  adep->add_option("--scheme", scheme, "scheme for committed-mode authentication")
      ->default_val("per-circuit");
  adep->add_option("--srs", srs, "workspace-relative SRS file (universal scheme)");
  adep->add_option("--account", app_account, "deploying account")->default_val("operator");
  adep->callback([&] {
    action = [&] { return cmd_app_deploy(g, contract, scheme, srs, app_account, out); };
  });
  auto* aprov = apc->add_subcommand("provision", "submit device data to an application");
  aprov->add_option("--app", contract, "application contract address")->required();
  aprov->add_option("--key", key, "device key name")->required();
  aprov->add_option("--payload", payload, "data to submit")->required();
  aprov->add_option("--commitment-from", randomness,
                    "zkVP name whose randomness opens the registered commitment");
  aprov->add_option("--account", account, "submitting account")->required();
  aprov->callback([&] {
    action = [&] { return cmd_provision(g, contract, key, payload, randomness, account, out); };
  });

  auto* bench = app.add_subcommand("bench", "run the scheme x condition matrix");
  bench->add_option("--schemes", schemes, "comma-separated schemes")->capture_default_str();
  bench->add_option("--conditions", conditions, "comma-separated conditions")
      ->capture_default_str();
  bench->add_option("--repeat", repeat, "repetitions; times are medians")->capture_default_str();
  bench->add_option("--max-constraints", max_constraints, "universal SRS bound")
      ->capture_default_str();
  bench->add_flag("--check", check, "assert the expected orderings");
  bench->add_option("--out", bench_out, "report name (artifacts/<name>.json)")
      ->default_val("bench");
  bench->callback([&] {
    action = [&] {
      return cmd_bench(g, schemes, conditions, repeat, check, max_constraints, bench_out, out,
                       err);
    };
  });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (!g.seed_hex.empty()) {
      try {
        g.seed = crypto::hex_decode(g.seed_hex);
      } catch (const std::invalid_argument&) {
        throw UsageError("--seed must be hex");
      }
      // Keyed by the command path, not the arguments, so the same commands
      // reproduce the same artifacts in any workspace location.
      std::vector<uint8_t> stream = *g.seed;
      for (const CLI::App* sub = &app; !sub->get_subcommands().empty();) {
        sub = sub->get_subcommands().front();
        stream.push_back(0);
        stream.insert(stream.end(), sub->get_name().begin(), sub->get_name().end());
      }
      proofsys::seed_randomness(crypto::sha256(stream));
    }
    const int code = action ? action() : kExitUsage;
    proofsys::seed_randomness({});
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const Rejected& e) {
    proofsys::seed_randomness({});
    err << "rejected: " << e.what() << "\n";
    return kExitRejected;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  proofsys::seed_randomness({});
  return kExitUsage;
}

}  // namespace devreg::cli
