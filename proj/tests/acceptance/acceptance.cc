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

// Acceptance run. Prints one PASS/FAIL line per criterion on stdout, progress
// on stderr, and exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "devreg/circuit/circuit.h"
#include "devreg/circuit/gadgets.h"
#include "devreg/cli/bench.h"
#include "devreg/credential/credential.h"
#include "devreg/crypto/eddsa.h"
#include "devreg/crypto/encoding.h"
#include "devreg/crypto/poseidon.h"
#include "devreg/flow/flow.h"
#include "devreg/proofsys/proofsys.h"
#include "devreg/registry/audit.h"
#include "devreg/registry/chain.h"
#include "devreg/registry/vdr.h"
#include "devreg/scenario/scenario.h"
#include "devreg/zkspec/zkspec.h"

namespace devreg::acceptance {
namespace {

using credential::VerifiableCredential;
using crypto::Fr;
using crypto::KeyPair;
using crypto::Point;
using proofsys::SchemeId;
using registry::Chain;
using registry::Reason;
using registry::ZkVp;
using scenario::ConditionKind;
using zkspec::KeyMode;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double now_s() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

KeyPair key_from(uint8_t a, uint8_t b = 0) {
  std::array<uint8_t, 32> seed{a, b, 0xac};
  return crypto::keygen(seed);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

const std::vector<SchemeId> kSchemes = {SchemeId::kPerCircuitSetup,
                                        SchemeId::kUniversalSetup};

// Shared fixtures: schema, issuers, devices, and one universal SRS sized for
// every circuit the run deploys.
struct World {
  credential::CredentialSchema schema = scenario::device_schema();
  KeyPair issuer = key_from(1);
  KeyPair rogue_issuer = key_from(2);
  std::optional<proofsys::UniversalSrs> srs;

  static KeyPair device(int i) { return key_from(50, static_cast<uint8_t>(i)); }

  VerifiableCredential vc(int dev, const scenario::DeviceProfile& p = {},
                          const KeyPair* by = nullptr) const {
    return credential::attest(
        scenario::device_claims(Fr::from_u64(7000 + dev), device(dev).pub, p),
        by ? *by : issuer, schema);
  }

  const proofsys::UniversalSrs* srs_for(SchemeId s) const {
    return s == SchemeId::kUniversalSetup ? &*srs : nullptr;
  }
};

struct Deployed {
  registry::Vdr vdr;
  Chain chain;
  flow::Deployment d;
};

flow::Deployment deploy(const World& w, const zkspec::ZkSpec& spec, SchemeId s,
                        registry::Vdr& vdr, Chain& chain) {
  flow::InitiateOptions io;
  io.scheme = s;
  io.srs = w.srs_for(s);
  std::vector<Point> issuers{w.issuer.pub};
  return flow::initiate(spec, w.schema, issuers, vdr, chain, io);
}

flow::Presentation present(const registry::Vdr& vdr, const flow::Deployment& d,
                           const VerifiableCredential& vc, const std::string& owner,
                           std::optional<Fr> rand = std::nullopt) {
  flow::PresentOptions po;
  po.owner = owner;
  po.commitment_randomness = rand;
  return flow::present(vdr, d.zkvpr_id, d.pk, vc, po);
}

// ---------------------------------------------------------------------------

Outcome completeness(const cli::BenchReport& report) {
  int ok = 0;
  double slowest = 0;
  std::string bad;
  for (const auto& c : report.cells) {
    const double total = c.setup_s + c.witness_s + c.prove_s + c.verify_s;
    slowest = std::max(slowest, total);
    if (c.accepted && total < 300) {
      ++ok;
    } else {
      bad += " " + std::string(scenario::condition_kind_name(c.condition)) + "/" +
             std::string(proofsys::scheme_name(c.scheme));
    }
  }
  const bool pass = ok == 6 && report.cells.size() == 6;
  return {pass, std::to_string(ok) + "/6 flows accepted under 300 s, slowest " +
                    fmt("%.1f s", slowest) + (bad.empty() ? "" : ", failed:" + bad)};
}

// ---------------------------------------------------------------------------

struct Tally {
  int trials = 0;
  int accepted = 0;
  int honest_refused = 0;  // controls, not trials
  std::map<std::string, int> outcomes;
  std::vector<std::string> accepted_labels;

  void record(const std::string& label, bool acc, const std::string& how) {
    ++trials;
    if (acc) {
      ++accepted;
      accepted_labels.push_back(label);
    }
    ++outcomes[how];
  }
  std::string summary() const {
    std::string s;
    for (const auto& [k, v] : outcomes) s += (s.empty() ? "" : ", ") + k + " " + std::to_string(v);
    return s;
  }
};

// Replay and duplication results, filled by the soundness and audit runs.
struct ReplayTally {
  int checked = 0;
  int wrong = 0;
};
ReplayTally g_replay;

void check_replays(Chain& chain, const std::string& contract, const ZkVp& vp,
                   const std::string& owner) {
  for (const char* thief : {"mallory", "trent"}) {
    ++g_replay.checked;
    auto r = chain.submit_registration(contract, vp, thief);
    if (r.accepted || r.reason != Reason::kOwnerMismatch) ++g_replay.wrong;
  }
  ++g_replay.checked;
  auto r = chain.submit_registration(contract, vp, owner);
  if (r.accepted || r.reason != Reason::kDuplicateDevice) ++g_replay.wrong;
}

// Submits and classifies; exceptions from the chain count as rejections but
// are reported separately because a well-formed zkVP should never throw.
void submit(Tally& t, Chain& chain, const std::string& contract, const ZkVp& vp,
            const std::string& sender, const std::string& label) {
  try {
    auto r = chain.submit_registration(contract, vp, sender);
    t.record(label, r.accepted, r.accepted ? "ACCEPTED" : std::string(reason_name(r.reason)));
  } catch (const std::exception&) {
    t.record(label, false, "threw");
  }
}

// Credential-level attacks go through the honest owner pipeline; the owner
// either cannot produce a proof or the chain refuses what it produces.
void attempt(Tally& t, Deployed& x, const VerifiableCredential& vc, const std::string& owner,
             const std::string& label) {
  std::optional<ZkVp> vp;
  try {
    vp = present(x.vdr, x.d, vc, owner).zkvp;
  } catch (const circuit::AssignError&) {
    t.record(label, false, "no witness");
    return;
  } catch (const std::exception&) {
    t.record(label, false, "prover refused");
    return;
  }
  submit(t, x.chain, x.d.contract, *vp, owner, label);
}

scenario::DeviceProfile violating_profile(ConditionKind c, int i) {
  scenario::DeviceProfile p;
  switch (c) {
    case ConditionKind::kRange:
      p.firmware = static_cast<uint64_t>(i) % scenario::kMinFirmware;
      break;
    case ConditionKind::kMembership:
      p.postcode = std::to_string(90000 + 37 * i);
      break;
    case ConditionKind::kEquality:
      p.measurement = i % 2 ? "humidity" : "temperature ";
      break;
  }
  return p;
}

uint32_t condition_attr(ConditionKind c) {
  switch (c) {
    case ConditionKind::kRange: return scenario::kFirmwareAttr;
    case ConditionKind::kMembership: return scenario::kPostcodeAttr;
    case ConditionKind::kEquality: return scenario::kMeasurementAttr;
  }
  return 0;
}

Tally soundness_for(const World& w, SchemeId s,
                    std::map<ConditionKind, ZkVp>* other_proofs) {
  Tally t;
  std::mt19937_64 rng(static_cast<uint64_t>(s) * 1000 + 17);
  std::map<ConditionKind, std::unique_ptr<Deployed>> deps;
  for (ConditionKind c : scenario::kAllConditions) {
    auto x = std::make_unique<Deployed>();
    x->d = deploy(w, scenario::condition_spec(c, w.schema), s, x->vdr, x->chain);
    deps[c] = std::move(x);
  }
  for (ConditionKind c : scenario::kAllConditions) {
    Deployed& x = *deps[c];
    const std::string cname(scenario::condition_kind_name(c));
    const uint32_t attr = condition_attr(c);
    const int honest_dev = 1 + static_cast<int>(c);
    const std::string owner = "owner-" + cname;

    // Tampered signatures on the condition claim or the device key claim.
    for (int i = 0; i < 10; ++i) {
      auto vc = w.vc(honest_dev);
      const uint32_t target = i % 2 ? attr : scenario::kDeviceKeyAttr;
      auto* vcl = const_cast<credential::VerifiableClaim*>(vc.find(target));
      // Another claim's signature, never the target's own.
      const auto& donor = vc.claims[(target + 1 + i % 4) % vc.claims.size()];
      switch (i % 3) {
        case 0: vcl->signature.S += crypto::Fs::one(); break;
        case 1: vcl->signature.R = w.vc(20 + i).claims[0].signature.R; break;
        case 2: vcl->signature = donor.signature; break;
      }
      attempt(t, x, vc, owner, cname + " tampered signature " + std::to_string(i));
    }
    // Values violating the condition, properly signed.
    for (int i = 0; i < 10; ++i) {
      attempt(t, x, w.vc(30 + i, violating_profile(c, i)), owner,
              cname + " violating value " + std::to_string(i));
    }
    // Credentials from an issuer the contract does not accept.
    for (int i = 0; i < 5; ++i) {
      attempt(t, x, w.vc(40 + i, {}, &w.rogue_issuer), owner,
              cname + " wrong issuer " + std::to_string(i));
    }
    // Claims spliced from two subjects, each validly signed.
    for (int i = 0; i < 5; ++i) {
      auto a = w.vc(60 + i, violating_profile(c, i));
      auto b = w.vc(70 + i);
      for (auto& vcl : a.claims) {
        if (vcl.claim.attribute_id == attr) vcl = *b.find(attr);
      }
      attempt(t, x, a, owner, cname + " mixed subjects " + std::to_string(i));
    }

    // Perturbed public inputs and proof bytes around one honest proof.
    const auto honest = present(x.vdr, x.d, w.vc(honest_dev), owner).zkvp;
    const std::string lbl = cname + " perturbed ";
    {
      ZkVp v = honest;
      v.issuer_pubkey = w.rogue_issuer.pub;
      submit(t, x.chain, x.d.contract, v, owner, lbl + "issuer");
    }
    for (int i = 0; i < 4; ++i) {
      ZkVp v = honest;
      if (v.aux.empty()) break;
      v.aux[rng() % v.aux.size()] += Fr::from_u64(1 + i);
      submit(t, x.chain, x.d.contract, v, owner, lbl + "aux");
    }
    for (int i = 0; i < 6; ++i) {
      ZkVp v = honest;
      v.device_key = World::device(80 + i).pub;
      submit(t, x.chain, x.d.contract, v, owner, lbl + "device key");
    }
    for (int i = 0; i < 6; ++i) {
      ZkVp v = honest;
      const std::string thief = "thief-" + std::to_string(i);
      v.owner_binding = registry::owner_binding_for(thief);
      submit(t, x.chain, x.d.contract, v, thief, lbl + "owner binding");
    }
    for (int i = 0; i < 3; ++i) {
      submit(t, x.chain, x.d.contract, honest, "bystander-" + std::to_string(i),
             lbl + "sender");
    }
    for (int i = 0; i < 20; ++i) {
      ZkVp v = honest;
      auto& bytes = v.proof.bytes;
      bytes[rng() % bytes.size()] ^= static_cast<uint8_t>(1u << (rng() % 8));
      submit(t, x.chain, x.d.contract, v, owner, lbl + "proof bytes");
    }
    {
      ZkVp v = honest;
      v.proof.bytes.resize(v.proof.bytes.size() / 2);
      submit(t, x.chain, x.d.contract, v, owner, lbl + "truncated proof");
    }
    if (other_proofs) {
      for (const auto& [oc, ov] : *other_proofs) {
        if (oc == c) continue;
        ZkVp v = ov;
        v.owner_binding = registry::owner_binding_for(owner);
        submit(t, x.chain, x.d.contract, v, owner, lbl + "foreign proof");
      }
    }

    // The honest proof still goes through afterwards.
    auto r = x.chain.submit_registration(x.d.contract, honest, owner);
    if (!r.accepted) {
      ++t.honest_refused;
    } else {
      check_replays(x.chain, x.d.contract, honest, owner);
    }
    if (other_proofs) (*other_proofs)[c] = honest;
  }
  return t;
}

Outcome soundness(const World& w) {
  std::string detail;
  bool pass = true;
  std::map<ConditionKind, ZkVp> proofs;
  for (SchemeId s : kSchemes) {
    std::map<ConditionKind, ZkVp> foreign = proofs;
    Tally t = soundness_for(w, s, &foreign);
    proofs = foreign;
    std::cerr << "soundness " << proofsys::scheme_name(s) << ": " << t.summary() << "\n";
    pass = pass && t.trials >= 200 && t.accepted == 0 && t.honest_refused == 0;
    detail += (detail.empty() ? "" : "; ") + std::string(proofsys::scheme_name(s)) + " " +
              std::to_string(t.accepted) + "/" + std::to_string(t.trials) + " accepted";
    if (t.honest_refused) detail += " (honest controls refused: " + std::to_string(t.honest_refused) + ")";
    for (const auto& l : t.accepted_labels) detail += " [" + l + "]";
  }
  return {pass, detail};
}

// ---------------------------------------------------------------------------

Outcome confidentiality(const World& w) {
  int scans = 0;
  std::vector<std::string> leaks;
  auto scan = [&](const std::string& where, std::span<const uint8_t> hay,
                  const std::vector<registry::Needle>& needles) {
    ++scans;
    for (const auto& l : registry::find_leaks(hay, needles)) leaks.push_back(where + ": " + l);
  };
  for (SchemeId s : kSchemes) {
    for (ConditionKind c : scenario::kAllConditions) {
      for (KeyMode mode : {KeyMode::kPlain, KeyMode::kCommitted}) {
        const std::string where = std::string(proofsys::scheme_name(s)) + "/" +
                                  std::string(scenario::condition_kind_name(c)) +
                                  (mode == KeyMode::kPlain ? "/plain" : "/committed");
        registry::Vdr vdr;
        Chain chain;
        const auto spec = scenario::condition_spec(c, w.schema, mode);
        auto d = deploy(w, spec, s, vdr, chain);
        const int dev = 10 + static_cast<int>(c);
        const auto vc = w.vc(dev);
        const auto device = World::device(dev);
        const Fr rand = Fr::from_u64(0xabc + dev);
        auto p = present(vdr, d, vc, "owner",
                         mode == KeyMode::kCommitted ? std::optional(rand) : std::nullopt);
        if (!chain.submit_registration(d.contract, p.zkvp, "owner").accepted) {
          leaks.push_back(where + ": registration refused");
          continue;
        }
        if (mode == KeyMode::kCommitted) check_replays(chain, d.contract, p.zkvp, "owner");
        auto app = flow::deploy_application(chain, d.contract, s, w.srs_for(s), "operator");
        const std::string payload = "reading 21.5C";
        const std::vector<uint8_t> bytes(payload.begin(), payload.end());
        registry::Receipt r;
        if (mode == KeyMode::kPlain) {
          const Fr digest = crypto::bytes_digest(bytes);
          const auto sig = crypto::sign(device.secret, std::vector<Fr>{digest});
          r = chain.provision_data(app.contract, bytes, sig, device.pub, "gateway");
        } else {
          r = flow::authenticate(chain, app, bytes, device, rand, "gateway");
        }
        if (!r.accepted) leaks.push_back(where + ": device data refused");
        const auto needles = registry::credential_needles(vc, w.schema, d.spec);
        scan(where + " state", chain.state_bytes(), needles);
        scan(where + " export", chain.export_bytes(), needles);
      }
    }
  }
  std::string detail = std::to_string(scans) + " scans, " + std::to_string(leaks.size()) +
                       " findings";
  for (const auto& l : leaks) detail += " [" + l + "]";
  return {leaks.empty() && scans > 0, detail};
}

Outcome replay_duplication() {
  return {g_replay.checked > 0 && g_replay.wrong == 0,
          std::to_string(g_replay.checked - g_replay.wrong) + "/" +
              std::to_string(g_replay.checked) + " resubmissions rejected with the expected reason"};
}

// ---------------------------------------------------------------------------

Outcome trade_offs(const cli::BenchReport& r) {
  std::vector<std::string> bad;
  std::string ratios;
  for (ConditionKind c : scenario::kAllConditions) {
    const auto* p = r.find(c, SchemeId::kPerCircuitSetup);
    const auto* u = r.find(c, SchemeId::kUniversalSetup);
    const std::string n(scenario::condition_kind_name(c));
    if (!p || !u) {
      bad.push_back(n + " missing");
      continue;
    }
    if (u->setup_s < 10 * p->setup_s) bad.push_back(n + " setup ratio");
    if (u->prove_s <= p->prove_s) bad.push_back(n + " prove");
    if (u->pk_bytes <= p->pk_bytes) bad.push_back(n + " pk");
    if (u->cost_units <= p->cost_units) bad.push_back(n + " cost");
    for (const auto* x : {p, u}) {
      if (x->vk_bytes * 100 > x->pk_bytes) bad.push_back(n + " vk/pk");
    }
    ratios += (ratios.empty() ? "" : ", ") + n + " setup " +
              fmt("%.0fx", u->setup_s / std::max(p->setup_s, 1e-9));
  }
  std::string detail = ratios;
  for (const auto& b : bad) detail += " [" + b + "]";
  return {bad.empty(), detail};
}

Outcome size_ordering(const cli::BenchReport& r) {
  const auto* range = r.find(ConditionKind::kRange, SchemeId::kPerCircuitSetup);
  const auto* mem = r.find(ConditionKind::kMembership, SchemeId::kPerCircuitSetup);
  const auto* eq = r.find(ConditionKind::kEquality, SchemeId::kPerCircuitSetup);
  if (!range || !mem || !eq) return {false, "missing cells"};
  const double hi = static_cast<double>(std::max(range->constraint_count, eq->constraint_count));
  const double gap = std::fabs(static_cast<double>(range->constraint_count) -
                               static_cast<double>(eq->constraint_count)) / hi;
  const bool pass = mem->constraint_count > range->constraint_count && gap <= 0.25;
  return {pass, "range " + std::to_string(range->constraint_count) + ", membership " +
                    std::to_string(mem->constraint_count) + ", equality " +
                    std::to_string(eq->constraint_count) + ", range/equality gap " +
                    fmt("%.1f%%", 100 * gap)};
}

// ---------------------------------------------------------------------------

bool satisfied(const r1cs::Builder& b) {
  return !b.system().first_unsatisfied(b.assignment()).has_value();
}

Fr random_fr(std::mt19937_64& rng) {
  return Fr::reduce(ff::U256(rng(), rng(), rng(), rng() & 0x3fffffffffffffffULL));
}

Outcome oracle_equivalence(const World& w) {
  std::mt19937_64 rng(404);
  using zkspec::Condition;
  using crypto::AttributeValue;
  const uint64_t now = 1790000000;

  // Condition gadgets against eval_condition, through compile and assign.
  int cond_n = 0, cond_bad = 0, cond_true = 0;
  for (int t = 0; t < 150; ++t) {
    scenario::DeviceProfile p;
    p.firmware = rng() % 12;
    p.postcode = std::to_string(10115 + rng() % 8);
    p.measurement = rng() % 2 ? "temperature" : "humidity";
    p.manufactured = now - 40 * 86400 + rng() % (80 * 86400);
    uint32_t attr = 0;
    Condition cond;
    switch (t % 4) {
      case 0: {
        std::optional<uint64_t> lo, hi;
        if (rng() % 3) lo = rng() % 12;
        if (!lo || rng() % 2) hi = (lo ? *lo : 0) + rng() % 8;
        attr = scenario::kFirmwareAttr;
        cond = Condition::range(lo, hi);
        break;
      }
      case 1: {
        std::vector<AttributeValue> set;
        for (size_t i = 0, n = 1 + rng() % 6; i < n; ++i) {
          set.push_back(AttributeValue::string(std::to_string(10115 + rng() % 8)));
        }
        attr = scenario::kPostcodeAttr;
        cond = Condition::membership(set);
        break;
      }
      case 2:
        attr = rng() % 2 ? scenario::kMeasurementAttr : scenario::kFirmwareAttr;
        cond = attr == scenario::kFirmwareAttr
                   ? Condition::equality(AttributeValue::uint(rng() % 12))
                   : Condition::equality(
                         AttributeValue::string(rng() % 2 ? "temperature" : "humidity"));
        break;
      case 3:
        attr = scenario::kManufacturedAttr;
        cond = Condition::relative_time(
            static_cast<int64_t>(rng() % (60 * 86400)) - 10 * 86400,
            rng() % 2 ? zkspec::TimeDirection::kNotOlderThan
                      : zkspec::TimeDirection::kNotNewerThan);
        break;
    }
    zkspec::ZkSpec spec{w.schema.schema_id(), {{attr, cond}}, scenario::kDeviceKeyAttr,
                        KeyMode::kPlain};
    const auto vc = w.vc(5, p);
    const bool native = zkspec::eval_condition(cond, vc.find(attr)->claim.value, now);
    const auto circuit = circuit::compile(spec, w.schema);
    circuit::PublicInputs pub;
    pub.issuer_pubkey = w.issuer.pub;
    pub.device_key = World::device(5).pub;
    pub.aux = circuit::spec_aux(spec);
    pub.owner_binding = Fr::from_u64(99);
    if (spec.has_relative_time()) pub.now_ts = now;
    bool in_circuit = true;
    try {
      circuit::assign(spec, w.schema, circuit, vc, pub);
    } catch (const circuit::AssignError&) {
      in_circuit = false;
    }
    ++cond_n;
    cond_true += native;
    cond_bad += native != in_circuit;
  }

  // Signature gadget against verify_sig on multi-element messages.
  int sig_n = 0, sig_bad = 0, sig_true = 0;
  for (int i = 0; i < 120; ++i) {
    const KeyPair k = key_from(120, static_cast<uint8_t>(i % 9));
    std::vector<Fr> msg(1 + rng() % 4);
    for (auto& m : msg) m = random_fr(rng);
    auto sig = crypto::sign(k.secret, msg);
    Point pub = k.pub;
    switch (i % 4) {
      case 1: msg[0] += Fr::one(); break;
      case 2: sig.S += crypto::Fs::one(); break;
      case 3: pub = key_from(121, static_cast<uint8_t>(i)).pub; break;
      default: break;
    }
    const bool native = crypto::verify_sig(pub, msg, sig);
    r1cs::Builder b;
    circuit::PointVar pv{b.input(pub.x), b.input(pub.y)};
    std::vector<r1cs::LC> mv;
    for (const auto& m : msg) mv.push_back(b.witness(m));
    const r1cs::LC digest = circuit::hash_fields(b, mv);
    circuit::PointVar rv{b.witness(sig.R.x), b.witness(sig.R.y)};
    const auto sv = b.witness(Fr::reduce(sig.S.to_u256()));
    circuit::verify_eddsa(b, pv, digest, rv, sv);
    ++sig_n;
    sig_true += native;
    sig_bad += native != satisfied(b);
  }

  // Hash gadget against the native hash, one to twelve inputs.
  int hash_n = 0, hash_bad = 0;
  for (int i = 0; i < 120; ++i) {
    std::vector<Fr> in(1 + i % 12);
    for (auto& x : in) x = random_fr(rng);
    r1cs::Builder b;
    std::vector<r1cs::LC> vars;
    for (const auto& x : in) vars.push_back(b.witness(x));
    const r1cs::LC h = circuit::hash_fields(b, vars);
    ++hash_n;
    hash_bad += !(b.value(h) == crypto::hash_fields(in) && satisfied(b));
  }

  const bool mixed = cond_true > 0 && cond_true < cond_n && sig_true > 0 && sig_true < sig_n;
  return {cond_bad + sig_bad + hash_bad == 0 && mixed,
          "conditions " + std::to_string(cond_bad) + "/" + std::to_string(cond_n) +
              " disagree, signatures " + std::to_string(sig_bad) + "/" +
              std::to_string(sig_n) + ", hashes " + std::to_string(hash_bad) + "/" +
              std::to_string(hash_n)};
}

// ---------------------------------------------------------------------------

// Digests recorded from an earlier run; any change to canonical encoding or
// circuit synthesis shows up here.
struct Frozen {
  ConditionKind c;
  KeyMode mode;
  const char* spec_bytes_sha256;
  const char* circuit_sha256;
};
const Frozen kFrozen[] = {
#include "frozen_digests.inc"
};

Outcome determinism(const World& w) {
  std::vector<std::string> bad;
  int checked = 0;
  for (const auto& f : kFrozen) {
    const auto spec = scenario::condition_spec(f.c, w.schema, f.mode);
    const std::string spec_h = crypto::hex_encode(crypto::sha256(zkspec::canonical_bytes(spec)));
    const auto c1 = circuit::compile(spec, w.schema).serialize();
    const auto c2 = circuit::compile(zkspec::ZkSpec(spec).normalized(), w.schema).serialize();
    const std::string circ_h = crypto::hex_encode(crypto::sha256(c1));
    const std::string name = std::string(scenario::condition_kind_name(f.c)) +
                             (f.mode == KeyMode::kPlain ? "" : "-committed");
    std::cerr << "digest " << name << " " << spec_h << " " << circ_h << "\n";
    ++checked;
    if (spec_h != f.spec_bytes_sha256) bad.push_back(name + " spec bytes");
    if (circ_h != f.circuit_sha256) bad.push_back(name + " circuit");
    if (c1 != c2) bad.push_back(name + " recompile");
  }

  // Replay a mixed log: registrations, rejections, and application traffic.
  registry::Vdr vdr;
  Chain chain;
  const auto spec = scenario::condition_spec(ConditionKind::kRange, w.schema);
  auto d = deploy(w, spec, SchemeId::kPerCircuitSetup, vdr, chain);
  auto app = flow::deploy_application(chain, d.contract, SchemeId::kPerCircuitSetup, nullptr,
                                      "operator");
  for (int i = 0; i < 3; ++i) {
    auto vp = present(vdr, d, w.vc(100 + i), "owner").zkvp;
    chain.submit_registration(d.contract, vp, "owner");
    chain.submit_registration(d.contract, vp, "mallory");
    const std::vector<uint8_t> payload{1, 2, static_cast<uint8_t>(i)};
    const auto sig = crypto::sign(World::device(100 + i).secret,
                                  std::vector<Fr>{crypto::bytes_digest(payload)});
    chain.provision_data(app.contract, payload, sig, World::device(100 + i).pub, "gw");
  }
  const auto exported = chain.export_bytes();
  int replays = 0;
  for (int i = 0; i < 2; ++i) {
    try {
      Chain again = Chain::import_bytes(exported);
      ++replays;
      if (again.state_hash() != chain.state_hash()) bad.push_back("replayed state hash");
      if (again.export_bytes() != exported) bad.push_back("re-export");
    } catch (const std::exception& e) {
      bad.push_back(std::string("replay: ") + e.what());
    }
  }
  std::string detail = std::to_string(checked) + " frozen spec/circuit digests, " +
                       std::to_string(replays) + " replays of " +
                       std::to_string(chain.log().size()) + " transactions";
  for (const auto& b : bad) detail += " [" + b + "]";
  return {bad.empty(), detail};
}

// ---------------------------------------------------------------------------

int run() {
  World w;
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria;
  cli::BenchReport report;
  bool have_report = false;
  auto bench = [&]() -> const cli::BenchReport& {
    if (!have_report) {
      cli::BenchOptions opts;
      report = cli::run_bench(opts, &std::cerr);
      std::cerr << report.to_table();
      have_report = true;
    }
    return report;
  };
  auto ensure_srs = [&] {
    if (w.srs) return;
    size_t largest = circuit::compile_auth().constraint_count();
    for (ConditionKind c : scenario::kAllConditions) {
      for (KeyMode m : {KeyMode::kPlain, KeyMode::kCommitted}) {
        largest = std::max(largest, circuit::compile(scenario::condition_spec(c, w.schema, m),
                                                     w.schema).constraint_count());
      }
    }
    uint64_t bound = 1;
    while (bound < largest) bound <<= 1;
    std::cerr << "universal SRS bound " << bound << " (largest circuit " << largest << ")\n";
    w.srs = proofsys::universal_setup(bound, std::vector<uint8_t>{'a', 'c', 'c'});
  };

  std::vector<std::pair<int, std::pair<std::string, Outcome>>> results;
  auto run_one = [&](int n, const std::string& name, const std::function<Outcome()>& f) {
    const double t0 = now_s();
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cerr << "criterion " << n << " done in " << fmt("%.1f s", now_s() - t0) << "\n";
    results.push_back({n, {name, o}});
  };

  run_one(1, "end-to-end completeness", [&] { return completeness(bench()); });
  ensure_srs();
  run_one(2, "soundness", [&] { return soundness(w); });
  run_one(4, "confidentiality audit", [&] { return confidentiality(w); });
  run_one(3, "replay and duplication", [&] { return replay_duplication(); });
  run_one(5, "scheme trade-offs", [&] { return trade_offs(bench()); });
  run_one(6, "condition size ordering", [&] { return size_ordering(bench()); });
  run_one(7, "oracle equivalence", [&] { return oracle_equivalence(w); });
  run_one(8, "determinism", [&] { return determinism(w); });

  std::sort(results.begin(), results.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  int failed = 0;
  for (const auto& [n, r] : results) {
    std::cout << (r.second.pass ? "PASS" : "FAIL") << " " << n << " " << r.first << ": "
              << r.second.detail << "\n";
    failed += !r.second.pass;
  }
  std::cout.flush();
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace devreg::acceptance

int main() { return devreg::acceptance::run(); }
