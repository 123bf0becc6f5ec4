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

#include "devreg/registry/audit.h"

#include <algorithm>
#include <functional>

namespace devreg::registry {
namespace {

using crypto::AttributeValue;

std::vector<uint8_t> field_bytes(const crypto::Fr& f) {
  std::vector<uint8_t> b(32);
  f.to_bytes(std::span<uint8_t, 32>(b.data(), 32));
  return b;
}

bool published_by_spec(const zkspec::ZkSpec& spec, uint32_t attr, const AttributeValue& v) {
  for (const auto& req : spec.requirements) {
    if (req.attribute_id != attr) continue;
    const auto& c = req.condition;
    if (c.type == zkspec::ConditionType::kEquality && c.target == v) return true;
    if (c.type == zkspec::ConditionType::kMembership &&
        std::find(c.set.begin(), c.set.end(), v) != c.set.end()) {
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<Needle> credential_needles(const credential::VerifiableCredential& vc,
                                       const credential::CredentialSchema& schema,
                                       const zkspec::ZkSpec& spec) {
  std::vector<Needle> out;
  if (!vc.claims.empty()) {
    out.push_back({"subject id", field_bytes(vc.claims.front().claim.subject_id)});
  }
  for (const auto& vcl : vc.claims) {
    const auto& claim = vcl.claim;
    const auto* def = schema.find(claim.attribute_id);
    const std::string name = def ? def->name : std::to_string(claim.attribute_id);
    const auto sig = vcl.signature.to_bytes();
    out.push_back({"signature R.x of " + name, {sig.begin(), sig.begin() + 32}});
    out.push_back({"signature R.y of " + name, {sig.begin() + 32, sig.begin() + 64}});
    out.push_back({"signature S of " + name, {sig.begin() + 64, sig.end()}});

    const AttributeValue& v = claim.value;
    if (claim.attribute_id == spec.device_key_attribute_id) {
      if (spec.key_mode == zkspec::KeyMode::kCommitted) {
        out.push_back({name + " x", field_bytes(v.point.x)});
        out.push_back({name + " y", field_bytes(v.point.y)});
      }
      continue;
    }
    if (published_by_spec(spec, claim.attribute_id, v)) continue;
    out.push_back({name + " value", field_bytes(crypto::encode_value(v))});
    if (v.kind == crypto::ValueKind::kString && v.text.size() >= 4) {
      out.push_back({name + " text", {v.text.begin(), v.text.end()}});
    }
  }
  return out;
}

std::vector<std::string> find_leaks(std::span<const uint8_t> haystack,
                                    const std::vector<Needle>& needles) {
  std::vector<std::string> found;
  for (const Needle& n : needles) {
    if (n.bytes.empty()) continue;
    auto it = std::search(haystack.begin(), haystack.end(),
                          std::boyer_moore_horspool_searcher(n.bytes.begin(), n.bytes.end()));
    if (it != haystack.end()) found.push_back(n.label);
  }
  return found;
}

}  // namespace devreg::registry
