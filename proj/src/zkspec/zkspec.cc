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

#include "devreg/zkspec/zkspec.h"

#include <algorithm>
#include <json.hpp>
#include <stdexcept>

#include "devreg/util/codec.h"

namespace devreg::zkspec {
namespace {

using nlohmann::json;
using util::ByteReader;
using util::ByteWriter;

constexpr uint8_t kSpecFormat = 1;
constexpr std::string_view kSpecMagic = "DRZS";
constexpr std::string_view kSpecTextVersion = "devreg.zkspec.v1";
constexpr std::string_view kVprVersion = "devreg.zkvpr.v1";

void write_value(ByteWriter& w, const AttributeValue& v) {
  w.u8(static_cast<uint8_t>(v.kind));
  switch (v.kind) {
    case ValueKind::kUint:
    case ValueKind::kDate: w.u64(v.number); break;
    case ValueKind::kString: w.str(v.text); break;
    case ValueKind::kPoint: w.raw(v.point.to_bytes()); break;
  }
}

AttributeValue read_value(ByteReader& r) {
  uint8_t k = r.u8();
  switch (static_cast<ValueKind>(k)) {
    case ValueKind::kUint: return AttributeValue::uint(r.u64());
    case ValueKind::kDate: return AttributeValue::date(r.u64());
    case ValueKind::kString: return AttributeValue::string(r.str());
    case ValueKind::kPoint:
      return AttributeValue::point_value(
          crypto::Point::from_bytes(r.raw(crypto::kPointBytes).first<64>()));
  }
  throw std::invalid_argument("bad value kind tag");
}

std::vector<uint8_t> value_bytes(const AttributeValue& v) {
  ByteWriter w;
  write_value(w, v);
  return w.take();
}

void write_condition(ByteWriter& w, const Condition& c) {
  w.u8(static_cast<uint8_t>(c.type));
  switch (c.type) {
    case ConditionType::kEquality: write_value(w, c.target); break;
    case ConditionType::kRange:
      w.u8((c.min ? 1 : 0) | (c.max ? 2 : 0));
      if (c.min) w.u64(*c.min);
      if (c.max) w.u64(*c.max);
      break;
    case ConditionType::kMembership:
      w.u64(c.set.size());
      for (const auto& v : c.set) write_value(w, v);
      break;
    case ConditionType::kRelativeTime:
      w.i64(c.offset_seconds);
      w.u8(static_cast<uint8_t>(c.direction));
      break;
  }
}

Condition read_condition(ByteReader& r) {
  switch (static_cast<ConditionType>(r.u8())) {
    case ConditionType::kEquality: return Condition::equality(read_value(r));
    case ConditionType::kRange: {
      uint8_t flags = r.u8();
      if (flags > 3) throw std::invalid_argument("bad range flags");
      std::optional<uint64_t> lo, hi;
      if (flags & 1) lo = r.u64();
      if (flags & 2) hi = r.u64();
      return Condition::range(lo, hi);
    }
    case ConditionType::kMembership: {
      uint64_t n = r.length(9);
      std::vector<AttributeValue> set;
      for (uint64_t i = 0; i < n; ++i) set.push_back(read_value(r));
      return Condition::membership(std::move(set));
    }
    case ConditionType::kRelativeTime: {
      int64_t off = r.i64();
      uint8_t d = r.u8();
      if (d != 1 && d != 2) throw std::invalid_argument("bad time direction");
      return Condition::relative_time(off, static_cast<TimeDirection>(d));
    }
  }
  throw std::invalid_argument("bad condition tag");
}

std::vector<uint8_t> condition_bytes(const Condition& c) {
  ByteWriter w;
  write_condition(w, c);
  return w.take();
}

bool kind_allowed(ConditionType t, ValueKind k) {
  switch (t) {
    case ConditionType::kEquality:
    case ConditionType::kMembership:
      return k != ValueKind::kPoint;
    case ConditionType::kRange:
      return k == ValueKind::kUint || k == ValueKind::kDate;
    case ConditionType::kRelativeTime:
      return k == ValueKind::kDate;
  }
  return false;
}

uint64_t number_of(const AttributeValue& v) {
  if (v.kind != ValueKind::kUint && v.kind != ValueKind::kDate) {
    throw std::invalid_argument("numeric value expected");
  }
  return v.number;
}

}  // namespace

std::string_view key_mode_name(KeyMode m) {
  return m == KeyMode::kPlain ? "plain" : "committed";
}

std::string_view condition_name(ConditionType t) {
  switch (t) {
    case ConditionType::kEquality: return "equality";
    case ConditionType::kRange: return "range";
    case ConditionType::kMembership: return "membership";
    case ConditionType::kRelativeTime: return "relative_time";
  }
  return "?";
}

Condition Condition::equality(AttributeValue v) {
  Condition c;
  c.type = ConditionType::kEquality;
  c.target = std::move(v);
  return c;
}
Condition Condition::range(std::optional<uint64_t> lo,
                           std::optional<uint64_t> hi) {
  Condition c;
  c.type = ConditionType::kRange;
  c.min = lo;
  c.max = hi;
  return c;
}
Condition Condition::membership(std::vector<AttributeValue> set) {
  Condition c;
  c.type = ConditionType::kMembership;
  c.set = std::move(set);
  return c;
}
Condition Condition::relative_time(int64_t offset, TimeDirection d) {
  Condition c;
  c.type = ConditionType::kRelativeTime;
  c.offset_seconds = offset;
  c.direction = d;
  return c;
}

ZkSpec ZkSpec::normalized() const {
  ZkSpec out = *this;
  for (auto& r : out.requirements) {
    auto& set = r.condition.set;
    std::vector<std::pair<std::vector<uint8_t>, AttributeValue>> keyed;
    for (auto& v : set) keyed.emplace_back(value_bytes(v), std::move(v));
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    keyed.erase(std::unique(keyed.begin(), keyed.end(),
                            [](const auto& a, const auto& b) {
                              return a.first == b.first;
                            }),
                keyed.end());
    set.clear();
    for (auto& [k, v] : keyed) set.push_back(std::move(v));
  }
  std::stable_sort(out.requirements.begin(), out.requirements.end(),
                   [](const ClaimRequirement& a, const ClaimRequirement& b) {
                     if (a.attribute_id != b.attribute_id) {
                       return a.attribute_id < b.attribute_id;
                     }
                     return condition_bytes(a.condition) <
                            condition_bytes(b.condition);
                   });
  return out;
}

bool ZkSpec::has_relative_time() const {
  return std::any_of(requirements.begin(), requirements.end(), [](const auto& r) {
    return r.condition.type == ConditionType::kRelativeTime;
  });
}

std::vector<Finding> validate_spec(const ZkSpec& spec,
                                   const CredentialSchema& schema,
                                   size_t max_set_size) {
  std::vector<Finding> out;
  auto add = [&](int i, std::string code, std::string msg) {
    out.push_back({i, std::move(code), std::move(msg)});
  };
  if (spec.schema_ref != schema.schema_id()) {
    add(-1, "schema mismatch", "spec refers to a different schema");
  }
  if (spec.requirements.empty()) add(-1, "no requirements", "spec is empty");
  const auto* dk = schema.find(spec.device_key_attribute_id);
  if (!dk) {
    add(-1, "unknown attribute", "device key attribute not in schema");
  } else if (dk->kind != ValueKind::kPoint) {
    add(-1, "kind mismatch", "device key attribute " + dk->name +
                                 " must have kind point");
  }
  for (size_t i = 0; i < spec.requirements.size(); ++i) {
    const int idx = static_cast<int>(i);
    const auto& req = spec.requirements[i];
    const auto& c = req.condition;
    const auto* def = schema.find(req.attribute_id);
    if (!def) {
      add(idx, "unknown attribute",
          "attribute id " + std::to_string(req.attribute_id) + " not in schema");
      continue;
    }
    const std::string what =
        std::string(condition_name(c.type)) + " on " + def->name;
    if (!kind_allowed(c.type, def->kind)) {
      add(idx, "kind mismatch",
          what + ": unsupported for kind " + std::string(crypto::kind_name(def->kind)));
      continue;
    }
    switch (c.type) {
      case ConditionType::kEquality:
        if (c.target.kind != def->kind) add(idx, "kind mismatch", what + ": target kind");
        break;
      case ConditionType::kRange:
        if (!c.min && !c.max) add(idx, "missing bound", what + ": no bound");
        if (c.min && c.max && *c.min > *c.max) {
          add(idx, "empty range", what + ": min > max");
        }
        break;
      case ConditionType::kMembership:
        if (c.set.empty()) add(idx, "empty set", what + ": empty set");
        if (c.set.size() > max_set_size) {
          add(idx, "set too large",
              what + ": more than " + std::to_string(max_set_size) + " members");
        }
        for (const auto& v : c.set) {
          if (v.kind != def->kind) {
            add(idx, "kind mismatch", what + ": member kind");
            break;
          }
        }
        break;
      case ConditionType::kRelativeTime:
        if (c.offset_seconds >= kMaxTimeOffset ||
            c.offset_seconds <= -kMaxTimeOffset) {
          add(idx, "offset out of range", what + ": offset too large");
        }
        break;
    }
  }
  return out;
}

std::vector<uint8_t> canonical_bytes(const ZkSpec& spec) {
  const ZkSpec s = spec.normalized();
  ByteWriter w;
  w.raw(std::span(reinterpret_cast<const uint8_t*>(kSpecMagic.data()),
                  kSpecMagic.size()));
  w.u8(kSpecFormat);
  w.field(s.schema_ref);
  w.u32(s.device_key_attribute_id);
  w.u8(static_cast<uint8_t>(s.key_mode));
  w.u64(s.requirements.size());
  for (const auto& r : s.requirements) {
    w.u32(r.attribute_id);
    w.bytes(condition_bytes(r.condition));
  }
  return w.take();
}

ZkSpec decode_spec(std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  auto magic = r.raw(kSpecMagic.size());
  if (!std::equal(magic.begin(), magic.end(), kSpecMagic.begin()) ||
      r.u8() != kSpecFormat) {
    throw std::invalid_argument("not a canonical zkSpec encoding");
  }
  ZkSpec s;
  s.schema_ref = r.field<Fr>();
  s.device_key_attribute_id = r.u32();
  const uint8_t mode = r.u8();
  if (mode != 1 && mode != 2) throw std::invalid_argument("bad key mode");
  s.key_mode = static_cast<KeyMode>(mode);
  uint64_t n = r.length(4);
  for (uint64_t i = 0; i < n; ++i) {
    ClaimRequirement req;
    req.attribute_id = r.u32();
    ByteReader cr(r.bytes());
    req.condition = read_condition(cr);
    cr.expect_end();
    s.requirements.push_back(std::move(req));
  }
  r.expect_end();
  return s;
}

crypto::Digest32 spec_id(const ZkSpec& spec) {
  return crypto::sha256(canonical_bytes(spec));
}

std::string to_text(const ZkSpec& spec, const CredentialSchema& schema) {
  auto name_of = [&](uint32_t id) {
    const auto* d = schema.find(id);
    if (!d) throw std::invalid_argument("attribute id not in schema");
    return d->name;
  };
  const ZkSpec s = spec.normalized();
  json reqs = json::array();
  for (const auto& r : s.requirements) {
    const auto& c = r.condition;
    json j{{"attribute", name_of(r.attribute_id)}};
    switch (c.type) {
      case ConditionType::kEquality:
        j["equality"] = crypto::format_value(c.target);
        break;
      case ConditionType::kRange: {
        json b = json::object();
        if (c.min) b["min"] = *c.min;
        if (c.max) b["max"] = *c.max;
        j["range"] = b;
        break;
      }
      case ConditionType::kMembership: {
        json m = json::array();
        for (const auto& v : c.set) m.push_back(crypto::format_value(v));
        j["membership"] = m;
        break;
      }
      case ConditionType::kRelativeTime:
        j["relative_time"] = {
            {"direction", c.direction == TimeDirection::kNotOlderThan
                              ? "not_older_than"
                              : "not_newer_than"},
            {"offset_seconds", c.offset_seconds}};
        break;
    }
    reqs.push_back(j);
  }
  json j{{"device_key_attribute", name_of(s.device_key_attribute_id)},
         {"key_mode", key_mode_name(s.key_mode)},
         {"requirements", reqs},
         {"schema", s.schema_ref.to_hex_string()},
         {"version", kSpecTextVersion}};
  return j.dump(2) + "\n";
}

ZkSpec parse_text(std::string_view text, const CredentialSchema& schema) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw std::invalid_argument("zkSpec text is not a JSON object");
  }
  if (j.value("version", "") != kSpecTextVersion) {
    throw std::invalid_argument("unsupported zkSpec version");
  }
  ZkSpec s;
  s.schema_ref = j.contains("schema")
                     ? Fr::parse("0x" + j.at("schema").get<std::string>())
                     : schema.schema_id();
  s.device_key_attribute_id =
      schema.at(j.at("device_key_attribute").get<std::string>()).id;
  const std::string mode = j.value("key_mode", "plain");
  if (mode != "plain" && mode != "committed") {
    throw std::invalid_argument("bad key_mode: " + mode);
  }
  s.key_mode = mode == "plain" ? KeyMode::kPlain : KeyMode::kCommitted;
  for (const auto& rj : j.at("requirements")) {
    const auto& def = schema.at(rj.at("attribute").get<std::string>());
    ClaimRequirement req{def.id, {}};
    auto value = [&](const json& v) {
      return crypto::parse_value(def.kind, v.is_string() ? v.get<std::string>()
                                                         : v.dump());
    };
    if (rj.contains("equality")) {
      req.condition = Condition::equality(value(rj["equality"]));
    } else if (rj.contains("range")) {
      const auto& b = rj["range"];
      std::optional<uint64_t> lo, hi;
      if (b.contains("min")) lo = value(b["min"]).number;
      if (b.contains("max")) hi = value(b["max"]).number;
      req.condition = Condition::range(lo, hi);
    } else if (rj.contains("membership")) {
      std::vector<AttributeValue> set;
      for (const auto& v : rj["membership"]) set.push_back(value(v));
      req.condition = Condition::membership(std::move(set));
    } else if (rj.contains("relative_time")) {
      const auto& t = rj["relative_time"];
      const std::string d = t.at("direction").get<std::string>();
      if (d != "not_older_than" && d != "not_newer_than") {
        throw std::invalid_argument("bad relative_time direction: " + d);
      }
      req.condition = Condition::relative_time(
          t.at("offset_seconds").get<int64_t>(),
          d == "not_older_than" ? TimeDirection::kNotOlderThan
                                : TimeDirection::kNotNewerThan);
    } else {
      throw std::invalid_argument("requirement on " + def.name +
                                  " has no condition");
    }
    s.requirements.push_back(std::move(req));
  }
  return s;
}

bool eval_condition(const Condition& c, const AttributeValue& value,
                    std::optional<uint64_t> now_ts) {
  switch (c.type) {
    case ConditionType::kEquality:
      if (c.target.kind != value.kind) {
        throw std::invalid_argument("equality: kind mismatch");
      }
      return crypto::encode_value(c.target) == crypto::encode_value(value);
    case ConditionType::kRange: {
      uint64_t v = number_of(value);
      return (!c.min || v >= *c.min) && (!c.max || v <= *c.max);
    }
    case ConditionType::kMembership: {
      const Fr e = crypto::encode_value(value);
      bool found = false;
      for (const auto& m : c.set) {
        if (m.kind != value.kind) {
          throw std::invalid_argument("membership: kind mismatch");
        }
        found = found || crypto::encode_value(m) == e;
      }
      return found;
    }
    case ConditionType::kRelativeTime: {
      if (value.kind != ValueKind::kDate) {
        throw std::invalid_argument("relative_time: date expected");
      }
      if (!now_ts) throw std::invalid_argument("relative_time: now_ts required");
      // 128-bit arithmetic; no overflow for 64-bit inputs.
      const __int128 t = value.number, now = *now_ts, off = c.offset_seconds;
      return c.direction == TimeDirection::kNotOlderThan ? t >= now - off
                                                         : t <= now - off;
    }
  }
  throw std::logic_error("bad condition type");
}

std::string ZkVpr::to_text() const {
  json extra = json::object();
  for (const auto& [k, v] : meta.extra) extra[k] = v;
  json j{{"cs_ref", cs_ref},
         {"meta", {{"created_at", meta.created_at},
                   {"extra", extra},
                   {"initiator", meta.initiator}}},
         {"proving_key", {{"locator", proving_key.locator},
                          {"sha256", proving_key.sha256}}},
         {"scheme", proofsys::scheme_name(scheme)},
         {"spec", crypto::hex_encode(canonical_bytes(spec))},
         {"version", kVprVersion}};
  return j.dump(2) + "\n";
}

ZkVpr ZkVpr::parse_text(std::string_view text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object() || j.value("version", "") != kVprVersion) {
    throw std::invalid_argument("not a zkVPR document");
  }
  ZkVpr v;
  v.spec = decode_spec(crypto::hex_decode(j.at("spec").get<std::string>()));
  v.proving_key = {j.at("proving_key").at("sha256").get<std::string>(),
                   j.at("proving_key").at("locator").get<std::string>()};
  v.cs_ref = j.at("cs_ref").get<std::string>();
  v.scheme = proofsys::parse_scheme(j.at("scheme").get<std::string>());
  const auto& m = j.at("meta");
  v.meta.initiator = m.at("initiator").get<std::string>();
  v.meta.created_at = m.at("created_at").get<uint64_t>();
  for (const auto& [k, val] : m.at("extra").items()) {
    v.meta.extra[k] = val.get<std::string>();
  }
  return v;
}

std::string ZkVpr::id() const { return crypto::hex_encode(crypto::sha256(to_text())); }

bool ZkVpr::proving_key_matches(std::span<const uint8_t> pk_bytes) const {
  return crypto::hex_encode(crypto::sha256(pk_bytes)) == proving_key.sha256;
}

ZkVpr build_zkvpr(const ZkSpec& spec, std::span<const uint8_t> pk_bytes,
                  const crypto::Digest32& pk_spec_id, std::string pk_locator,
                  std::string cs_ref, proofsys::SchemeId scheme,
                  ZkVprMeta meta) {
  if (pk_spec_id != spec_id(spec)) {
    throw std::invalid_argument("proving key was not produced for this spec");
  }
  return {spec.normalized(),
          {crypto::hex_encode(crypto::sha256(pk_bytes)), std::move(pk_locator)},
          std::move(cs_ref),
          scheme,
          std::move(meta)};
}

}  // namespace devreg::zkspec
