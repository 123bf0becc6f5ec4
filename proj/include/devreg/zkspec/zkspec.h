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

#ifndef DEVREG_ZKSPEC_ZKSPEC_H_
#define DEVREG_ZKSPEC_ZKSPEC_H_

// The zero-knowledge proof specification: which attested attributes a
// registering device must satisfy which conditions over, and which attribute
// carries the device key.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "devreg/credential/credential.h"
#include "devreg/crypto/digest.h"
#include "devreg/proofsys/scheme.h"

namespace devreg::zkspec {

using credential::AttributeValue;
using credential::CredentialSchema;
using credential::Fr;
using credential::ValueKind;

inline constexpr size_t kDefaultMaxSetSize = 64;
// |offset_seconds| bound; keeps time differences inside the gadget's range.
inline constexpr int64_t kMaxTimeOffset = int64_t{1} << 62;

enum class ConditionType : uint8_t {
  kEquality = 1,
  kRange = 2,
  kMembership = 3,
  kRelativeTime = 4,
};
std::string_view condition_name(ConditionType t);

// not_older_than(o): value >= now - o.  not_newer_than(o): value <= now - o.
enum class TimeDirection : uint8_t { kNotOlderThan = 1, kNotNewerThan = 2 };

struct Condition {
  ConditionType type = ConditionType::kEquality;
  AttributeValue target;                 // equality
  std::optional<uint64_t> min, max;      // range, inclusive
  std::vector<AttributeValue> set;       // membership
  int64_t offset_seconds = 0;            // relative time
  TimeDirection direction = TimeDirection::kNotOlderThan;

  static Condition equality(AttributeValue v);
  static Condition range(std::optional<uint64_t> min, std::optional<uint64_t> max);
  static Condition membership(std::vector<AttributeValue> set);
  static Condition relative_time(int64_t offset, TimeDirection d);

  friend bool operator==(const Condition&, const Condition&) = default;
};

struct ClaimRequirement {
  uint32_t attribute_id = 0;
  Condition condition;
  friend bool operator==(const ClaimRequirement&,
                         const ClaimRequirement&) = default;
};

// kPlain exposes the device key as a public input; kCommitted exposes only
// hash_fields([x, y, randomness]).
enum class KeyMode : uint8_t { kPlain = 1, kCommitted = 2 };
std::string_view key_mode_name(KeyMode m);

struct ZkSpec {
  Fr schema_ref;
  std::vector<ClaimRequirement> requirements;
  uint32_t device_key_attribute_id = 0;
  KeyMode key_mode = KeyMode::kPlain;

  friend bool operator==(const ZkSpec&, const ZkSpec&) = default;

  // Requirements sorted by (attribute, encoding); membership sets sorted and
  // deduplicated. canonical_bytes(s) == canonical_bytes(s.normalized()).
  ZkSpec normalized() const;
  bool has_relative_time() const;
};

struct Finding {
  int requirement = -1;  // -1 for spec-level findings
  std::string code;      // e.g. "kind mismatch"
  std::string message;
};

// Empty iff the spec type-checks against the schema.
std::vector<Finding> validate_spec(const ZkSpec& spec,
                                   const CredentialSchema& schema,
                                   size_t max_set_size = kDefaultMaxSetSize);

// Deterministic length-prefixed encoding of spec.normalized().
std::vector<uint8_t> canonical_bytes(const ZkSpec& spec);
// Inverse of canonical_bytes; throws std::invalid_argument on bad input.
ZkSpec decode_spec(std::span<const uint8_t> bytes);
// SHA-256 of canonical_bytes.
crypto::Digest32 spec_id(const ZkSpec& spec);

// Human-readable JSON form using attribute names from the schema.
std::string to_text(const ZkSpec& spec, const CredentialSchema& schema);
ZkSpec parse_text(std::string_view text, const CredentialSchema& schema);

// Native evaluation; the circuit's condition gadgets must agree with it.
// Throws std::invalid_argument on a kind mismatch or a missing now_ts.
bool eval_condition(const Condition& c, const AttributeValue& value,
                    std::optional<uint64_t> now_ts = std::nullopt);

struct ContentRef {
  std::string sha256;   // hex
  std::string locator;  // e.g. a VDR record id or a path
  friend bool operator==(const ContentRef&, const ContentRef&) = default;
};

// Minimal, extensible metadata block.
struct ZkVprMeta {
  std::string initiator;
  uint64_t created_at = 0;
  std::map<std::string, std::string> extra;
  friend bool operator==(const ZkVprMeta&, const ZkVprMeta&) = default;
};

struct ZkVpr {
  ZkSpec spec;
  ContentRef proving_key;
  std::string cs_ref;  // schema record id
  proofsys::SchemeId scheme = proofsys::SchemeId::kPerCircuitSetup;
  ZkVprMeta meta;

  friend bool operator==(const ZkVpr&, const ZkVpr&) = default;

  std::string to_text() const;
  static ZkVpr parse_text(std::string_view text);
  // SHA-256 of to_text().
  std::string id() const;
  // Owner-side check before proving.
  bool proving_key_matches(std::span<const uint8_t> pk_bytes) const;
};

// `pk_spec_id` is the spec id the proving key is bound to; a mismatch means
// the key is stale and throws std::invalid_argument.
ZkVpr build_zkvpr(const ZkSpec& spec, std::span<const uint8_t> pk_bytes,
                  const crypto::Digest32& pk_spec_id, std::string pk_locator, std::string cs_ref,
                  proofsys::SchemeId scheme, ZkVprMeta meta = {});

}  // namespace devreg::zkspec

#endif  // DEVREG_ZKSPEC_ZKSPEC_H_
