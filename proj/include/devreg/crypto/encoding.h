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

#ifndef DEVREG_CRYPTO_ENCODING_H_
#define DEVREG_CRYPTO_ENCODING_H_

// Attribute values and their field-element encodings.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "devreg/crypto/babyjub.h"

namespace devreg::crypto {

// kPoint carries a curve point such as an attested device key.
enum class ValueKind { kUint, kString, kDate, kPoint };

std::string_view kind_name(ValueKind k);
// Throws std::invalid_argument for unknown names.
ValueKind parse_kind(std::string_view name);

struct AttributeValue {
  ValueKind kind = ValueKind::kUint;
  uint64_t number = 0;  // uint and date (Unix seconds)
  std::string text;     // string
  Point point;          // point

  static AttributeValue uint(uint64_t v) { return {ValueKind::kUint, v, {}, {}}; }
  static AttributeValue date(uint64_t t) { return {ValueKind::kDate, t, {}, {}}; }
  static AttributeValue string(std::string s) {
    return {ValueKind::kString, 0, std::move(s), {}};
  }
  static AttributeValue point_value(const Point& p) {
    return {ValueKind::kPoint, 0, {}, p};
  }

  friend bool operator==(const AttributeValue&, const AttributeValue&) = default;
};

// uint/date embed directly; string hashes string_preimage; point hashes (x, y).
Fr encode_value(const AttributeValue& v);

// [byte length, 31-byte little-endian chunks...]. Length-prefixed so the
// encoding is injective.
std::vector<Fr> string_preimage(std::string_view s);

inline constexpr size_t kStringChunkBytes = 31;

// SHA-256 of arbitrary bytes reduced into Fr; used for payloads that are
// signed but never opened inside a circuit.
Fr bytes_digest(std::span<const uint8_t> data);

// Text forms used by files and the CLI:
//   uint   decimal below 2^64
//   date   Unix seconds or YYYY-MM-DD[THH:MM:SSZ]
//   string raw bytes
//   point  128 hex digits (x || y, little-endian)
// Throws std::invalid_argument on malformed or out-of-range input.
AttributeValue parse_value(ValueKind kind, std::string_view text);
std::string format_value(const AttributeValue& v);

// Strict parse of a decimal integer below 2^64.
uint64_t parse_u64(std::string_view text);
// Unix seconds for an ISO-8601 UTC date or date-time.
uint64_t parse_iso_date(std::string_view text);

}  // namespace devreg::crypto

#endif  // DEVREG_CRYPTO_ENCODING_H_
