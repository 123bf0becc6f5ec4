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

#include "devreg/crypto/encoding.h"

#include <charconv>
#include <stdexcept>

#include "devreg/crypto/digest.h"
#include "devreg/crypto/poseidon.h"

namespace devreg::crypto {

std::string_view kind_name(ValueKind k) {
  switch (k) {
    case ValueKind::kUint: return "uint";
    case ValueKind::kString: return "string";
    case ValueKind::kDate: return "date";
    case ValueKind::kPoint: return "point";
  }
  return "?";
}

ValueKind parse_kind(std::string_view name) {
  for (ValueKind k : {ValueKind::kUint, ValueKind::kString, ValueKind::kDate,
                      ValueKind::kPoint}) {
    if (kind_name(k) == name) return k;
  }
  throw std::invalid_argument("unknown value kind: " + std::string(name));
}

std::vector<Fr> string_preimage(std::string_view s) {
  std::vector<Fr> out{Fr::from_u64(s.size())};
  for (size_t off = 0; off < s.size(); off += kStringChunkBytes) {
    std::array<uint8_t, 32> chunk{};
    for (size_t i = 0; i < kStringChunkBytes && off + i < s.size(); ++i) {
      chunk[i] = static_cast<uint8_t>(s[off + i]);
    }
    out.push_back(Fr::from_bytes(chunk));
  }
  return out;
}

Fr encode_value(const AttributeValue& v) {
  switch (v.kind) {
    case ValueKind::kUint:
    case ValueKind::kDate:
      return Fr::from_u64(v.number);
    case ValueKind::kString:
      return hash_fields(string_preimage(v.text));
    case ValueKind::kPoint:
      return hash_fields({v.point.x, v.point.y});
  }
  throw std::logic_error("bad value kind");
}

Fr bytes_digest(std::span<const uint8_t> data) {
  return Fr::from_bytes_wide(sha256(data));
}

uint64_t parse_u64(std::string_view text) {
  uint64_t v = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
    throw std::invalid_argument("not an unsigned 64-bit integer: " +
                                std::string(text));
  }
  return v;
}

namespace {

// Days since 1970-01-01 for a proleptic Gregorian date.
int64_t days_from_civil(int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<int64_t>(doe) - 719468;
}

unsigned field(std::string_view s, size_t pos, size_t len, unsigned max) {
  if (pos + len > s.size()) throw std::invalid_argument("truncated date");
  uint64_t v = parse_u64(s.substr(pos, len));
  if (v > max) throw std::invalid_argument("date field out of range");
  return static_cast<unsigned>(v);
}

}  // namespace

uint64_t parse_iso_date(std::string_view s) {
  if (s.size() != 10 && s.size() != 20) {
    throw std::invalid_argument("expected YYYY-MM-DD or YYYY-MM-DDTHH:MM:SSZ");
  }
  if (s[4] != '-' || s[7] != '-') throw std::invalid_argument("bad date");
  unsigned y = field(s, 0, 4, 9999), mo = field(s, 5, 2, 12),
           d = field(s, 8, 2, 31);
  unsigned h = 0, mi = 0, sec = 0;
  if (s.size() == 20) {
    if (s[10] != 'T' || s[13] != ':' || s[16] != ':' || s[19] != 'Z') {
      throw std::invalid_argument("bad time");
    }
    h = field(s, 11, 2, 23);
    mi = field(s, 14, 2, 59);
    sec = field(s, 17, 2, 59);
  }
  if (y < 1970 || mo == 0 || d == 0) throw std::invalid_argument("bad date");
  int64_t days = days_from_civil(y, mo, d);
  return static_cast<uint64_t>(days) * 86400 + h * 3600 + mi * 60 + sec;
}

AttributeValue parse_value(ValueKind kind, std::string_view text) {
  switch (kind) {
    case ValueKind::kUint:
      return AttributeValue::uint(parse_u64(text));
    case ValueKind::kDate:
      return AttributeValue::date(text.find('-') != std::string_view::npos
                                      ? parse_iso_date(text)
                                      : parse_u64(text));
    case ValueKind::kString:
      return AttributeValue::string(std::string(text));
    case ValueKind::kPoint:
      return AttributeValue::point_value(Point::from_hex(text));
  }
  throw std::logic_error("bad value kind");
}

std::string format_value(const AttributeValue& v) {
  switch (v.kind) {
    case ValueKind::kUint:
    case ValueKind::kDate:
      return std::to_string(v.number);
    case ValueKind::kString:
      return v.text;
    case ValueKind::kPoint:
      return v.point.to_hex();
  }
  throw std::logic_error("bad value kind");
}

}  // namespace devreg::crypto
