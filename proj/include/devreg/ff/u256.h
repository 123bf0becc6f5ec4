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

#ifndef DEVREG_FF_U256_H_
#define DEVREG_FF_U256_H_

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace devreg::ff {

using u128 = unsigned __int128;

// Fixed-width 256-bit unsigned integer, little-endian 64-bit limbs.
struct U256 {
  std::array<uint64_t, 4> w{};

  constexpr U256() = default;
  constexpr explicit U256(uint64_t v) : w{v, 0, 0, 0} {}
  constexpr U256(uint64_t w0, uint64_t w1, uint64_t w2, uint64_t w3)
      : w{w0, w1, w2, w3} {}

  constexpr bool is_zero() const {
    return (w[0] | w[1] | w[2] | w[3]) == 0;
  }
  constexpr bool bit(size_t i) const {
    return i < 256 && ((w[i / 64] >> (i % 64)) & 1) != 0;
  }
  constexpr size_t bit_length() const {
    for (int i = 3; i >= 0; --i) {
      if (w[i] != 0) return 64 * i + (64 - __builtin_clzll(w[i]));
    }
    return 0;
  }

  friend constexpr bool operator==(const U256&, const U256&) = default;
  friend constexpr std::strong_ordering operator<=>(const U256& a,
                                                    const U256& b) {
    for (int i = 3; i >= 0; --i) {
      if (a.w[i] != b.w[i]) return a.w[i] <=> b.w[i];
    }
    return std::strong_ordering::equal;
  }
};

// a + b, returns carry.
constexpr uint64_t add_to(U256& a, const U256& b) {
  uint64_t carry = 0;
  for (int i = 0; i < 4; ++i) {
    u128 s = static_cast<u128>(a.w[i]) + b.w[i] + carry;
    a.w[i] = static_cast<uint64_t>(s);
    carry = static_cast<uint64_t>(s >> 64);
  }
  return carry;
}

// a - b, returns borrow.
constexpr uint64_t sub_from(U256& a, const U256& b) {
  uint64_t borrow = 0;
  for (int i = 0; i < 4; ++i) {
    u128 d = static_cast<u128>(a.w[i]) - b.w[i] - borrow;
    a.w[i] = static_cast<uint64_t>(d);
    borrow = static_cast<uint64_t>(d >> 64) & 1;
  }
  return borrow;
}

constexpr U256 shr1(U256 a) {
  for (int i = 0; i < 4; ++i) {
    a.w[i] = (a.w[i] >> 1) | (i < 3 ? (a.w[i + 1] << 63) : 0);
  }
  return a;
}

// Parses decimal or 0x-prefixed hex. Throws std::invalid_argument on
// malformed input or overflow.
U256 parse_u256(std::string_view text);
std::string to_decimal(const U256& v);
std::string to_hex(const U256& v);  // 64 hex digits, big-endian, no prefix

// Little-endian 32-byte encoding.
void to_bytes_le(const U256& v, std::span<uint8_t, 32> out);
U256 from_bytes_le(std::span<const uint8_t, 32> in);

// Multi-precision helpers for one-off constant derivation (backed by GMP).
// Values are little-endian 64-bit limb vectors.
using BigLimbs = std::vector<uint64_t>;
BigLimbs big_from_decimal(std::string_view text);

}  // namespace devreg::ff

#endif  // DEVREG_FF_U256_H_
