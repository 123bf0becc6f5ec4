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

#ifndef DEVREG_CRYPTO_BABYJUB_H_
#define DEVREG_CRYPTO_BABYJUB_H_

// BabyJubJub: twisted Edwards curve a*x^2 + y^2 = 1 + d*x^2*y^2 over BN254
// Fr with a = 168700, d = 168696. Points are kept affine at the API boundary.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "devreg/ff/field.h"

namespace devreg::crypto {

using ff::Fr;
using ff::Fs;

inline constexpr uint64_t kJubA = 168700;
inline constexpr uint64_t kJubD = 168696;
inline constexpr size_t kPointBytes = 64;

struct Point {
  Fr x = Fr::zero();
  Fr y = Fr::one();

  static Point identity() { return {}; }
  bool is_identity() const { return x.is_zero() && y.is_one(); }
  bool is_on_curve() const;
  friend bool operator==(const Point&, const Point&) = default;

  Point operator-() const { return {-x, y}; }
  friend Point operator+(const Point& p, const Point& q);
  Point dbl() const { return *this + *this; }
  Point mul(const ff::U256& k) const;
  Point mul(const Fs& k) const { return mul(k.to_u256()); }

  // x then y, each 32-byte little-endian.
  std::array<uint8_t, kPointBytes> to_bytes() const;
  // Throws std::invalid_argument on non-canonical coordinates or off-curve.
  static Point from_bytes(std::span<const uint8_t, kPointBytes> in);
  std::string to_hex() const;
  static Point from_hex(std::string_view text);
};

// Generator of the prime-order subgroup (circomlib Base8).
const Point& base8();
// Cached window table for k * base8().
Point mul_base8(const Fs& k);

}  // namespace devreg::crypto

#endif  // DEVREG_CRYPTO_BABYJUB_H_
