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

#include "devreg/crypto/babyjub.h"

#include <stdexcept>
#include <vector>

#include "devreg/crypto/digest.h"

namespace devreg::crypto {
namespace {

const Fr& curve_a() {
  static const Fr a = ff::uncounted([] { return Fr::from_u64(kJubA); });
  return a;
}
const Fr& curve_d() {
  static const Fr d = ff::uncounted([] { return Fr::from_u64(kJubD); });
  return d;
}

// Projective (X : Y : Z) with x = X/Z, y = Y/Z. The addition law is complete
// because a is a square and d is not.
struct Proj {
  Fr X = Fr::zero(), Y = Fr::one(), Z = Fr::one();

  explicit Proj(const Point& p) : X(p.x), Y(p.y) {}
  Proj() = default;

  Proj add(const Proj& q) const {
    Fr A = Z * q.Z;
    Fr B = A.square();
    Fr C = X * q.X;
    Fr D = Y * q.Y;
    Fr E = curve_d() * C * D;
    Fr F = B - E;
    Fr G = B + E;
    Proj r;
    r.X = A * F * ((X + Y) * (q.X + q.Y) - C - D);
    r.Y = A * G * (D - curve_a() * C);
    r.Z = F * G;
    return r;
  }

  Point affine() const {
    Fr zi = Z.inverse();
    return {X * zi, Y * zi};
  }
};

struct Base8Table {
  static constexpr int kWindow = 4;
  static constexpr int kWindows = (256 + kWindow - 1) / kWindow;
  std::vector<Point> entries;  // kWindows * 15

  Base8Table() {
    Point b = base8();
    for (int w = 0; w < kWindows; ++w) {
      Point acc = b;
      for (int j = 1; j < 16; ++j) {
        entries.push_back(acc);
        acc = acc + b;
      }
      for (int s = 0; s < kWindow; ++s) b = b.dbl();
    }
  }
};

}  // namespace

bool Point::is_on_curve() const {
  Fr x2 = x.square(), y2 = y.square();
  return curve_a() * x2 + y2 == Fr::one() + curve_d() * x2 * y2;
}

Point operator+(const Point& p, const Point& q) {
  return Proj(p).add(Proj(q)).affine();
}

Point Point::mul(const ff::U256& k) const {
  Proj acc;
  const Proj base(*this);
  for (size_t i = k.bit_length(); i-- > 0;) {
    acc = acc.add(acc);
    if (k.bit(i)) acc = acc.add(base);
  }
  return acc.affine();
}

std::array<uint8_t, kPointBytes> Point::to_bytes() const {
  std::array<uint8_t, kPointBytes> out;
  x.to_bytes(std::span<uint8_t, 32>(out.data(), 32));
  y.to_bytes(std::span<uint8_t, 32>(out.data() + 32, 32));
  return out;
}

Point Point::from_bytes(std::span<const uint8_t, kPointBytes> in) {
  Point p{Fr::from_bytes(in.first<32>()), Fr::from_bytes(in.last<32>())};
  if (!p.is_on_curve()) throw std::invalid_argument("point not on curve");
  return p;
}

std::string Point::to_hex() const { return hex_encode(to_bytes()); }

Point Point::from_hex(std::string_view text) {
  Bytes b = hex_decode(text);
  if (b.size() != kPointBytes) throw std::invalid_argument("bad point length");
  return from_bytes(std::span<const uint8_t, kPointBytes>(b.data(), kPointBytes));
}

const Point& base8() {
  static const Point b = ff::uncounted([] {
    return Point{
        Fr::parse("5299619240641551281634865583518297030282874472190772894086521144"
                  "482721001553"),
        Fr::parse("1695015079846065771795862556782183455030166316162470778722281593"
                  "6182638968203")};
  });
  return b;
}

Point mul_base8(const Fs& k) {
  static const Base8Table table = ff::uncounted([] { return Base8Table(); });
  const ff::U256 e = k.to_u256();
  Proj acc;
  for (int w = 0; w < Base8Table::kWindows; ++w) {
    unsigned d = 0;
    for (int b = 0; b < Base8Table::kWindow; ++b) {
      if (e.bit(w * Base8Table::kWindow + b)) d |= 1u << b;
    }
    if (d != 0) acc = acc.add(Proj(table.entries[w * 15 + d - 1]));
  }
  return acc.affine();
}

}  // namespace devreg::crypto
