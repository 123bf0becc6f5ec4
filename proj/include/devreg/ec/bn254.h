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

#ifndef DEVREG_EC_BN254_H_
#define DEVREG_EC_BN254_H_

// BN254 (alt_bn128) groups and the optimal ate pairing.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "devreg/ec/curve.h"
#include "devreg/ec/tower.h"

namespace devreg::ec {

struct G1Cfg {
  using Base = Fq;
  static Fq b() { return Fq::from_u64(3); }
};
struct G2Cfg {
  using Base = Fq2;
  static Fq2 b();  // 3 / xi
};

using G1 = Jacobian<G1Cfg>;
using G2 = Jacobian<G2Cfg>;
using G1Affine = G1::Affine;
using G2Affine = G2::Affine;

const G1Affine& g1_generator();
const G2Affine& g2_generator();

inline constexpr size_t kG1Bytes = 64;
inline constexpr size_t kG2Bytes = 128;

// Uncompressed little-endian coordinates; the point at infinity is all zero.
void write_g1(const G1Affine& p, std::span<uint8_t, kG1Bytes> out);
void write_g2(const G2Affine& p, std::span<uint8_t, kG2Bytes> out);
// Throws std::invalid_argument on non-canonical coordinates, off-curve
// points, or (for G2) points outside the order-r subgroup.
G1Affine read_g1(std::span<const uint8_t, kG1Bytes> in);
G2Affine read_g2(std::span<const uint8_t, kG2Bytes> in);

std::vector<G1Affine> batch_to_affine(std::span<const G1> pts);
std::vector<G2Affine> batch_to_affine(std::span<const G2> pts);

bool g2_in_subgroup(const G2Affine& q);

Fq12 miller_loop(std::span<const std::pair<G1Affine, G2Affine>> pairs);
Fq12 final_exponentiation(const Fq12& f);
Fq12 pairing(const G1Affine& p, const G2Affine& q);
// True iff prod e(p_i, q_i) == 1.
bool pairing_product_is_one(
    std::span<const std::pair<G1Affine, G2Affine>> pairs);

}  // namespace devreg::ec

#endif  // DEVREG_EC_BN254_H_
