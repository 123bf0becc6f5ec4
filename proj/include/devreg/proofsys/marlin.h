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

// Marlin-style holographic proof over a universal KZG SRS.
//
// The index (circuit) is encoded once into row/col/val polynomials over a
// domain K covering the nonzero entries of A, B and C; the verifier only ever
// sees their commitments. A proof runs a lincheck sumcheck over H, reduced to
// one evaluation of the index, which a second sumcheck over K settles.

#ifndef DEVREG_PROOFSYS_MARLIN_H_
#define DEVREG_PROOFSYS_MARLIN_H_

#include <array>
#include <utility>
#include <vector>

#include "devreg/proofsys/kzg.h"

namespace devreg::proofsys::marlin {

// Supported |K| relative to |H|; matches the gadget density of the
// registration circuits (about five nonzeros per constraint).
inline constexpr uint64_t kIndexDensity = 8;

// SRS degree that supports circuits up to max_constraints.
uint64_t srs_degree_for(uint64_t max_constraints);

struct IndexInfo {
  uint64_t h_size = 0, k_size = 0;
  uint32_t num_public = 0, num_variables = 0, num_constraints = 0;
};

struct VerifyingKey {
  IndexInfo info;
  kzg::VerifierKey kzg;
  std::array<G1Affine, 5> index;  // row, col, val_a, val_b, val_c

  std::vector<uint8_t> serialize() const;
  static VerifyingKey deserialize(std::span<const uint8_t> bytes);
};

struct ProvingKey {
  VerifyingKey vk;
  kzg::CommitterKey ck;
  std::array<poly::Poly, 5> index;

  std::vector<uint8_t> serialize() const;
  static ProvingKey deserialize(std::span<const uint8_t> bytes);
};

struct Proof {
  // w, z_a, z_b, mask, g1, g1 shifted, h1, g2, g2 shifted, h2.
  std::array<G1Affine, 10> commitments;
  Fr sigma1, sigma2;
  // At beta1: w, z_a, z_b, mask, g1, h1. At beta2: row, col, val_a, val_b,
  // val_c, g2, h2.
  std::array<Fr, 13> evals;
  kzg::Opening open1, open2;

  std::vector<uint8_t> serialize() const;
  static Proof deserialize(std::span<const uint8_t> bytes);
};

// Throws std::invalid_argument("SRS too small") when the circuit exceeds the
// SRS bound.
std::pair<ProvingKey, VerifyingKey> index(const kzg::Srs& srs,
                                          uint64_t max_constraints,
                                          const r1cs::ConstraintSystem& cs);

Proof prove(const r1cs::ConstraintSystem& cs, std::span<const Fr> z,
            const ProvingKey& pk);

// pub excludes the leading constant.
bool verify(const VerifyingKey& vk, std::span<const Fr> pub, const Proof& proof);

}  // namespace devreg::proofsys::marlin

#endif  // DEVREG_PROOFSYS_MARLIN_H_
