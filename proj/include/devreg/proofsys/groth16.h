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

// Groth16 over BN254 with a per-circuit trusted setup.

#ifndef DEVREG_PROOFSYS_GROTH16_H_
#define DEVREG_PROOFSYS_GROTH16_H_

#include <utility>
#include <vector>

#include "devreg/proofsys/common.h"

namespace devreg::proofsys::groth16 {

struct VerifyingKey {
  G1Affine alpha;
  G2Affine beta, gamma, delta;
  std::vector<G1Affine> ic;  // one per public input plus the constant

  std::vector<uint8_t> serialize() const;
  static VerifyingKey deserialize(std::span<const uint8_t> bytes);
};

struct ProvingKey {
  uint32_t num_public = 0;
  uint32_t num_variables = 0;
  uint64_t domain_size = 0;
  G1Affine alpha, beta1, delta1;
  G2Affine beta2, delta2;
  std::vector<G1Affine> a, b1, h, l;  // l covers private variables only
  std::vector<G2Affine> b2;

  std::vector<uint8_t> serialize() const;
  static ProvingKey deserialize(std::span<const uint8_t> bytes);
};

struct Proof {
  G1Affine a;
  G2Affine b;
  G1Affine c;

  static constexpr size_t kBytes = 2 * ec::kG1Bytes + ec::kG2Bytes;
  std::vector<uint8_t> serialize() const;
  static Proof deserialize(std::span<const uint8_t> bytes);
};

// The toxic randomness lives only inside this call.
std::pair<ProvingKey, VerifyingKey> setup(const r1cs::ConstraintSystem& cs);

// z is the full assignment (z[0] = 1); it must satisfy cs.
Proof prove(const r1cs::ConstraintSystem& cs, std::span<const Fr> z,
            const ProvingKey& pk);

// pub excludes the leading constant.
bool verify(const VerifyingKey& vk, std::span<const Fr> pub, const Proof& proof);

}  // namespace devreg::proofsys::groth16

#endif  // DEVREG_PROOFSYS_GROTH16_H_
