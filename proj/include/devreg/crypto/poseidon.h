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

#ifndef DEVREG_CRYPTO_POSEIDON_H_
#define DEVREG_CRYPTO_POSEIDON_H_

// Poseidon over BN254 Fr with the circomlib parameter set (x^5 S-box, eight
// full rounds). The circuit gadget consumes the same parameter tables.

#include <span>
#include <vector>

#include "devreg/ff/field.h"

namespace devreg::crypto {

using ff::Fr;

inline constexpr int kPoseidonFullRounds = 8;
inline constexpr size_t kPoseidonMaxArity = 5;

struct PoseidonParams {
  int width;  // t = arity + 1
  int partial_rounds;
  std::vector<Fr> round_constants;  // width * total rounds
  std::vector<Fr> mds;              // row-major width x width
  int total_rounds() const { return kPoseidonFullRounds + partial_rounds; }
  bool is_full_round(int r) const {
    return r < kPoseidonFullRounds / 2 ||
           r >= kPoseidonFullRounds / 2 + partial_rounds;
  }
};

// Arity in 1..kPoseidonMaxArity.
const PoseidonParams& poseidon_params(size_t arity);

// Fixed-arity permutation output; inputs.size() in 1..kPoseidonMaxArity.
Fr poseidon(std::span<const Fr> inputs);

// Digest of an arbitrary non-empty list. Up to five inputs this is exactly
// poseidon(inputs). Longer lists are absorbed as
//   acc = P(x0..x4); acc = P(acc, next four, zero padded) ...; P(acc, n)
// so the trailing length tag separates zero-padded tails.
Fr hash_fields(std::span<const Fr> inputs);
inline Fr hash_fields(std::initializer_list<Fr> inputs) {
  return hash_fields(std::span(inputs.begin(), inputs.size()));
}

}  // namespace devreg::crypto

#endif  // DEVREG_CRYPTO_POSEIDON_H_
