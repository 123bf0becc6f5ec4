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

#ifndef DEVREG_CIRCUIT_GADGETS_H_
#define DEVREG_CIRCUIT_GADGETS_H_

// Constraint gadgets. Each mirrors a native primitive bit-for-bit; hints are
// computed from the builder's current assignment.

#include <span>
#include <vector>

#include "devreg/crypto/babyjub.h"
#include "devreg/r1cs/r1cs.h"

namespace devreg::circuit {

using r1cs::Builder;
using r1cs::Fr;
using r1cs::LC;
using r1cs::Var;

struct PointVar {
  LC x, y;
  static PointVar constant(const crypto::Point& p) {
    return {LC::constant(p.x), LC::constant(p.y)};
  }
};

Var materialize(Builder& b, const LC& x);
Var mul(Builder& b, const LC& x, const LC& y);
void enforce_equal(Builder& b, const LC& x, const LC& y);
void enforce_boolean(Builder& b, Var bit);

// Little-endian bits with sum(2^i b_i) == x. Proves x < 2^n when n < 254.
std::vector<Var> to_bits(Builder& b, const LC& x, size_t n);
// Enforces that the little-endian bit vector encodes an integer < bound.
void enforce_bits_below(Builder& b, std::span<const Var> bits,
                        const ff::U256& bound);
// Canonical 254-bit decomposition of a field element (no aliasing mod r).
std::vector<Var> to_bits_strict(Builder& b, const LC& x);

// Circomlib-compatible Poseidon; 1..5 inputs.
LC poseidon(Builder& b, std::span<const LC> inputs);
// Mirrors crypto::hash_fields.
LC hash_fields(Builder& b, std::span<const LC> inputs);

// Complete twisted Edwards addition (6 constraints).
PointVar point_add(Builder& b, const PointVar& p, const PointVar& q);
void enforce_on_curve(Builder& b, const PointVar& p);
// Little-endian scalar bits.
PointVar scalar_mul(Builder& b, std::span<const Var> bits, const PointVar& p);
PointVar fixed_base_mul(Builder& b, std::span<const Var> bits,
                        const crypto::Point& base);

// EdDSA-Poseidon verification of digest m under pub, mirroring
// crypto::verify_digest for on-curve pub.
void verify_eddsa(Builder& b, const PointVar& pub, const LC& m,
                  const PointVar& r, const LC& s);

}  // namespace devreg::circuit

#endif  // DEVREG_CIRCUIT_GADGETS_H_
