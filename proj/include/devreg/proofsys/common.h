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

// Pieces shared by the two proof systems: sparse R1CS matrices, a Fiat-Shamir
// transcript, randomness and point codecs.

#ifndef DEVREG_PROOFSYS_COMMON_H_
#define DEVREG_PROOFSYS_COMMON_H_

#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "devreg/ec/bn254.h"
#include "devreg/r1cs/r1cs.h"
#include "devreg/util/codec.h"

namespace devreg::proofsys {

using ec::G1;
using ec::G1Affine;
using ec::G2;
using ec::G2Affine;
using ff::Fr;

// Row-major sparse matrix with sorted, duplicate-free rows.
struct SparseMatrix {
  std::vector<std::vector<std::pair<uint32_t, Fr>>> rows;
  size_t nnz() const;
  // (M z)_i for every row.
  std::vector<Fr> mul(std::span<const Fr> z) const;
};

struct R1csMatrices {
  SparseMatrix a, b, c;
};
R1csMatrices to_matrices(const r1cs::ConstraintSystem& cs);

// Process-wide randomness for setup and proving. By default it comes from the
// OS CSPRNG. After seed_randomness(seed) it is a SHA-512 counter stream keyed
// by the seed, so runs are reproducible; an empty seed restores the OS source.
void seed_randomness(std::span<const uint8_t> seed);
void random_bytes(std::span<uint8_t> out);
// Uniform in Fr.
Fr random_fr();

class Transcript {
 public:
  explicit Transcript(std::string_view domain);
  void absorb(std::string_view label, std::span<const uint8_t> data);
  void absorb(std::string_view label, const Fr& x);
  void absorb(std::string_view label, const G1Affine& p);
  Fr challenge(std::string_view label);

 private:
  std::vector<uint8_t> state_;
};

void put_g1(util::ByteWriter& w, const G1Affine& p);
void put_g2(util::ByteWriter& w, const G2Affine& p);
void put_g1s(util::ByteWriter& w, std::span<const G1Affine> ps);
void put_g2s(util::ByteWriter& w, std::span<const G2Affine> ps);
G1Affine get_g1(util::ByteReader& r);
// trusted = true skips the G2 subgroup check; only for material the caller
// produced itself (proving keys), never for proofs or verification keys.
G2Affine get_g2(util::ByteReader& r, bool trusted = false);
std::vector<G1Affine> get_g1s(util::ByteReader& r);
std::vector<G2Affine> get_g2s(util::ByteReader& r, bool trusted = false);

}  // namespace devreg::proofsys

#endif  // DEVREG_PROOFSYS_COMMON_H_
