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

// KZG polynomial commitments with hiding and shifted-degree bounds, in the
// form used by Marlin-style provers.
//
// A commitment to p with hiding polynomial rho is p(tau)G + rho(tau)gammaG. A
// degree bound d on p is enforced by also committing X^s p with s = D - d,
// where D is the SRS maximum degree: a prover cannot commit anything above D.

#ifndef DEVREG_PROOFSYS_KZG_H_
#define DEVREG_PROOFSYS_KZG_H_

#include <span>
#include <vector>

#include "devreg/proofsys/common.h"
#include "devreg/proofsys/poly.h"

namespace devreg::proofsys::kzg {

inline constexpr size_t kHidingPolyLen = 2;  // supports one opening per poly

struct Srs {
  uint64_t max_degree = 0;
  std::vector<G1Affine> powers;        // tau^i G, i <= max_degree
  std::vector<G1Affine> gamma_powers;  // gamma tau^i G, i < kHidingPolyLen
  G2Affine h, beta_h;                  // H, tau H
};

// tau and gamma are derived from the seed; the caller owns its secrecy.
Srs generate(uint64_t max_degree, std::span<const uint8_t> seed);

struct CommitterKey {
  uint64_t max_degree = 0;
  std::vector<G1Affine> powers;  // prefix of the SRS powers
  uint64_t shift_start = 0;      // first index of the top window
  std::vector<G1Affine> shifted;  // SRS powers shift_start..max_degree
  std::vector<G1Affine> gamma_powers;
};

struct VerifierKey {
  uint64_t max_degree = 0;
  G1Affine g, gamma_g;
  G2Affine h, beta_h;
  // tau^(D - bound) G for each supported degree bound.
  std::vector<std::pair<uint64_t, G1Affine>> shift_bases;
};

// prefix_len powers for plain commitments; the top window covers degree
// bounds up to max_bound. Throws std::invalid_argument if the SRS is short.
CommitterKey trim(const Srs& srs, size_t prefix_len, size_t max_bound);
VerifierKey verifier_key(const Srs& srs, std::span<const uint64_t> bounds);

// Hiding randomness; empty means a non-hiding commitment.
using Blinder = poly::Poly;

G1 commit(const CommitterKey& ck, std::span<const Fr> p, const Blinder& r = {});
// Commitment to X^(D - bound) p.
G1 commit_shifted(const CommitterKey& ck, std::span<const Fr> p, size_t bound,
                  const Blinder& r = {});

// One committed polynomial opened at the batch point. shift_bound = 0 means
// a plain commitment; otherwise the commitment is to X^(D - bound) p.
struct ProverItem {
  std::span<const Fr> p;
  const Blinder* blinder = nullptr;
  size_t shift_bound = 0;
};
struct VerifierItem {
  G1Affine commitment;
  Fr value;  // p(z), also for shifted items
  size_t shift_bound = 0;
};

struct Opening {
  G1Affine w;
  Fr blinder_eval;
};

// Batched opening at z with separation challenge xi.
Opening open(const CommitterKey& ck, std::span<const ProverItem> items,
             const Fr& z, const Fr& xi);

struct BatchCheck {
  std::vector<VerifierItem> items;
  Fr z, xi;
  Opening opening;
};
// All batches folded into one pairing equation with challenge u.
bool verify(const VerifierKey& vk, std::span<const BatchCheck> batches, const Fr& u);

void write_vk(util::ByteWriter& w, const VerifierKey& vk);
VerifierKey read_vk(util::ByteReader& r);
void write_ck(util::ByteWriter& w, const CommitterKey& ck);
CommitterKey read_ck(util::ByteReader& r);

}  // namespace devreg::proofsys::kzg

#endif  // DEVREG_PROOFSYS_KZG_H_
