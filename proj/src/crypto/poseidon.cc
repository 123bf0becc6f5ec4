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

#include "devreg/crypto/poseidon.h"

#include <array>
#include <stdexcept>

namespace devreg::crypto {
namespace {

#include "poseidon_constants.inc"

template <size_t NC, size_t NM>
PoseidonParams make(int width, int partial, const char* const (&c)[NC],
                    const char* const (&m)[NM]) {
  PoseidonParams p;
  p.width = width;
  p.partial_rounds = partial;
  for (const char* s : c) p.round_constants.push_back(Fr::parse(s));
  for (const char* s : m) p.mds.push_back(Fr::parse(s));
  if (p.round_constants.size() !=
          static_cast<size_t>(width * p.total_rounds()) ||
      p.mds.size() != static_cast<size_t>(width * width)) {
    throw std::logic_error("poseidon parameter table has wrong shape");
  }
  return p;
}

Fr pow5(const Fr& x) {
  Fr x2 = x.square();
  return x2.square() * x;
}

}  // namespace

const PoseidonParams& poseidon_params(size_t arity) {
  static const auto kTables = ff::uncounted([] {
    return std::array<PoseidonParams, kPoseidonMaxArity>{
        make(2, kPartialRoundsT2, kRoundConstantsT2, kMdsT2),
        make(3, kPartialRoundsT3, kRoundConstantsT3, kMdsT3),
        make(4, kPartialRoundsT4, kRoundConstantsT4, kMdsT4),
        make(5, kPartialRoundsT5, kRoundConstantsT5, kMdsT5),
        make(6, kPartialRoundsT6, kRoundConstantsT6, kMdsT6),
    };
  });
  if (arity < 1 || arity > kPoseidonMaxArity) {
    throw std::invalid_argument("poseidon arity out of range");
  }
  return kTables[arity - 1];
}

Fr poseidon(std::span<const Fr> inputs) {
  const PoseidonParams& p = poseidon_params(inputs.size());
  const int t = p.width;
  std::array<Fr, kPoseidonMaxArity + 1> s{}, next{};
  for (size_t i = 0; i < inputs.size(); ++i) s[i + 1] = inputs[i];
  for (int r = 0; r < p.total_rounds(); ++r) {
    for (int i = 0; i < t; ++i) s[i] += p.round_constants[r * t + i];
    if (p.is_full_round(r)) {
      for (int i = 0; i < t; ++i) s[i] = pow5(s[i]);
    } else {
      s[0] = pow5(s[0]);
    }
    for (int i = 0; i < t; ++i) {
      Fr acc;
      for (int j = 0; j < t; ++j) acc += p.mds[i * t + j] * s[j];
      next[i] = acc;
    }
    s = next;
  }
  return s[0];
}

Fr hash_fields(std::span<const Fr> inputs) {
  if (inputs.empty()) throw std::invalid_argument("hash_fields: empty input");
  if (inputs.size() <= kPoseidonMaxArity) return poseidon(inputs);
  Fr acc = poseidon(inputs.first(kPoseidonMaxArity));
  for (size_t i = kPoseidonMaxArity; i < inputs.size(); i += 4) {
    std::array<Fr, 5> block{acc, Fr{}, Fr{}, Fr{}, Fr{}};
    for (size_t j = 0; j < 4 && i + j < inputs.size(); ++j) {
      block[j + 1] = inputs[i + j];
    }
    acc = poseidon(block);
  }
  std::array<Fr, 2> tail{acc, Fr::from_u64(inputs.size())};
  return poseidon(tail);
}

}  // namespace devreg::crypto
