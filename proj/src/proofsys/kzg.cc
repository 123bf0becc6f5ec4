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

#include "devreg/proofsys/kzg.h"

#include <stdexcept>

#include "devreg/crypto/digest.h"
#include "devreg/kernels/msm.h"

namespace devreg::proofsys::kzg {
namespace {

Fr derive(std::span<const uint8_t> seed, std::string_view tag) {
  util::ByteWriter w;
  w.str(tag);
  w.bytes(seed);
  return Fr::from_bytes_wide(crypto::sha512(w.data()));
}

G1 msm_at(std::span<const G1Affine> bases, size_t offset, std::span<const Fr> k) {
  if (k.empty()) return G1();
  if (offset + k.size() > bases.size()) {
    throw std::invalid_argument("polynomial degree exceeds the committer key");
  }
  return kernels::msm<G1>(bases.subspan(offset, k.size()), k);
}

G1 blind(const CommitterKey& ck, const Blinder& r) {
  return msm_at(ck.gamma_powers, 0, r);
}

size_t shift_of(const CommitterKey& ck, size_t bound) {
  if (bound > ck.max_degree || ck.max_degree - bound < ck.shift_start) {
    throw std::invalid_argument("degree bound outside the committer key");
  }
  return ck.max_degree - bound;
}

const G1Affine& shift_base(const VerifierKey& vk, uint64_t bound) {
  for (const auto& [b, p] : vk.shift_bases) {
    if (b == bound) return p;
  }
  throw std::invalid_argument("unsupported degree bound");
}

}  // namespace

Srs generate(uint64_t max_degree, std::span<const uint8_t> seed) {
  const Fr tau = derive(seed, "devreg.kzg.tau");
  const Fr gamma = derive(seed, "devreg.kzg.gamma");
  std::vector<Fr> pw(max_degree + 1);
  Fr acc = Fr::one();
  for (auto& p : pw) {
    p = acc;
    acc *= tau;
  }
  Srs srs;
  srs.max_degree = max_degree;
  srs.powers = kernels::fixed_base_batch<G1>(ec::g1_generator(), pw);
  pw.resize(kHidingPolyLen);
  for (auto& p : pw) p *= gamma;
  srs.gamma_powers = kernels::fixed_base_batch<G1>(ec::g1_generator(), pw);
  srs.h = ec::g2_generator();
  srs.beta_h = G2(srs.h).mul(tau).to_affine();
  return srs;
}

CommitterKey trim(const Srs& srs, size_t prefix_len, size_t max_bound) {
  if (prefix_len > srs.powers.size() || max_bound > srs.max_degree) {
    throw std::invalid_argument("SRS too small");
  }
  CommitterKey ck;
  ck.max_degree = srs.max_degree;
  ck.powers.assign(srs.powers.begin(), srs.powers.begin() + prefix_len);
  ck.shift_start = srs.max_degree - max_bound;
  ck.shifted.assign(srs.powers.begin() + ck.shift_start, srs.powers.end());
  ck.gamma_powers = srs.gamma_powers;
  return ck;
}

VerifierKey verifier_key(const Srs& srs, std::span<const uint64_t> bounds) {
  VerifierKey vk{srs.max_degree, srs.powers[0], srs.gamma_powers[0], srs.h,
                 srs.beta_h, {}};
  for (uint64_t b : bounds) {
    if (b > srs.max_degree) throw std::invalid_argument("SRS too small");
    vk.shift_bases.emplace_back(b, srs.powers[srs.max_degree - b]);
  }
  return vk;
}

G1 commit(const CommitterKey& ck, std::span<const Fr> p, const Blinder& r) {
  return msm_at(ck.powers, 0, p) + blind(ck, r);
}

G1 commit_shifted(const CommitterKey& ck, std::span<const Fr> p, size_t bound,
                  const Blinder& r) {
  if (p.size() > bound + 1) throw std::invalid_argument("polynomial exceeds its degree bound");
  const size_t s = shift_of(ck, bound);
  return msm_at(ck.shifted, s - ck.shift_start, p) + blind(ck, r);
}

Opening open(const CommitterKey& ck, std::span<const ProverItem> items,
             const Fr& z, const Fr& xi) {
  // Witness pieces grouped by shift: sum xi^i (p_i - p_i(z)) / (X - z).
  std::vector<std::pair<size_t, poly::Poly>> groups;
  poly::Poly blinders;
  Fr k = Fr::one();
  for (const auto& it : items) {
    const size_t shift = it.shift_bound ? shift_of(ck, it.shift_bound) : 0;
    poly::Poly* target = nullptr;
    for (auto& [s, q] : groups) {
      if (s == shift) target = &q;
    }
    if (!target) target = &groups.emplace_back(shift, poly::Poly{}).second;
    poly::add_scaled(*target, poly::divide_by_linear(it.p, z), k);
    if (it.blinder) poly::add_scaled(blinders, *it.blinder, k);
    k *= xi;
  }
  G1 w;
  for (const auto& [s, q] : groups) {
    w += s == 0 ? msm_at(ck.powers, 0, q) : msm_at(ck.shifted, s - ck.shift_start, q);
  }
  Opening o;
  o.blinder_eval = poly::evaluate(blinders, z);
  w += msm_at(ck.gamma_powers, 0, poly::divide_by_linear(blinders, z));
  o.w = w.to_affine();
  return o;
}

bool verify(const VerifierKey& vk, std::span<const BatchCheck> batches, const Fr& u) {
  // For each batch: sum xi^i (C_i - v_i tau^(s_i) G) - r gammaG + z W pairs
  // with H, and W pairs with tau H.
  std::vector<G1Affine> bases;
  std::vector<Fr> scalars;
  G1 w_sum;
  Fr uk = Fr::one();
  for (const auto& b : batches) {
    Fr k = uk;
    Fr plain_value;
    for (const auto& it : b.items) {
      bases.push_back(it.commitment);
      scalars.push_back(k);
      if (it.shift_bound == 0) {
        plain_value += k * it.value;
      } else {
        bases.push_back(shift_base(vk, it.shift_bound));
        scalars.push_back(-(k * it.value));
      }
      k *= b.xi;
    }
    bases.push_back(vk.g);
    scalars.push_back(-plain_value);
    bases.push_back(vk.gamma_g);
    scalars.push_back(-(uk * b.opening.blinder_eval));
    bases.push_back(b.opening.w);
    scalars.push_back(uk * b.z);
    w_sum += G1(b.opening.w).mul(uk);
    uk *= u;
  }
  const G1 lhs = kernels::msm<G1>(bases, scalars);
  const std::pair<G1Affine, G2Affine> pairs[] = {
      {lhs.to_affine(), vk.h},
      {(-w_sum).to_affine(), vk.beta_h},
  };
  return ec::pairing_product_is_one(pairs);
}

void write_vk(util::ByteWriter& w, const VerifierKey& vk) {
  w.u64(vk.max_degree);
  put_g1(w, vk.g);
  put_g1(w, vk.gamma_g);
  put_g2(w, vk.h);
  put_g2(w, vk.beta_h);
  w.u64(vk.shift_bases.size());
  for (const auto& [b, p] : vk.shift_bases) {
    w.u64(b);
    put_g1(w, p);
  }
}

VerifierKey read_vk(util::ByteReader& r) {
  VerifierKey vk;
  vk.max_degree = r.u64();
  vk.g = get_g1(r);
  vk.gamma_g = get_g1(r);
  vk.h = get_g2(r);
  vk.beta_h = get_g2(r);
  const uint64_t n = r.length(8 + ec::kG1Bytes);
  for (uint64_t i = 0; i < n; ++i) {
    const uint64_t b = r.u64();
    vk.shift_bases.emplace_back(b, get_g1(r));
  }
  return vk;
}

void write_ck(util::ByteWriter& w, const CommitterKey& ck) {
  w.u64(ck.max_degree);
  w.u64(ck.shift_start);
  put_g1s(w, ck.powers);
  put_g1s(w, ck.shifted);
  put_g1s(w, ck.gamma_powers);
}

CommitterKey read_ck(util::ByteReader& r) {
  CommitterKey ck;
  ck.max_degree = r.u64();
  ck.shift_start = r.u64();
  ck.powers = get_g1s(r);
  ck.shifted = get_g1s(r);
  ck.gamma_powers = get_g1s(r);
  if (ck.shift_start > ck.max_degree ||
      ck.shifted.size() != ck.max_degree - ck.shift_start + 1 ||
      ck.gamma_powers.size() != kHidingPolyLen) {
    throw std::invalid_argument("malformed committer key");
  }
  return ck;
}

}  // namespace devreg::proofsys::kzg
