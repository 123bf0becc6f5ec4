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

#include "devreg/proofsys/groth16.h"

#include <stdexcept>

#include "devreg/kernels/msm.h"
#include "devreg/kernels/ntt.h"

namespace devreg::proofsys::groth16 {
namespace {

using kernels::Domain;

// Each public input (and the constant) gets an extra row z_i * 0 = 0 so the
// input polynomials are linearly independent.
size_t qap_rows(const r1cs::ConstraintSystem& cs) {
  return cs.constraints.size() + cs.num_public + 1;
}

G1 g1_mul(const G1Affine& p, const Fr& k) { return G1(p).mul(k); }
G2 g2_mul(const G2Affine& p, const Fr& k) { return G2(p).mul(k); }

}  // namespace

std::pair<ProvingKey, VerifyingKey> setup(const r1cs::ConstraintSystem& cs) {
  const R1csMatrices m = to_matrices(cs);
  const Domain dom(qap_rows(cs));
  const size_t n = dom.size();
  const size_t nv = cs.num_variables;
  const size_t np = cs.num_public;

  Fr tau = random_fr(), alpha = random_fr(), beta = random_fr();
  Fr gamma = random_fr(), delta = random_fr();
  while (dom.vanishing_at(tau).is_zero()) tau = random_fr();

  const std::vector<Fr> lag = dom.lagrange_at(tau);
  std::vector<Fr> u(nv), v(nv), w(nv);
  for (size_t j = 0; j < m.a.rows.size(); ++j) {
    for (const auto& [i, c] : m.a.rows[j]) u[i] += c * lag[j];
    for (const auto& [i, c] : m.b.rows[j]) v[i] += c * lag[j];
    for (const auto& [i, c] : m.c.rows[j]) w[i] += c * lag[j];
  }
  for (size_t i = 0; i <= np; ++i) u[i] += lag[cs.constraints.size() + i];

  const Fr gamma_inv = gamma.inverse(), delta_inv = delta.inverse();
  std::vector<Fr> ic(np + 1), l(nv - np - 1);
  for (size_t i = 0; i < nv; ++i) {
    Fr k = beta * u[i] + alpha * v[i] + w[i];
    if (i <= np) {
      ic[i] = k * gamma_inv;
    } else {
      l[i - np - 1] = k * delta_inv;
    }
  }
  std::vector<Fr> hs(n - 1);
  Fr zt = dom.vanishing_at(tau) * delta_inv;
  for (size_t i = 0; i + 1 < n; ++i) {
    hs[i] = zt;
    zt *= tau;
  }

  const G1Affine& g1 = ec::g1_generator();
  const G2Affine& g2 = ec::g2_generator();
  ProvingKey pk;
  pk.num_public = cs.num_public;
  pk.num_variables = cs.num_variables;
  pk.domain_size = n;
  pk.alpha = g1_mul(g1, alpha).to_affine();
  pk.beta1 = g1_mul(g1, beta).to_affine();
  pk.delta1 = g1_mul(g1, delta).to_affine();
  pk.beta2 = g2_mul(g2, beta).to_affine();
  pk.delta2 = g2_mul(g2, delta).to_affine();
  pk.a = kernels::fixed_base_batch<G1>(g1, u);
  pk.b1 = kernels::fixed_base_batch<G1>(g1, v);
  pk.b2 = kernels::fixed_base_batch<G2>(g2, v);
  pk.l = kernels::fixed_base_batch<G1>(g1, l);
  pk.h = kernels::fixed_base_batch<G1>(g1, hs);

  VerifyingKey vk;
  vk.alpha = pk.alpha;
  vk.beta = pk.beta2;
  vk.gamma = g2_mul(g2, gamma).to_affine();
  vk.delta = pk.delta2;
  vk.ic = kernels::fixed_base_batch<G1>(g1, ic);
  return {std::move(pk), std::move(vk)};
}

Proof prove(const r1cs::ConstraintSystem& cs, std::span<const Fr> z,
            const ProvingKey& pk) {
  if (z.size() != pk.num_variables || cs.num_variables != pk.num_variables ||
      cs.num_public != pk.num_public || qap_rows(cs) > pk.domain_size) {
    throw std::invalid_argument("proving key does not match the circuit");
  }
  const R1csMatrices m = to_matrices(cs);
  const Domain dom(pk.domain_size);
  const size_t n = dom.size();

  std::vector<Fr> a = m.a.mul(z), b = m.b.mul(z), c = m.c.mul(z);
  a.resize(n);
  b.resize(n);
  c.resize(n);
  for (size_t i = 0; i <= cs.num_public; ++i) a[cs.constraints.size() + i] = z[i];

  // h = (a*b - c) / Z, computed on a coset where Z is the constant g^n - 1.
  const Fr g = kernels::coset_generator();
  for (auto* p : {&a, &b, &c}) {
    dom.ifft(*p);
    dom.coset_fft(*p, g);
  }
  const Fr z_inv = dom.vanishing_at(g).inverse();
  for (size_t i = 0; i < n; ++i) a[i] = (a[i] * b[i] - c[i]) * z_inv;
  dom.coset_ifft(a, g);
  if (!a[n - 1].is_zero()) throw std::invalid_argument("witness does not satisfy the circuit");
  a.resize(n - 1);

  const Fr r = random_fr(), s = random_fr();
  const auto priv = z.subspan(cs.num_public + 1);
  G1 pa = G1(pk.alpha) + kernels::msm<G1>(pk.a, z) + g1_mul(pk.delta1, r);
  G1 pb1 = G1(pk.beta1) + kernels::msm<G1>(pk.b1, z) + g1_mul(pk.delta1, s);
  G2 pb2 = G2(pk.beta2) + kernels::msm<G2>(pk.b2, z) + g2_mul(pk.delta2, s);
  G1 pc = kernels::msm<G1>(pk.l, priv) + kernels::msm<G1>(pk.h, a) + pa.mul(s) +
          pb1.mul(r) - g1_mul(pk.delta1, r * s);
  return {pa.to_affine(), pb2.to_affine(), pc.to_affine()};
}

bool verify(const VerifyingKey& vk, std::span<const Fr> pub, const Proof& proof) {
  if (pub.size() + 1 != vk.ic.size()) {
    throw std::invalid_argument("public input length does not match the key");
  }
  G1 acc = vk.ic[0];
  for (size_t i = 0; i < pub.size(); ++i) acc += g1_mul(vk.ic[i + 1], pub[i]);
  const std::pair<G1Affine, G2Affine> pairs[] = {
      {proof.a, proof.b},
      {-vk.alpha, vk.beta},
      {-acc.to_affine(), vk.gamma},
      {-proof.c, vk.delta},
  };
  return ec::pairing_product_is_one(pairs);
}

std::vector<uint8_t> VerifyingKey::serialize() const {
  util::ByteWriter w;
  put_g1(w, alpha);
  put_g2(w, beta);
  put_g2(w, gamma);
  put_g2(w, delta);
  put_g1s(w, ic);
  return w.take();
}

VerifyingKey VerifyingKey::deserialize(std::span<const uint8_t> bytes) {
  util::ByteReader r(bytes);
  VerifyingKey vk;
  vk.alpha = get_g1(r);
  vk.beta = get_g2(r);
  vk.gamma = get_g2(r);
  vk.delta = get_g2(r);
  vk.ic = get_g1s(r);
  r.expect_end();
  if (vk.ic.empty()) throw std::invalid_argument("verifying key has no inputs");
  return vk;
}

std::vector<uint8_t> ProvingKey::serialize() const {
  util::ByteWriter w;
  w.u32(num_public);
  w.u32(num_variables);
  w.u64(domain_size);
  put_g1(w, alpha);
  put_g1(w, beta1);
  put_g1(w, delta1);
  put_g2(w, beta2);
  put_g2(w, delta2);
  put_g1s(w, a);
  put_g1s(w, b1);
  put_g1s(w, h);
  put_g1s(w, l);
  put_g2s(w, b2);
  return w.take();
}

ProvingKey ProvingKey::deserialize(std::span<const uint8_t> bytes) {
  util::ByteReader r(bytes);
  ProvingKey pk;
  pk.num_public = r.u32();
  pk.num_variables = r.u32();
  pk.domain_size = r.u64();
  pk.alpha = get_g1(r);
  pk.beta1 = get_g1(r);
  pk.delta1 = get_g1(r);
  pk.beta2 = get_g2(r, true);
  pk.delta2 = get_g2(r, true);
  pk.a = get_g1s(r);
  pk.b1 = get_g1s(r);
  pk.h = get_g1s(r);
  pk.l = get_g1s(r);
  pk.b2 = get_g2s(r, true);
  r.expect_end();
  const size_t nv = pk.num_variables;
  if (pk.num_public >= nv || pk.a.size() != nv || pk.b1.size() != nv ||
      pk.b2.size() != nv || pk.l.size() != nv - pk.num_public - 1 ||
      pk.domain_size == 0 || pk.h.size() + 1 != pk.domain_size) {
    throw std::invalid_argument("malformed proving key");
  }
  return pk;
}

std::vector<uint8_t> Proof::serialize() const {
  util::ByteWriter w;
  put_g1(w, a);
  put_g2(w, b);
  put_g1(w, c);
  return w.take();
}

Proof Proof::deserialize(std::span<const uint8_t> bytes) {
  util::ByteReader r(bytes);
  Proof p;
  p.a = get_g1(r);
  p.b = get_g2(r);
  p.c = get_g1(r);
  r.expect_end();
  return p;
}

}  // namespace devreg::proofsys::groth16
