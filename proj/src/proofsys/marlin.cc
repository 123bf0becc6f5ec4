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

#include "devreg/proofsys/marlin.h"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

#include "devreg/crypto/digest.h"
#include "devreg/kernels/ntt.h"

namespace devreg::proofsys::marlin {
namespace {

using kernels::Domain;
using poly::Poly;

constexpr std::string_view kTranscriptDomain = "devreg.marlin.v1";

uint64_t pow2_at_least(uint64_t n) { return std::bit_ceil(std::max<uint64_t>(n, 2)); }

// Coefficient counts of the largest committed polynomials: h1 has degree at
// most 2|H| + 1 and h2 at most 2|K| - 3.
uint64_t prefix_len(const IndexInfo& info) {
  return std::max(2 * info.h_size + 2, 2 * info.k_size);
}
uint64_t g1_bound(const IndexInfo& info) { return info.h_size - 2; }
uint64_t g2_bound(const IndexInfo& info) { return info.k_size - 2; }

std::vector<Fr> powers_of(const Fr& x, size_t n) {
  std::vector<Fr> out(n);
  Fr acc = Fr::one();
  for (auto& p : out) {
    p = acc;
    acc *= x;
  }
  return out;
}

std::vector<Fr> evals_on(const Domain& d, std::span<const Fr> p) {
  if (p.size() > d.size()) throw std::logic_error("polynomial exceeds evaluation domain");
  std::vector<Fr> e(p.begin(), p.end());
  e.resize(d.size());
  d.fft(e);
  return e;
}

Poly coeffs_from(const Domain& d, std::vector<Fr> evals) {
  d.ifft(evals);
  return evals;
}

// Barycentric evaluation of the input interpolant and the vanishing
// polynomial of {omega^0 .. omega^(m-1)} at x.
std::pair<Fr, Fr> input_poly_at(const Fr& omega, std::span<const Fr> x, const Fr& at) {
  const size_t m = x.size();
  const std::vector<Fr> pts = powers_of(omega, m);
  Fr vs = Fr::one();
  for (const Fr& p : pts) vs *= at - p;
  Fr acc;
  for (size_t i = 0; i < m; ++i) {
    Fr denom = at - pts[i];
    for (size_t j = 0; j < m; ++j) {
      if (j != i) denom *= pts[i] - pts[j];
    }
    acc += x[i] * denom.inverse();
  }
  return {acc * vs, vs};
}

// sum over kappa in H of L_kappa(a) L_kappa(b), for a != b.
Fr lagrange_kernel(const Fr& a, const Fr& b, uint64_t n, const Fr& n_inv) {
  const Fr an = a.pow(n), bn = b.pow(n);
  return n_inv * (Fr::one() + (a * bn - an * b) * (b - a).inverse());
}

Fr vanishing(const Fr& x, uint64_t n) { return x.pow(n) - Fr::one(); }

crypto::Digest32 vk_digest(const VerifyingKey& vk) { return crypto::sha256(vk.serialize()); }

void absorb_comms(Transcript& t, std::span<const G1Affine> comms) {
  for (const auto& c : comms) t.absorb("comm", c);
}

struct Challenges {
  Fr alpha, eta_a, eta_b, eta_c, beta1, beta2, xi1, xi2, u;
};

// Replays the Fiat-Shamir transcript; shared by prover and verifier.
class Fs {
 public:
  Fs(const VerifyingKey& vk, std::span<const Fr> x) : t_(kTranscriptDomain) {
    auto d = vk_digest(vk);
    t_.absorb("vk", d);
    for (const Fr& v : x) t_.absorb("x", v);
  }
  void round1(std::span<const G1Affine> comms, const Fr& sigma1, Challenges& c) {
    absorb_comms(t_, comms);
    t_.absorb("sigma1", sigma1);
    c.alpha = t_.challenge("alpha");
    c.eta_a = t_.challenge("eta_a");
    c.eta_b = t_.challenge("eta_b");
    c.eta_c = t_.challenge("eta_c");
  }
  void round2(std::span<const G1Affine> comms, Challenges& c) {
    absorb_comms(t_, comms);
    c.beta1 = t_.challenge("beta1");
  }
  void round3(std::span<const G1Affine> comms, const Fr& sigma2, Challenges& c) {
    absorb_comms(t_, comms);
    t_.absorb("sigma2", sigma2);
    c.beta2 = t_.challenge("beta2");
  }
  void evals(std::span<const Fr> ev, Challenges& c) {
    for (const Fr& v : ev) t_.absorb("eval", v);
    c.xi1 = t_.challenge("xi1");
    c.xi2 = t_.challenge("xi2");
  }
  void openings(const kzg::Opening& a, const kzg::Opening& b, Challenges& c) {
    t_.absorb("w1", a.w);
    t_.absorb("r1", a.blinder_eval);
    t_.absorb("w2", b.w);
    t_.absorb("r2", b.blinder_eval);
    c.u = t_.challenge("u");
  }

 private:
  Transcript t_;
};

kzg::Blinder blinder() { return poly::random(kzg::kHidingPolyLen); }

}  // namespace

uint64_t srs_degree_for(uint64_t max_constraints) {
  const uint64_t h = pow2_at_least(max_constraints);
  return 2 * kIndexDensity * h;
}

std::pair<ProvingKey, VerifyingKey> index(const kzg::Srs& srs,
                                          uint64_t max_constraints,
                                          const r1cs::ConstraintSystem& cs) {
  const R1csMatrices m = to_matrices(cs);
  IndexInfo info;
  info.num_public = cs.num_public;
  info.num_variables = cs.num_variables;
  info.num_constraints = static_cast<uint32_t>(cs.constraints.size());
  info.h_size = pow2_at_least(std::max<uint64_t>(
      {cs.constraints.size(), cs.num_variables, uint64_t{cs.num_public} + 2}));

  // Union of nonzero positions, row-major.
  struct Entry {
    uint32_t row, col;
    std::array<Fr, 3> v;
  };
  std::vector<Entry> entries;
  for (size_t r = 0; r < cs.constraints.size(); ++r) {
    std::map<uint32_t, std::array<Fr, 3>> cols;
    for (const auto& [c, v] : m.a.rows[r]) cols[c][0] = v;
    for (const auto& [c, v] : m.b.rows[r]) cols[c][1] = v;
    for (const auto& [c, v] : m.c.rows[r]) cols[c][2] = v;
    for (const auto& [c, v] : cols) entries.push_back({static_cast<uint32_t>(r), c, v});
  }
  info.k_size = pow2_at_least(entries.size());

  if (cs.constraints.size() > max_constraints ||
      info.h_size > pow2_at_least(max_constraints) ||
      info.k_size > kIndexDensity * pow2_at_least(max_constraints) ||
      prefix_len(info) > srs.max_degree + 1 ||
      std::max(g1_bound(info), g2_bound(info)) > srs.max_degree) {
    throw std::invalid_argument("SRS too small");
  }

  const Domain h(info.h_size), k(info.k_size);
  const std::vector<Fr> omega = powers_of(h.generator(), info.h_size);
  const Fr n2_inv = h.size_inv().square();
  std::array<std::vector<Fr>, 5> ev;
  for (auto& e : ev) e.assign(info.k_size, Fr::zero());
  for (size_t i = 0; i < info.k_size; ++i) {
    if (i < entries.size()) {
      const Entry& e = entries[i];
      ev[0][i] = omega[e.row];
      ev[1][i] = omega[e.col];
      const Fr scale = omega[e.row] * omega[e.col] * n2_inv;
      for (int j = 0; j < 3; ++j) ev[2 + j][i] = e.v[j] * scale;
    } else {
      // Padding entries carry zero value at an arbitrary position.
      ev[0][i] = ev[1][i] = Fr::one();
    }
  }

  ProvingKey pk;
  pk.ck = kzg::trim(srs, prefix_len(info), std::max(g1_bound(info), g2_bound(info)));
  VerifyingKey vk;
  vk.info = info;
  const std::vector<uint64_t> bounds{g1_bound(info), g2_bound(info)};
  vk.kzg = kzg::verifier_key(srs, bounds);
  for (int j = 0; j < 5; ++j) {
    pk.index[j] = coeffs_from(k, std::move(ev[j]));
    vk.index[j] = kzg::commit(pk.ck, pk.index[j]).to_affine();
  }
  pk.vk = vk;
  return {std::move(pk), std::move(vk)};
}

Proof prove(const r1cs::ConstraintSystem& cs, std::span<const Fr> z,
            const ProvingKey& pk) {
  const IndexInfo& info = pk.vk.info;
  if (z.size() != info.num_variables || cs.num_variables != info.num_variables ||
      cs.num_public != info.num_public || cs.constraints.size() != info.num_constraints) {
    throw std::invalid_argument("proving key does not match the circuit");
  }
  const uint64_t n = info.h_size, kn = info.k_size;
  const Domain h(n), k(kn), h4(4 * n), k4(4 * kn);
  const R1csMatrices m = to_matrices(cs);

  std::vector<Fr> za = m.a.mul(z), zb = m.b.mul(z), zc = m.c.mul(z);
  for (size_t i = 0; i < za.size(); ++i) {
    if (za[i] * zb[i] != zc[i]) throw std::invalid_argument("witness does not satisfy the circuit");
  }
  za.resize(n);
  zb.resize(n);

  // Round 1. z = x_hat + v_S * w, masked by multiples of v_H.
  const size_t nx = info.num_public + 1;
  Poly fz(z.begin(), z.end());
  fz.resize(n);
  h.ifft(fz);
  const std::vector<Fr> s_pts = powers_of(h.generator(), nx);
  const Poly x_hat = poly::interpolate(s_pts, z.first(nx));
  const Poly v_s = poly::from_roots(s_pts);
  Poly diff = fz;
  poly::add_scaled(diff, x_hat, -Fr::one());
  Poly w = poly::divide_exact(diff, v_s);
  const Poly rw = poly::random(2);
  poly::add_scaled(w, poly::mul_vanishing(rw, n), Fr::one());
  Poly z_hat = fz;
  poly::add_scaled(z_hat, poly::mul_vanishing(poly::mul_small(v_s, rw), n), Fr::one());

  Poly za_hat = coeffs_from(h, za), zb_hat = coeffs_from(h, zb);
  poly::add_scaled(za_hat, poly::mul_vanishing(poly::random(2), n), Fr::one());
  poly::add_scaled(zb_hat, poly::mul_vanishing(poly::random(2), n), Fr::one());
  const Poly mask = poly::random(2 * n);
  Proof pr;
  pr.sigma1 = (mask[0] + mask[n]) * Fr::from_u64(n);

  std::array<kzg::Blinder, 8> bl;
  for (auto& b : bl) b = blinder();
  pr.commitments[0] = kzg::commit(pk.ck, w, bl[0]).to_affine();
  pr.commitments[1] = kzg::commit(pk.ck, za_hat, bl[1]).to_affine();
  pr.commitments[2] = kzg::commit(pk.ck, zb_hat, bl[2]).to_affine();
  pr.commitments[3] = kzg::commit(pk.ck, mask, bl[3]).to_affine();

  Challenges ch;
  Fs fs(pk.vk, z.first(nx).subspan(1));
  fs.round1(std::span(pr.commitments).first(4), pr.sigma1, ch);

  // Round 2: first sumcheck over H.
  const std::vector<Fr> lag = h.lagrange_at(ch.alpha);
  std::vector<Fr> t(n);
  const std::array<std::pair<const SparseMatrix*, Fr>, 3> mats{
      {{&m.a, ch.eta_a}, {&m.b, ch.eta_b}, {&m.c, ch.eta_c}}};
  for (const auto& [mat, eta] : mats) {
    for (size_t r = 0; r < mat->rows.size(); ++r) {
      const Fr f = eta * lag[r];
      for (const auto& [c, v] : mat->rows[r]) t[c] += f * v;
    }
  }
  const Poly t_poly = coeffs_from(h, t);
  const Poly k_alpha = coeffs_from(h, lag);
  {
    const auto e_mask = evals_on(h4, mask), e_k = evals_on(h4, k_alpha);
    const auto e_za = evals_on(h4, za_hat), e_zb = evals_on(h4, zb_hat);
    const auto e_z = evals_on(h4, z_hat), e_t = evals_on(h4, t_poly);
    std::vector<Fr> q(4 * n);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(4 * n); ++i) {
      q[i] = e_mask[i] +
             e_k[i] * (ch.eta_a * e_za[i] + ch.eta_b * e_zb[i] +
                       ch.eta_c * e_za[i] * e_zb[i]) -
             e_t[i] * e_z[i];
    }
    h4.ifft(q);
    poly::trim(q);
    auto [h1, rem] = poly::divide_by_vanishing(q, n);
    if (rem[0] * Fr::from_u64(n) != pr.sigma1) {
      throw std::invalid_argument("witness does not satisfy the circuit");
    }
    Poly g1(rem.begin() + 1, rem.end());
    pr.commitments[4] = kzg::commit(pk.ck, g1, bl[4]).to_affine();
    pr.commitments[5] = kzg::commit_shifted(pk.ck, g1, g1_bound(info), bl[5]).to_affine();
    pr.commitments[6] = kzg::commit(pk.ck, h1, bl[6]).to_affine();
    fs.round2(std::span(pr.commitments).subspan(4, 3), ch);

    pr.sigma2 = poly::evaluate(t_poly, ch.beta1);

    // Round 3: second sumcheck over K for t(beta1).
    const Fr c0 = vanishing(ch.alpha, n) * vanishing(ch.beta1, n);
    const auto e_row = evals_on(k4, pk.index[0]), e_col = evals_on(k4, pk.index[1]);
    const auto e_va = evals_on(k4, pk.index[2]), e_vb = evals_on(k4, pk.index[3]);
    const auto e_vc = evals_on(k4, pk.index[4]);
    std::vector<Fr> a(4 * kn), b(4 * kn);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(4 * kn); ++i) {
      a[i] = c0 * (ch.eta_a * e_va[i] + ch.eta_b * e_vb[i] + ch.eta_c * e_vc[i]);
      b[i] = (ch.alpha - e_row[i]) * (ch.beta1 - e_col[i]);
    }
    std::vector<Fr> f(kn);
    for (size_t i = 0; i < kn; ++i) f[i] = b[4 * i];
    ff::batch_inverse(std::span(f));
    for (size_t i = 0; i < kn; ++i) f[i] *= a[4 * i];
    const Poly big_f = coeffs_from(k, f);
    if (big_f[0] * Fr::from_u64(kn) != pr.sigma2) {
      throw std::logic_error("index sumcheck mismatch");
    }
    Poly g2(big_f.begin() + 1, big_f.end());
    const auto e_f = evals_on(k4, big_f);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(4 * kn); ++i) a[i] -= b[i] * e_f[i];
    k4.ifft(a);
    poly::trim(a);
    auto [h2, rem2] = poly::divide_by_vanishing(a, kn);
    pr.commitments[7] = kzg::commit(pk.ck, g2, bl[5 + 2]).to_affine();
    kzg::Blinder bl_g2s = blinder(), bl_h2 = blinder();
    pr.commitments[8] = kzg::commit_shifted(pk.ck, g2, g2_bound(info), bl_g2s).to_affine();
    pr.commitments[9] = kzg::commit(pk.ck, h2, bl_h2).to_affine();
    fs.round3(std::span(pr.commitments).subspan(7, 3), pr.sigma2, ch);

    const Fr b1 = ch.beta1, b2 = ch.beta2;
    pr.evals = {poly::evaluate(w, b1),      poly::evaluate(za_hat, b1),
                poly::evaluate(zb_hat, b1), poly::evaluate(mask, b1),
                poly::evaluate(g1, b1),     poly::evaluate(h1, b1),
                poly::evaluate(pk.index[0], b2), poly::evaluate(pk.index[1], b2),
                poly::evaluate(pk.index[2], b2), poly::evaluate(pk.index[3], b2),
                poly::evaluate(pk.index[4], b2), poly::evaluate(g2, b2),
                poly::evaluate(h2, b2)};
    fs.evals(pr.evals, ch);

    const kzg::ProverItem items1[] = {
        {w, &bl[0], 0},  {za_hat, &bl[1], 0}, {zb_hat, &bl[2], 0},
        {mask, &bl[3], 0}, {g1, &bl[4], 0},    {g1, &bl[5], g1_bound(info)},
        {h1, &bl[6], 0}};
    const kzg::ProverItem items2[] = {
        {pk.index[0], nullptr, 0}, {pk.index[1], nullptr, 0},
        {pk.index[2], nullptr, 0}, {pk.index[3], nullptr, 0},
        {pk.index[4], nullptr, 0}, {g2, &bl[7], 0},
        {g2, &bl_g2s, g2_bound(info)}, {h2, &bl_h2, 0}};
    pr.open1 = kzg::open(pk.ck, items1, b1, ch.xi1);
    pr.open2 = kzg::open(pk.ck, items2, b2, ch.xi2);
  }
  return pr;
}

bool verify(const VerifyingKey& vk, std::span<const Fr> pub, const Proof& pr) {
  const IndexInfo& info = vk.info;
  if (pub.size() != info.num_public) {
    throw std::invalid_argument("public input length does not match the key");
  }
  const uint64_t n = info.h_size, kn = info.k_size;
  std::vector<Fr> x{Fr::one()};
  x.insert(x.end(), pub.begin(), pub.end());

  Challenges ch;
  Fs fs(vk, pub);
  fs.round1(std::span(pr.commitments).first(4), pr.sigma1, ch);
  fs.round2(std::span(pr.commitments).subspan(4, 3), ch);
  fs.round3(std::span(pr.commitments).subspan(7, 3), pr.sigma2, ch);
  fs.evals(pr.evals, ch);
  fs.openings(pr.open1, pr.open2, ch);

  const Fr vh_alpha = vanishing(ch.alpha, n), vh_beta1 = vanishing(ch.beta1, n);
  if (vh_alpha.is_zero() || vh_beta1.is_zero() || ch.alpha == ch.beta1) return false;

  const auto& e = pr.evals;
  const Fr &w1 = e[0], &za1 = e[1], &zb1 = e[2], &mask1 = e[3], &g1 = e[4], &h1 = e[5];
  const Fr &row2 = e[6], &col2 = e[7], &va2 = e[8], &vb2 = e[9], &vc2 = e[10];
  const Fr &g2 = e[11], &h2 = e[12];

  const Fr omega = kernels::root_of_unity(std::countr_zero(n));
  const auto [x_hat, v_s] = input_poly_at(omega, x, ch.beta1);
  const Fr z1 = x_hat + v_s * w1;
  const Fr n_inv = Fr::from_u64(n).inverse();
  const Fr kab = lagrange_kernel(ch.alpha, ch.beta1, n, n_inv);
  const Fr lhs1 = mask1 + kab * (ch.eta_a * za1 + ch.eta_b * zb1 + ch.eta_c * za1 * zb1) -
                  pr.sigma2 * z1;
  const Fr rhs1 = h1 * vh_beta1 + ch.beta1 * g1 + pr.sigma1 * n_inv;
  if (lhs1 != rhs1) return false;

  const Fr a2 = vh_alpha * vh_beta1 * (ch.eta_a * va2 + ch.eta_b * vb2 + ch.eta_c * vc2);
  const Fr b2 = (ch.alpha - row2) * (ch.beta1 - col2);
  const Fr kn_inv = Fr::from_u64(kn).inverse();
  if (h2 * vanishing(ch.beta2, kn) != a2 - b2 * (ch.beta2 * g2 + pr.sigma2 * kn_inv)) {
    return false;
  }

  const auto& c = pr.commitments;
  std::vector<kzg::BatchCheck> batches{
      {{{c[0], w1, 0},
        {c[1], za1, 0},
        {c[2], zb1, 0},
        {c[3], mask1, 0},
        {c[4], g1, 0},
        {c[5], g1, g1_bound(info)},
        {c[6], h1, 0}},
       ch.beta1, ch.xi1, pr.open1},
      {{{vk.index[0], row2, 0},
        {vk.index[1], col2, 0},
        {vk.index[2], va2, 0},
        {vk.index[3], vb2, 0},
        {vk.index[4], vc2, 0},
        {c[7], g2, 0},
        {c[8], g2, g2_bound(info)},
        {c[9], h2, 0}},
       ch.beta2, ch.xi2, pr.open2},
  };
  return kzg::verify(vk.kzg, batches, ch.u);
}

std::vector<uint8_t> VerifyingKey::serialize() const {
  util::ByteWriter w;
  w.u64(info.h_size);
  w.u64(info.k_size);
  w.u32(info.num_public);
  w.u32(info.num_variables);
  w.u32(info.num_constraints);
  kzg::write_vk(w, kzg);
  for (const auto& c : index) put_g1(w, c);
  return w.take();
}

namespace {

VerifyingKey read_vk(util::ByteReader& r) {
  VerifyingKey vk;
  vk.info.h_size = r.u64();
  vk.info.k_size = r.u64();
  vk.info.num_public = r.u32();
  vk.info.num_variables = r.u32();
  vk.info.num_constraints = r.u32();
  vk.kzg = kzg::read_vk(r);
  for (auto& c : vk.index) c = get_g1(r);
  const auto& i = vk.info;
  if (!std::has_single_bit(i.h_size) || !std::has_single_bit(i.k_size) ||
      i.h_size < 4 || i.k_size < 4 || i.num_variables > i.h_size ||
      i.num_constraints > i.h_size || i.num_public >= i.num_variables ||
      i.h_size > (uint64_t{1} << 28) || i.k_size > (uint64_t{1} << 28)) {
    throw std::invalid_argument("malformed verifying key");
  }
  return vk;
}

}  // namespace

VerifyingKey VerifyingKey::deserialize(std::span<const uint8_t> bytes) {
  util::ByteReader r(bytes);
  VerifyingKey vk = read_vk(r);
  r.expect_end();
  return vk;
}

std::vector<uint8_t> ProvingKey::serialize() const {
  util::ByteWriter w;
  w.bytes(vk.serialize());
  kzg::write_ck(w, ck);
  for (const auto& p : index) w.fields<Fr>(p);
  return w.take();
}

ProvingKey ProvingKey::deserialize(std::span<const uint8_t> bytes) {
  util::ByteReader r(bytes);
  ProvingKey pk;
  pk.vk = VerifyingKey::deserialize(r.bytes());
  pk.ck = kzg::read_ck(r);
  for (auto& p : pk.index) {
    p = r.fields<Fr>();
    if (p.size() != pk.vk.info.k_size) throw std::invalid_argument("malformed proving key");
  }
  r.expect_end();
  if (pk.ck.powers.size() < prefix_len(pk.vk.info)) {
    throw std::invalid_argument("malformed proving key");
  }
  return pk;
}

std::vector<uint8_t> Proof::serialize() const {
  util::ByteWriter w;
  for (const auto& c : commitments) put_g1(w, c);
  w.field(sigma1);
  w.field(sigma2);
  for (const auto& v : evals) w.field(v);
  put_g1(w, open1.w);
  w.field(open1.blinder_eval);
  put_g1(w, open2.w);
  w.field(open2.blinder_eval);
  return w.take();
}

Proof Proof::deserialize(std::span<const uint8_t> bytes) {
  util::ByteReader r(bytes);
  Proof p;
  for (auto& c : p.commitments) c = get_g1(r);
  p.sigma1 = r.field<Fr>();
  p.sigma2 = r.field<Fr>();
  for (auto& v : p.evals) v = r.field<Fr>();
  p.open1.w = get_g1(r);
  p.open1.blinder_eval = r.field<Fr>();
  p.open2.w = get_g1(r);
  p.open2.blinder_eval = r.field<Fr>();
  r.expect_end();
  return p;
}

}  // namespace devreg::proofsys::marlin
