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

#include "devreg/ec/bn254.h"

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <stdexcept>

#include "devreg/kernels/msm.h"

namespace devreg::ec {
namespace {

using ff::U256;

const Fq2& xi() {
  static const Fq2 v = ff::uncounted([] { return Fq2{Fq::from_u64(9), Fq::from_u64(1)}; });
  return v;
}

mpz_class mpz_of(const U256& v) {
  mpz_class r;
  mpz_import(r.get_mpz_t(), 4, -1, sizeof(uint64_t), 0, 0, v.w.data());
  return r;
}

ff::BigLimbs limbs_of(const mpz_class& v) {
  size_t count = (mpz_sizeinbase(v.get_mpz_t(), 2) + 63) / 64;
  ff::BigLimbs out(count, 0);
  size_t written = 0;
  mpz_export(out.data(), &written, -1, sizeof(uint64_t), 0, 0, v.get_mpz_t());
  out.resize(written == 0 ? 1 : written);
  return out;
}

U256 u256_of(const mpz_class& v) {
  ff::BigLimbs l = limbs_of(v);
  U256 out;
  for (size_t i = 0; i < l.size() && i < 4; ++i) out.w[i] = l[i];
  return out;
}

struct PairingConstants {
  // frob_w[i] = xi^(i (p - 1) / 6), coefficient of w^i under x -> x^p.
  std::array<Fq2, 6> frob_w;
  Fq2 twist_frob_x;  // xi^((p - 1) / 3)
  Fq2 twist_frob_y;  // xi^((p - 1) / 2)
  U256 ate_loop;     // 6x + 2
  Fq two_inv;
  // (p^4 - p^2 + 1) / r written in base p.
  std::array<ff::BigLimbs, 4> hard_digits;

  PairingConstants() {
    const mpz_class p = mpz_of(Fq::kModulus);
    const mpz_class r = mpz_of(ff::Fr::kModulus);
    const Fq2 gamma = xi().pow(u256_of((p - 1) / 6));
    frob_w[0] = Fq2::one();
    for (int i = 1; i < 6; ++i) frob_w[i] = frob_w[i - 1] * gamma;
    twist_frob_x = frob_w[2];
    twist_frob_y = frob_w[3];
    const mpz_class x("4965661367192848881");
    ate_loop = u256_of(6 * x + 2);
    two_inv = Fq::from_u64(2).inverse();
    mpz_class h = p * p * p * p - p * p + 1;
    if (h % r != 0) throw std::logic_error("bad pairing exponent");
    h /= r;
    for (auto& digit : hard_digits) {
      mpz_class q = h / p;
      digit = limbs_of(h - q * p);
      h = q;
    }
    if (h != 0) throw std::logic_error("bad pairing exponent digits");
  }
};

const PairingConstants& constants() {
  static const PairingConstants c = ff::uncounted([] { return PairingConstants(); });
  return c;
}

// Homogeneous projective point on the twist, used only inside the loop.
struct TwistPoint {
  Fq2 x, y, z;
};

struct LineCoeffs {
  Fq2 c0, c1, c2;
};

LineCoeffs double_step(TwistPoint& t) {
  const Fq& two_inv = constants().two_inv;
  Fq2 a = (t.x * t.y).scale(two_inv);
  Fq2 b = t.y.square();
  Fq2 c = t.z.square();
  Fq2 e = G2Cfg::b() * (c.dbl() + c);
  Fq2 f = e.dbl() + e;
  Fq2 g = (b + f).scale(two_inv);
  Fq2 h = (t.y + t.z).square() - (b + c);
  Fq2 i = e - b;
  Fq2 j = t.x.square();
  Fq2 e_sq = e.square();
  t.x = a * (b - f);
  t.y = g.square() - (e_sq.dbl() + e_sq);
  t.z = b * h;
  return {-h, j.dbl() + j, i};
}

LineCoeffs add_step(TwistPoint& t, const G2Affine& q) {
  Fq2 theta = t.y - q.y * t.z;
  Fq2 lambda = t.x - q.x * t.z;
  Fq2 c = theta.square();
  Fq2 d = lambda.square();
  Fq2 e = lambda * d;
  Fq2 f = t.z * c;
  Fq2 g = t.x * d;
  Fq2 h = e + f - g.dbl();
  t.x = lambda * h;
  t.y = theta * (g - h) - e * t.y;
  t.z = t.z * e;
  Fq2 j = theta * q.x - lambda * q.y;
  return {lambda, -theta, j};
}

void apply_line(Fq12& f, const LineCoeffs& l, const G1Affine& p) {
  f = f.mul_by_034(l.c0.scale(p.y), l.c1.scale(p.x), l.c2);
}

G2Affine twist_frobenius(const G2Affine& q) {
  const auto& c = constants();
  return G2Affine{q.x.conj() * c.twist_frob_x, q.y.conj() * c.twist_frob_y,
                  false};
}

}  // namespace

Fq2 G2Cfg::b() {
  static const Fq2 v =
      ff::uncounted([] { return Fq2{Fq::from_u64(3), Fq::zero()} * xi().inverse(); });
  return v;
}

const G1Affine& g1_generator() {
  static const G1Affine g =
      ff::uncounted([] { return G1Affine{Fq::from_u64(1), Fq::from_u64(2), false}; });
  return g;
}

const G2Affine& g2_generator() {
  static const G2Affine g = ff::uncounted([] {
    return G2Affine{
        Fq2{Fq::parse("10857046999023057135944570762232829481370756359578518086"
                      "990519993285655852781"),
            Fq::parse("11559732032986387107991004021392285783925812861821192530"
                      "917403151452391805634")},
        Fq2{Fq::parse("84956539231234314176049732474892724384181905872636001487"
                      "70280649306958101930"),
            Fq::parse("40823678758634336813322034031454355683168513275934012081"
                      "05741076214120093531")},
        false};
  });
  return g;
}

Fq12 Fq12::mul_by_034(const Fq2& a0, const Fq2& b0, const Fq2& b1) const {
  // (c0 + c1 w)(s0 + s1 w) with s0 = (a0, 0, 0), s1 = (b0, b1, 0).
  Fq6 v0 = c0.mul_by_fq2(a0);
  const Fq6& x = c1;
  // x * (b0 + b1 v)
  Fq2 t0 = x.c0 * b0;
  Fq2 t1 = x.c1 * b1;
  Fq6 v1{t0 + (x.c2 * b1).mul_by_xi(),
         (x.c0 + x.c1) * (b0 + b1) - t0 - t1,
         x.c2 * b0 + t1};
  Fq6 s{a0 + b0, b1, Fq2::zero()};
  Fq6 cross = (c0 + c1) * s;
  return {v0 + v1.mul_by_v(), cross - v0 - v1};
}

Fq12 Fq12::frobenius(int k) const {
  const auto& w = constants().frob_w;
  Fq12 r = *this;
  for (int step = 0; step < k; ++step) {
    Fq12 n;
    n.c0.c0 = r.c0.c0.conj() * w[0];
    n.c1.c0 = r.c1.c0.conj() * w[1];
    n.c0.c1 = r.c0.c1.conj() * w[2];
    n.c1.c1 = r.c1.c1.conj() * w[3];
    n.c0.c2 = r.c0.c2.conj() * w[4];
    n.c1.c2 = r.c1.c2.conj() * w[5];
    r = n;
  }
  return r;
}

Fq12 Fq12::pow(const ff::BigLimbs& e) const {
  Fq12 r = one();
  for (size_t i = e.size() * 64; i-- > 0;) {
    r = r.square();
    if ((e[i / 64] >> (i % 64)) & 1) r *= *this;
  }
  return r;
}

Fq12 miller_loop(std::span<const std::pair<G1Affine, G2Affine>> pairs) {
  const U256& loop = constants().ate_loop;
  std::vector<std::pair<G1Affine, G2Affine>> active;
  for (const auto& pq : pairs) {
    if (!pq.first.infinity && !pq.second.infinity) active.push_back(pq);
  }
  std::vector<TwistPoint> ts;
  for (const auto& [p, q] : active) ts.push_back({q.x, q.y, Fq2::one()});

  Fq12 f = Fq12::one();
  for (size_t i = loop.bit_length() - 1; i-- > 0;) {
    f = f.square();
    for (size_t k = 0; k < active.size(); ++k) {
      apply_line(f, double_step(ts[k]), active[k].first);
    }
    if (loop.bit(i)) {
      for (size_t k = 0; k < active.size(); ++k) {
        apply_line(f, add_step(ts[k], active[k].second), active[k].first);
      }
    }
  }
  for (size_t k = 0; k < active.size(); ++k) {
    G2Affine q1 = twist_frobenius(active[k].second);
    G2Affine q2 = -twist_frobenius(q1);
    apply_line(f, add_step(ts[k], q1), active[k].first);
    apply_line(f, add_step(ts[k], q2), active[k].first);
  }
  return f;
}

Fq12 final_exponentiation(const Fq12& f) {
  // Easy part: f^((p^6 - 1)(p^2 + 1)).
  Fq12 t = f.conj() * f.inverse();
  t = t.frobenius(2) * t;
  // Hard part: simultaneous exponentiation over the base-p digits.
  const auto& digits = constants().hard_digits;
  std::array<Fq12, 4> bases = {t, t.frobenius(1), t.frobenius(2),
                               t.frobenius(3)};
  std::array<Fq12, 16> table;
  table[0] = Fq12::one();
  for (int m = 1; m < 16; ++m) {
    int low = __builtin_ctz(m);
    table[m] = table[m & (m - 1)] * bases[low];
  }
  size_t bits = 0;
  for (const auto& d : digits) bits = std::max(bits, d.size() * 64);
  Fq12 acc = Fq12::one();
  for (size_t i = bits; i-- > 0;) {
    acc = acc.square();
    int m = 0;
    for (int k = 0; k < 4; ++k) {
      const auto& d = digits[k];
      if (i / 64 < d.size() && ((d[i / 64] >> (i % 64)) & 1)) m |= 1 << k;
    }
    if (m != 0) acc *= table[m];
  }
  return acc;
}

Fq12 pairing(const G1Affine& p, const G2Affine& q) {
  std::pair<G1Affine, G2Affine> pq{p, q};
  return final_exponentiation(miller_loop({&pq, 1}));
}

bool pairing_product_is_one(
    std::span<const std::pair<G1Affine, G2Affine>> pairs) {
  return final_exponentiation(miller_loop(pairs)).is_one();
}

bool g2_in_subgroup(const G2Affine& q) {
  return G2(q).mul(ff::Fr::kModulus).is_identity();
}

void write_g1(const G1Affine& p, std::span<uint8_t, kG1Bytes> out) {
  std::fill(out.begin(), out.end(), 0);
  if (p.infinity) return;
  p.x.to_bytes(out.subspan<0, 32>());
  p.y.to_bytes(out.subspan<32, 32>());
}

void write_g2(const G2Affine& p, std::span<uint8_t, kG2Bytes> out) {
  std::fill(out.begin(), out.end(), 0);
  if (p.infinity) return;
  p.x.c0.to_bytes(out.subspan<0, 32>());
  p.x.c1.to_bytes(out.subspan<32, 32>());
  p.y.c0.to_bytes(out.subspan<64, 32>());
  p.y.c1.to_bytes(out.subspan<96, 32>());
}

G1Affine read_g1(std::span<const uint8_t, kG1Bytes> in) {
  if (std::all_of(in.begin(), in.end(), [](uint8_t b) { return b == 0; })) {
    return G1Affine{};
  }
  G1Affine p{Fq::from_bytes(in.subspan<0, 32>()),
             Fq::from_bytes(in.subspan<32, 32>()), false};
  if (!p.is_on_curve()) throw std::invalid_argument("G1 point not on curve");
  return p;
}

G2Affine read_g2(std::span<const uint8_t, kG2Bytes> in) {
  if (std::all_of(in.begin(), in.end(), [](uint8_t b) { return b == 0; })) {
    return G2Affine{};
  }
  G2Affine p{Fq2{Fq::from_bytes(in.subspan<0, 32>()),
                 Fq::from_bytes(in.subspan<32, 32>())},
             Fq2{Fq::from_bytes(in.subspan<64, 32>()),
                 Fq::from_bytes(in.subspan<96, 32>())},
             false};
  if (!p.is_on_curve()) throw std::invalid_argument("G2 point not on curve");
  if (!g2_in_subgroup(p)) throw std::invalid_argument("G2 point not in subgroup");
  return p;
}

std::vector<G1Affine> batch_to_affine(std::span<const G1> pts) {
  return kernels::normalize_parallel<G1>(pts);
}
std::vector<G2Affine> batch_to_affine(std::span<const G2> pts) {
  return kernels::normalize_parallel<G2>(pts);
}

}  // namespace devreg::ec
