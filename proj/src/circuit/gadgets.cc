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

#include "devreg/circuit/gadgets.h"

#include <array>
#include <stdexcept>

#include "devreg/crypto/poseidon.h"

namespace devreg::circuit {
namespace {

const Fr& jub_a() {
  static const Fr a = ff::uncounted([] { return Fr::from_u64(crypto::kJubA); });
  return a;
}
const Fr& jub_d() {
  static const Fr d = ff::uncounted([] { return Fr::from_u64(crypto::kJubD); });
  return d;
}

// Keeps Poseidon partial-round state from accumulating long combinations.
constexpr size_t kMaxStateTerms = 24;

LC pow5(Builder& b, const LC& x) {
  Var x2 = mul(b, x, x);
  Var x4 = mul(b, x2, x2);
  return mul(b, x4, x);
}

// bit ? q : p, one constraint per coordinate. The result is a fresh variable
// so LCs do not grow along a chain of selections.
LC select(Builder& b, Var bit, const LC& p, const LC& q) {
  const Fr pv = b.value(p);
  Var out = b.witness(pv + b.value(bit) * (b.value(q) - pv));
  b.enforce(bit, q - p, LC(out) - p);
  return out;
}

PointVar select(Builder& b, Var bit, const PointVar& p, const PointVar& q) {
  return {select(b, bit, p.x, q.x), select(b, bit, p.y, q.y)};
}

}  // namespace

Var materialize(Builder& b, const LC& x) {
  Var v = b.witness(b.value(x));
  b.enforce(x, LC::one(), v);
  return v;
}

Var mul(Builder& b, const LC& x, const LC& y) {
  Var v = b.witness(b.value(x) * b.value(y));
  b.enforce(x, y, v);
  return v;
}

void enforce_equal(Builder& b, const LC& x, const LC& y) {
  b.enforce(x - y, LC::one(), LC());
}

void enforce_boolean(Builder& b, Var bit) {
  b.enforce(bit, LC(bit) - LC::one(), LC());
}

std::vector<Var> to_bits(Builder& b, const LC& x, size_t n) {
  const ff::U256 v = b.value(x).to_u256();
  std::vector<Var> bits;
  bits.reserve(n);
  LC sum;
  Fr pow = Fr::one();
  for (size_t i = 0; i < n; ++i) {
    Var bit = b.witness(v.bit(i) ? Fr::one() : Fr::zero());
    enforce_boolean(b, bit);
    sum += LC(bit) * pow;
    pow = pow.dbl();
    bits.push_back(bit);
  }
  enforce_equal(b, sum, x);
  return bits;
}

void enforce_bits_below(Builder& b, std::span<const Var> bits,
                        const ff::U256& bound) {
  if (bound.bit_length() > bits.size()) return;  // always below
  // Scan from the top keeping eq = [prefix equals bound prefix] and
  // gt = [prefix exceeds bound prefix]; the integer is below bound iff both
  // end at zero.
  LC eq = LC::one();
  LC gt;
  for (size_t i = bits.size(); i-- > 0;) {
    Var t = mul(b, eq, bits[i]);  // eq && bit
    if (bound.bit(i)) {
      eq = LC(t);
    } else {
      gt += LC(t);
      eq = eq - LC(t);
    }
  }
  enforce_equal(b, eq, LC());
  enforce_equal(b, gt, LC());
}

std::vector<Var> to_bits_strict(Builder& b, const LC& x) {
  std::vector<Var> bits = to_bits(b, x, 254);
  enforce_bits_below(b, bits, Fr::kModulus);
  return bits;
}

LC poseidon(Builder& b, std::span<const LC> inputs) {
  const crypto::PoseidonParams& p = crypto::poseidon_params(inputs.size());
  const int t = p.width;
  std::vector<LC> s(t);
  for (size_t i = 0; i < inputs.size(); ++i) s[i + 1] = inputs[i];
  for (int r = 0; r < p.total_rounds(); ++r) {
    for (int i = 0; i < t; ++i) s[i] += LC::constant(p.round_constants[r * t + i]);
    if (p.is_full_round(r)) {
      for (int i = 0; i < t; ++i) s[i] = pow5(b, s[i]);
    } else {
      s[0] = pow5(b, s[0]);
    }
    std::vector<LC> next(t);
    for (int i = 0; i < t; ++i) {
      for (int j = 0; j < t; ++j) next[i] += s[j] * p.mds[i * t + j];
      next[i].normalize();
    }
    s = std::move(next);
    if (!p.is_full_round(r)) {
      for (int i = 1; i < t; ++i) {
        if (s[i].size() > kMaxStateTerms) s[i] = materialize(b, s[i]);
      }
    }
  }
  return s[0];
}

LC hash_fields(Builder& b, std::span<const LC> inputs) {
  if (inputs.empty()) throw std::invalid_argument("hash_fields: empty input");
  constexpr size_t kMax = crypto::kPoseidonMaxArity;
  if (inputs.size() <= kMax) return poseidon(b, inputs);
  LC acc = poseidon(b, inputs.first(kMax));
  for (size_t i = kMax; i < inputs.size(); i += 4) {
    std::array<LC, 5> block{acc, LC(), LC(), LC(), LC()};
    for (size_t j = 0; j < 4 && i + j < inputs.size(); ++j) block[j + 1] = inputs[i + j];
    acc = poseidon(b, block);
  }
  std::array<LC, 2> tail{acc, LC::constant(Fr::from_u64(inputs.size()))};
  return poseidon(b, tail);
}

PointVar point_add(Builder& b, const PointVar& p, const PointVar& q) {
  Var beta = mul(b, p.x, q.y);
  Var gamma = mul(b, p.y, q.x);
  Var delta = mul(b, p.y - p.x * jub_a(), q.x + q.y);
  Var tau = mul(b, beta, gamma);
  const Fr dt = jub_d() * b.value(tau);
  const Fr xv = (b.value(beta) + b.value(gamma)) * (Fr::one() + dt).inverse();
  const Fr yv = (b.value(delta) + jub_a() * b.value(beta) - b.value(gamma)) *
                (Fr::one() - dt).inverse();
  Var x3 = b.witness(xv);
  Var y3 = b.witness(yv);
  b.enforce(LC::one() + LC(tau) * jub_d(), x3, LC(beta) + LC(gamma));
  b.enforce(LC::one() - LC(tau) * jub_d(), y3,
            LC(delta) + LC(beta) * jub_a() - LC(gamma));
  return {x3, y3};
}

void enforce_on_curve(Builder& b, const PointVar& p) {
  Var x2 = mul(b, p.x, p.x);
  Var y2 = mul(b, p.y, p.y);
  Var x2y2 = mul(b, x2, y2);
  enforce_equal(b, LC(x2) * jub_a() + LC(y2), LC::one() + LC(x2y2) * jub_d());
}

PointVar scalar_mul(Builder& b, std::span<const Var> bits, const PointVar& p) {
  PointVar acc = PointVar::constant(crypto::Point::identity());
  PointVar base = p;
  for (size_t i = 0; i < bits.size(); ++i) {
    acc = i == 0 ? select(b, bits[i], acc, base)
                 : select(b, bits[i], acc, point_add(b, acc, base));
    if (i + 1 < bits.size()) base = point_add(b, base, base);
  }
  return acc;
}

PointVar fixed_base_mul(Builder& b, std::span<const Var> bits,
                        const crypto::Point& base) {
  PointVar acc;
  crypto::Point q = base;
  for (size_t i = 0; i < bits.size(); ++i) {
    // bit ? q : identity, linear in the bit.
    PointVar sel{LC(bits[i]) * q.x, LC::one() + LC(bits[i]) * (q.y - Fr::one())};
    acc = i == 0 ? sel : point_add(b, acc, sel);
    q = q.dbl();
  }
  return acc;
}

void verify_eddsa(Builder& b, const PointVar& pub, const LC& m,
                  const PointVar& r, const LC& s) {
  enforce_on_curve(b, r);
  std::array<LC, 5> ch{r.x, r.y, pub.x, pub.y, m};
  LC h = poseidon(b, ch);
  std::vector<Var> h_bits = to_bits_strict(b, h);
  std::vector<Var> s_bits = to_bits(b, s, 251);
  enforce_bits_below(b, s_bits, crypto::Fs::kModulus);
  PointVar a8 = point_add(b, pub, pub);
  a8 = point_add(b, a8, a8);
  a8 = point_add(b, a8, a8);
  PointVar lhs = fixed_base_mul(b, s_bits, crypto::base8());
  PointVar rhs = point_add(b, r, scalar_mul(b, h_bits, a8));
  enforce_equal(b, lhs.x, rhs.x);
  enforce_equal(b, lhs.y, rhs.y);
}

}  // namespace devreg::circuit
