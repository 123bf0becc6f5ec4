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

#ifndef DEVREG_FF_FIELD_H_
#define DEVREG_FF_FIELD_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "devreg/ff/u256.h"

namespace devreg::ff {

// Counts field multiplications on the calling thread. The registry uses the
// delta across a verification call as its measured work.
inline thread_local uint64_t tl_field_mul_count = 0;

// Evaluates f() without charging its multiplications to the counter. Used for
// lazily built constants so measured work does not depend on whether this
// process happened to build them already.
template <class F>
auto uncounted(F&& f) {
  const uint64_t saved = tl_field_mul_count;
  auto r = f();
  tl_field_mul_count = saved;
  return r;
}

namespace internal {

constexpr U256 mod_double(U256 a, const U256& m) {
  uint64_t carry = add_to(a, a);
  if (carry || a >= m) sub_from(a, m);
  return a;
}

// 2^k mod m by repeated doubling; only used at compile time.
constexpr U256 pow2_mod(int k, const U256& m) {
  U256 r(1);
  for (int i = 0; i < k; ++i) r = mod_double(r, m);
  return r;
}

// -m^{-1} mod 2^64 by Newton iteration.
constexpr uint64_t mont_inv(uint64_t m0) {
  uint64_t inv = 1;
  for (int i = 0; i < 7; ++i) inv *= 2 - m0 * inv;
  return ~inv + 1;
}

}  // namespace internal

// Prime field in Montgomery representation. Cfg supplies kModulus (odd, with
// top limb below 2^62 so the no-carry CIOS variant applies) and kName.
template <class Cfg>
class Fp {
 public:
  static constexpr U256 kModulus = Cfg::kModulus;
  static constexpr U256 kR = internal::pow2_mod(256, kModulus);
  static constexpr U256 kR2 = internal::pow2_mod(512, kModulus);
  static constexpr uint64_t kInv = internal::mont_inv(kModulus.w[0]);
  static_assert(kModulus.w[3] < (uint64_t{1} << 62));

  constexpr Fp() = default;

  static constexpr Fp zero() { return Fp(); }
  static constexpr Fp one() {
    Fp r;
    r.m_ = kR;
    return r;
  }
  static Fp from_u64(uint64_t v) { return from_canonical(U256(v)); }
  static Fp from_i64(int64_t v) {
    if (v >= 0) return from_u64(static_cast<uint64_t>(v));
    // Avoid overflow on INT64_MIN.
    return -from_u64(static_cast<uint64_t>(-(v + 1)) + 1);
  }

  // Requires v < modulus.
  static Fp from_canonical(const U256& v) {
    if (v >= kModulus) throw std::invalid_argument("value not below modulus");
    Fp r;
    r.m_ = v;
    r.mul_assign(Fp::raw(kR2));
    return r;
  }
  // Reduces any 256-bit value.
  static Fp reduce(U256 v) {
    while (v >= kModulus) sub_from(v, kModulus);
    Fp r;
    r.m_ = v;
    r.mul_assign(Fp::raw(kR2));
    return r;
  }
  // Reduces an arbitrary-length little-endian byte string.
  static Fp from_bytes_wide(std::span<const uint8_t> le) {
    Fp acc;
    const Fp k256 = from_u64(256);
    for (size_t i = le.size(); i-- > 0;) {
      acc = acc * k256 + from_u64(le[i]);
    }
    return acc;
  }
  // Strict decoding: rejects non-canonical encodings.
  static Fp from_bytes(std::span<const uint8_t, 32> le) {
    return from_canonical(from_bytes_le(le));
  }
  static Fp parse(std::string_view text) {
    return from_canonical(parse_u256(text));
  }

  U256 to_u256() const {
    Fp t = *this;
    t.mul_assign(Fp::raw(U256(1)));
    return t.m_;
  }
  void to_bytes(std::span<uint8_t, 32> out) const {
    to_bytes_le(to_u256(), out);
  }
  std::string to_string() const { return to_decimal(to_u256()); }
  std::string to_hex_string() const { return to_hex(to_u256()); }
  // Only meaningful for values that fit in 64 bits.
  uint64_t low_u64() const { return to_u256().w[0]; }

  bool is_zero() const { return m_.is_zero(); }
  bool is_one() const { return m_ == kR; }
  friend bool operator==(const Fp& a, const Fp& b) { return a.m_ == b.m_; }

  Fp& operator+=(const Fp& b) {
    add_to(m_, b.m_);
    if (m_ >= kModulus) sub_from(m_, kModulus);
    return *this;
  }
  Fp& operator-=(const Fp& b) {
    if (sub_from(m_, b.m_)) add_to(m_, kModulus);
    return *this;
  }
  Fp& operator*=(const Fp& b) {
    mul_assign(b);
    return *this;
  }
  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  Fp operator-() const {
    if (is_zero()) return *this;
    Fp r;
    r.m_ = kModulus;
    sub_from(r.m_, m_);
    return r;
  }

  Fp square() const { return *this * *this; }
  Fp dbl() const { return *this + *this; }

  Fp pow(const U256& e) const {
    Fp r = one();
    for (size_t i = e.bit_length(); i-- > 0;) {
      r = r.square();
      if (e.bit(i)) r *= *this;
    }
    return r;
  }
  Fp pow(uint64_t e) const { return pow(U256(e)); }

  // Zero maps to zero.
  Fp inverse() const {
    U256 e = kModulus;
    sub_from(e, U256(2));
    return pow(e);
  }

  // Montgomery form, exposed for kernels that need raw limbs.
  const U256& mont() const { return m_; }
  static Fp raw(const U256& mont) {
    Fp r;
    r.m_ = mont;
    return r;
  }

 private:
  // CIOS Montgomery multiplication without final-carry tracking; valid since
  // the modulus leaves two spare bits in the top limb.
  void mul_assign(const Fp& b) {
    ++tl_field_mul_count;
    const auto& a = m_.w;
    const auto& bb = b.m_.w;
    const auto& q = kModulus.w;
    uint64_t t[4] = {0, 0, 0, 0};
    for (int i = 0; i < 4; ++i) {
      u128 acc = static_cast<u128>(a[0]) * bb[i] + t[0];
      uint64_t A = static_cast<uint64_t>(acc >> 64);
      t[0] = static_cast<uint64_t>(acc);
      uint64_t m = t[0] * kInv;
      u128 red = static_cast<u128>(m) * q[0] + t[0];
      uint64_t C = static_cast<uint64_t>(red >> 64);
      for (int j = 1; j < 4; ++j) {
        acc = static_cast<u128>(a[j]) * bb[i] + t[j] + A;
        A = static_cast<uint64_t>(acc >> 64);
        red = static_cast<u128>(m) * q[j] + static_cast<uint64_t>(acc) + C;
        C = static_cast<uint64_t>(red >> 64);
        t[j - 1] = static_cast<uint64_t>(red);
      }
      t[3] = C + A;
    }
    m_ = U256(t[0], t[1], t[2], t[3]);
    if (m_ >= kModulus) sub_from(m_, kModulus);
  }

  U256 m_{};
};

template <class F>
F pow_big(const F& base, const BigLimbs& e) {
  F r = F::one();
  for (size_t i = e.size() * 64; i-- > 0;) {
    r = r.square();
    if ((e[i / 64] >> (i % 64)) & 1) r *= base;
  }
  return r;
}

// Montgomery's trick; zero entries are left as zero.
template <class F>
void batch_inverse(std::span<F> xs) {
  std::vector<F> prefix(xs.size());
  F acc = F::one();
  for (size_t i = 0; i < xs.size(); ++i) {
    prefix[i] = acc;
    if (!xs[i].is_zero()) acc *= xs[i];
  }
  F inv = acc.inverse();
  for (size_t i = xs.size(); i-- > 0;) {
    if (xs[i].is_zero()) continue;
    F next = inv * xs[i];
    xs[i] = inv * prefix[i];
    inv = next;
  }
}

struct BnBaseCfg {
  // BN254 base field modulus p.
  static constexpr U256 kModulus{0x3c208c16d87cfd47ULL, 0x97816a916871ca8dULL,
                                 0xb85045b68181585dULL, 0x30644e72e131a029ULL};
  static constexpr const char* kName = "bn254.fq";
};
struct BnScalarCfg {
  // BN254 scalar field modulus r; also the BabyJubJub base field.
  static constexpr U256 kModulus{0x43e1f593f0000001ULL, 0x2833e84879b97091ULL,
                                 0xb85045b68181585dULL, 0x30644e72e131a029ULL};
  static constexpr const char* kName = "bn254.fr";
};
struct JubScalarCfg {
  // Order of the prime-order BabyJubJub subgroup.
  static constexpr U256 kModulus{0x677297dc392126f1ULL, 0xab3eedb83920ee0aULL,
                                 0x370a08b6d0302b0bULL, 0x060c89ce5c263405ULL};
  static constexpr const char* kName = "babyjub.fs";
};

using Fq = Fp<BnBaseCfg>;
using Fr = Fp<BnScalarCfg>;
using Fs = Fp<JubScalarCfg>;

}  // namespace devreg::ff

#endif  // DEVREG_FF_FIELD_H_
