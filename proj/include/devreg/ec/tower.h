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

#ifndef DEVREG_EC_TOWER_H_
#define DEVREG_EC_TOWER_H_

// Extension tower for the BN254 pairing:
//   Fq2  = Fq[u]  / (u^2 + 1)
//   Fq6  = Fq2[v] / (v^3 - xi),  xi = 9 + u
//   Fq12 = Fq6[w] / (w^2 - v)

#include "devreg/ff/field.h"

namespace devreg::ec {

using ff::Fq;

struct Fq2 {
  Fq c0, c1;

  static Fq2 zero() { return {}; }
  static Fq2 one() { return {Fq::one(), Fq::zero()}; }
  bool is_zero() const { return c0.is_zero() && c1.is_zero(); }
  friend bool operator==(const Fq2&, const Fq2&) = default;

  friend Fq2 operator+(const Fq2& a, const Fq2& b) {
    return {a.c0 + b.c0, a.c1 + b.c1};
  }
  friend Fq2 operator-(const Fq2& a, const Fq2& b) {
    return {a.c0 - b.c0, a.c1 - b.c1};
  }
  Fq2 operator-() const { return {-c0, -c1}; }
  friend Fq2 operator*(const Fq2& a, const Fq2& b) {
    Fq v0 = a.c0 * b.c0;
    Fq v1 = a.c1 * b.c1;
    return {v0 - v1, (a.c0 + a.c1) * (b.c0 + b.c1) - v0 - v1};
  }
  Fq2& operator+=(const Fq2& b) { return *this = *this + b; }
  Fq2& operator-=(const Fq2& b) { return *this = *this - b; }
  Fq2& operator*=(const Fq2& b) { return *this = *this * b; }
  Fq2 scale(const Fq& s) const { return {c0 * s, c1 * s}; }
  Fq2 square() const {
    Fq ab = c0 * c1;
    return {(c0 + c1) * (c0 - c1), ab.dbl()};
  }
  Fq2 dbl() const { return {c0.dbl(), c1.dbl()}; }
  Fq2 conj() const { return {c0, -c1}; }
  Fq2 inverse() const {
    Fq t = (c0.square() + c1.square()).inverse();
    return {c0 * t, -(c1 * t)};
  }
  // Multiply by xi = 9 + u.
  Fq2 mul_by_xi() const {
    Fq nine_c0 = c0.dbl().dbl().dbl() + c0;
    Fq nine_c1 = c1.dbl().dbl().dbl() + c1;
    return {nine_c0 - c1, c0 + nine_c1};
  }
  Fq2 pow(const ff::U256& e) const {
    Fq2 r = one();
    for (size_t i = e.bit_length(); i-- > 0;) {
      r = r.square();
      if (e.bit(i)) r = r * *this;
    }
    return r;
  }
};

struct Fq6 {
  Fq2 c0, c1, c2;

  static Fq6 zero() { return {}; }
  static Fq6 one() { return {Fq2::one(), Fq2::zero(), Fq2::zero()}; }
  bool is_zero() const { return c0.is_zero() && c1.is_zero() && c2.is_zero(); }
  friend bool operator==(const Fq6&, const Fq6&) = default;

  friend Fq6 operator+(const Fq6& a, const Fq6& b) {
    return {a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2};
  }
  friend Fq6 operator-(const Fq6& a, const Fq6& b) {
    return {a.c0 - b.c0, a.c1 - b.c1, a.c2 - b.c2};
  }
  Fq6 operator-() const { return {-c0, -c1, -c2}; }
  friend Fq6 operator*(const Fq6& a, const Fq6& b) {
    Fq2 v0 = a.c0 * b.c0;
    Fq2 v1 = a.c1 * b.c1;
    Fq2 v2 = a.c2 * b.c2;
    return {v0 + ((a.c1 + a.c2) * (b.c1 + b.c2) - v1 - v2).mul_by_xi(),
            (a.c0 + a.c1) * (b.c0 + b.c1) - v0 - v1 + v2.mul_by_xi(),
            (a.c0 + a.c2) * (b.c0 + b.c2) - v0 - v2 + v1};
  }
  Fq6 square() const { return *this * *this; }
  Fq6 dbl() const { return {c0.dbl(), c1.dbl(), c2.dbl()}; }
  // Multiply by v.
  Fq6 mul_by_v() const { return {c2.mul_by_xi(), c0, c1}; }
  Fq6 mul_by_fq2(const Fq2& s) const { return {c0 * s, c1 * s, c2 * s}; }
  Fq6 inverse() const {
    Fq2 t0 = c0.square() - (c1 * c2).mul_by_xi();
    Fq2 t1 = c2.square().mul_by_xi() - c0 * c1;
    Fq2 t2 = c1.square() - c0 * c2;
    Fq2 d = c0 * t0 + (c2 * t1 + c1 * t2).mul_by_xi();
    Fq2 di = d.inverse();
    return {t0 * di, t1 * di, t2 * di};
  }
};

struct Fq12 {
  Fq6 c0, c1;

  static Fq12 zero() { return {}; }
  static Fq12 one() { return {Fq6::one(), Fq6::zero()}; }
  bool is_one() const { return *this == one(); }
  friend bool operator==(const Fq12&, const Fq12&) = default;

  friend Fq12 operator*(const Fq12& a, const Fq12& b) {
    Fq6 v0 = a.c0 * b.c0;
    Fq6 v1 = a.c1 * b.c1;
    return {v0 + v1.mul_by_v(), (a.c0 + a.c1) * (b.c0 + b.c1) - v0 - v1};
  }
  Fq12& operator*=(const Fq12& b) { return *this = *this * b; }
  Fq12 square() const {
    Fq6 ab = c0 * c1;
    Fq6 t = (c0 + c1) * (c0 + c1.mul_by_v());
    return {t - ab - ab.mul_by_v(), ab.dbl()};
  }
  Fq12 conj() const { return {c0, -c1}; }
  Fq12 inverse() const {
    Fq6 t = (c0.square() - c1.square().mul_by_v()).inverse();
    return {c0 * t, -(c1 * t)};
  }
  // Multiply by the sparse element (a0, 0, 0) + (b0, b1, 0) w produced by
  // line evaluations.
  Fq12 mul_by_034(const Fq2& a0, const Fq2& b0, const Fq2& b1) const;
  // x -> x^(p^k).
  Fq12 frobenius(int k) const;
  Fq12 pow(const ff::BigLimbs& e) const;
};

}  // namespace devreg::ec

#endif  // DEVREG_EC_TOWER_H_
