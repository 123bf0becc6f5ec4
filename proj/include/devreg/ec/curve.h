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

#ifndef DEVREG_EC_CURVE_H_
#define DEVREG_EC_CURVE_H_

#include <cstdint>

#include "devreg/ff/field.h"

namespace devreg::ec {

// Short Weierstrass curve y^2 = x^3 + b in Jacobian coordinates. Cfg provides
// the coordinate field type `Base` and `static Base b()`.
template <class Cfg>
class Jacobian {
 public:
  using F = typename Cfg::Base;

  struct Affine {
    F x{}, y{};
    bool infinity = true;

    friend bool operator==(const Affine&, const Affine&) = default;
    bool is_on_curve() const {
      return infinity || y.square() == x.square() * x + Cfg::b();
    }
    Affine operator-() const { return infinity ? *this : Affine{x, -y, false}; }
  };

  Jacobian() : x_(F::one()), y_(F::one()), z_(F::zero()) {}
  Jacobian(const Affine& a)  // NOLINT: implicit lift is the common case
      : x_(a.x), y_(a.y), z_(a.infinity ? F::zero() : F::one()) {
    if (a.infinity) x_ = y_ = F::one();
  }

  static Jacobian identity() { return Jacobian(); }
  static Jacobian from_coords(const F& x, const F& y, const F& z) {
    Jacobian r;
    r.x_ = x;
    r.y_ = y;
    r.z_ = z;
    return r;
  }
  const F& x() const { return x_; }
  const F& y() const { return y_; }
  const F& z() const { return z_; }
  bool is_identity() const { return z_.is_zero(); }

  Affine to_affine() const {
    if (is_identity()) return Affine{};
    F zi = z_.inverse();
    F zi2 = zi.square();
    return Affine{x_ * zi2, y_ * zi2 * zi, false};
  }

  friend bool operator==(const Jacobian& a, const Jacobian& b) {
    if (a.is_identity() || b.is_identity()) {
      return a.is_identity() == b.is_identity();
    }
    F az2 = a.z_.square(), bz2 = b.z_.square();
    return a.x_ * bz2 == b.x_ * az2 &&
           a.y_ * bz2 * b.z_ == b.y_ * az2 * a.z_;
  }

  Jacobian operator-() const {
    Jacobian r = *this;
    r.y_ = -r.y_;
    return r;
  }

  Jacobian dbl() const {
    if (is_identity()) return *this;
    F a = x_.square();
    F b = y_.square();
    F c = b.square();
    F d = ((x_ + b).square() - a - c).dbl();
    F e = a.dbl() + a;
    F f = e.square();
    Jacobian r;
    r.x_ = f - d.dbl();
    r.y_ = e * (d - r.x_) - c.dbl().dbl().dbl();
    r.z_ = (y_ * z_).dbl();
    return r;
  }

  friend Jacobian operator+(const Jacobian& p, const Jacobian& q) {
    if (p.is_identity()) return q;
    if (q.is_identity()) return p;
    F z1z1 = p.z_.square();
    F z2z2 = q.z_.square();
    F u1 = p.x_ * z2z2;
    F u2 = q.x_ * z1z1;
    F s1 = p.y_ * q.z_ * z2z2;
    F s2 = q.y_ * p.z_ * z1z1;
    F h = u2 - u1;
    F r = (s2 - s1).dbl();
    if (h.is_zero()) {
      return r.is_zero() ? p.dbl() : identity();
    }
    F i = h.dbl().square();
    F j = h * i;
    F v = u1 * i;
    Jacobian out;
    out.x_ = r.square() - j - v.dbl();
    out.y_ = r * (v - out.x_) - (s1 * j).dbl();
    out.z_ = ((p.z_ + q.z_).square() - z1z1 - z2z2) * h;
    return out;
  }

  // Mixed addition with an affine point.
  Jacobian add_affine(const Affine& q) const {
    if (q.infinity) return *this;
    if (is_identity()) return Jacobian(q);
    F z1z1 = z_.square();
    F u2 = q.x * z1z1;
    F s2 = q.y * z_ * z1z1;
    F h = u2 - x_;
    F r = (s2 - y_).dbl();
    if (h.is_zero()) {
      return r.is_zero() ? dbl() : identity();
    }
    F hh = h.square();
    F i = hh.dbl().dbl();
    F j = h * i;
    F v = x_ * i;
    Jacobian out;
    out.x_ = r.square() - j - v.dbl();
    out.y_ = r * (v - out.x_) - (y_ * j).dbl();
    out.z_ = (z_ + h).square() - z1z1 - hh;
    return out;
  }

  Jacobian& operator+=(const Jacobian& q) { return *this = *this + q; }
  Jacobian& operator-=(const Jacobian& q) { return *this = *this + (-q); }
  friend Jacobian operator-(const Jacobian& p, const Jacobian& q) {
    return p + (-q);
  }

  Jacobian mul(const ff::U256& k) const {
    Jacobian acc;
    for (size_t i = k.bit_length(); i-- > 0;) {
      acc = acc.dbl();
      if (k.bit(i)) acc += *this;
    }
    return acc;
  }
  Jacobian mul(const ff::Fr& k) const { return mul(k.to_u256()); }

 private:
  F x_, y_, z_;
};

}  // namespace devreg::ec

#endif  // DEVREG_EC_CURVE_H_
