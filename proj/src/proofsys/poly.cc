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

#include "devreg/proofsys/poly.h"

#include <stdexcept>

#include "devreg/proofsys/common.h"

namespace devreg::proofsys::poly {

Fr evaluate(std::span<const Fr> p, const Fr& x) {
  Fr acc;
  for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

Poly divide_by_linear(std::span<const Fr> p, const Fr& z) {
  if (p.size() <= 1) return {};
  Poly q(p.size() - 1);
  Fr carry;
  for (size_t i = p.size() - 1; i >= 1; --i) {
    carry = carry * z + p[i];
    q[i - 1] = carry;
  }
  return q;
}

std::pair<Poly, Poly> divide_by_vanishing(std::span<const Fr> p, size_t n) {
  Poly r(p.begin(), p.end());
  if (r.size() <= n) {
    r.resize(n);
    return {{}, r};
  }
  Poly q(r.size() - n);
  for (size_t i = r.size(); i-- > n;) {
    q[i - n] = r[i];
    r[i - n] += r[i];
  }
  r.resize(n);
  return {q, r};
}

Poly mul_vanishing(std::span<const Fr> p, size_t n) {
  Poly out(p.size() + n);
  for (size_t i = 0; i < p.size(); ++i) {
    out[i + n] += p[i];
    out[i] -= p[i];
  }
  return out;
}

Poly mul_small(std::span<const Fr> a, std::span<const Fr> b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Poly divide_exact(std::span<const Fr> p, std::span<const Fr> d) {
  if (d.empty() || d.back() != Fr::one()) throw std::logic_error("divisor must be monic");
  Poly r(p.begin(), p.end());
  if (r.size() < d.size()) {
    for (const Fr& c : r) {
      if (!c.is_zero()) throw std::invalid_argument("polynomial division leaves a remainder");
    }
    return {};
  }
  const size_t dn = d.size() - 1;
  Poly q(r.size() - dn);
  for (size_t i = r.size(); i-- > dn;) {
    const Fr c = r[i];
    q[i - dn] = c;
    if (c.is_zero()) continue;
    for (size_t j = 0; j <= dn; ++j) r[i - dn + j] -= c * d[j];
  }
  for (size_t i = 0; i < dn; ++i) {
    if (!r[i].is_zero()) throw std::invalid_argument("polynomial division leaves a remainder");
  }
  return q;
}

Poly from_roots(std::span<const Fr> roots) {
  Poly p{Fr::one()};
  for (const Fr& r : roots) {
    const Fr neg = -r;
    p = mul_small(p, std::vector<Fr>{neg, Fr::one()});
  }
  return p;
}

Poly interpolate(std::span<const Fr> xs, std::span<const Fr> ys) {
  Poly out(xs.size());
  const Poly all = from_roots(xs);
  for (size_t i = 0; i < xs.size(); ++i) {
    if (ys[i].is_zero()) continue;
    Poly basis = divide_exact(all, std::vector<Fr>{-xs[i], Fr::one()});
    const Fr k = ys[i] * evaluate(basis, xs[i]).inverse();
    add_scaled(out, basis, k);
  }
  return out;
}

void add_scaled(Poly& acc, std::span<const Fr> p, const Fr& k) {
  if (acc.size() < p.size()) acc.resize(p.size());
  for (size_t i = 0; i < p.size(); ++i) acc[i] += p[i] * k;
}

Poly random(size_t len) {
  Poly p(len);
  for (auto& c : p) c = random_fr();
  return p;
}

void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

}  // namespace devreg::proofsys::poly
