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

// Dense univariate polynomials over Fr in coefficient form, low degree first.

#ifndef DEVREG_PROOFSYS_POLY_H_
#define DEVREG_PROOFSYS_POLY_H_

#include <span>
#include <vector>

#include "devreg/ff/field.h"

namespace devreg::proofsys::poly {

using ff::Fr;
using Poly = std::vector<Fr>;

Fr evaluate(std::span<const Fr> p, const Fr& x);

// (p(X) - p(z)) / (X - z).
Poly divide_by_linear(std::span<const Fr> p, const Fr& z);

// p = q * (X^n - 1) + r with deg r < n. Returns {q, r}.
std::pair<Poly, Poly> divide_by_vanishing(std::span<const Fr> p, size_t n);

// p * (X^n - 1).
Poly mul_vanishing(std::span<const Fr> p, size_t n);

// Naive product; for short operands only.
Poly mul_small(std::span<const Fr> a, std::span<const Fr> b);

// Exact division by a short monic divisor; throws if a remainder is left.
Poly divide_exact(std::span<const Fr> p, std::span<const Fr> d);

// Interpolation through (xs[i], ys[i]); quadratic, for short inputs.
Poly interpolate(std::span<const Fr> xs, std::span<const Fr> ys);

// Product of (X - r) over the roots.
Poly from_roots(std::span<const Fr> roots);

void add_scaled(Poly& acc, std::span<const Fr> p, const Fr& k);

Poly random(size_t len);

void trim(Poly& p);

}  // namespace devreg::proofsys::poly

#endif  // DEVREG_PROOFSYS_POLY_H_
