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

#ifndef DEVREG_KERNELS_MSM_H_
#define DEVREG_KERNELS_MSM_H_

// Multi-scalar multiplication and fixed-base batch multiplication over any
// Jacobian<Cfg> group. Each parallel kernel has a serial twin that must
// produce identical group elements.

#include <omp.h>

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "devreg/ec/curve.h"
#include "devreg/ff/field.h"

namespace devreg::kernels {

namespace internal {

inline int msm_window(size_t n) {
  if (n < 32) return 3;
  int c = 0;
  for (size_t m = n; m > 1; m >>= 1) ++c;  // floor(log2 n)
  return std::clamp(c * 69 / 100 + 2, 4, 16);
}

inline uint32_t window_digit(const ff::U256& k, size_t lo, int c) {
  uint32_t d = 0;
  for (int b = 0; b < c; ++b) {
    if (k.bit(lo + b)) d |= uint32_t{1} << b;
  }
  return d;
}

// Sum over one window: sum_j j * bucket_j.
template <class G>
G window_sum(std::span<const typename G::Affine> bases,
             std::span<const ff::U256> scalars, size_t lo, int c) {
  std::vector<G> buckets((size_t{1} << c) - 1);
  for (size_t i = 0; i < bases.size(); ++i) {
    uint32_t d = window_digit(scalars[i], lo, c);
    if (d != 0) buckets[d - 1] = buckets[d - 1].add_affine(bases[i]);
  }
  G running, acc;
  for (size_t j = buckets.size(); j-- > 0;) {
    running += buckets[j];
    acc += running;
  }
  return acc;
}

template <class G>
G combine_windows(const std::vector<G>& sums, int c) {
  G total;
  for (size_t w = sums.size(); w-- > 0;) {
    for (int b = 0; b < c; ++b) total = total.dbl();
    total += sums[w];
  }
  return total;
}

}  // namespace internal

template <class F>
std::vector<ff::U256> to_canonical(std::span<const F> xs) {
  std::vector<ff::U256> out(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) out[i] = xs[i].to_u256();
  return out;
}

// Pippenger bucket method, one window at a time.
template <class G>
G msm_serial(std::span<const typename G::Affine> bases,
             std::span<const ff::U256> scalars) {
  if (bases.size() != scalars.size()) {
    throw std::invalid_argument("msm: length mismatch");
  }
  const int c = internal::msm_window(bases.size());
  const size_t windows = (256 + c - 1) / c;
  std::vector<G> sums(windows);
  for (size_t w = 0; w < windows; ++w) {
    sums[w] = internal::window_sum<G>(bases, scalars, w * c, c);
  }
  return internal::combine_windows(sums, c);
}

// Windows are independent; each thread owns a subset of them.
template <class G>
G msm_parallel(std::span<const typename G::Affine> bases,
               std::span<const ff::U256> scalars) {
  if (bases.size() != scalars.size()) {
    throw std::invalid_argument("msm: length mismatch");
  }
  const int c = internal::msm_window(bases.size());
  const long windows = (256 + c - 1) / c;
  std::vector<G> sums(windows);
#pragma omp parallel for schedule(dynamic)
  for (long w = 0; w < windows; ++w) {
    sums[w] = internal::window_sum<G>(bases, scalars, w * c, c);
  }
  return internal::combine_windows(sums, c);
}

template <class G>
G msm(std::span<const typename G::Affine> bases, std::span<const ff::Fr> k) {
  std::vector<ff::U256> s = to_canonical<ff::Fr>(k);
  return msm_parallel<G>(bases, s);
}

// Montgomery's trick over Jacobian z coordinates.
template <class G>
std::vector<typename G::Affine> normalize_serial(std::span<const G> pts) {
  using F = typename G::F;
  std::vector<F> zs(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) zs[i] = pts[i].z();
  ff::batch_inverse<F>(zs);
  std::vector<typename G::Affine> out(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].is_identity()) continue;
    F zi2 = zs[i].square();
    out[i] = {pts[i].x() * zi2, pts[i].y() * zi2 * zs[i], false};
  }
  return out;
}

// Same result as normalize_serial; one inversion per thread chunk.
template <class G>
std::vector<typename G::Affine> normalize_parallel(std::span<const G> pts) {
  std::vector<typename G::Affine> out(pts.size());
  const long n = static_cast<long>(pts.size());
  const long chunks = std::max<long>(1, omp_get_max_threads());
#pragma omp parallel for schedule(static)
  for (long t = 0; t < chunks; ++t) {
    const long lo = n * t / chunks, hi = n * (t + 1) / chunks;
    auto part = normalize_serial<G>(pts.subspan(lo, hi - lo));
    std::copy(part.begin(), part.end(), out.begin() + lo);
  }
  return out;
}

// Precomputed window table for repeated multiplication of one base.
template <class G>
class FixedBaseTable {
 public:
  using Affine = typename G::Affine;

  explicit FixedBaseTable(const Affine& base, int window = 8)
      : c_(window), windows_((256 + window - 1) / window) {
    const size_t per = (size_t{1} << c_) - 1;
    std::vector<G> raw(windows_ * per);
    G b(base);
    for (size_t w = 0; w < windows_; ++w) {
      G acc = b;
      for (size_t j = 0; j < per; ++j) {
        raw[w * per + j] = acc;
        acc += b;
      }
      for (int s = 0; s < c_; ++s) b = b.dbl();
    }
    table_ = normalize_serial<G>(raw);
  }

  G mul(const ff::U256& k) const {
    const size_t per = (size_t{1} << c_) - 1;
    G acc;
    for (size_t w = 0; w < windows_; ++w) {
      uint32_t d = internal::window_digit(k, w * c_, c_);
      if (d != 0) acc = acc.add_affine(table_[w * per + d - 1]);
    }
    return acc;
  }

 private:
  int c_;
  size_t windows_;
  std::vector<Affine> table_;
};

template <class G>
std::vector<typename G::Affine> fixed_base_serial(
    const FixedBaseTable<G>& table, std::span<const ff::U256> scalars) {
  std::vector<G> pts(scalars.size());
  for (size_t i = 0; i < scalars.size(); ++i) pts[i] = table.mul(scalars[i]);
  return normalize_serial<G>(pts);
}

template <class G>
std::vector<typename G::Affine> fixed_base_parallel(
    const FixedBaseTable<G>& table, std::span<const ff::U256> scalars) {
  std::vector<G> pts(scalars.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < static_cast<long>(scalars.size()); ++i) {
    pts[i] = table.mul(scalars[i]);
  }
  return normalize_parallel<G>(pts);
}

template <class G>
std::vector<typename G::Affine> fixed_base_batch(
    const typename G::Affine& base, std::span<const ff::Fr> k) {
  FixedBaseTable<G> table(base, k.size() > 256 ? 8 : 4);
  std::vector<ff::U256> s = to_canonical<ff::Fr>(k);
  return fixed_base_parallel<G>(table, s);
}

}  // namespace devreg::kernels

#endif  // DEVREG_KERNELS_MSM_H_
