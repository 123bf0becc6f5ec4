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

#include "devreg/kernels/ntt.h"

#include <omp.h>

#include <stdexcept>

namespace devreg::kernels {
namespace {

constexpr int kTwoAdicity = 28;

void bit_reverse(std::span<Fr> a) {
  const size_t n = a.size();
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
}

std::vector<Fr> powers(const Fr& base, size_t count) {
  std::vector<Fr> out(count);
  Fr acc = Fr::one();
  for (size_t i = 0; i < count; ++i) {
    out[i] = acc;
    acc *= base;
  }
  return out;
}

void distribute_powers(std::vector<Fr>& a, const Fr& shift) {
  Fr acc = Fr::one();
  for (auto& x : a) {
    x *= acc;
    acc *= shift;
  }
}

}  // namespace

Fr coset_generator() { return Fr::from_u64(5); }

Fr root_of_unity(int log_size) {
  if (log_size < 0 || log_size > kTwoAdicity) {
    throw std::invalid_argument("domain too large for the scalar field");
  }
  // 5^((r - 1) / 2^28) has order exactly 2^28.
  static const Fr kMaxRoot = ff::uncounted([] {
    ff::U256 e = Fr::kModulus;
    ff::sub_from(e, ff::U256(1));
    for (int i = 0; i < kTwoAdicity; ++i) e = ff::shr1(e);
    return coset_generator().pow(e);
  });
  Fr w = kMaxRoot;
  for (int i = log_size; i < kTwoAdicity; ++i) w = w.square();
  return w;
}

void ntt_serial(std::span<Fr> a, std::span<const Fr> twiddles) {
  const size_t n = a.size();
  bit_reverse(a);
  for (size_t half = 1; half < n; half <<= 1) {
    const size_t step = n / (2 * half);
    for (size_t start = 0; start < n; start += 2 * half) {
      for (size_t j = 0; j < half; ++j) {
        Fr t = a[start + j + half] * twiddles[j * step];
        a[start + j + half] = a[start + j] - t;
        a[start + j] += t;
      }
    }
  }
}

void ntt_parallel(std::span<Fr> a, std::span<const Fr> twiddles) {
  const long n = static_cast<long>(a.size());
  bit_reverse(a);
  const long threads = omp_get_max_threads();
  for (long half = 1; half < n; half <<= 1) {
    const long step = n / (2 * half);
    const long blocks = n / (2 * half);
    if (blocks >= threads) {
#pragma omp parallel for schedule(static)
      for (long b = 0; b < blocks; ++b) {
        const long start = b * 2 * half;
        for (long j = 0; j < half; ++j) {
          Fr t = a[start + j + half] * twiddles[j * step];
          a[start + j + half] = a[start + j] - t;
          a[start + j] += t;
        }
      }
    } else {
      for (long start = 0; start < n; start += 2 * half) {
#pragma omp parallel for schedule(static)
        for (long j = 0; j < half; ++j) {
          Fr t = a[start + j + half] * twiddles[j * step];
          a[start + j + half] = a[start + j] - t;
          a[start + j] += t;
        }
      }
    }
  }
}

Domain::Domain(size_t min_size) {
  n_ = 1;
  log_n_ = 0;
  while (n_ < min_size) {
    n_ <<= 1;
    ++log_n_;
  }
  omega_ = root_of_unity(log_n_);
  omega_inv_ = omega_.inverse();
  n_inv_ = Fr::from_u64(n_).inverse();
  twiddles_ = powers(omega_, std::max<size_t>(n_ / 2, 1));
  inv_twiddles_ = powers(omega_inv_, std::max<size_t>(n_ / 2, 1));
}

void Domain::fft(std::vector<Fr>& a) const {
  if (a.size() > n_) throw std::invalid_argument("polynomial exceeds domain");
  a.resize(n_);
  ntt_parallel(a, twiddles_);
}

void Domain::ifft(std::vector<Fr>& a) const {
  if (a.size() > n_) throw std::invalid_argument("vector exceeds domain");
  a.resize(n_);
  ntt_parallel(a, inv_twiddles_);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < static_cast<long>(n_); ++i) a[i] *= n_inv_;
}

void Domain::coset_fft(std::vector<Fr>& a, const Fr& shift) const {
  if (a.size() > n_) throw std::invalid_argument("polynomial exceeds domain");
  distribute_powers(a, shift);
  fft(a);
}

void Domain::coset_ifft(std::vector<Fr>& a, const Fr& shift) const {
  ifft(a);
  distribute_powers(a, shift.inverse());
}

Fr Domain::vanishing_at(const Fr& x) const {
  Fr r = x;
  for (int i = 0; i < log_n_; ++i) r = r.square();
  return r - Fr::one();
}

std::vector<Fr> Domain::lagrange_at(const Fr& x) const {
  // L_i(x) = (x^n - 1) * omega^i / (n * (x - omega^i)).
  const Fr z = vanishing_at(x);
  if (z.is_zero()) throw std::invalid_argument("point lies in the domain");
  std::vector<Fr> denom(n_);
  std::vector<Fr> elems = powers(omega_, n_);
  for (size_t i = 0; i < n_; ++i) denom[i] = x - elems[i];
  ff::batch_inverse<Fr>(denom);
  const Fr scale = z * n_inv_;
  std::vector<Fr> out(n_);
  for (size_t i = 0; i < n_; ++i) out[i] = scale * elems[i] * denom[i];
  return out;
}

}  // namespace devreg::kernels
