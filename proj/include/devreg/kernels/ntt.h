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

#ifndef DEVREG_KERNELS_NTT_H_
#define DEVREG_KERNELS_NTT_H_

#include <cstddef>
#include <span>
#include <vector>

#include "devreg/ff/field.h"

namespace devreg::kernels {

using ff::Fr;

// Primitive 2^k-th root of unity in Fr; k <= 28.
Fr root_of_unity(int log_size);
// Multiplicative generator of Fr*, used as the default coset shift.
Fr coset_generator();

// In-place radix-2 decimation-in-time transform. `twiddles` holds
// omega^0 .. omega^{n/2 - 1}. ntt_serial is the reference; ntt_parallel
// distributes butterflies across OpenMP threads and must agree bit-for-bit.
void ntt_serial(std::span<Fr> a, std::span<const Fr> twiddles);
void ntt_parallel(std::span<Fr> a, std::span<const Fr> twiddles);

// Multiplicative subgroup of size 2^k with cached twiddle tables.
class Domain {
 public:
  explicit Domain(size_t min_size);

  size_t size() const { return n_; }
  int log_size() const { return log_n_; }
  const Fr& generator() const { return omega_; }
  const Fr& size_inv() const { return n_inv_; }
  Fr element(size_t i) const { return omega_.pow(static_cast<uint64_t>(i)); }

  // Coefficients (length <= n, zero padded) to evaluations over the domain.
  void fft(std::vector<Fr>& a) const;
  // Evaluations to coefficients.
  void ifft(std::vector<Fr>& a) const;
  // Evaluations over shift * <omega>.
  void coset_fft(std::vector<Fr>& a, const Fr& shift) const;
  void coset_ifft(std::vector<Fr>& a, const Fr& shift) const;

  // x^n - 1.
  Fr vanishing_at(const Fr& x) const;
  // All Lagrange basis polynomials evaluated at x (x outside the domain).
  std::vector<Fr> lagrange_at(const Fr& x) const;

 private:
  size_t n_;
  int log_n_;
  Fr omega_, omega_inv_, n_inv_;
  std::vector<Fr> twiddles_, inv_twiddles_;
};

}  // namespace devreg::kernels

#endif  // DEVREG_KERNELS_NTT_H_
