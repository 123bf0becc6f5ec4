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

// Serial reference kernels against their OpenMP counterparts. Run with
// OMP_NUM_THREADS set to compare scaling; on a single core the two should
// be within noise of each other.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <map>
#include <random>
#include <vector>

#include "devreg/ec/bn254.h"
#include "devreg/kernels/msm.h"
#include "devreg/kernels/ntt.h"

namespace devreg::kernels {
namespace {

using ec::G1;
using ec::G1Affine;
using ff::Fr;

Fr random_fr(std::mt19937_64& rng) {
  ff::U256 v(rng(), rng(), rng(), rng() & 0x3fffffffffffffffULL);
  return Fr::reduce(v);
}

std::vector<Fr> random_vector(size_t n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Fr> v(n);
  for (auto& x : v) x = random_fr(rng);
  return v;
}

std::vector<Fr> twiddles_for(size_t n) {
  int log_n = 0;
  while ((size_t{1} << log_n) < n) ++log_n;
  const Fr omega = root_of_unity(log_n);
  std::vector<Fr> tw(n / 2);
  Fr w = Fr::one();
  for (auto& t : tw) {
    t = w;
    w *= omega;
  }
  return tw;
}

template <void (*Kernel)(std::span<Fr>, std::span<const Fr>)>
void BM_Ntt(benchmark::State& state) {
  const size_t n = static_cast<size_t>(state.range(0));
  const std::vector<Fr> input = random_vector(n, 7);
  const std::vector<Fr> tw = twiddles_for(n);
  std::vector<Fr> a;
  for (auto _ : state) {
    state.PauseTiming();
    a = input;
    state.ResumeTiming();
    Kernel(a, tw);
    benchmark::DoNotOptimize(a.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
  state.counters["threads"] = omp_get_max_threads();
}

struct MsmInput {
  std::vector<G1Affine> bases;
  std::vector<ff::U256> scalars;
};

// Bases are built once per size with the fixed-base kernel.
const MsmInput& msm_input(size_t n) {
  static std::map<size_t, MsmInput> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  MsmInput in;
  std::vector<Fr> k = random_vector(n, 11);
  in.bases = fixed_base_batch<G1>(ec::g1_generator(), k);
  in.scalars = to_canonical<Fr>(std::span<const Fr>(random_vector(n, 13)));
  return cache.emplace(n, std::move(in)).first->second;
}

template <G1 (*Kernel)(std::span<const G1Affine>, std::span<const ff::U256>)>
void BM_Msm(benchmark::State& state) {
  const MsmInput& in = msm_input(static_cast<size_t>(state.range(0)));
  for (auto _ : state) {
    G1 r = Kernel(in.bases, in.scalars);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.counters["threads"] = omp_get_max_threads();
}

BENCHMARK(BM_Ntt<ntt_serial>)->Name("ntt/serial")->RangeMultiplier(4)->Range(1 << 10, 1 << 16)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Ntt<ntt_parallel>)->Name("ntt/parallel")->RangeMultiplier(4)->Range(1 << 10, 1 << 16)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Msm<msm_serial<G1>>)->Name("msm/serial")->RangeMultiplier(4)->Range(1 << 8, 1 << 14)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Msm<msm_parallel<G1>>)->Name("msm/parallel")->RangeMultiplier(4)->Range(1 << 8, 1 << 14)
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace devreg::kernels

BENCHMARK_MAIN();
