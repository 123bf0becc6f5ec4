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

#ifndef DEVREG_TESTS_TEST_UTIL_H_
#define DEVREG_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <random>

#include "devreg/ff/field.h"

namespace devreg::testing {

template <class F>
F random_field(std::mt19937_64& rng) {
  ff::U256 v(rng(), rng(), rng(), rng() & 0x3fffffffffffffffULL);
  return F::reduce(v);
}

}  // namespace devreg::testing

#endif  // DEVREG_TESTS_TEST_UTIL_H_
