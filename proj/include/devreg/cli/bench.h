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

// The scheme/condition benchmark matrix: for every cell it runs the full
// attest, setup, prove, register flow on a fresh chain and records timings,
// sizes and cost units.

#ifndef DEVREG_CLI_BENCH_H_
#define DEVREG_CLI_BENCH_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "devreg/proofsys/scheme.h"
#include "devreg/scenario/scenario.h"

namespace devreg::cli {

struct BenchOptions {
  std::vector<proofsys::SchemeId> schemes = {proofsys::SchemeId::kPerCircuitSetup,
                                             proofsys::SchemeId::kUniversalSetup};
  std::vector<scenario::ConditionKind> conditions = {std::begin(scenario::kAllConditions),
                                                     std::end(scenario::kAllConditions)};
  int repeat = 1;
  uint64_t max_constraints = 65536;  // universal SRS bound
  std::optional<std::vector<uint8_t>> seed;
};

// Times are medians over the repetitions, in seconds. For the universal
// scheme setup_s includes generating the SRS (srs_s) plus indexing.
struct BenchCell {
  scenario::ConditionKind condition = scenario::ConditionKind::kRange;
  proofsys::SchemeId scheme = proofsys::SchemeId::kPerCircuitSetup;
  uint64_t constraint_count = 0;
  double srs_s = 0;
  double setup_s = 0;
  double witness_s = 0;
  double prove_s = 0;
  double verify_s = 0;
  uint64_t cost_units = 0;
  uint64_t pk_bytes = 0;
  uint64_t vk_bytes = 0;
  uint64_t proof_bytes = 0;
  bool accepted = false;
};

struct BenchReport {
  std::vector<BenchCell> cells;
  int repeat = 1;
  int threads = 1;
  uint64_t max_constraints = 0;

  const BenchCell* find(scenario::ConditionKind c, proofsys::SchemeId s) const;
  std::string to_json() const;
  static BenchReport from_json(std::string_view text);
  std::string to_table() const;
};

// Throws std::runtime_error naming the failing cell.
BenchReport run_bench(const BenchOptions& opts, std::ostream* progress = nullptr);

// Violated ordering properties; empty when the report passes. Pairwise
// scheme checks run for every condition with both schemes present; size
// checks need all three conditions.
std::vector<std::string> check_report(const BenchReport& report);

}  // namespace devreg::cli

#endif  // DEVREG_CLI_BENCH_H_
