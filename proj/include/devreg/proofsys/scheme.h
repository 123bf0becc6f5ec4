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

#ifndef DEVREG_PROOFSYS_SCHEME_H_
#define DEVREG_PROOFSYS_SCHEME_H_

#include <cstdint>
#include <string_view>

namespace devreg::proofsys {

// PerCircuitSetup is a Groth16-style scheme with a per-circuit trusted setup;
// UniversalSetup is a Marlin-style holographic IOP over a KZG universal SRS.
enum class SchemeId : uint8_t { kPerCircuitSetup = 1, kUniversalSetup = 2 };

std::string_view scheme_name(SchemeId s);
// Accepts "per-circuit"/"groth16" and "universal"/"marlin". Throws
// std::invalid_argument otherwise.
SchemeId parse_scheme(std::string_view name);

}  // namespace devreg::proofsys

#endif  // DEVREG_PROOFSYS_SCHEME_H_
