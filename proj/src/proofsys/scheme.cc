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

#include "devreg/proofsys/scheme.h"

#include <stdexcept>
#include <string>

namespace devreg::proofsys {

std::string_view scheme_name(SchemeId s) {
  switch (s) {
    case SchemeId::kPerCircuitSetup: return "per-circuit";
    case SchemeId::kUniversalSetup: return "universal";
  }
  return "?";
}

SchemeId parse_scheme(std::string_view name) {
  if (name == "per-circuit" || name == "groth16") {
    return SchemeId::kPerCircuitSetup;
  }
  if (name == "universal" || name == "marlin") return SchemeId::kUniversalSetup;
  throw std::invalid_argument("unknown scheme: " + std::string(name));
}

}  // namespace devreg::proofsys
