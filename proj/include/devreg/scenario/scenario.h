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

// A reference device-registration scenario shared by the CLI, the bench
// harness and the end-to-end tests: one schema and three registration
// conditions (firmware range, postcode membership, measurement equality).

#ifndef DEVREG_SCENARIO_SCENARIO_H_
#define DEVREG_SCENARIO_SCENARIO_H_

#include <string>
#include <string_view>
#include <vector>

#include "devreg/credential/credential.h"
#include "devreg/zkspec/zkspec.h"

namespace devreg::scenario {

using credential::Claim;
using credential::CredentialSchema;
using crypto::Fr;
using crypto::Point;
using zkspec::KeyMode;
using zkspec::ZkSpec;

enum class ConditionKind { kRange, kMembership, kEquality };
inline constexpr ConditionKind kAllConditions[] = {
    ConditionKind::kRange, ConditionKind::kMembership, ConditionKind::kEquality};
std::string_view condition_kind_name(ConditionKind c);
// Accepts "range", "membership", "equality".
ConditionKind parse_condition_kind(std::string_view s);

inline constexpr uint32_t kDeviceKeyAttr = 0;
inline constexpr uint32_t kFirmwareAttr = 1;
inline constexpr uint32_t kPostcodeAttr = 2;
inline constexpr uint32_t kMeasurementAttr = 3;
inline constexpr uint32_t kManufacturedAttr = 4;

inline constexpr uint64_t kMinFirmware = 5;
inline constexpr std::string_view kRequiredMeasurement = "temperature";

CredentialSchema device_schema();

// n distinct five-digit postcodes; the first ten form the default whitelist.
std::vector<std::string> permitted_postcodes(size_t n = 10);

ZkSpec condition_spec(ConditionKind c, const CredentialSchema& schema,
                      KeyMode mode = KeyMode::kPlain, size_t set_size = 10);

struct DeviceProfile {
  uint64_t firmware = 7;
  std::string postcode = "10117";
  std::string measurement = std::string(kRequiredMeasurement);
  uint64_t manufactured = 1767225600;  // 2026-01-01
};

// Claims for every schema attribute, all about one subject.
std::vector<Claim> device_claims(const Fr& subject, const Point& device_key,
                                 const DeviceProfile& profile = {});

}  // namespace devreg::scenario

#endif  // DEVREG_SCENARIO_SCENARIO_H_
