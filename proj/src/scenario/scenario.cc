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

#include "devreg/scenario/scenario.h"

#include <stdexcept>

namespace devreg::scenario {

using crypto::AttributeValue;
using crypto::ValueKind;
using zkspec::ClaimRequirement;
using zkspec::Condition;

std::string_view condition_kind_name(ConditionKind c) {
  switch (c) {
    case ConditionKind::kRange: return "range";
    case ConditionKind::kMembership: return "membership";
    case ConditionKind::kEquality: return "equality";
  }
  return "?";
}

ConditionKind parse_condition_kind(std::string_view s) {
  for (ConditionKind c : kAllConditions) {
    if (condition_kind_name(c) == s) return c;
  }
  throw std::invalid_argument("unknown condition: " + std::string(s));
}

CredentialSchema device_schema() {
  return {"iot-device",
          "acme-certification",
          {{kDeviceKeyAttr, "device_key", ValueKind::kPoint},
           {kFirmwareAttr, "firmware", ValueKind::kUint},
           {kPostcodeAttr, "postcode", ValueKind::kString},
           {kMeasurementAttr, "measurement_type", ValueKind::kString},
           {kManufacturedAttr, "manufactured", ValueKind::kDate}}};
}

std::vector<std::string> permitted_postcodes(size_t n) {
  std::vector<std::string> out;
  for (size_t i = 0; i < n; ++i) out.push_back(std::to_string(10115 + 2 * i));
  return out;
}

ZkSpec condition_spec(ConditionKind c, const CredentialSchema& schema,
                      KeyMode mode, size_t set_size) {
  ClaimRequirement req;
  switch (c) {
    case ConditionKind::kRange:
      req = {kFirmwareAttr, Condition::range(kMinFirmware, std::nullopt)};
      break;
    case ConditionKind::kMembership: {
      std::vector<AttributeValue> set;
      for (const auto& p : permitted_postcodes(set_size)) {
        set.push_back(AttributeValue::string(p));
      }
      req = {kPostcodeAttr, Condition::membership(std::move(set))};
      break;
    }
    case ConditionKind::kEquality:
      req = {kMeasurementAttr, Condition::equality(AttributeValue::string(
                                   std::string(kRequiredMeasurement)))};
      break;
  }
  return ZkSpec{schema.schema_id(), {req}, kDeviceKeyAttr, mode};
}

std::vector<Claim> device_claims(const Fr& subject, const Point& device_key,
                                 const DeviceProfile& p) {
  return {{subject, kDeviceKeyAttr, AttributeValue::point_value(device_key)},
          {subject, kFirmwareAttr, AttributeValue::uint(p.firmware)},
          {subject, kPostcodeAttr, AttributeValue::string(p.postcode)},
          {subject, kMeasurementAttr, AttributeValue::string(p.measurement)},
          {subject, kManufacturedAttr, AttributeValue::date(p.manufactured)}};
}

}  // namespace devreg::scenario
