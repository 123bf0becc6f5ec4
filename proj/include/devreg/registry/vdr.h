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

// Verifiable data registry: an immutable, content-addressed record store for
// credential schemas and proof requests.

#ifndef DEVREG_REGISTRY_VDR_H_
#define DEVREG_REGISTRY_VDR_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace devreg::registry {

enum class RecordKind : uint8_t { kSchema = 1, kZkVpr = 2 };
std::string_view record_kind_name(RecordKind k);

struct VdrRecord {
  std::string id;  // lowercase hex SHA-256 of payload
  RecordKind kind = RecordKind::kSchema;
  std::vector<uint8_t> payload;

  std::string text() const { return {payload.begin(), payload.end()}; }
};

// Stored bytes no longer hash to their record id.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Vdr {
 public:
  // In-memory store.
  Vdr() = default;
  // Directory-backed store laid out as root/<kind>/<id>. Every fetch rereads
  // and rehashes the file, so on-disk tampering is caught.
  explicit Vdr(std::filesystem::path root);

  // Idempotent: identical payloads map to one record. Throws
  // std::invalid_argument on an empty payload.
  std::string publish(RecordKind kind, std::span<const uint8_t> payload);
  std::string publish(RecordKind kind, std::string_view text);

  // Throws std::out_of_range for an unknown id and IntegrityError on a hash
  // mismatch.
  VdrRecord fetch(std::string_view id) const;
  bool contains(std::string_view id) const;
  std::vector<std::string> ids() const;

 private:
  std::optional<std::filesystem::path> find_file(std::string_view id) const;

  std::optional<std::filesystem::path> root_;
  std::map<std::string, VdrRecord, std::less<>> mem_;
};

}  // namespace devreg::registry

#endif  // DEVREG_REGISTRY_VDR_H_
