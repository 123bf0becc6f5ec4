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

#include "devreg/registry/vdr.h"

#include <algorithm>
#include <fstream>
#include <iterator>

#include "devreg/crypto/digest.h"

namespace devreg::registry {
namespace {

constexpr RecordKind kKinds[] = {RecordKind::kSchema, RecordKind::kZkVpr};

std::vector<uint8_t> read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool is_record_id(std::string_view id) {
  if (id.size() != 64) return false;
  for (char c : id) {
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
  }
  return true;
}

}  // namespace

std::string_view record_kind_name(RecordKind k) {
  return k == RecordKind::kSchema ? "schema" : "zkvpr";
}

Vdr::Vdr(std::filesystem::path root) : root_(std::move(root)) {
  for (RecordKind k : kKinds) {
    std::filesystem::create_directories(*root_ / record_kind_name(k));
  }
}

std::string Vdr::publish(RecordKind kind, std::span<const uint8_t> payload) {
  if (payload.empty()) throw std::invalid_argument("empty VDR payload");
  std::string id = crypto::hex_encode(crypto::sha256(payload));
  if (!root_) {
    mem_.try_emplace(id, VdrRecord{id, kind, {payload.begin(), payload.end()}});
    return id;
  }
  if (find_file(id)) return id;
  const auto final_path = *root_ / record_kind_name(kind) / id;
  const auto tmp = final_path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(payload.data()),
              static_cast<std::streamsize>(payload.size()));
    if (!out) throw std::runtime_error("cannot write " + tmp);
  }
  std::filesystem::rename(tmp, final_path);
  return id;
}

std::string Vdr::publish(RecordKind kind, std::string_view text) {
  return publish(kind, std::span(reinterpret_cast<const uint8_t*>(text.data()), text.size()));
}

std::optional<std::filesystem::path> Vdr::find_file(std::string_view id) const {
  if (!is_record_id(id)) return std::nullopt;
  for (RecordKind k : kKinds) {
    auto p = *root_ / record_kind_name(k) / std::string(id);
    if (std::filesystem::is_regular_file(p)) return p;
  }
  return std::nullopt;
}

VdrRecord Vdr::fetch(std::string_view id) const {
  VdrRecord rec;
  if (!root_) {
    auto it = mem_.find(id);
    if (it == mem_.end()) throw std::out_of_range("unknown VDR record " + std::string(id));
    rec = it->second;
  } else {
    auto p = find_file(id);
    if (!p) throw std::out_of_range("unknown VDR record " + std::string(id));
    rec.id = std::string(id);
    rec.kind = p->parent_path().filename() == record_kind_name(RecordKind::kSchema)
                   ? RecordKind::kSchema
                   : RecordKind::kZkVpr;
    rec.payload = read_file(*p);
  }
  if (crypto::hex_encode(crypto::sha256(rec.payload)) != rec.id) {
    throw IntegrityError("integrity check failed: VDR record " + rec.id);
  }
  return rec;
}

bool Vdr::contains(std::string_view id) const {
  return root_ ? find_file(id).has_value() : mem_.contains(id);
}

std::vector<std::string> Vdr::ids() const {
  std::vector<std::string> out;
  if (!root_) {
    for (const auto& [id, _] : mem_) out.push_back(id);
    return out;
  }
  for (RecordKind k : kKinds) {
    for (const auto& e : std::filesystem::directory_iterator(*root_ / record_kind_name(k))) {
      auto name = e.path().filename().string();
      if (is_record_id(name)) out.push_back(name);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace devreg::registry
