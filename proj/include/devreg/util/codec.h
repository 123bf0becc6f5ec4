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

#ifndef DEVREG_UTIL_CODEC_H_
#define DEVREG_UTIL_CODEC_H_

// Little-endian, length-prefixed binary encoding shared by every on-disk and
// on-chain format. Readers throw std::invalid_argument on truncation.

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "devreg/ff/field.h"

namespace devreg::util {

class ByteWriter {
 public:
  void u8(uint8_t v) { out_.push_back(v); }
  void u32(uint32_t v) { put_le(v, 4); }
  void u64(uint64_t v) { put_le(v, 8); }
  void i64(int64_t v) { put_le(static_cast<uint64_t>(v), 8); }
  void raw(std::span<const uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  void bytes(std::span<const uint8_t> b) {
    u64(b.size());
    raw(b);
  }
  void str(std::string_view s) {
    bytes(std::span(reinterpret_cast<const uint8_t*>(s.data()), s.size()));
  }
  template <class F>
  void field(const F& f) {
    uint8_t b[32];
    f.to_bytes(std::span<uint8_t, 32>(b, 32));
    raw(b);
  }
  template <class F>
  void fields(std::span<const F> fs) {
    u64(fs.size());
    for (const F& f : fs) field(f);
  }

  const std::vector<uint8_t>& data() const { return out_; }
  std::vector<uint8_t> take() { return std::move(out_); }

 private:
  void put_le(uint64_t v, int n) {
    for (int i = 0; i < n; ++i) out_.push_back(static_cast<uint8_t>(v >> (8 * i)));
  }
  std::vector<uint8_t> out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const uint8_t> in) : in_(in) {}

  uint8_t u8() { return static_cast<uint8_t>(get_le(1)); }
  uint32_t u32() { return static_cast<uint32_t>(get_le(4)); }
  uint64_t u64() { return get_le(8); }
  int64_t i64() { return static_cast<int64_t>(get_le(8)); }
  std::span<const uint8_t> raw(size_t n) {
    need(n);
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::span<const uint8_t> bytes() { return raw(length()); }
  std::string str() {
    auto b = bytes();
    return std::string(b.begin(), b.end());
  }
  template <class F>
  F field() {
    return F::from_bytes(raw(32).first<32>());
  }
  template <class F>
  std::vector<F> fields() {
    uint64_t n = length(32);
    std::vector<F> out;
    out.reserve(n);
    for (uint64_t i = 0; i < n; ++i) out.push_back(field<F>());
    return out;
  }
  // Element count bounded by the remaining input so corrupt lengths cannot
  // trigger huge allocations.
  uint64_t length(size_t min_elem_bytes = 1) {
    uint64_t n = u64();
    if (n > remaining() / std::max<size_t>(min_elem_bytes, 1)) {
      throw std::invalid_argument("length prefix exceeds input");
    }
    return n;
  }

  size_t remaining() const { return in_.size() - pos_; }
  void expect_end() const {
    if (remaining() != 0) throw std::invalid_argument("trailing bytes");
  }

 private:
  void need(size_t n) const {
    if (n > remaining()) throw std::invalid_argument("truncated input");
  }
  uint64_t get_le(int n) {
    need(n);
    uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= uint64_t{in_[pos_ + i]} << (8 * i);
    pos_ += n;
    return v;
  }
  std::span<const uint8_t> in_;
  size_t pos_ = 0;
};

}  // namespace devreg::util

#endif  // DEVREG_UTIL_CODEC_H_
