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

#include "devreg/ff/u256.h"

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>

namespace devreg::ff {
namespace {

mpz_class to_mpz(const U256& v) {
  mpz_class r;
  mpz_import(r.get_mpz_t(), 4, -1, sizeof(uint64_t), 0, 0, v.w.data());
  return r;
}

BigLimbs limbs_of(const mpz_class& v) {
  size_t count = (mpz_sizeinbase(v.get_mpz_t(), 2) + 63) / 64;
  BigLimbs out(count == 0 ? 1 : count, 0);
  size_t written = 0;
  mpz_export(out.data(), &written, -1, sizeof(uint64_t), 0, 0, v.get_mpz_t());
  return out;
}

}  // namespace

U256 parse_u256(std::string_view text) {
  std::string s(text);
  int base = 10;
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    s = s.substr(2);
    base = 16;
  }
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  for (char c : s) {
    auto uc = static_cast<unsigned char>(c);
    bool ok = base == 10 ? std::isdigit(uc) != 0 : std::isxdigit(uc) != 0;
    if (!ok) throw std::invalid_argument("malformed integer literal: " + std::string(text));
  }
  mpz_class v(s, base);
  if (mpz_sizeinbase(v.get_mpz_t(), 2) > 256) {
    throw std::invalid_argument("integer exceeds 256 bits");
  }
  BigLimbs limbs = limbs_of(v);
  U256 out;
  for (size_t i = 0; i < limbs.size() && i < 4; ++i) out.w[i] = limbs[i];
  return out;
}

std::string to_decimal(const U256& v) { return to_mpz(v).get_str(10); }

std::string to_hex(const U256& v) {
  std::string s = to_mpz(v).get_str(16);
  return std::string(64 - s.size(), '0') + s;
}

void to_bytes_le(const U256& v, std::span<uint8_t, 32> out) {
  for (int i = 0; i < 4; ++i) {
    for (int b = 0; b < 8; ++b) out[8 * i + b] = static_cast<uint8_t>(v.w[i] >> (8 * b));
  }
}

U256 from_bytes_le(std::span<const uint8_t, 32> in) {
  U256 v;
  for (int i = 0; i < 4; ++i) {
    for (int b = 0; b < 8; ++b) v.w[i] |= static_cast<uint64_t>(in[8 * i + b]) << (8 * b);
  }
  return v;
}

BigLimbs big_from_decimal(std::string_view text) {
  return limbs_of(mpz_class(std::string(text), 10));
}

}  // namespace devreg::ff
