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

#ifndef DEVREG_CRYPTO_DIGEST_H_
#define DEVREG_CRYPTO_DIGEST_H_

// Byte-oriented hashing and hex helpers. These never appear inside circuits.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace devreg::crypto {

using Bytes = std::vector<uint8_t>;
using Digest32 = std::array<uint8_t, 32>;

Digest32 sha256(std::span<const uint8_t> data);
std::array<uint8_t, 64> sha512(std::span<const uint8_t> data);
inline Digest32 sha256(std::string_view s) {
  return sha256(std::span(reinterpret_cast<const uint8_t*>(s.data()), s.size()));
}

// Lowercase, no prefix.
std::string hex_encode(std::span<const uint8_t> data);
// Accepts an optional 0x prefix; throws std::invalid_argument on odd length
// or non-hex characters.
Bytes hex_decode(std::string_view text);

}  // namespace devreg::crypto

#endif  // DEVREG_CRYPTO_DIGEST_H_
