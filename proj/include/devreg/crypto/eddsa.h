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

#ifndef DEVREG_CRYPTO_EDDSA_H_
#define DEVREG_CRYPTO_EDDSA_H_

// EdDSA over BabyJubJub with a Poseidon challenge. A signature (R, S) on a
// digest m under A verifies iff
//   S * B8 == R + (8 * h) * A,   h = Poseidon(R.x, R.y, A.x, A.y, m).
// Messages are field-element lists compressed with hash_fields.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "devreg/crypto/babyjub.h"

namespace devreg::crypto {

struct KeyPair {
  Fs secret;  // nonzero
  Point pub;  // secret * B8
};

inline constexpr size_t kSignatureBytes = 96;

struct Signature {
  Point R;
  Fs S;

  friend bool operator==(const Signature&, const Signature&) = default;
  // R.x || R.y || S, each 32-byte little-endian.
  std::array<uint8_t, kSignatureBytes> to_bytes() const;
  // Throws std::invalid_argument on non-canonical fields or off-curve R.
  static Signature from_bytes(std::span<const uint8_t, kSignatureBytes> in);
  std::string to_hex() const;
  static Signature from_hex(std::string_view text);
};

// Deterministic; seed must be exactly 32 bytes.
KeyPair keygen(std::span<const uint8_t> seed);
Point public_key(const Fs& secret);

// Throws std::invalid_argument on an empty message.
Signature sign(const Fs& secret, std::span<const Fr> message);
// Throws std::invalid_argument if `pub` is not on the curve.
bool verify_sig(const Point& pub, std::span<const Fr> message,
                const Signature& sig);

Signature sign_digest(const Fs& secret, const Fr& m);
bool verify_digest(const Point& pub, const Fr& m, const Signature& sig);
Fr challenge(const Point& R, const Point& A, const Fr& m);

// JSON envelope {version, scheme, secret?, public}.
std::string write_key_file(const KeyPair& k);
std::string write_public_key_file(const Point& pub);
KeyPair read_key_file(std::string_view text);
// Accepts either envelope.
Point read_public_key_file(std::string_view text);

}  // namespace devreg::crypto

#endif  // DEVREG_CRYPTO_EDDSA_H_
