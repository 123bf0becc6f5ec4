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

#include "devreg/crypto/eddsa.h"

#include <json.hpp>
#include <stdexcept>

#include "devreg/crypto/digest.h"
#include "devreg/crypto/poseidon.h"

namespace devreg::crypto {
namespace {

constexpr std::string_view kKeyVersion = "devreg.key.v1";
constexpr std::string_view kPubKeyVersion = "devreg.pubkey.v1";
constexpr std::string_view kScheme = "eddsa-babyjub-poseidon";

Fs wide_to_scalar(const std::array<uint8_t, 64>& h) {
  return Fs::from_bytes_wide(h);
}

Fs nonce(const Fs& secret, const Fr& m) {
  static constexpr std::string_view kTag = "devreg.eddsa.nonce";
  Bytes buf(kTag.begin(), kTag.end());
  std::array<uint8_t, 32> tmp;
  secret.to_bytes(tmp);
  buf.insert(buf.end(), tmp.begin(), tmp.end());
  m.to_bytes(tmp);
  buf.insert(buf.end(), tmp.begin(), tmp.end());
  Fs r = wide_to_scalar(sha512(buf));
  return r.is_zero() ? Fs::one() : r;
}

}  // namespace

std::array<uint8_t, kSignatureBytes> Signature::to_bytes() const {
  std::array<uint8_t, kSignatureBytes> out;
  auto r = R.to_bytes();
  std::copy(r.begin(), r.end(), out.begin());
  S.to_bytes(std::span<uint8_t, 32>(out.data() + 64, 32));
  return out;
}

Signature Signature::from_bytes(std::span<const uint8_t, kSignatureBytes> in) {
  return {Point::from_bytes(in.first<kPointBytes>()),
          Fs::from_bytes(in.last<32>())};
}

std::string Signature::to_hex() const { return hex_encode(to_bytes()); }

Signature Signature::from_hex(std::string_view text) {
  Bytes b = hex_decode(text);
  if (b.size() != kSignatureBytes) {
    throw std::invalid_argument("bad signature length");
  }
  return from_bytes(std::span<const uint8_t, kSignatureBytes>(b.data(),
                                                              kSignatureBytes));
}

KeyPair keygen(std::span<const uint8_t> seed) {
  if (seed.size() != 32) throw std::invalid_argument("seed must be 32 bytes");
  static constexpr std::string_view kTag = "devreg.eddsa.keygen";
  Bytes buf(kTag.begin(), kTag.end());
  buf.insert(buf.end(), seed.begin(), seed.end());
  Fs sk = wide_to_scalar(sha512(buf));
  if (sk.is_zero()) sk = Fs::one();
  return {sk, public_key(sk)};
}

Point public_key(const Fs& secret) { return mul_base8(secret); }

Fr challenge(const Point& R, const Point& A, const Fr& m) {
  return poseidon(std::array<Fr, 5>{R.x, R.y, A.x, A.y, m});
}

Signature sign_digest(const Fs& secret, const Fr& m) {
  const Point A = public_key(secret);
  const Fs r = nonce(secret, m);
  const Point R = mul_base8(r);
  const Fs h = Fs::reduce(challenge(R, A, m).to_u256());
  return {R, r + Fs::from_u64(8) * h * secret};
}

bool verify_digest(const Point& pub, const Fr& m, const Signature& sig) {
  if (!pub.is_on_curve()) throw std::invalid_argument("public key off curve");
  if (!sig.R.is_on_curve()) return false;
  const Fr h = challenge(sig.R, pub, m);
  const Point A8 = pub.dbl().dbl().dbl();
  return mul_base8(sig.S) == sig.R + A8.mul(h.to_u256());
}

Signature sign(const Fs& secret, std::span<const Fr> message) {
  if (message.empty()) throw std::invalid_argument("empty message");
  return sign_digest(secret, hash_fields(message));
}

bool verify_sig(const Point& pub, std::span<const Fr> message,
                const Signature& sig) {
  if (message.empty()) throw std::invalid_argument("empty message");
  return verify_digest(pub, hash_fields(message), sig);
}

std::string write_key_file(const KeyPair& k) {
  std::array<uint8_t, 32> s;
  k.secret.to_bytes(s);
  nlohmann::ordered_json j;
  j["public"] = k.pub.to_hex();
  j["scheme"] = kScheme;
  j["secret"] = hex_encode(s);
  j["version"] = kKeyVersion;
  return j.dump(2) + "\n";
}

std::string write_public_key_file(const Point& pub) {
  nlohmann::ordered_json j;
  j["public"] = pub.to_hex();
  j["scheme"] = kScheme;
  j["version"] = kPubKeyVersion;
  return j.dump(2) + "\n";
}

namespace {
nlohmann::json parse_envelope(std::string_view text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw std::invalid_argument("key file is not a JSON object");
  }
  if (j.value("scheme", "") != kScheme) {
    throw std::invalid_argument("unsupported key scheme");
  }
  return j;
}
}  // namespace

KeyPair read_key_file(std::string_view text) {
  nlohmann::json j = parse_envelope(text);
  if (j.value("version", "") != kKeyVersion) {
    throw std::invalid_argument("unsupported key file version");
  }
  Bytes s = hex_decode(j.at("secret").get<std::string>());
  if (s.size() != 32) throw std::invalid_argument("bad secret length");
  Fs sk = Fs::from_bytes(std::span<const uint8_t, 32>(s.data(), 32));
  if (sk.is_zero()) throw std::invalid_argument("zero secret");
  KeyPair k{sk, public_key(sk)};
  if (Point::from_hex(j.at("public").get<std::string>()) != k.pub) {
    throw std::invalid_argument("public key does not match secret");
  }
  return k;
}

Point read_public_key_file(std::string_view text) {
  nlohmann::json j = parse_envelope(text);
  const std::string v = j.value("version", "");
  if (v != kKeyVersion && v != kPubKeyVersion) {
    throw std::invalid_argument("unsupported key file version");
  }
  return Point::from_hex(j.at("public").get<std::string>());
}

}  // namespace devreg::crypto
