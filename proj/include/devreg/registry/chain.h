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

// A deterministic single-writer chain simulator hosting the registration and
// application contracts. Every transaction mines its own block; the block
// timestamp advances by a fixed step. Replaying the transaction log from
// genesis reproduces the state hash exactly.

#ifndef DEVREG_REGISTRY_CHAIN_H_
#define DEVREG_REGISTRY_CHAIN_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "devreg/circuit/circuit.h"
#include "devreg/crypto/digest.h"
#include "devreg/crypto/eddsa.h"
#include "devreg/proofsys/proofsys.h"
#include "devreg/zkspec/zkspec.h"

namespace devreg::registry {

using crypto::Fr;
using crypto::Point;
using zkspec::KeyMode;

// Precondition failures: unknown contract, malformed deployment, bad import.
// Such transactions are never mined.
class ChainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Reason : uint8_t {
  kNone = 0,
  kProofInvalid = 1,
  kInputNotAllowed = 2,
  kOwnerMismatch = 3,
  kStaleTimestamp = 4,
  kDuplicateDevice = 5,
  kUnregisteredDevice = 6,
  kBadSignature = 7,
  kUnknownCommitment = 8,
};
std::string_view reason_name(Reason r);

enum class TxKind : uint8_t {
  kDeployRegistration = 1,
  kSubmitRegistration = 2,
  kDeployApplication = 3,
  kProvisionData = 4,
  kAuthenticateCommitted = 5,
};
std::string_view tx_kind_name(TxKind k);

// hash_fields([encode(account)]): the owner-binding public input a proof must
// carry to be accepted from `account`.
Fr owner_binding_for(std::string_view account);

// A zero-knowledge presentation submitted for registration. The issuer key is
// carried explicitly so the contract verifies exactly once.
struct ZkVp {
  Point issuer_pubkey;
  std::optional<Point> device_key;  // plain key mode
  std::optional<Fr> commitment;     // committed key mode
  std::vector<Fr> aux;
  Fr owner_binding;
  std::optional<uint64_t> now_ts;
  proofsys::Proof proof;

  circuit::PublicInputs public_inputs() const;
  std::vector<uint8_t> serialize() const;
  // Throws std::invalid_argument on malformed input.
  static ZkVp deserialize(std::span<const uint8_t> bytes);
};

struct RegistrationConfig {
  proofsys::VerificationKey vk;
  std::string zkvpr_ref;
  std::vector<Point> allowed_issuer_keys;
  std::vector<std::vector<Fr>> allowed_aux;  // whole vectors, never per element
  KeyMode mode = KeyMode::kPlain;
  bool requires_timestamp = false;
};

struct ApplicationConfig {
  std::string registration;  // address of a registration contract
  // Authentication circuit key; required iff the registration is committed.
  std::optional<proofsys::VerificationKey> auth_vk;
};

struct Receipt {
  uint64_t tx_index = 0;
  uint64_t height = 0;
  uint64_t timestamp = 0;
  TxKind kind = TxKind::kSubmitRegistration;
  std::string sender;
  std::string contract;  // called or newly deployed
  bool accepted = false;
  Reason reason = Reason::kNone;
  uint64_t cost_units = 0;
  uint64_t verify_work = 0;  // field multiplications spent verifying

  // One "key=value" line.
  std::string to_text() const;
  friend bool operator==(const Receipt&, const Receipt&) = default;
};

// cost_units = kBase + kPerProofByte * proof bytes + kPerPublicInput * public
// inputs + verify work / kWorkPerUnit, plus kPerCalldataByte for everything
// else a transaction carries. Deterministic: verification is always measured
// on one thread.
struct CostModel {
  static constexpr uint64_t kBase = 21000;
  static constexpr uint64_t kPerCalldataByte = 16;
  static constexpr uint64_t kPerProofByte = 16;
  static constexpr uint64_t kPerPublicInput = 1000;
  static constexpr uint64_t kWorkPerUnit = 16;
};
uint64_t cost_of(const Receipt& r);

struct ChainParams {
  uint64_t block_time = 12;
  uint64_t genesis_timestamp = 1775001600;  // 2026-04-01T00:00:00Z
  friend bool operator==(const ChainParams&, const ChainParams&) = default;
};

struct Transaction {
  TxKind kind = TxKind::kSubmitRegistration;
  std::string sender;
  std::vector<uint8_t> body;  // kind-specific encoding
};

struct RegistryEntry {
  std::vector<Fr> device;  // key (x, y) or [commitment]
  Fr owner_binding;
  uint64_t tx_index = 0;  // the accepted registration
};

class Chain {
 public:
  explicit Chain(ChainParams params = {});

  // Throws ChainError if the key is empty or an allowed set is empty.
  std::string deploy_registration(const RegistrationConfig& config, std::string_view sender);
  Receipt submit_registration(std::string_view address, const ZkVp& zkvp,
                              std::string_view sender);

  // Throws ChainError if the registration contract is unknown or the
  // authentication key presence does not fit its mode.
  std::string deploy_application(const ApplicationConfig& config, std::string_view sender);
  // Plain-key registrations. The device signs [bytes_digest(payload)].
  Receipt provision_data(std::string_view app, std::span<const uint8_t> payload,
                         const crypto::Signature& device_sig, const Point& device_key,
                         std::string_view sender);
  // Committed-key registrations; public inputs [commitment, payload_digest].
  Receipt authenticate_committed(std::string_view app, const proofsys::Proof& proof,
                                 const Fr& commitment, const Fr& payload_digest,
                                 std::string_view sender);

  // Throws ChainError for an unknown contract.
  bool is_registered(std::string_view address, const Point& device_key) const;
  bool is_registered(std::string_view address, const Fr& commitment) const;
  std::vector<RegistryEntry> entries(std::string_view address) const;
  const RegistrationConfig& registration(std::string_view address) const;

  uint64_t height() const { return height_; }
  uint64_t timestamp() const { return timestamp_; }
  // The timestamp the next transaction will execute at.
  uint64_t next_timestamp() const { return timestamp_ + params_.block_time; }
  const ChainParams& params() const { return params_; }
  const std::vector<Receipt>& receipts() const { return receipts_; }
  const std::vector<Transaction>& log() const { return log_; }

  // Canonical encoding of everything the chain stores: contracts, registries,
  // receipts. The log is not part of it.
  std::vector<uint8_t> state_bytes() const;
  crypto::Digest32 state_hash() const;

  // Versioned file: params, transaction log, state hash.
  std::vector<uint8_t> export_bytes() const;
  // Replays the log from genesis. Throws ChainError on a malformed file or if
  // the replayed state hash differs from the recorded one.
  static Chain import_bytes(std::span<const uint8_t> bytes);
  static Chain replay(const ChainParams& params, std::span<const Transaction> log);

 private:
  struct Registration {
    RegistrationConfig config;
    std::map<std::vector<uint8_t>, RegistryEntry> registry;  // by encoded entry
  };
  struct Application {
    ApplicationConfig config;
    std::vector<std::pair<std::vector<uint8_t>, Fr>> provisioned;  // (entry, digest)
  };

  Receipt apply(Transaction tx);
  void check(const Transaction& tx) const;
  Receipt execute(const Transaction& tx, Receipt r);
  const Registration& reg(std::string_view address) const;
  const Application& app(std::string_view address) const;
  std::string next_address() const;

  ChainParams params_;
  uint64_t height_ = 0;
  uint64_t timestamp_ = 0;
  std::vector<Transaction> log_;
  std::vector<Receipt> receipts_;
  std::map<std::string, Registration, std::less<>> registrations_;
  std::map<std::string, Application, std::less<>> applications_;
};

}  // namespace devreg::registry

#endif  // DEVREG_REGISTRY_CHAIN_H_
