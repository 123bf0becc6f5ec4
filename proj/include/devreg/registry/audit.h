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

// Byte-level confidentiality audit: which pieces of a credential must never
// show up in serialized chain data, and a scan for them.

#ifndef DEVREG_REGISTRY_AUDIT_H_
#define DEVREG_REGISTRY_AUDIT_H_

#include <span>
#include <string>
#include <vector>

#include "devreg/credential/credential.h"
#include "devreg/zkspec/zkspec.h"

namespace devreg::registry {

struct Needle {
  std::string label;  // e.g. "firmware value", "signature R.x of postcode"
  std::vector<uint8_t> bytes;
};

// Secrets of `vc` under `spec`: every claim signature component, every
// attribute value's field encoding (and raw bytes for strings of four or more
// bytes), and the subject id. Values the spec itself publishes as aux are
// public by design and skipped. The device key attribute is a needle only in
// committed key mode.
std::vector<Needle> credential_needles(const credential::VerifiableCredential& vc,
                                       const credential::CredentialSchema& schema,
                                       const zkspec::ZkSpec& spec);

// Labels of the needles found in `haystack`.
std::vector<std::string> find_leaks(std::span<const uint8_t> haystack,
                                    const std::vector<Needle>& needles);

}  // namespace devreg::registry

#endif  // DEVREG_REGISTRY_AUDIT_H_
