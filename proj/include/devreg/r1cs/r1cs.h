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

#ifndef DEVREG_R1CS_R1CS_H_
#define DEVREG_R1CS_R1CS_H_

// Rank-1 constraint systems over BN254 Fr. Variable 0 is the constant one,
// variables 1..num_public are public inputs, the rest are private.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "devreg/crypto/digest.h"
#include "devreg/ff/field.h"

namespace devreg::r1cs {

using ff::Fr;

struct Var {
  uint32_t index = 0;
};

class LC {
 public:
  using Term = std::pair<uint32_t, Fr>;

  LC() = default;
  LC(Var v) { terms_.emplace_back(v.index, Fr::one()); }  // NOLINT
  static LC constant(const Fr& c) {
    LC r;
    if (!c.is_zero()) r.terms_.emplace_back(0, c);
    return r;
  }
  static LC one() { return constant(Fr::one()); }

  LC& operator+=(const LC& o) {
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    compact_if_large();
    return *this;
  }
  LC& operator-=(const LC& o) {
    for (const auto& [v, c] : o.terms_) terms_.emplace_back(v, -c);
    compact_if_large();
    return *this;
  }
  LC& operator*=(const Fr& k) {
    for (auto& t : terms_) t.second *= k;
    return *this;
  }
  friend LC operator+(LC a, const LC& b) { return a += b; }
  friend LC operator-(LC a, const LC& b) { return a -= b; }
  friend LC operator*(LC a, const Fr& k) { return a *= k; }
  friend LC operator*(const Fr& k, LC a) { return a *= k; }
  LC operator-() const { return *this * -Fr::one(); }

  // Sorted by variable, merged, zero coefficients dropped.
  void normalize();
  const std::vector<Term>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  Fr evaluate(std::span<const Fr> z) const;

 private:
  void compact_if_large() {
    if (terms_.size() > 64) normalize();
  }
  std::vector<Term> terms_;
};

struct Constraint {
  LC a, b, c;
  uint32_t label = 0;
};

class ConstraintSystem {
 public:
  uint32_t num_public = 0;
  uint32_t num_variables = 1;
  std::vector<Constraint> constraints;
  std::vector<std::string> labels;

  size_t constraint_count() const { return constraints.size(); }
  // Non-zero entries across A, B, C.
  size_t nnz() const;
  std::optional<size_t> first_unsatisfied(std::span<const Fr> z) const;
  const std::string& label_of(size_t constraint) const {
    return labels[constraints[constraint].label];
  }

  std::vector<uint8_t> serialize() const;
  static ConstraintSystem deserialize(std::span<const uint8_t> bytes);
  crypto::Digest32 digest() const { return crypto::sha256(serialize()); }
};

// Records constraints and an assignment at the same time. With all-zero
// inputs the recorded structure is identical, which is how compilation
// works: structure never depends on values.
class Builder {
 public:
  Builder();

  // All public inputs must be allocated before the first witness variable.
  Var input(const Fr& value);
  Var witness(const Fr& value);

  Fr value(Var v) const { return z_[v.index]; }
  Fr value(const LC& lc) const { return lc.evaluate(z_); }

  void enforce(const LC& a, const LC& b, const LC& c);
  void set_label(const std::string& label);

  const ConstraintSystem& system() const { return cs_; }
  const std::vector<Fr>& assignment() const { return z_; }
  ConstraintSystem take_system() { return std::move(cs_); }
  std::vector<Fr> take_assignment() { return std::move(z_); }

 private:
  ConstraintSystem cs_;
  std::vector<Fr> z_;
  uint32_t label_ = 0;
};

}  // namespace devreg::r1cs

#endif  // DEVREG_R1CS_R1CS_H_
