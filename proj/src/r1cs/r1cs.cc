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

#include "devreg/r1cs/r1cs.h"

#include <algorithm>
#include <stdexcept>

#include "devreg/util/codec.h"

namespace devreg::r1cs {
namespace {

constexpr std::string_view kMagic = "DRCS";
constexpr uint8_t kFormat = 1;

void write_lc(util::ByteWriter& w, const LC& lc) {
  w.u32(static_cast<uint32_t>(lc.size()));
  for (const auto& [v, c] : lc.terms()) {
    w.u32(v);
    w.field(c);
  }
}

LC read_lc(util::ByteReader& r, uint32_t num_vars) {
  LC lc;
  uint32_t n = r.u32();
  if (n > r.remaining() / 36) throw std::invalid_argument("bad term count");
  for (uint32_t i = 0; i < n; ++i) {
    uint32_t v = r.u32();
    if (v >= num_vars) throw std::invalid_argument("variable out of range");
    LC t = Var{v};
    lc += t * r.field<Fr>();
  }
  return lc;
}

}  // namespace

void LC::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  size_t out = 0;
  for (size_t i = 0; i < terms_.size();) {
    uint32_t v = terms_[i].first;
    Fr acc;
    for (; i < terms_.size() && terms_[i].first == v; ++i) acc += terms_[i].second;
    if (!acc.is_zero()) terms_[out++] = {v, acc};
  }
  terms_.resize(out);
}

Fr LC::evaluate(std::span<const Fr> z) const {
  Fr acc;
  for (const auto& [v, c] : terms_) acc += z[v] * c;
  return acc;
}

size_t ConstraintSystem::nnz() const {
  size_t n = 0;
  for (const auto& k : constraints) n += k.a.size() + k.b.size() + k.c.size();
  return n;
}

std::optional<size_t> ConstraintSystem::first_unsatisfied(
    std::span<const Fr> z) const {
  if (z.size() != num_variables) {
    throw std::invalid_argument("assignment length does not match system");
  }
  for (size_t i = 0; i < constraints.size(); ++i) {
    const auto& k = constraints[i];
    if (k.a.evaluate(z) * k.b.evaluate(z) != k.c.evaluate(z)) return i;
  }
  return std::nullopt;
}

std::vector<uint8_t> ConstraintSystem::serialize() const {
  util::ByteWriter w;
  w.raw(std::span(reinterpret_cast<const uint8_t*>(kMagic.data()), kMagic.size()));
  w.u8(kFormat);
  w.u32(num_public);
  w.u32(num_variables);
  w.u64(labels.size());
  for (const auto& l : labels) w.str(l);
  w.u64(constraints.size());
  for (const auto& k : constraints) {
    w.u32(k.label);
    write_lc(w, k.a);
    write_lc(w, k.b);
    write_lc(w, k.c);
  }
  return w.take();
}

ConstraintSystem ConstraintSystem::deserialize(std::span<const uint8_t> bytes) {
  util::ByteReader r(bytes);
  auto magic = r.raw(kMagic.size());
  if (!std::equal(magic.begin(), magic.end(), kMagic.begin()) || r.u8() != kFormat) {
    throw std::invalid_argument("not a constraint system encoding");
  }
  ConstraintSystem cs;
  cs.num_public = r.u32();
  cs.num_variables = r.u32();
  if (cs.num_public >= cs.num_variables) {
    throw std::invalid_argument("bad variable counts");
  }
  uint64_t nl = r.length(8);
  for (uint64_t i = 0; i < nl; ++i) cs.labels.push_back(r.str());
  uint64_t nc = r.length(16);
  cs.constraints.reserve(nc);
  for (uint64_t i = 0; i < nc; ++i) {
    Constraint k;
    k.label = r.u32();
    if (k.label >= cs.labels.size()) throw std::invalid_argument("bad label");
    k.a = read_lc(r, cs.num_variables);
    k.b = read_lc(r, cs.num_variables);
    k.c = read_lc(r, cs.num_variables);
    cs.constraints.push_back(std::move(k));
  }
  r.expect_end();
  return cs;
}

Builder::Builder() : z_{Fr::one()} { cs_.labels.push_back(""); }

Var Builder::input(const Fr& value) {
  if (cs_.num_variables != cs_.num_public + 1) {
    throw std::logic_error("public inputs must precede witness variables");
  }
  z_.push_back(value);
  ++cs_.num_public;
  return Var{cs_.num_variables++};
}

Var Builder::witness(const Fr& value) {
  z_.push_back(value);
  return Var{cs_.num_variables++};
}

void Builder::enforce(const LC& a, const LC& b, const LC& c) {
  Constraint k{a, b, c, label_};
  k.a.normalize();
  k.b.normalize();
  k.c.normalize();
  cs_.constraints.push_back(std::move(k));
}

void Builder::set_label(const std::string& label) {
  auto it = std::find(cs_.labels.begin(), cs_.labels.end(), label);
  if (it == cs_.labels.end()) {
    cs_.labels.push_back(label);
    it = cs_.labels.end() - 1;
  }
  label_ = static_cast<uint32_t>(it - cs_.labels.begin());
}

}  // namespace devreg::r1cs
