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

#include "devreg/proofsys/common.h"

#include <openssl/rand.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>

#include "devreg/crypto/digest.h"

namespace devreg::proofsys {

size_t SparseMatrix::nnz() const {
  size_t n = 0;
  for (const auto& r : rows) n += r.size();
  return n;
}

std::vector<Fr> SparseMatrix::mul(std::span<const Fr> z) const {
  std::vector<Fr> out(rows.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < static_cast<long>(rows.size()); ++i) {
    Fr acc;
    for (const auto& [col, v] : rows[i]) acc += v * z[col];
    out[i] = acc;
  }
  return out;
}

namespace {

std::vector<std::pair<uint32_t, Fr>> to_row(const r1cs::LC& lc) {
  std::map<uint32_t, Fr> m;
  for (const auto& [idx, v] : lc.terms()) m[idx] += v;
  std::vector<std::pair<uint32_t, Fr>> row;
  for (const auto& [idx, v] : m) {
    if (!v.is_zero()) row.emplace_back(idx, v);
  }
  return row;
}

}  // namespace

R1csMatrices to_matrices(const r1cs::ConstraintSystem& cs) {
  R1csMatrices m;
  for (auto* mat : {&m.a, &m.b, &m.c}) mat->rows.reserve(cs.constraints.size());
  for (const auto& c : cs.constraints) {
    m.a.rows.push_back(to_row(c.a));
    m.b.rows.push_back(to_row(c.b));
    m.c.rows.push_back(to_row(c.c));
  }
  return m;
}

namespace {

struct SeededStream {
  std::vector<uint8_t> key;
  uint64_t counter = 0;
};

std::mutex g_rng_mu;
std::optional<SeededStream> g_seeded;  // guarded by g_rng_mu

}  // namespace

void seed_randomness(std::span<const uint8_t> seed) {
  std::lock_guard lock(g_rng_mu);
  if (seed.empty()) {
    g_seeded.reset();
  } else {
    g_seeded = SeededStream{{seed.begin(), seed.end()}, 0};
  }
}

void random_bytes(std::span<uint8_t> out) {
  std::lock_guard lock(g_rng_mu);
  if (!g_seeded) {
    if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
      throw std::runtime_error("RAND_bytes failed");
    }
    return;
  }
  size_t done = 0;
  while (done < out.size()) {
    util::ByteWriter w;
    w.str("devreg.rng.v1");
    w.bytes(g_seeded->key);
    w.u64(g_seeded->counter++);
    auto block = crypto::sha512(w.data());
    const size_t n = std::min(block.size(), out.size() - done);
    std::copy_n(block.begin(), n, out.begin() + done);
    done += n;
  }
}

Fr random_fr() {
  uint8_t buf[64];
  random_bytes(buf);
  return Fr::from_bytes_wide(buf);
}

Transcript::Transcript(std::string_view domain) {
  absorb("domain", std::span(reinterpret_cast<const uint8_t*>(domain.data()),
                             domain.size()));
}

void Transcript::absorb(std::string_view label, std::span<const uint8_t> data) {
  util::ByteWriter w;
  w.raw(state_);
  w.str(label);
  w.bytes(data);
  auto d = crypto::sha256(w.data());
  state_.assign(d.begin(), d.end());
}

void Transcript::absorb(std::string_view label, const Fr& x) {
  util::ByteWriter w;
  w.field(x);
  absorb(label, w.data());
}

void Transcript::absorb(std::string_view label, const G1Affine& p) {
  util::ByteWriter w;
  put_g1(w, p);
  absorb(label, w.data());
}

Fr Transcript::challenge(std::string_view label) {
  absorb(label, std::span<const uint8_t>());
  auto wide = crypto::sha512(state_);
  return Fr::from_bytes_wide(wide);
}

void put_g1(util::ByteWriter& w, const G1Affine& p) {
  uint8_t b[ec::kG1Bytes];
  ec::write_g1(p, b);
  w.raw(b);
}

void put_g2(util::ByteWriter& w, const G2Affine& p) {
  uint8_t b[ec::kG2Bytes];
  ec::write_g2(p, b);
  w.raw(b);
}

void put_g1s(util::ByteWriter& w, std::span<const G1Affine> ps) {
  w.u64(ps.size());
  for (const auto& p : ps) put_g1(w, p);
}

void put_g2s(util::ByteWriter& w, std::span<const G2Affine> ps) {
  w.u64(ps.size());
  for (const auto& p : ps) put_g2(w, p);
}

G1Affine get_g1(util::ByteReader& r) {
  return ec::read_g1(r.raw(ec::kG1Bytes).first<ec::kG1Bytes>());
}

G2Affine get_g2(util::ByteReader& r, bool trusted) {
  auto b = r.raw(ec::kG2Bytes).first<ec::kG2Bytes>();
  if (!trusted) return ec::read_g2(b);
  if (std::all_of(b.begin(), b.end(), [](uint8_t x) { return x == 0; })) {
    return G2Affine{};
  }
  G2Affine p{ec::Fq2{ec::Fq::from_bytes(b.subspan<0, 32>()),
                     ec::Fq::from_bytes(b.subspan<32, 32>())},
             ec::Fq2{ec::Fq::from_bytes(b.subspan<64, 32>()),
                     ec::Fq::from_bytes(b.subspan<96, 32>())},
             false};
  if (!p.is_on_curve()) throw std::invalid_argument("G2 point not on curve");
  return p;
}

std::vector<G1Affine> get_g1s(util::ByteReader& r) {
  uint64_t n = r.length(ec::kG1Bytes);
  std::vector<G1Affine> out(n);
  auto raw = r.raw(n * ec::kG1Bytes);
  // Decoding checks curve membership per point; spread it over threads.
  bool bad = false;
#pragma omp parallel for schedule(static) reduction(|| : bad)
  for (long i = 0; i < static_cast<long>(n); ++i) {
    try {
      out[i] = ec::read_g1(raw.subspan(i * ec::kG1Bytes).first<ec::kG1Bytes>());
    } catch (const std::invalid_argument&) {
      bad = true;
    }
  }
  if (bad) throw std::invalid_argument("G1 point not on curve");
  return out;
}

std::vector<G2Affine> get_g2s(util::ByteReader& r, bool trusted) {
  uint64_t n = r.length(ec::kG2Bytes);
  std::vector<G2Affine> out;
  out.reserve(n);
  for (uint64_t i = 0; i < n; ++i) out.push_back(get_g2(r, trusted));
  return out;
}

}  // namespace devreg::proofsys
