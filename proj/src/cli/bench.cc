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

#include "devreg/cli/bench.h"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <sstream>

#include "devreg/flow/flow.h"
#include "devreg/proofsys/common.h"

namespace devreg::cli {
namespace {

using json = nlohmann::json;
using proofsys::SchemeId;
using scenario::ConditionKind;
using crypto::Fr;
using crypto::Point;

double now_s() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

std::string cell_name(ConditionKind c, SchemeId s) {
  return std::string(scenario::condition_kind_name(c)) + "/" + std::string(proofsys::scheme_name(s));
}

struct Sample {
  double srs_s = 0, setup_s = 0, witness_s = 0, prove_s = 0, verify_s = 0;
};

}  // namespace

const BenchCell* BenchReport::find(ConditionKind c, SchemeId s) const {
  for (const auto& cell : cells) {
    if (cell.condition == c && cell.scheme == s) return &cell;
  }
  return nullptr;
}

BenchReport run_bench(const BenchOptions& opts, std::ostream* progress) {
  if (opts.repeat < 1) throw std::invalid_argument("repeat must be at least 1");
  if (opts.seed) proofsys::seed_randomness(*opts.seed);

  const auto schema = scenario::device_schema();
  const std::array<uint8_t, 32> issuer_seed{'i', 's', 's', 'u', 'e', 'r'};
  const std::array<uint8_t, 32> device_seed{'d', 'e', 'v', 'i', 'c', 'e'};
  const auto issuer = crypto::keygen(issuer_seed);
  const auto device = crypto::keygen(device_seed);
  const std::vector<Point> issuers{issuer.pub};
  const bool need_srs = std::find(opts.schemes.begin(), opts.schemes.end(),
                                  SchemeId::kUniversalSetup) != opts.schemes.end();

  BenchReport report;
  report.repeat = opts.repeat;
  report.threads = omp_get_max_threads();
  report.max_constraints = opts.max_constraints;
  std::map<std::pair<int, int>, std::vector<Sample>> samples;

  for (int rep = 0; rep < opts.repeat; ++rep) {
    std::optional<proofsys::UniversalSrs> srs;
    double srs_s = 0;
    if (need_srs) {
      const double t0 = now_s();
      srs = proofsys::universal_setup(opts.max_constraints, std::vector<uint8_t>{'b', 'e', 'n', 'c', 'h'});
      srs_s = now_s() - t0;
      if (progress) *progress << "srs max_constraints=" << opts.max_constraints << " " << srs_s << "s\n";
    }
    for (ConditionKind c : opts.conditions) {
      for (SchemeId s : opts.schemes) {
        const std::string name = cell_name(c, s);
        try {
          registry::Vdr vdr;
          registry::Chain chain;
          flow::InitiateOptions io;
          io.scheme = s;
          io.srs = srs ? &*srs : nullptr;
          const auto spec = scenario::condition_spec(c, schema);
          auto d = flow::initiate(spec, schema, issuers, vdr, chain, io);
          const auto vc = credential::attest(
              scenario::device_claims(Fr::from_u64(1000 + rep), device.pub), issuer, schema);
          flow::PresentOptions po;
          po.owner = "owner-" + name;
          auto p = flow::present(vdr, d.zkvpr_id, d.pk, vc, po);
          const auto pub = p.zkvp.public_inputs().flatten();
          const double t0 = now_s();
          const bool ok = proofsys::verify(s, p.zkvp.proof, pub, d.vk);
          const double verify_s = now_s() - t0;
          const auto receipt = chain.submit_registration(d.contract, p.zkvp, po.owner);
          if (!ok || !receipt.accepted) {
            throw std::runtime_error("registration rejected: " +
                                     std::string(registry::reason_name(receipt.reason)));
          }

          Sample smp;
          smp.srs_s = s == SchemeId::kUniversalSetup ? srs_s : 0;
          smp.setup_s = d.setup_s + smp.srs_s;
          smp.witness_s = p.witness_s;
          smp.prove_s = p.prove_s;
          smp.verify_s = verify_s;
          samples[{static_cast<int>(c), static_cast<int>(s)}].push_back(smp);

          if (rep == 0) {
            BenchCell cell;
            cell.condition = c;
            cell.scheme = s;
            cell.constraint_count = d.circuit.constraint_count();
            cell.cost_units = receipt.cost_units;
            cell.pk_bytes = d.pk.serialize().size();
            cell.vk_bytes = d.vk.serialize().size();
            cell.proof_bytes = p.zkvp.proof.serialize().size();
            cell.accepted = receipt.accepted;
            report.cells.push_back(cell);
          }
          if (progress) {
            *progress << name << " rep " << rep + 1 << "/" << opts.repeat
                      << " setup=" << smp.setup_s << "s prove=" << smp.prove_s << "s\n";
          }
        } catch (const std::exception& e) {
          throw std::runtime_error("bench cell " + name + " failed: " + e.what());
        }
      }
    }
  }
  for (auto& cell : report.cells) {
    const auto& v = samples[{static_cast<int>(cell.condition), static_cast<int>(cell.scheme)}];
    auto med = [&](double Sample::*f) {
      std::vector<double> xs;
      for (const auto& smp : v) xs.push_back(smp.*f);
      return median(xs);
    };
    cell.srs_s = med(&Sample::srs_s);
    cell.setup_s = med(&Sample::setup_s);
    cell.witness_s = med(&Sample::witness_s);
    cell.prove_s = med(&Sample::prove_s);
    cell.verify_s = med(&Sample::verify_s);
  }
  if (opts.seed) proofsys::seed_randomness({});
  return report;
}

std::string BenchReport::to_json() const {
  json cells_j = json::array();
  for (const auto& c : cells) {
    cells_j.push_back({{"condition", scenario::condition_kind_name(c.condition)},
                       {"scheme", proofsys::scheme_name(c.scheme)},
                       {"constraint_count", c.constraint_count},
                       {"srs_s", c.srs_s},
                       {"setup_s", c.setup_s},
                       {"witness_s", c.witness_s},
                       {"prove_s", c.prove_s},
                       {"verify_s", c.verify_s},
                       {"cost_units", c.cost_units},
                       {"pk_bytes", c.pk_bytes},
                       {"vk_bytes", c.vk_bytes},
                       {"proof_bytes", c.proof_bytes},
                       {"accepted", c.accepted}});
  }
  json j{{"format", "devreg.bench.v1"},
         {"repeat", repeat},
         {"threads", threads},
         {"max_constraints", max_constraints},
         {"time_statistic", "median"},
         {"cells", cells_j}};
  return j.dump(2) + "\n";
}

BenchReport BenchReport::from_json(std::string_view text) {
  const json j = json::parse(text);
  if (j.value("format", "") != "devreg.bench.v1") {
    throw std::invalid_argument("not a bench report");
  }
  BenchReport r;
  r.repeat = j.at("repeat");
  r.threads = j.at("threads");
  r.max_constraints = j.at("max_constraints");
  for (const auto& cj : j.at("cells")) {
    BenchCell c;
    c.condition = scenario::parse_condition_kind(cj.at("condition").get<std::string>());
    c.scheme = proofsys::parse_scheme(cj.at("scheme").get<std::string>());
    c.constraint_count = cj.at("constraint_count");
    c.srs_s = cj.at("srs_s");
    c.setup_s = cj.at("setup_s");
    c.witness_s = cj.at("witness_s");
    c.prove_s = cj.at("prove_s");
    c.verify_s = cj.at("verify_s");
    c.cost_units = cj.at("cost_units");
    c.pk_bytes = cj.at("pk_bytes");
    c.vk_bytes = cj.at("vk_bytes");
    c.proof_bytes = cj.at("proof_bytes");
    c.accepted = cj.at("accepted");
    r.cells.push_back(c);
  }
  return r;
}

std::string BenchReport::to_table() const {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-11s %-12s %11s %9s %9s %9s %9s %11s %12s %9s %7s\n",
                "condition", "scheme", "constraints", "setup_s", "witness_s", "prove_s",
                "verify_s", "cost_units", "pk_bytes", "vk_bytes", "proof");
  os << line;
  for (const auto& c : cells) {
    std::snprintf(line, sizeof line,
                  "%-11s %-12s %11llu %9.3f %9.3f %9.3f %9.4f %11llu %12llu %9llu %7llu\n",
                  std::string(scenario::condition_kind_name(c.condition)).c_str(),
                  std::string(proofsys::scheme_name(c.scheme)).c_str(),
                  static_cast<unsigned long long>(c.constraint_count), c.setup_s, c.witness_s,
                  c.prove_s, c.verify_s, static_cast<unsigned long long>(c.cost_units),
                  static_cast<unsigned long long>(c.pk_bytes),
                  static_cast<unsigned long long>(c.vk_bytes),
                  static_cast<unsigned long long>(c.proof_bytes));
    os << line;
  }
  os << "times: median of " << repeat << " run(s), " << threads
     << " thread(s); universal setup includes SRS generation for " << max_constraints
     << " constraints\n";
  return os.str();
}

std::vector<std::string> check_report(const BenchReport& report) {
  std::vector<std::string> bad;
  auto fail = [&](const std::string& s) { bad.push_back(s); };
  for (const auto& c : report.cells) {
    const std::string name = cell_name(c.condition, c.scheme);
    if (!c.accepted) fail(name + ": registration not accepted");
    if (c.vk_bytes * 100 > c.pk_bytes) fail(name + ": vk is not 100x smaller than pk");
  }
  for (ConditionKind k : scenario::kAllConditions) {
    const auto* p = report.find(k, SchemeId::kPerCircuitSetup);
    const auto* u = report.find(k, SchemeId::kUniversalSetup);
    if (!p || !u) continue;
    const std::string name(scenario::condition_kind_name(k));
    if (u->setup_s < 10 * p->setup_s) fail(name + ": universal setup is not 10x per-circuit setup");
    if (u->prove_s <= p->prove_s) fail(name + ": universal proving is not slower");
    if (u->pk_bytes <= p->pk_bytes) fail(name + ": universal proving key is not larger");
    if (u->cost_units <= p->cost_units) fail(name + ": universal cost is not higher");
  }
  for (SchemeId s : {SchemeId::kPerCircuitSetup, SchemeId::kUniversalSetup}) {
    const auto* r = report.find(ConditionKind::kRange, s);
    const auto* m = report.find(ConditionKind::kMembership, s);
    const auto* e = report.find(ConditionKind::kEquality, s);
    if (!r || !m || !e) continue;
    const std::string name(proofsys::scheme_name(s));
    if (m->constraint_count <= r->constraint_count) {
      fail(name + ": membership does not exceed range in constraints");
    }
    const double hi = static_cast<double>(std::max(r->constraint_count, e->constraint_count));
    const double diff = std::fabs(static_cast<double>(r->constraint_count) -
                                  static_cast<double>(e->constraint_count));
    if (diff > 0.25 * hi) fail(name + ": range and equality differ by more than 25%");
    if (m->cost_units < e->cost_units) fail(name + ": membership costs less than equality");
  }
  return bad;
}

}  // namespace devreg::cli
