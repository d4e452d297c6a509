// Copyright 2026 The Facepriv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FACEPRIV_PPAS_H_
#define FACEPRIV_PPAS_H_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "facepriv/attribute_table.h"
#include "facepriv/distribution.h"
#include "facepriv/random.h"
#include "facepriv/randomization.h"
#include "json.hpp"

namespace facepriv {

// How the class distribution S_E of attribute E_i is formed for a record.
enum class QuasiPolicy {
  // Class of records agreeing with the record on every attribute but E_i.
  kAllOtherAttributes,
  // Class of records agreeing on a configured quasi-identifier list (which
  // may contain E_i itself).
  kFixedQuasiSet,
  // Whole-table marginal of E_i, compared against the reference S.
  kGlobalVsReference,
};

// Order in which per-record branch decisions see each other.
enum class UpdateOrder {
  // Records are visited in table order; record r is evaluated against the
  // table with the flips of records 0..r-1 already applied.
  kSequential,
  // Every record is evaluated against the original table.
  kSimultaneous,
};

struct PpasConfig {
  double t = 0.0;                     // closeness threshold, >= 0
  double epsilon = kNoPerturbation;   // randomized-response budget per bit
  QuasiPolicy quasi_policy = QuasiPolicy::kAllOtherAttributes;
  std::vector<std::string> quasi_ids;  // kFixedQuasiSet only
  // Fixed reference S per attribute. Attributes without an entry use the
  // (live) table marginal.
  std::map<std::string, DiscreteDistribution> reference_dists;
  GroundDistance ground_distance = GroundDistance::kBinary;
  UpdateOrder update_order = UpdateOrder::kSequential;

  // Throws kParameter / kSchema / kUnsupportedArity / kConfiguration.
  void Validate(const AttributeSchema& schema) const;
};

struct AttributeDecision {
  std::string attribute;
  double distance = 0.0;  // d(S, S_E)
  bool kept = true;       // distance <= t
  bool perturbed = false;  // flipped by randomized response

  bool operator==(const AttributeDecision&) const = default;
};

struct RecordTrace {
  std::size_t record = 0;
  std::string image_id;
  std::vector<AttributeDecision> attributes;
  // Sequential composition of the per-attribute budgets.
  double epsilon_spent = kNoPerturbation;

  bool operator==(const RecordTrace&) const = default;
};

struct RecordSelection {
  ValueVector values;
  RecordTrace trace;
};

// d(S, S_E) for one record and attribute, evaluated on `table` as given.
double PpasAttributeDistance(const AttributeTable& table, std::size_t record,
                             std::size_t attribute, const PpasConfig& config);

// Deterministic branch for one record against `table`: keep E_i when
// d(S, S_E) <= t, otherwise negate it.
RecordSelection PpasSelectRecord(const AttributeTable& table,
                                 std::size_t record, const PpasConfig& config);
// Branch followed by randomized response with config.epsilon.
RecordSelection PpasSelectRecord(const AttributeTable& table,
                                 std::size_t record, const PpasConfig& config,
                                 RandomSource& rng);

struct PpasResult {
  AttributeTable table;
  std::vector<RecordTrace> traces;
};

// Runs the branch pass over all records (per config.update_order), then
// applies randomized response to record r with rng.Derive(r). The output is a
// function of (table, config, rng.seed()) only.
PpasResult PpasApplyTable(const AttributeTable& table, const PpasConfig& config,
                          const RandomSource& rng);

// Config document:
//   {"t": 0.2, "epsilon": 1.0 | "inf", "quasi_policy": "all-other-attributes"
//    | "fixed-quasi" | "global-vs-reference", "quasi_ids": [...],
//    "reference_dists": {"Attr": [p0, p1]}, "ground_distance": "binary",
//    "update_order": "sequential" | "simultaneous"}
// Other keys (seed, report) are left to the caller.
PpasConfig PpasConfigFromJson(const nlohmann::json& json);
nlohmann::ordered_json PpasConfigToJson(const PpasConfig& config);
nlohmann::ordered_json TraceToJson(const RecordTrace& trace);

}  // namespace facepriv

#endif  // FACEPRIV_PPAS_H_
