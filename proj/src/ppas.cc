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

#include "facepriv/ppas.h"

#include <cmath>
#include <optional>
#include <utility>

#include "facepriv/status.h"

namespace facepriv {
namespace {

// Per-attribute tallies of E_i values, grouped by the class key the quasi
// policy assigns to a record. Supports incremental record updates so the
// sequential pass stays O(M * n^2 log M).
class ClassTallies {
 public:
  ClassTallies(const AttributeSchema& schema,
               const std::vector<ValueVector>& rows, const PpasConfig& config)
      : config_(config),
        key_attributes_(schema.size()),
        tallies_(schema.size()),
        totals_(schema.size(), std::vector<std::size_t>(2, 0)),
        reference_(schema.size()) {
    std::vector<std::size_t> fixed;
    if (config.quasi_policy == QuasiPolicy::kFixedQuasiSet) {
      fixed = schema.IndicesOf(config.quasi_ids);
    }
    for (std::size_t i = 0; i < schema.size(); ++i) {
      switch (config.quasi_policy) {
        case QuasiPolicy::kAllOtherAttributes:
          for (std::size_t j = 0; j < schema.size(); ++j) {
            if (j != i) key_attributes_[i].push_back(j);
          }
          break;
        case QuasiPolicy::kFixedQuasiSet:
          key_attributes_[i] = fixed;
          break;
        case QuasiPolicy::kGlobalVsReference:
          break;
      }
      auto it = config.reference_dists.find(schema.name(i));
      if (it != config.reference_dists.end()) reference_[i] = it->second;
    }
    for (const ValueVector& row : rows) Add(row, true);
  }

  double Distance(const ValueVector& row, std::size_t attribute) const {
    const std::vector<std::size_t>& counts =
        tallies_[attribute].at(Key(row, attribute));
    DiscreteDistribution class_dist =
        DiscreteDistribution::FromCounts({0, 1}, counts);
    if (reference_[attribute]) {
      return Emd(*reference_[attribute], class_dist, config_.ground_distance);
    }
    return Emd(DiscreteDistribution::FromCounts({0, 1}, totals_[attribute]),
               class_dist, config_.ground_distance);
  }

  void Replace(const ValueVector& before, const ValueVector& after) {
    Add(before, false);
    Add(after, true);
  }

 private:
  ValueVector Key(const ValueVector& row, std::size_t attribute) const {
    ValueVector key;
    key.reserve(key_attributes_[attribute].size());
    for (std::size_t j : key_attributes_[attribute]) key.push_back(row[j]);
    return key;
  }

  void Add(const ValueVector& row, bool insert) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      auto& counts = tallies_[i][Key(row, i)];
      if (counts.empty()) counts.assign(2, 0);
      if (insert) {
        ++counts[row[i]];
        ++totals_[i][row[i]];
      } else {
        --counts[row[i]];
        --totals_[i][row[i]];
      }
    }
  }

  const PpasConfig& config_;
  std::vector<std::vector<std::size_t>> key_attributes_;
  std::vector<std::map<ValueVector, std::vector<std::size_t>>> tallies_;
  std::vector<std::vector<std::size_t>> totals_;
  std::vector<std::optional<DiscreteDistribution>> reference_;
};

std::vector<ValueVector> RowsOf(const AttributeTable& table) {
  std::vector<ValueVector> rows;
  rows.reserve(table.size());
  for (const Record& r : table.records()) rows.push_back(r.values);
  return rows;
}

RecordSelection Branch(const AttributeTable& table, std::size_t record,
                       const ValueVector& row, const ClassTallies& tallies,
                       const PpasConfig& config) {
  RecordSelection selection;
  selection.values = row;
  selection.trace.record = record;
  selection.trace.image_id = table.record(record).image_id;
  selection.trace.epsilon_spent =
      config.epsilon * static_cast<double>(row.size());
  for (std::size_t i = 0; i < row.size(); ++i) {
    AttributeDecision decision;
    decision.attribute = table.schema().name(i);
    decision.distance = tallies.Distance(row, i);
    decision.kept = decision.distance <= config.t;
    if (!decision.kept) selection.values[i] ^= 1;
    selection.trace.attributes.push_back(std::move(decision));
  }
  return selection;
}

void Perturb(RecordSelection& selection, double epsilon, RandomSource& rng) {
  ValueVector perturbed = RandomizedResponse(selection.values, epsilon, rng);
  for (std::size_t i = 0; i < perturbed.size(); ++i) {
    selection.trace.attributes[i].perturbed =
        perturbed[i] != selection.values[i];
  }
  selection.values = std::move(perturbed);
}

void CheckRecord(const AttributeTable& table, std::size_t record) {
  if (record >= table.size()) {
    throw Error(ErrorCode::kLookup, "record index " + std::to_string(record) +
                                        " outside the table");
  }
}

}  // namespace

void PpasConfig::Validate(const AttributeSchema& schema) const {
  if (!(t >= 0.0)) throw Error(ErrorCode::kParameter, "t must be >= 0");
  KeepProbability(epsilon);
  if (!schema.IsBinary()) {
    throw Error(ErrorCode::kUnsupportedArity,
                "attribute selection negates binary attributes only");
  }
  if (quasi_policy == QuasiPolicy::kFixedQuasiSet) {
    if (quasi_ids.empty()) {
      throw Error(ErrorCode::kConfiguration,
                  "fixed-quasi policy needs a non-empty quasi_ids list");
    }
    schema.IndicesOf(quasi_ids);
  }
  for (const auto& [name, dist] : reference_dists) {
    schema.IndexOf(name);
    if (dist.support() != std::vector<int>{0, 1}) {
      throw Error(ErrorCode::kDomain,
                  "reference distribution for '" + name +
                      "' must be over {0, 1}");
    }
  }
}

double PpasAttributeDistance(const AttributeTable& table, std::size_t record,
                             std::size_t attribute, const PpasConfig& config) {
  config.Validate(table.schema());
  CheckRecord(table, record);
  ClassTallies tallies(table.schema(), RowsOf(table), config);
  return tallies.Distance(table.record(record).values, attribute);
}

RecordSelection PpasSelectRecord(const AttributeTable& table,
                                 std::size_t record, const PpasConfig& config) {
  config.Validate(table.schema());
  CheckRecord(table, record);
  ClassTallies tallies(table.schema(), RowsOf(table), config);
  return Branch(table, record, table.record(record).values, tallies, config);
}

RecordSelection PpasSelectRecord(const AttributeTable& table,
                                 std::size_t record, const PpasConfig& config,
                                 RandomSource& rng) {
  RecordSelection selection = PpasSelectRecord(table, record, config);
  Perturb(selection, config.epsilon, rng);
  return selection;
}

PpasResult PpasApplyTable(const AttributeTable& table, const PpasConfig& config,
                          const RandomSource& rng) {
  config.Validate(table.schema());
  std::vector<ValueVector> rows = RowsOf(table);
  ClassTallies tallies(table.schema(), rows, config);

  std::vector<RecordSelection> selections;
  selections.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    selections.push_back(Branch(table, r, rows[r], tallies, config));
    if (config.update_order == UpdateOrder::kSequential &&
        selections.back().values != rows[r]) {
      tallies.Replace(rows[r], selections.back().values);
      rows[r] = selections.back().values;
    }
  }

  std::vector<ValueVector> values;
  std::vector<RecordTrace> traces;
  values.reserve(rows.size());
  traces.reserve(rows.size());
  for (std::size_t r = 0; r < selections.size(); ++r) {
    RandomSource record_rng = rng.Derive(r);
    Perturb(selections[r], config.epsilon, record_rng);
    values.push_back(std::move(selections[r].values));
    traces.push_back(std::move(selections[r].trace));
  }
  return PpasResult{table.WithValues(std::move(values)), std::move(traces)};
}

namespace {

double EpsilonFromJson(const nlohmann::json& json) {
  if (json.is_string()) {
    const auto text = json.get<std::string>();
    if (text == "inf" || text == "infinity") return kNoPerturbation;
    throw Error(ErrorCode::kParameter, "epsilon must be a number or \"inf\"");
  }
  if (!json.is_number()) {
    throw Error(ErrorCode::kParameter, "epsilon must be a number or \"inf\"");
  }
  return json.get<double>();
}

QuasiPolicy QuasiPolicyFromName(const std::string& name) {
  if (name == "all-other-attributes" || name == "class-marginal") {
    return QuasiPolicy::kAllOtherAttributes;
  }
  if (name == "fixed-quasi") return QuasiPolicy::kFixedQuasiSet;
  if (name == "global-vs-reference") return QuasiPolicy::kGlobalVsReference;
  throw Error(ErrorCode::kParameter, "unknown quasi_policy '" + name + "'");
}

std::string_view QuasiPolicyName(QuasiPolicy policy) {
  switch (policy) {
    case QuasiPolicy::kAllOtherAttributes: return "all-other-attributes";
    case QuasiPolicy::kFixedQuasiSet: return "fixed-quasi";
    case QuasiPolicy::kGlobalVsReference: return "global-vs-reference";
  }
  return "all-other-attributes";
}

nlohmann::ordered_json EpsilonToJson(double epsilon) {
  if (std::isinf(epsilon)) return "inf";
  return epsilon;
}

}  // namespace

PpasConfig PpasConfigFromJson(const nlohmann::json& json) {
  PpasConfig config;
  try {
    config.t = json.at("t").get<double>();
    config.epsilon =
        json.contains("epsilon") ? EpsilonFromJson(json["epsilon"])
                                 : kNoPerturbation;
    if (json.contains("quasi_policy")) {
      config.quasi_policy =
          QuasiPolicyFromName(json["quasi_policy"].get<std::string>());
    }
    if (json.contains("quasi_ids")) {
      config.quasi_ids = json["quasi_ids"].get<std::vector<std::string>>();
    }
    if (json.contains("reference_dists")) {
      for (const auto& [name, masses] : json["reference_dists"].items()) {
        auto p = masses.get<std::vector<double>>();
        config.reference_dists.emplace(
            name, DiscreteDistribution(
                      {0, 1}, Eigen::Map<const Eigen::VectorXd>(
                                  p.data(), static_cast<Eigen::Index>(p.size()))));
      }
    }
    if (json.contains("ground_distance")) {
      config.ground_distance =
          ParseGroundDistance(json["ground_distance"].get<std::string>());
    }
    if (json.contains("update_order")) {
      const auto order = json["update_order"].get<std::string>();
      if (order == "sequential") {
        config.update_order = UpdateOrder::kSequential;
      } else if (order == "simultaneous") {
        config.update_order = UpdateOrder::kSimultaneous;
      } else {
        throw Error(ErrorCode::kParameter,
                    "update_order must be sequential or simultaneous");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("malformed PPAS config: ") +
                                        e.what());
  }
  if (!(config.t >= 0.0)) throw Error(ErrorCode::kParameter, "t must be >= 0");
  KeepProbability(config.epsilon);
  return config;
}

nlohmann::ordered_json PpasConfigToJson(const PpasConfig& config) {
  nlohmann::ordered_json json;
  json["t"] = config.t;
  json["epsilon"] = EpsilonToJson(config.epsilon);
  json["quasi_policy"] = QuasiPolicyName(config.quasi_policy);
  json["quasi_ids"] = config.quasi_ids;
  nlohmann::ordered_json refs = nlohmann::ordered_json::object();
  for (const auto& [name, dist] : config.reference_dists) {
    refs[name] = {dist.masses()(0), dist.masses()(1)};
  }
  json["reference_dists"] = std::move(refs);
  json["ground_distance"] = GroundDistanceName(config.ground_distance);
  json["update_order"] = config.update_order == UpdateOrder::kSequential
                             ? "sequential"
                             : "simultaneous";
  return json;
}

nlohmann::ordered_json TraceToJson(const RecordTrace& trace) {
  nlohmann::ordered_json json;
  json["record"] = trace.record;
  json["image_id"] = trace.image_id;
  json["epsilon_spent"] = EpsilonToJson(trace.epsilon_spent);
  nlohmann::ordered_json attributes = nlohmann::ordered_json::array();
  for (const AttributeDecision& d : trace.attributes) {
    nlohmann::ordered_json item;
    item["attribute"] = d.attribute;
    item["d"] = d.distance;
    item["kept"] = d.kept;
    item["perturbed"] = d.perturbed;
    attributes.push_back(std::move(item));
  }
  json["attributes"] = std::move(attributes);
  return json;
}

}  // namespace facepriv
