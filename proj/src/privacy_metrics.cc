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

#include "facepriv/privacy_metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "facepriv/status.h"

namespace facepriv {
namespace {

std::vector<EquivalenceClass> NonEmptyPartition(
    const AttributeTable& table, std::span<const std::string> quasi_ids) {
  if (table.empty()) {
    throw Error(ErrorCode::kUndefined, "privacy metrics need a non-empty table");
  }
  return PartitionEquivalenceClasses(table, quasi_ids);
}

std::size_t SensitiveIndex(const AttributeTable& table,
                           std::span<const std::string> quasi_ids,
                           const std::string& sensitive) {
  if (std::find(quasi_ids.begin(), quasi_ids.end(), sensitive) !=
      quasi_ids.end()) {
    throw Error(ErrorCode::kConfiguration,
                "sensitive attribute '" + sensitive +
                    "' is also a quasi-identifier");
  }
  return table.schema().IndexOf(sensitive);
}

}  // namespace

std::size_t KAnonymity(const AttributeTable& table,
                       std::span<const std::string> quasi_ids) {
  std::size_t k = std::numeric_limits<std::size_t>::max();
  for (const EquivalenceClass& c : NonEmptyPartition(table, quasi_ids)) {
    k = std::min(k, c.members.size());
  }
  return k;
}

double ClassEntropy(const AttributeTable& table,
                    std::span<const std::size_t> members,
                    std::size_t attribute) {
  DiscreteDistribution p = SubsetDistribution(table, members, attribute);
  double entropy = 0.0;
  for (double mass : p.masses()) {
    if (mass > 0.0) entropy -= mass * std::log(mass);
  }
  return entropy;
}

ClassMeasure EntropyLDiversityDetail(const AttributeTable& table,
                                     std::span<const std::string> quasi_ids,
                                     const std::string& sensitive) {
  const std::size_t s = SensitiveIndex(table, quasi_ids, sensitive);
  ClassMeasure worst{std::numeric_limits<double>::infinity(), {}};
  // Classes arrive in key order, so strict < keeps the smallest tied key.
  for (const EquivalenceClass& c : NonEmptyPartition(table, quasi_ids)) {
    double entropy = ClassEntropy(table, c.members, s);
    if (entropy < worst.value) worst = {entropy, c.key};
  }
  worst.value = std::exp(worst.value);
  return worst;
}

double EntropyLDiversity(const AttributeTable& table,
                         std::span<const std::string> quasi_ids,
                         const std::string& sensitive) {
  return EntropyLDiversityDetail(table, quasi_ids, sensitive).value;
}

ClassMeasure TClosenessMaxDistance(const AttributeTable& table,
                                   std::span<const std::string> quasi_ids,
                                   const std::string& sensitive,
                                   GroundDistance distance) {
  const std::size_t s = SensitiveIndex(table, quasi_ids, sensitive);
  std::vector<EquivalenceClass> classes = NonEmptyPartition(table, quasi_ids);
  const DiscreteDistribution global = MarginalDistribution(table, s);
  ClassMeasure worst{-1.0, {}};
  for (const EquivalenceClass& c : classes) {
    double d = Emd(global, SubsetDistribution(table, c.members, s), distance);
    if (d > worst.value) worst = {d, c.key};
  }
  return worst;
}

PrivacyReport MakePrivacyReport(const AttributeTable& table,
                                std::span<const std::string> quasi_ids,
                                std::span<const std::string> sensitive_attrs,
                                GroundDistance distance) {
  PrivacyReport report;
  report.quasi_ids.assign(quasi_ids.begin(), quasi_ids.end());
  report.ground_distance = distance;
  report.table_size = table.size();
  std::vector<EquivalenceClass> classes = NonEmptyPartition(table, quasi_ids);
  report.class_count = classes.size();
  report.k = KAnonymity(table, quasi_ids);
  for (const std::string& s : sensitive_attrs) {
    SensitiveMeasures m;
    m.attribute = s;
    ClassMeasure l = EntropyLDiversityDetail(table, quasi_ids, s);
    ClassMeasure t = TClosenessMaxDistance(table, quasi_ids, s, distance);
    m.l_value = l.value;
    m.l_worst_class_key = std::move(l.worst_class_key);
    m.t_value = t.value;
    m.t_worst_class_key = std::move(t.worst_class_key);
    report.sensitive.push_back(std::move(m));
  }
  return report;
}

nlohmann::ordered_json ReportToJson(const PrivacyReport& report) {
  auto key_json = [](const ValueVector& key) {
    nlohmann::ordered_json json = nlohmann::ordered_json::array();
    for (AttributeValue v : key) json.push_back(int{v});
    return json;
  };
  nlohmann::ordered_json json;
  json["quasi_ids"] = report.quasi_ids;
  json["ground_distance"] = GroundDistanceName(report.ground_distance);
  json["table_size"] = report.table_size;
  json["class_count"] = report.class_count;
  json["k"] = report.k;
  nlohmann::ordered_json sensitive = nlohmann::ordered_json::array();
  for (const SensitiveMeasures& m : report.sensitive) {
    nlohmann::ordered_json item;
    item["attribute"] = m.attribute;
    item["l"] = m.l_value;
    item["l_worst_class_key"] = key_json(m.l_worst_class_key);
    item["t"] = m.t_value;
    item["t_worst_class_key"] = key_json(m.t_worst_class_key);
    sensitive.push_back(std::move(item));
  }
  json["sensitive"] = std::move(sensitive);
  return json;
}

}  // namespace facepriv
