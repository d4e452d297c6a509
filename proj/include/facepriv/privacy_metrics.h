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

#ifndef FACEPRIV_PRIVACY_METRICS_H_
#define FACEPRIV_PRIVACY_METRICS_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "facepriv/attribute_table.h"
#include "facepriv/distribution.h"
#include "json.hpp"

namespace facepriv {

// A per-class extreme together with the class that attains it. Ties go to
// the lexicographically smallest class key.
struct ClassMeasure {
  double value = 0.0;
  ValueVector worst_class_key;
};

// Minimum equivalence-class size over the quasi-identifiers.
std::size_t KAnonymity(const AttributeTable& table,
                       std::span<const std::string> quasi_ids);

// Shannon entropy (natural log, 0 ln 0 = 0) of `attribute` over `members`.
double ClassEntropy(const AttributeTable& table,
                    std::span<const std::size_t> members,
                    std::size_t attribute);

// exp(min_E Entropy(E)): the table is entropy l-diverse for every l up to
// the returned value.
ClassMeasure EntropyLDiversityDetail(const AttributeTable& table,
                                     std::span<const std::string> quasi_ids,
                                     const std::string& sensitive);
double EntropyLDiversity(const AttributeTable& table,
                         std::span<const std::string> quasi_ids,
                         const std::string& sensitive);

// max_E EMD(S, S_E) with S the whole-table marginal of `sensitive`. The table
// is t-close iff the returned value is <= t.
ClassMeasure TClosenessMaxDistance(const AttributeTable& table,
                                   std::span<const std::string> quasi_ids,
                                   const std::string& sensitive,
                                   GroundDistance distance);

struct SensitiveMeasures {
  std::string attribute;
  double l_value = 1.0;
  ValueVector l_worst_class_key;
  double t_value = 0.0;
  ValueVector t_worst_class_key;
};

struct PrivacyReport {
  std::vector<std::string> quasi_ids;
  GroundDistance ground_distance = GroundDistance::kBinary;
  std::size_t k = 0;
  std::size_t class_count = 0;
  std::size_t table_size = 0;
  std::vector<SensitiveMeasures> sensitive;
};

PrivacyReport MakePrivacyReport(const AttributeTable& table,
                                std::span<const std::string> quasi_ids,
                                std::span<const std::string> sensitive_attrs,
                                GroundDistance distance);

// {"quasi_ids", "ground_distance", "table_size", "class_count", "k",
//  "sensitive": [{"attribute", "l", "l_worst_class_key", "t",
//                 "t_worst_class_key"}]}
nlohmann::ordered_json ReportToJson(const PrivacyReport& report);

}  // namespace facepriv

#endif  // FACEPRIV_PRIVACY_METRICS_H_
