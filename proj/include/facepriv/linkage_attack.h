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

#ifndef FACEPRIV_LINKAGE_ATTACK_H_
#define FACEPRIV_LINKAGE_ATTACK_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "facepriv/attribute_table.h"
#include "facepriv/random.h"
#include "json.hpp"

namespace facepriv {

using KnownValue = std::pair<std::string, AttributeValue>;

struct AdversaryKnowledge {
  std::vector<KnownValue> known;
  std::optional<std::string> target_identity;
};

struct AttackOutcome {
  std::vector<std::size_t> candidates;
  // Uniform guess among candidates: 1/|candidates| when the target identity
  // is among them (or when no target is given), else 0.
  double success_probability = 0.0;
  // Unknown attributes on which every candidate agrees.
  std::vector<KnownValue> disclosed_sensitive;
};

AttackOutcome LinkageAttack(const AttributeTable& table,
                            const AdversaryKnowledge& knowledge);

struct HomogeneityDisclosure {
  ValueVector class_key;
  AttributeValue value = 0;

  bool operator==(const HomogeneityDisclosure&) const = default;
};

// Equivalence classes whose members all share one sensitive value.
std::vector<HomogeneityDisclosure> HomogeneityAttackCheck(
    const AttributeTable& table, std::span<const std::string> quasi_ids,
    const std::string& sensitive);

enum class KnowledgeSource {
  kOriginal,  // adversary knows the target's values before obfuscation
  kObserved,  // adversary reads the target's released values
};

struct AdversarySpec {
  // Candidate knowledge subsets. When empty, each adversary draws a uniform
  // random subset of `subset_size` attributes.
  std::vector<std::vector<std::string>> subsets;
  std::size_t subset_size = 0;
  std::size_t n_adversaries = 100;
  // Enumerate every (subset, target) pair instead of sampling; needs
  // explicit subsets.
  bool exhaustive = false;
  KnowledgeSource knowledge = KnowledgeSource::kOriginal;
};

struct SubsetSummary {
  std::vector<std::string> attributes;
  std::size_t n_adversaries = 0;
  double mean_success_before = 0.0;
  double mean_success_after = 0.0;
};

struct AttackSummary {
  std::size_t n_adversaries = 0;
  double mean_success_before = 0.0;
  double mean_success_after = 0.0;
  std::vector<SubsetSummary> per_subset;  // ordered by attribute list
};

// Tables must share schema and (image_id, identity_id) per row. Sampled
// adversary a draws its subset and target from rng.Derive(a).
AttackSummary ReidentificationRate(const AttributeTable& before,
                                   const AttributeTable& after,
                                   const AdversarySpec& spec,
                                   const RandomSource& rng);

// {"subsets": [[...]], "subset_size": 2, "n_adversaries": 100,
//  "exhaustive": false, "knowledge": "original" | "observed"}
AdversarySpec AdversarySpecFromJson(const nlohmann::json& json);
nlohmann::ordered_json AttackSummaryToJson(const AttackSummary& summary);

}  // namespace facepriv

#endif  // FACEPRIV_LINKAGE_ATTACK_H_
