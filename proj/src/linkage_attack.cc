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

#include "facepriv/linkage_attack.h"

#include <algorithm>
#include <map>
#include <numeric>

#include "facepriv/status.h"

namespace facepriv {

AttackOutcome LinkageAttack(const AttributeTable& table,
                            const AdversaryKnowledge& knowledge) {
  const AttributeSchema& schema = table.schema();
  std::vector<std::pair<std::size_t, AttributeValue>> known;
  known.reserve(knowledge.known.size());
  for (const auto& [name, value] : knowledge.known) {
    known.emplace_back(schema.IndexOf(name), value);
  }

  AttackOutcome outcome;
  for (std::size_t r = 0; r < table.size(); ++r) {
    bool match = std::all_of(known.begin(), known.end(), [&](const auto& kv) {
      return table.value(r, kv.first) == kv.second;
    });
    if (match) outcome.candidates.push_back(r);
  }
  if (outcome.candidates.empty()) return outcome;

  bool target_found = !knowledge.target_identity.has_value() ||
                      std::any_of(outcome.candidates.begin(),
                                  outcome.candidates.end(), [&](std::size_t r) {
                                    return table.record(r).identity_id ==
                                           *knowledge.target_identity;
                                  });
  if (target_found) {
    outcome.success_probability =
        1.0 / static_cast<double>(outcome.candidates.size());
  }

  for (std::size_t a = 0; a < schema.size(); ++a) {
    bool is_known = std::any_of(known.begin(), known.end(),
                                [a](const auto& kv) { return kv.first == a; });
    if (is_known) continue;
    AttributeValue first = table.value(outcome.candidates.front(), a);
    bool homogeneous = std::all_of(
        outcome.candidates.begin(), outcome.candidates.end(),
        [&](std::size_t r) { return table.value(r, a) == first; });
    if (homogeneous) outcome.disclosed_sensitive.emplace_back(schema.name(a), first);
  }
  return outcome;
}

std::vector<HomogeneityDisclosure> HomogeneityAttackCheck(
    const AttributeTable& table, std::span<const std::string> quasi_ids,
    const std::string& sensitive) {
  if (std::find(quasi_ids.begin(), quasi_ids.end(), sensitive) !=
      quasi_ids.end()) {
    throw Error(ErrorCode::kConfiguration,
                "sensitive attribute '" + sensitive +
                    "' is also a quasi-identifier");
  }
  const std::size_t s = table.schema().IndexOf(sensitive);
  std::vector<HomogeneityDisclosure> disclosed;
  for (const EquivalenceClass& c :
       PartitionEquivalenceClasses(table, quasi_ids)) {
    AttributeValue first = table.value(c.members.front(), s);
    bool homogeneous =
        std::all_of(c.members.begin(), c.members.end(),
                    [&](std::size_t r) { return table.value(r, s) == first; });
    if (homogeneous) disclosed.push_back({c.key, first});
  }
  return disclosed;
}

namespace {

void CheckAligned(const AttributeTable& before, const AttributeTable& after) {
  if (before.schema() != after.schema()) {
    throw Error(ErrorCode::kAlignment, "tables have different schemas");
  }
  if (before.size() != after.size()) {
    throw Error(ErrorCode::kAlignment, "tables have different record counts");
  }
  for (std::size_t r = 0; r < before.size(); ++r) {
    if (before.record(r).image_id != after.record(r).image_id ||
        before.record(r).identity_id != after.record(r).identity_id) {
      throw Error(ErrorCode::kAlignment,
                  "record " + std::to_string(r) + " refers to different ids");
    }
  }
}

struct Trial {
  std::vector<std::size_t> attributes;  // ascending schema indices
  std::size_t target;
};

struct Tally {
  std::size_t n = 0;
  double before = 0.0;
  double after = 0.0;
};

}  // namespace

AttackSummary ReidentificationRate(const AttributeTable& before,
                                   const AttributeTable& after,
                                   const AdversarySpec& spec,
                                   const RandomSource& rng) {
  CheckAligned(before, after);
  if (before.empty()) {
    throw Error(ErrorCode::kUndefined, "cannot attack an empty table");
  }
  const AttributeSchema& schema = before.schema();

  std::vector<std::vector<std::size_t>> subsets;
  for (const auto& names : spec.subsets) {
    std::vector<std::size_t> indices = schema.IndicesOf(names);
    std::sort(indices.begin(), indices.end());
    subsets.push_back(std::move(indices));
  }
  if (subsets.empty() &&
      (spec.subset_size == 0 || spec.subset_size > schema.size())) {
    throw Error(ErrorCode::kParameter,
                "subset_size must lie in [1, attribute count] when no "
                "subsets are given");
  }

  std::vector<Trial> trials;
  if (spec.exhaustive) {
    if (subsets.empty()) {
      throw Error(ErrorCode::kConfiguration,
                  "exhaustive enumeration needs explicit subsets");
    }
    for (const auto& subset : subsets) {
      for (std::size_t t = 0; t < before.size(); ++t) {
        trials.push_back({subset, t});
      }
    }
  } else {
    std::vector<std::size_t> all(schema.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    for (std::size_t a = 0; a < spec.n_adversaries; ++a) {
      RandomSource adversary_rng = rng.Derive(a);
      Trial trial;
      if (!subsets.empty()) {
        trial.attributes = subsets[adversary_rng.UniformInt(subsets.size())];
      } else {
        std::vector<std::size_t> pool = all;
        for (std::size_t i = 0; i < spec.subset_size; ++i) {
          std::size_t j =
              i + static_cast<std::size_t>(adversary_rng.UniformInt(pool.size() - i));
          std::swap(pool[i], pool[j]);
        }
        trial.attributes.assign(pool.begin(), pool.begin() + spec.subset_size);
        std::sort(trial.attributes.begin(), trial.attributes.end());
      }
      trial.target = adversary_rng.UniformInt(before.size());
      trials.push_back(std::move(trial));
    }
  }

  std::map<std::vector<std::size_t>, Tally> per_subset;
  AttackSummary summary;
  for (const Trial& trial : trials) {
    AdversaryKnowledge original;
    AdversaryKnowledge observed;
    original.target_identity = before.record(trial.target).identity_id;
    observed.target_identity = original.target_identity;
    for (std::size_t a : trial.attributes) {
      original.known.emplace_back(schema.name(a), before.value(trial.target, a));
      observed.known.emplace_back(schema.name(a), after.value(trial.target, a));
    }
    double success_before = LinkageAttack(before, original).success_probability;
    double success_after =
        LinkageAttack(after, spec.knowledge == KnowledgeSource::kOriginal
                                 ? original
                                 : observed)
            .success_probability;
    Tally& tally = per_subset[trial.attributes];
    ++tally.n;
    tally.before += success_before;
    tally.after += success_after;
    summary.mean_success_before += success_before;
    summary.mean_success_after += success_after;
  }
  summary.n_adversaries = trials.size();
  if (!trials.empty()) {
    summary.mean_success_before /= static_cast<double>(trials.size());
    summary.mean_success_after /= static_cast<double>(trials.size());
  }
  for (const auto& [attributes, tally] : per_subset) {
    SubsetSummary s;
    for (std::size_t a : attributes) s.attributes.push_back(schema.name(a));
    s.n_adversaries = tally.n;
    s.mean_success_before = tally.before / static_cast<double>(tally.n);
    s.mean_success_after = tally.after / static_cast<double>(tally.n);
    summary.per_subset.push_back(std::move(s));
  }
  return summary;
}

AdversarySpec AdversarySpecFromJson(const nlohmann::json& json) {
  AdversarySpec spec;
  try {
    if (json.contains("subsets")) {
      spec.subsets =
          json["subsets"].get<std::vector<std::vector<std::string>>>();
    }
    spec.subset_size = json.value("subset_size", std::size_t{0});
    spec.n_adversaries = json.value("n_adversaries", std::size_t{100});
    spec.exhaustive = json.value("exhaustive", false);
    const std::string knowledge = json.value("knowledge", "original");
    if (knowledge == "original") {
      spec.knowledge = KnowledgeSource::kOriginal;
    } else if (knowledge == "observed") {
      spec.knowledge = KnowledgeSource::kObserved;
    } else {
      throw Error(ErrorCode::kParameter,
                  "knowledge must be \"original\" or \"observed\"");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat,
                std::string("malformed adversary spec: ") + e.what());
  }
  return spec;
}

nlohmann::ordered_json AttackSummaryToJson(const AttackSummary& summary) {
  nlohmann::ordered_json json;
  json["n_adversaries"] = summary.n_adversaries;
  json["mean_success_before"] = summary.mean_success_before;
  json["mean_success_after"] = summary.mean_success_after;
  nlohmann::ordered_json subsets = nlohmann::ordered_json::array();
  for (const SubsetSummary& s : summary.per_subset) {
    nlohmann::ordered_json item;
    item["attributes"] = s.attributes;
    item["n_adversaries"] = s.n_adversaries;
    item["mean_success_before"] = s.mean_success_before;
    item["mean_success_after"] = s.mean_success_after;
    subsets.push_back(std::move(item));
  }
  json["per_subset"] = std::move(subsets);
  return json;
}

}  // namespace facepriv
