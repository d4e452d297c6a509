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

#ifndef FACEPRIV_ATTRIBUTE_TABLE_H_
#define FACEPRIV_ATTRIBUTE_TABLE_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "facepriv/distribution.h"
#include "json.hpp"

namespace facepriv {

using AttributeValue = std::uint8_t;
using ValueVector = std::vector<AttributeValue>;

// Ordered attribute vocabulary. Binary (arity 2) is the canonical case.
class AttributeSchema {
 public:
  AttributeSchema() = default;
  explicit AttributeSchema(std::vector<std::string> names);
  AttributeSchema(std::vector<std::string> names, std::vector<int> arity);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  int arity(std::size_t i) const { return arity_[i]; }
  const std::vector<int>& arities() const { return arity_; }
  bool IsBinary() const;

  bool Contains(std::string_view name) const;
  // Throws kSchema for unknown names.
  std::size_t IndexOf(std::string_view name) const;
  // Throws kSchema for unknown or repeated names.
  std::vector<std::size_t> IndicesOf(std::span<const std::string> names) const;

  bool operator==(const AttributeSchema&) const = default;

 private:
  std::vector<std::string> names_;
  std::vector<int> arity_;
};

struct Record {
  std::string image_id;
  std::string identity_id;
  ValueVector values;

  bool operator==(const Record&) const = default;
};

// Person-specific attribute table. Immutable; transforms return new tables.
class AttributeTable {
 public:
  // Validates value ranges, unique image ids, and that no two records share
  // the same (identity_id, values) pair.
  static AttributeTable Create(AttributeSchema schema,
                               std::vector<Record> records);

  const AttributeSchema& schema() const { return schema_; }
  const std::vector<Record>& records() const { return records_; }
  const Record& record(std::size_t i) const { return records_[i]; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  AttributeValue value(std::size_t record, std::size_t attribute) const {
    return records_[record].values[attribute];
  }

  // Same ids, replaced value vectors (one per record, in order).
  AttributeTable WithValues(std::vector<ValueVector> values) const;

  bool operator==(const AttributeTable&) const = default;

 private:
  AttributeTable(AttributeSchema schema, std::vector<Record> records)
      : schema_(std::move(schema)), records_(std::move(records)) {}

  AttributeSchema schema_;
  std::vector<Record> records_;
};

// --- CelebA-format ingestion -------------------------------------------------

struct AttributeRow {
  std::string image_id;
  ValueVector values;

  bool operator==(const AttributeRow&) const = default;
};

struct ParsedAttributes {
  AttributeSchema schema;
  std::vector<AttributeRow> rows;
};

using IdentityMap = std::unordered_map<std::string, std::string>;

// Line 1: record count. Line 2: attribute names. Then "image_id v1 ... vn"
// with vi in {-1, 1}; 1 maps to 1 and -1 maps to 0. Blank lines are skipped.
// Errors carry the physical line number.
ParsedAttributes ParseCelebaAttributes(std::istream& in);

// One "image_id identity_id" pair per line.
IdentityMap ParseIdentityMap(std::istream& in);

AttributeTable BuildTable(const AttributeSchema& schema,
                          std::span<const AttributeRow> rows,
                          const IdentityMap& identities);

// --- Equivalence classes and marginals ---------------------------------------

struct EquivalenceClass {
  ValueVector key;  // values of the quasi-identifier attributes, in order
  std::vector<std::size_t> members;  // ascending record indices

  bool operator==(const EquivalenceClass&) const = default;
};

// Classes are returned in lexicographic key order. An empty attribute list
// yields a single class holding every record.
std::vector<EquivalenceClass> PartitionByIndices(
    const AttributeTable& table, std::span<const std::size_t> attributes);

// Name-based entry point; quasi_ids must be non-empty and known.
std::vector<EquivalenceClass> PartitionEquivalenceClasses(
    const AttributeTable& table, std::span<const std::string> quasi_ids);

// Empirical pmf of one attribute over the support 0..arity-1.
DiscreteDistribution MarginalDistribution(const AttributeTable& table,
                                          std::size_t attribute);
DiscreteDistribution MarginalDistribution(const AttributeTable& table,
                                          std::string_view attribute);
// Pmf of `attribute` restricted to `members`.
DiscreteDistribution SubsetDistribution(const AttributeTable& table,
                                        std::span<const std::size_t> members,
                                        std::size_t attribute);

// --- Canonical serialization ---------------------------------------------------
//
//   {"format": "facepriv.table", "version": 1,
//    "schema": {"names": [...], "arity": [...]},
//    "records": [{"image_id": ..., "identity_id": ..., "values": [...]}, ...]}
//
// Keys are written in the order above. Unknown top-level keys are ignored on
// load.
inline constexpr std::string_view kTableFormat = "facepriv.table";
inline constexpr int kTableVersion = 1;

nlohmann::ordered_json TableToJson(const AttributeTable& table);
AttributeTable TableFromJson(const nlohmann::json& json);
std::string SerializeTable(const AttributeTable& table);
AttributeTable DeserializeTable(std::string_view text);

}  // namespace facepriv

#endif  // FACEPRIV_ATTRIBUTE_TABLE_H_
