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

#include "facepriv/attribute_table.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>
#include <utility>

#include "facepriv/status.h"

namespace facepriv {
namespace {

std::vector<std::string> SplitWhitespace(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream stream(line);
  std::string token;
  while (stream >> token) tokens.push_back(std::move(token));
  return tokens;
}

bool IsBlank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

std::string AtLine(std::size_t line) {
  return " at line " + std::to_string(line);
}

}  // namespace

AttributeSchema::AttributeSchema(std::vector<std::string> names)
    : AttributeSchema(names, std::vector<int>(names.size(), 2)) {}

AttributeSchema::AttributeSchema(std::vector<std::string> names,
                                 std::vector<int> arity)
    : names_(std::move(names)), arity_(std::move(arity)) {
  if (names_.size() != arity_.size()) {
    throw Error(ErrorCode::kSchema, "schema names and arity differ in length");
  }
  std::set<std::string_view> seen;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) {
      throw Error(ErrorCode::kSchema, "empty attribute name");
    }
    if (!seen.insert(names_[i]).second) {
      throw Error(ErrorCode::kSchema, "duplicate attribute '" + names_[i] + "'");
    }
    if (arity_[i] < 2 || arity_[i] > 256) {
      throw Error(ErrorCode::kSchema,
                  "attribute '" + names_[i] + "' has arity outside [2, 256]");
    }
  }
}

bool AttributeSchema::IsBinary() const {
  return std::all_of(arity_.begin(), arity_.end(),
                     [](int a) { return a == 2; });
}

bool AttributeSchema::Contains(std::string_view name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

std::size_t AttributeSchema::IndexOf(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) {
    throw Error(ErrorCode::kSchema,
                "unknown attribute '" + std::string(name) + "'");
  }
  return static_cast<std::size_t>(it - names_.begin());
}

std::vector<std::size_t> AttributeSchema::IndicesOf(
    std::span<const std::string> names) const {
  std::vector<std::size_t> indices;
  indices.reserve(names.size());
  for (const std::string& name : names) {
    std::size_t index = IndexOf(name);
    if (std::find(indices.begin(), indices.end(), index) != indices.end()) {
      throw Error(ErrorCode::kSchema, "attribute '" + name + "' listed twice");
    }
    indices.push_back(index);
  }
  return indices;
}

AttributeTable AttributeTable::Create(AttributeSchema schema,
                                      std::vector<Record> records) {
  std::unordered_set<std::string> image_ids;
  std::set<std::pair<std::string_view, std::string_view>> seen;
  for (const Record& record : records) {
    if (record.values.size() != schema.size()) {
      throw Error(ErrorCode::kArity,
                  "record '" + record.image_id + "' has " +
                      std::to_string(record.values.size()) +
                      " values, schema has " + std::to_string(schema.size()));
    }
    for (std::size_t a = 0; a < schema.size(); ++a) {
      if (record.values[a] >= schema.arity(a)) {
        throw Error(ErrorCode::kValue, "record '" + record.image_id +
                                           "' has out-of-range value for '" +
                                           schema.name(a) + "'");
      }
    }
    if (!image_ids.insert(record.image_id).second) {
      throw Error(ErrorCode::kConflict,
                  "duplicate image id '" + record.image_id + "'");
    }
    std::string_view values(reinterpret_cast<const char*>(record.values.data()),
                            record.values.size());
    if (!seen.emplace(record.identity_id, values).second) {
      throw Error(ErrorCode::kPersonSpecific,
                  "identity '" + record.identity_id +
                      "' has two records with identical attributes (image '" +
                      record.image_id + "')");
    }
  }
  return AttributeTable(std::move(schema), std::move(records));
}

AttributeTable AttributeTable::WithValues(
    std::vector<ValueVector> values) const {
  if (values.size() != records_.size()) {
    throw Error(ErrorCode::kArity, "value vector count differs from records");
  }
  std::vector<Record> records = records_;
  for (std::size_t i = 0; i < records.size(); ++i) {
    records[i].values = std::move(values[i]);
  }
  return Create(schema_, std::move(records));
}

ParsedAttributes ParseCelebaAttributes(std::istream& in) {
  std::string line;
  std::size_t line_number = 0;
  auto next_content_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_number;
      if (!IsBlank(line)) return true;
    }
    return false;
  };

  if (!next_content_line()) {
    throw Error(ErrorCode::kFormat, "missing record count" + AtLine(1), 1);
  }
  std::vector<std::string> count_tokens = SplitWhitespace(line);
  std::size_t expected = 0;
  if (count_tokens.size() != 1 ||
      std::from_chars(count_tokens[0].data(),
                      count_tokens[0].data() + count_tokens[0].size(), expected)
              .ptr != count_tokens[0].data() + count_tokens[0].size()) {
    throw Error(ErrorCode::kFormat,
                "expected a record count" + AtLine(line_number), line_number);
  }

  if (!next_content_line()) {
    throw Error(ErrorCode::kFormat,
                "missing attribute names" + AtLine(line_number + 1),
                line_number + 1);
  }
  ParsedAttributes parsed;
  try {
    parsed.schema = AttributeSchema(SplitWhitespace(line));
  } catch (const Error& e) {
    throw Error(ErrorCode::kFormat, e.what() + AtLine(line_number),
                line_number);
  }
  const std::size_t width = parsed.schema.size();
  if (width == 0) {
    throw Error(ErrorCode::kFormat, "no attribute names" + AtLine(line_number),
                line_number);
  }

  parsed.rows.reserve(expected);
  while (next_content_line()) {
    if (parsed.rows.size() == expected) {
      throw Error(ErrorCode::kFormat,
                  "more rows than the declared count " +
                      std::to_string(expected) + AtLine(line_number),
                  line_number);
    }
    std::vector<std::string> tokens = SplitWhitespace(line);
    if (tokens.size() != width + 1) {
      throw Error(ErrorCode::kArity,
                  "row has " + std::to_string(tokens.size() - 1) +
                      " values, expected " + std::to_string(width) +
                      AtLine(line_number),
                  line_number);
    }
    AttributeRow row;
    row.image_id = tokens[0];
    row.values.reserve(width);
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      if (tokens[i] == "1") {
        row.values.push_back(1);
      } else if (tokens[i] == "-1") {
        row.values.push_back(0);
      } else {
        throw Error(ErrorCode::kValue,
                    "value '" + tokens[i] + "' for '" +
                        parsed.schema.name(i - 1) + "' is not -1 or 1" +
                        AtLine(line_number),
                    line_number);
      }
    }
    parsed.rows.push_back(std::move(row));
  }
  if (parsed.rows.size() != expected) {
    throw Error(ErrorCode::kFormat,
                "declared " + std::to_string(expected) + " rows, found " +
                    std::to_string(parsed.rows.size()) +
                    AtLine(line_number + 1),
                line_number + 1);
  }
  return parsed;
}

IdentityMap ParseIdentityMap(std::istream& in) {
  IdentityMap identities;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (IsBlank(line)) continue;
    std::vector<std::string> tokens = SplitWhitespace(line);
    if (tokens.size() != 2) {
      throw Error(ErrorCode::kFormat,
                  "expected 'image_id identity_id'" + AtLine(line_number),
                  line_number);
    }
    auto [it, inserted] = identities.emplace(tokens[0], tokens[1]);
    if (!inserted && it->second != tokens[1]) {
      throw Error(ErrorCode::kConflict,
                  "image '" + tokens[0] + "' mapped to both '" + it->second +
                      "' and '" + tokens[1] + "'" + AtLine(line_number),
                  line_number);
    }
  }
  return identities;
}

AttributeTable BuildTable(const AttributeSchema& schema,
                          std::span<const AttributeRow> rows,
                          const IdentityMap& identities) {
  std::vector<Record> records;
  records.reserve(rows.size());
  for (const AttributeRow& row : rows) {
    auto it = identities.find(row.image_id);
    if (it == identities.end()) {
      throw Error(ErrorCode::kLookup,
                  "no identity for image '" + row.image_id + "'");
    }
    records.push_back(Record{row.image_id, it->second, row.values});
  }
  return AttributeTable::Create(schema, std::move(records));
}

std::vector<EquivalenceClass> PartitionByIndices(
    const AttributeTable& table, std::span<const std::size_t> attributes) {
  std::map<ValueVector, std::vector<std::size_t>> groups;
  ValueVector key(attributes.size());
  for (std::size_t r = 0; r < table.size(); ++r) {
    for (std::size_t i = 0; i < attributes.size(); ++i) {
      key[i] = table.value(r, attributes[i]);
    }
    groups[key].push_back(r);
  }
  std::vector<EquivalenceClass> classes;
  classes.reserve(groups.size());
  for (auto& [k, members] : groups) {
    classes.push_back(EquivalenceClass{k, std::move(members)});
  }
  return classes;
}

std::vector<EquivalenceClass> PartitionEquivalenceClasses(
    const AttributeTable& table, std::span<const std::string> quasi_ids) {
  if (quasi_ids.empty()) {
    throw Error(ErrorCode::kSchema, "quasi-identifier set is empty");
  }
  return PartitionByIndices(table, table.schema().IndicesOf(quasi_ids));
}

DiscreteDistribution SubsetDistribution(const AttributeTable& table,
                                        std::span<const std::size_t> members,
                                        std::size_t attribute) {
  const int arity = table.schema().arity(attribute);
  std::vector<std::size_t> counts(static_cast<std::size_t>(arity), 0);
  for (std::size_t r : members) ++counts[table.value(r, attribute)];
  std::vector<int> support(static_cast<std::size_t>(arity));
  for (int v = 0; v < arity; ++v) support[static_cast<std::size_t>(v)] = v;
  return DiscreteDistribution::FromCounts(std::move(support), counts);
}

DiscreteDistribution MarginalDistribution(const AttributeTable& table,
                                          std::size_t attribute) {
  if (table.empty()) {
    throw Error(ErrorCode::kUndefined,
                "marginal distribution of an empty table is undefined");
  }
  std::vector<std::size_t> all(table.size());
  for (std::size_t r = 0; r < all.size(); ++r) all[r] = r;
  return SubsetDistribution(table, all, attribute);
}

DiscreteDistribution MarginalDistribution(const AttributeTable& table,
                                          std::string_view attribute) {
  return MarginalDistribution(table, table.schema().IndexOf(attribute));
}

nlohmann::ordered_json TableToJson(const AttributeTable& table) {
  nlohmann::ordered_json json;
  json["format"] = kTableFormat;
  json["version"] = kTableVersion;
  json["schema"]["names"] = table.schema().names();
  json["schema"]["arity"] = table.schema().arities();
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const Record& record : table.records()) {
    nlohmann::ordered_json item;
    item["image_id"] = record.image_id;
    item["identity_id"] = record.identity_id;
    nlohmann::ordered_json values = nlohmann::ordered_json::array();
    for (AttributeValue v : record.values) values.push_back(int{v});
    item["values"] = std::move(values);
    records.push_back(std::move(item));
  }
  json["records"] = std::move(records);
  return json;
}

AttributeTable TableFromJson(const nlohmann::json& json) {
  try {
    if (json.at("format").get<std::string>() != kTableFormat) {
      throw Error(ErrorCode::kFormat, "not a facepriv table document");
    }
    if (json.at("version").get<int>() != kTableVersion) {
      throw Error(ErrorCode::kFormat, "unsupported table version " +
                                          json.at("version").dump());
    }
    AttributeSchema schema(
        json.at("schema").at("names").get<std::vector<std::string>>(),
        json.at("schema").at("arity").get<std::vector<int>>());
    std::vector<Record> records;
    for (const auto& item : json.at("records")) {
      Record record;
      record.image_id = item.at("image_id").get<std::string>();
      record.identity_id = item.at("identity_id").get<std::string>();
      for (int v : item.at("values").get<std::vector<int>>()) {
        if (v < 0 || v > 255) {
          throw Error(ErrorCode::kValue,
                      "value out of range in record '" + record.image_id + "'");
        }
        record.values.push_back(static_cast<AttributeValue>(v));
      }
      records.push_back(std::move(record));
    }
    return AttributeTable::Create(std::move(schema), std::move(records));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("malformed table JSON: ") +
                                        e.what());
  }
}

std::string SerializeTable(const AttributeTable& table) {
  return TableToJson(table).dump(2) + "\n";
}

AttributeTable DeserializeTable(std::string_view text) {
  nlohmann::json json;
  try {
    json = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("invalid JSON: ") + e.what());
  }
  return TableFromJson(json);
}

}  // namespace facepriv
