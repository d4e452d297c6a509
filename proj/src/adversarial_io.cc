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

#include <charconv>
#include <sstream>
#include <string>
#include <vector>

#include "facepriv/adversarial.h"

namespace facepriv {

AffineClassifier<double> ClassifierFromJson(const nlohmann::json& json) {
  try {
    auto rows = json.at("weights").get<std::vector<std::vector<double>>>();
    auto biases = json.at("biases").get<std::vector<double>>();
    std::vector<std::string> labels;
    if (json.contains("labels")) {
      labels = json["labels"].get<std::vector<std::string>>();
    }
    if (rows.empty()) {
      throw Error(ErrorCode::kDimension, "classifier has no weight rows");
    }
    MatrixX<double> weights(static_cast<Eigen::Index>(rows.size()),
                            static_cast<Eigen::Index>(rows[0].size()));
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (rows[k].size() != rows[0].size()) {
        throw Error(ErrorCode::kDimension, "ragged weight matrix");
      }
      for (std::size_t j = 0; j < rows[k].size(); ++j) {
        weights(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) =
            rows[k][j];
      }
    }
    VectorX<double> b = Eigen::Map<const VectorX<double>>(
        biases.data(), static_cast<Eigen::Index>(biases.size()));
    return AffineClassifier<double>(std::move(weights), std::move(b),
                                    std::move(labels));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat,
                std::string("malformed classifier JSON: ") + e.what());
  }
}

nlohmann::ordered_json ClassifierToJson(const AffineClassifier<double>& clf) {
  nlohmann::ordered_json json;
  json["labels"] = clf.labels();
  nlohmann::ordered_json weights = nlohmann::ordered_json::array();
  for (Eigen::Index k = 0; k < clf.num_classes(); ++k) {
    std::vector<double> row(clf.weights().row(k).begin(),
                            clf.weights().row(k).end());
    weights.push_back(row);
  }
  json["weights"] = std::move(weights);
  json["biases"] =
      std::vector<double>(clf.biases().begin(), clf.biases().end());
  return json;
}

MatrixX<double> ReadPointsCsv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<double> row;
    std::stringstream stream(line);
    std::string cell;
    while (std::getline(stream, cell, ',')) {
      auto begin = cell.find_first_not_of(" \t\r");
      auto end = cell.find_last_not_of(" \t\r");
      if (begin == std::string::npos) {
        throw Error(ErrorCode::kFormat,
                    "empty cell at line " + std::to_string(line_number),
                    line_number);
      }
      double value = 0.0;
      const char* b = cell.data() + begin;
      const char* e = cell.data() + end + 1;
      auto [ptr, ec] = std::from_chars(b, e, value);
      if (ec != std::errc() || ptr != e) {
        throw Error(ErrorCode::kFormat,
                    "non-numeric cell '" + cell.substr(begin, end - begin + 1) +
                        "' at line " + std::to_string(line_number),
                    line_number);
      }
      row.push_back(value);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorCode::kArity,
                  "row has " + std::to_string(row.size()) +
                      " columns, expected " +
                      std::to_string(rows.front().size()) + " at line " +
                      std::to_string(line_number),
                  line_number);
    }
    rows.push_back(std::move(row));
  }
  MatrixX<double> points(static_cast<Eigen::Index>(rows.size()),
                         rows.empty() ? 0 : static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i][j];
    }
  }
  return points;
}

}  // namespace facepriv
