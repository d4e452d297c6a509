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

#include "facepriv/distribution.h"

#include <algorithm>
#include <set>
#include <string>

namespace facepriv {

DiscreteDistribution::DiscreteDistribution(std::vector<int> support,
                                           Eigen::VectorXd masses)
    : support_(std::move(support)), masses_(std::move(masses)) {
  if (support_.empty() ||
      static_cast<Eigen::Index>(support_.size()) != masses_.size()) {
    throw Error(ErrorCode::kDomain,
                "distribution support and masses differ in length");
  }
  if (std::set<int>(support_.begin(), support_.end()).size() !=
      support_.size()) {
    throw Error(ErrorCode::kDomain, "distribution support has duplicates");
  }
  if ((masses_.array() < 0.0).any() || !masses_.allFinite()) {
    throw Error(ErrorCode::kDomain, "distribution masses must be >= 0");
  }
  if (std::abs(masses_.sum() - 1.0) > kMassTolerance) {
    throw Error(ErrorCode::kDomain, "distribution masses do not sum to 1");
  }
}

DiscreteDistribution DiscreteDistribution::FromCounts(
    std::vector<int> support, std::span<const std::size_t> counts) {
  std::size_t total = 0;
  for (std::size_t c : counts) total += c;
  if (total == 0) {
    throw Error(ErrorCode::kUndefined,
                "distribution of an empty record set is undefined");
  }
  Eigen::VectorXd masses(static_cast<Eigen::Index>(counts.size()));
  for (std::size_t i = 0; i < counts.size(); ++i) {
    masses(static_cast<Eigen::Index>(i)) =
        static_cast<double>(counts[i]) / static_cast<double>(total);
  }
  return DiscreteDistribution(std::move(support), std::move(masses));
}

double DiscreteDistribution::Mass(int value) const {
  auto it = std::find(support_.begin(), support_.end(), value);
  if (it == support_.end()) return 0.0;
  return masses_(it - support_.begin());
}

std::string_view GroundDistanceName(GroundDistance d) {
  switch (d) {
    case GroundDistance::kBinary: return "binary";
    case GroundDistance::kUniform: return "uniform";
    case GroundDistance::kOrdinal: return "ordinal";
  }
  return "binary";
}

GroundDistance ParseGroundDistance(std::string_view name) {
  if (name == "binary") return GroundDistance::kBinary;
  if (name == "uniform") return GroundDistance::kUniform;
  if (name == "ordinal") return GroundDistance::kOrdinal;
  throw Error(ErrorCode::kParameter,
              "unknown ground distance '" + std::string(name) +
                  "' (expected binary, uniform or ordinal)");
}

double GroundCost(GroundDistance d, std::span<const int> support, std::size_t i,
                  std::size_t j) {
  switch (d) {
    case GroundDistance::kBinary:
      return std::abs(support[i] - support[j]);
    case GroundDistance::kUniform:
      return i == j ? 0.0 : 1.0;
    case GroundDistance::kOrdinal:
      return std::abs(static_cast<double>(i) - static_cast<double>(j));
  }
  return 0.0;
}

double Emd(const DiscreteDistribution& p, const DiscreteDistribution& q,
           GroundDistance d) {
  if (p.support() != q.support()) {
    throw Error(ErrorCode::kDomain, "EMD operands have different supports");
  }
  if (d == GroundDistance::kBinary &&
      p.support() != std::vector<int>{0, 1}) {
    throw Error(ErrorCode::kDomain,
                "binary ground distance needs the support {0, 1}");
  }
  return EmdMasses(p.masses(), q.masses(), d);
}

}  // namespace facepriv
