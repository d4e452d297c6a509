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

#ifndef FACEPRIV_DISTRIBUTION_H_
#define FACEPRIV_DISTRIBUTION_H_

#include <cmath>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "facepriv/status.h"

namespace facepriv {

// Finite probability mass function over integer-coded attribute values.
// Masses are nonnegative and sum to 1 within kMassTolerance.
class DiscreteDistribution {
 public:
  static constexpr double kMassTolerance = 1e-12;

  DiscreteDistribution(std::vector<int> support, Eigen::VectorXd masses);

  // Empirical pmf; throws kUndefined when every count is zero.
  static DiscreteDistribution FromCounts(std::vector<int> support,
                                         std::span<const std::size_t> counts);

  const std::vector<int>& support() const { return support_; }
  const Eigen::VectorXd& masses() const { return masses_; }
  std::size_t size() const { return support_.size(); }
  // Zero for values outside the support.
  double Mass(int value) const;

  bool operator==(const DiscreteDistribution& other) const {
    return support_ == other.support_ && masses_ == other.masses_;
  }

 private:
  std::vector<int> support_;
  Eigen::VectorXd masses_;
};

// Ground metric for the Earth Mover's Distance.
//   kBinary:  |a - b| on the support {0, 1}.
//   kUniform: 1 between any two distinct values.
//   kOrdinal: |i - j| between support positions (unit spacing).
enum class GroundDistance { kBinary, kUniform, kOrdinal };

std::string_view GroundDistanceName(GroundDistance d);
GroundDistance ParseGroundDistance(std::string_view name);

// Cost of moving unit mass between support positions i and j.
double GroundCost(GroundDistance d, std::span<const int> support, std::size_t i,
                  std::size_t j);

// Closed-form EMD on mass vectors aligned on the same support positions.
// kBinary expects two-point masses ordered (value 0, value 1).
template <typename DerivedP, typename DerivedQ>
typename DerivedP::Scalar EmdMasses(const Eigen::MatrixBase<DerivedP>& p,
                                    const Eigen::MatrixBase<DerivedQ>& q,
                                    GroundDistance d) {
  using Scalar = typename DerivedP::Scalar;
  if (p.size() != q.size()) {
    throw Error(ErrorCode::kDomain, "EMD operands have different supports");
  }
  switch (d) {
    case GroundDistance::kBinary:
      if (p.size() != 2) {
        throw Error(ErrorCode::kDomain,
                    "binary ground distance needs a two-point support");
      }
      return std::abs(p(1) - q(1));
    case GroundDistance::kUniform:
      return Scalar(0.5) * (p - q).cwiseAbs().sum();
    case GroundDistance::kOrdinal: {
      // Sum of |CDF_p - CDF_q| over the first n-1 positions; the last
      // cumulative difference is zero for normalized inputs.
      Scalar cumulative(0);
      Scalar total(0);
      for (Eigen::Index i = 0; i + 1 < p.size(); ++i) {
        cumulative += p(i) - q(i);
        total += std::abs(cumulative);
      }
      return total;
    }
  }
  return Scalar(0);
}

// Earth Mover's Distance between two distributions on the same support.
double Emd(const DiscreteDistribution& p, const DiscreteDistribution& q,
           GroundDistance d);

}  // namespace facepriv

#endif  // FACEPRIV_DISTRIBUTION_H_
