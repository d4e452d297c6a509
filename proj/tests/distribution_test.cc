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

#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.h"

namespace facepriv {
namespace {

using ::facepriv::testing::CostMatrix;
using ::facepriv::testing::MinCostFlowEmd;
using ::facepriv::testing::OracleGround;
using ::facepriv::testing::RandomPmf;

DiscreteDistribution Make(std::vector<int> support, std::vector<double> masses) {
  return DiscreteDistribution(
      std::move(support),
      Eigen::Map<const Eigen::VectorXd>(masses.data(),
                                        static_cast<Eigen::Index>(masses.size())));
}

std::vector<int> Iota(std::size_t n) {
  std::vector<int> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = static_cast<int>(i);
  return s;
}

OracleGround ToOracle(GroundDistance d) {
  switch (d) {
    case GroundDistance::kBinary:
      return OracleGround::kBinary;
    case GroundDistance::kUniform:
      return OracleGround::kUniform;
    case GroundDistance::kOrdinal:
      return OracleGround::kOrdinal;
  }
  return OracleGround::kUniform;
}

TEST(DiscreteDistributionTest, ValidatesInvariants) {
  EXPECT_THROW(Make({0, 1}, {0.5, 0.6}), Error);
  EXPECT_THROW(Make({0, 1}, {1.2, -0.2}), Error);
  EXPECT_THROW(Make({0, 0}, {0.5, 0.5}), Error);
  EXPECT_THROW(Make({0}, {0.5, 0.5}), Error);
  DiscreteDistribution d = Make({0, 1}, {0.25, 0.75});
  EXPECT_EQ(d.Mass(1), 0.75);
  EXPECT_EQ(d.Mass(7), 0.0);
}

TEST(DiscreteDistributionTest, FromCounts) {
  std::vector<std::size_t> counts{1, 3};
  DiscreteDistribution d = DiscreteDistribution::FromCounts({0, 1}, counts);
  EXPECT_EQ(d.Mass(0), 0.25);
  std::vector<std::size_t> zeros{0, 0};
  try {
    DiscreteDistribution::FromCounts({0, 1}, zeros);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUndefined);
  }
}

TEST(GroundDistanceTest, NamesRoundTrip) {
  for (GroundDistance d : {GroundDistance::kBinary, GroundDistance::kUniform,
                           GroundDistance::kOrdinal}) {
    EXPECT_EQ(ParseGroundDistance(GroundDistanceName(d)), d);
  }
  EXPECT_THROW(ParseGroundDistance("euclid"), Error);
}

TEST(GroundDistanceTest, MetricAxiomsByEnumeration) {
  const std::vector<int> support = Iota(5);
  for (GroundDistance d : {GroundDistance::kUniform, GroundDistance::kOrdinal}) {
    for (std::size_t i = 0; i < 5; ++i) {
      EXPECT_EQ(GroundCost(d, support, i, i), 0.0);
      for (std::size_t j = 0; j < 5; ++j) {
        EXPECT_GE(GroundCost(d, support, i, j), 0.0);
        EXPECT_EQ(GroundCost(d, support, i, j), GroundCost(d, support, j, i));
        if (i != j) {
          EXPECT_GT(GroundCost(d, support, i, j), 0.0);
        }
        for (std::size_t k = 0; k < 5; ++k) {
          EXPECT_LE(GroundCost(d, support, i, k),
                    GroundCost(d, support, i, j) + GroundCost(d, support, j, k));
        }
      }
    }
  }
}

TEST(EmdTest, IdenticalIsZero) {
  DiscreteDistribution p = Make({0, 1, 2}, {0.2, 0.3, 0.5});
  EXPECT_EQ(Emd(p, p, GroundDistance::kUniform), 0.0);
  EXPECT_EQ(Emd(p, p, GroundDistance::kOrdinal), 0.0);
  DiscreteDistribution b = Make({0, 1}, {0.4, 0.6});
  EXPECT_EQ(Emd(b, b, GroundDistance::kBinary), 0.0);
}

TEST(EmdTest, BernoulliBinary) {
  DiscreteDistribution p = Make({0, 1}, {0.2, 0.8});
  DiscreteDistribution q = Make({0, 1}, {0.5, 0.5});
  EXPECT_NEAR(Emd(p, q, GroundDistance::kBinary), 0.3, 1e-15);
  EXPECT_NEAR(MinCostFlowEmd({0.2, 0.8}, {0.5, 0.5},
                             CostMatrix(OracleGround::kBinary, {0, 1})),
              0.3, 1e-12);
}

TEST(EmdTest, OrdinalShift) {
  DiscreteDistribution p = Make({0, 1, 2}, {0.5, 0.5, 0.0});
  DiscreteDistribution q = Make({0, 1, 2}, {0.0, 0.5, 0.5});
  EXPECT_NEAR(Emd(p, q, GroundDistance::kOrdinal), 1.0, 1e-15);
  EXPECT_NEAR(Emd(p, q, GroundDistance::kUniform), 0.5, 1e-15);
}

TEST(EmdTest, DomainErrors) {
  DiscreteDistribution two = Make({0, 1}, {0.5, 0.5});
  DiscreteDistribution other = Make({1, 2}, {0.5, 0.5});
  DiscreteDistribution three = Make({0, 1, 2}, {0.2, 0.3, 0.5});
  for (auto [p, q, d] : {std::tuple{two, other, GroundDistance::kUniform},
                         std::tuple{two, three, GroundDistance::kUniform},
                         std::tuple{three, three, GroundDistance::kBinary}}) {
    try {
      Emd(p, q, d);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kDomain);
    }
  }
}

TEST(EmdTest, PropertyMatchesFlowOracleAndMetricAxioms) {
  std::mt19937_64 gen(31337);
  for (int trial = 0; trial < 600; ++trial) {
    const std::size_t n = 2 + gen() % 5;
    const std::vector<int> support = Iota(n);
    std::vector<double> a = RandomPmf(gen, n);
    std::vector<double> b = RandomPmf(gen, n);
    std::vector<double> c = RandomPmf(gen, n);
    DiscreteDistribution p = Make(support, a);
    DiscreteDistribution q = Make(support, b);
    DiscreteDistribution r = Make(support, c);
    std::vector<GroundDistance> kinds{GroundDistance::kUniform,
                                      GroundDistance::kOrdinal};
    if (n == 2) kinds.push_back(GroundDistance::kBinary);
    for (GroundDistance d : kinds) {
      const double pq = Emd(p, q, d);
      ASSERT_NEAR(pq, MinCostFlowEmd(a, b, CostMatrix(ToOracle(d), support)), 1e-9);
      ASSERT_GE(pq, 0.0);
      ASSERT_NEAR(pq, Emd(q, p, d), 1e-15);
      ASSERT_LE(Emd(p, r, d), pq + Emd(q, r, d) + 1e-12);
      if (a != b) {
        ASSERT_GT(pq, 0.0);
      }
    }
  }
}

}  // namespace
}  // namespace facepriv
