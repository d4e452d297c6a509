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

#include "facepriv/randomization.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "facepriv/status.h"

namespace facepriv {

double KeepProbability(double epsilon) {
  if (!(epsilon > 0.0)) {
    throw Error(ErrorCode::kParameter, "epsilon must be > 0 (or infinite)");
  }
  if (std::isinf(epsilon)) return 1.0;
  return 1.0 / (1.0 + std::exp(-epsilon));
}

ValueVector RandomizedResponse(std::span<const AttributeValue> bits,
                               double epsilon, RandomSource& rng) {
  const double keep = KeepProbability(epsilon);
  ValueVector out(bits.begin(), bits.end());
  if (keep == 1.0) return out;
  for (AttributeValue& bit : out) {
    if (bit > 1) {
      throw Error(ErrorCode::kUnsupportedArity,
                  "randomized response needs binary values");
    }
    if (!rng.Bernoulli(keep)) bit ^= 1;
  }
  return out;
}

Eigen::VectorXd GaussianFeatureRandomize(const Eigen::VectorXd& features,
                                         double gamma, double sigma,
                                         RandomSource& rng) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw Error(ErrorCode::kParameter, "gamma must lie in [0, 1]");
  }
  if (!(sigma >= 0.0) || std::isinf(sigma)) {
    throw Error(ErrorCode::kParameter, "sigma must be finite and >= 0");
  }
  const auto n = static_cast<std::size_t>(features.size());
  const auto chosen =
      static_cast<std::size_t>(std::floor(gamma * static_cast<double>(n)));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Partial Fisher-Yates: the first `chosen` slots form a uniform sample.
  for (std::size_t i = 0; i < chosen; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.UniformInt(n - i));
    std::swap(order[i], order[j]);
  }
  Eigen::VectorXd out = features;
  for (std::size_t i = 0; i < chosen; ++i) {
    out(static_cast<Eigen::Index>(order[i])) += rng.Gaussian(0.0, sigma);
  }
  return out;
}

std::vector<std::uint8_t> SynthesizeNoisySample(
    std::span<const std::uint8_t> pixels, double sigma, RandomSource& rng) {
  if (!(sigma >= 0.0) || std::isinf(sigma)) {
    throw Error(ErrorCode::kParameter, "sigma must be finite and >= 0");
  }
  std::vector<std::uint8_t> out(pixels.size());
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    double value = 255.0 - pixels[i] + rng.Gaussian(0.0, sigma);
    out[i] = static_cast<std::uint8_t>(std::clamp(std::round(value), 0.0, 255.0));
  }
  return out;
}

}  // namespace facepriv
