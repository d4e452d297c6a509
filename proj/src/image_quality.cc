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

#include "facepriv/image_quality.h"

#include <numeric>
#include <string>

namespace facepriv {
namespace {

void CheckShapes(const Image& reference, const Image& test) {
  if (!reference.SameShape(test)) {
    throw Error(ErrorCode::kDimension, "images differ in size or channels");
  }
}

constexpr double kMsSsimWeights[] = {0.0448, 0.2856, 0.3001, 0.2363, 0.1333};

}  // namespace

double MeanSquaredError(const Image& reference, const Image& test) {
  CheckShapes(reference, test);
  double total = 0.0;
  for (std::size_t i = 0; i < reference.pixels().size(); ++i) {
    const double diff = static_cast<double>(reference.pixels()[i]) -
                        static_cast<double>(test.pixels()[i]);
    total += diff * diff;
  }
  return total / static_cast<double>(reference.pixels().size());
}

PsnrValue Psnr(const Image& reference, const Image& test) {
  const double mse = MeanSquaredError(reference, test);
  if (mse == 0.0) return {true, 0.0};
  return {false, 10.0 * std::log10(255.0 * 255.0 / mse)};
}

double Ssim(const Image& reference, const Image& test,
            const SsimParams& params) {
  CheckShapes(reference, test);
  double total = 0.0;
  for (int c = 0; c < reference.channels(); ++c) {
    total += SsimPlane(reference.Plane(c), test.Plane(c), params).ssim;
  }
  return total / reference.channels();
}

std::vector<double> DefaultMsSsimWeights(int levels) {
  if (levels < 1 || levels > 5) {
    throw Error(ErrorCode::kLevel,
                "default MS-SSIM weights cover 1 to 5 levels");
  }
  std::vector<double> weights(kMsSsimWeights, kMsSsimWeights + levels);
  if (levels == 5) return weights;
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (double& w : weights) w /= sum;
  return weights;
}

double MsSsim(const Image& reference, const Image& test, int levels,
              std::vector<double> weights, const SsimParams& params) {
  CheckShapes(reference, test);
  if (levels < 1) throw Error(ErrorCode::kLevel, "levels must be >= 1");
  if (weights.empty()) weights = DefaultMsSsimWeights(levels);
  if (static_cast<int>(weights.size()) != levels) {
    throw Error(ErrorCode::kLevel, "need one weight per level");
  }
  const int coarsest = std::min(reference.width(), reference.height()) >>
                       (levels - 1);
  if (coarsest < params.window) {
    throw Error(ErrorCode::kLevel,
                "image too small for " + std::to_string(levels) +
                    " MS-SSIM levels with window " +
                    std::to_string(params.window));
  }
  double total = 0.0;
  for (int c = 0; c < reference.channels(); ++c) {
    Eigen::ArrayXXd x = reference.Plane(c);
    Eigen::ArrayXXd y = test.Plane(c);
    double value = 1.0;
    for (int level = 0; level < levels; ++level) {
      SsimStats<double> stats = SsimPlane(x, y, params);
      const bool last = level == levels - 1;
      const double term = std::max(last ? stats.ssim : stats.cs, 0.0);
      value *= std::pow(term, weights[static_cast<std::size_t>(level)]);
      if (!last) {
        x = Downsample2x(x);
        y = Downsample2x(y);
      }
    }
    total += value;
  }
  return total / reference.channels();
}

}  // namespace facepriv
