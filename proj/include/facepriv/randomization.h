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

#ifndef FACEPRIV_RANDOMIZATION_H_
#define FACEPRIV_RANDOMIZATION_H_

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "facepriv/attribute_table.h"
#include "facepriv/random.h"

namespace facepriv {

// Epsilon value meaning "do not perturb".
inline constexpr double kNoPerturbation =
    std::numeric_limits<double>::infinity();

// e^eps / (1 + e^eps); 1 for kNoPerturbation. Throws kParameter unless
// eps > 0.
double KeepProbability(double epsilon);

// Binary randomized response: each bit is kept with KeepProbability(eps) and
// flipped otherwise, independently. The likelihood ratio of any output under
// two inputs differing in one bit is at most e^eps. Draws nothing when eps is
// kNoPerturbation.
ValueVector RandomizedResponse(std::span<const AttributeValue> bits,
                               double epsilon, RandomSource& rng);

// Adds N(0, sigma) to floor(gamma * n) coordinates chosen uniformly without
// replacement; the rest are copied unchanged.
Eigen::VectorXd GaussianFeatureRandomize(const Eigen::VectorXd& features,
                                         double gamma, double sigma,
                                         RandomSource& rng);

// New sample from an existing one: x -> clamp(round(255 - x + N(0, sigma))).
std::vector<std::uint8_t> SynthesizeNoisySample(
    std::span<const std::uint8_t> pixels, double sigma, RandomSource& rng);

}  // namespace facepriv

#endif  // FACEPRIV_RANDOMIZATION_H_
