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

#ifndef FACEPRIV_RANDOM_H_
#define FACEPRIV_RANDOM_H_

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace facepriv {

// Seeded random stream with a fixed, platform-independent output sequence.
//
// The engine is std::mt19937_64, whose output is pinned by the standard. All
// derived draws are computed here instead of through <random> distributions,
// which are implementation-defined:
//   UniformDouble: top 53 bits of one engine word, times 2^-53, in [0, 1).
//   UniformInt:    rejection sampling on the top bits; unbiased.
//   Gaussian:      Box-Muller on two uniforms; the second variate is cached.
//   Shuffle:       Fisher-Yates from the back using UniformInt.
class RandomSource {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64";

  explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t NextU64() { return engine_(); }
  double UniformDouble();
  // Uniform over [0, bound). bound must be positive.
  std::uint64_t UniformInt(std::uint64_t bound);
  double Gaussian(double mean, double stddev);
  bool Bernoulli(double p) { return UniformDouble() < p; }

  template <typename T>
  void Shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(UniformInt(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  // Independent stream for sub-task `stream` (e.g. record index), derived
  // from the original seed only, never from the current engine state.
  RandomSource Derive(std::uint64_t stream) const {
    return RandomSource(DeriveSeed(seed_, stream));
  }

  static std::uint64_t SplitMix64(std::uint64_t x);
  static std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream) {
    return SplitMix64(seed ^ SplitMix64(stream + 1));
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::optional<double> spare_gaussian_;
};

}  // namespace facepriv

#endif  // FACEPRIV_RANDOM_H_
