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

#include "facepriv/random.h"

#include <cmath>
#include <numbers>

#include "facepriv/status.h"

namespace facepriv {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kFormat: return "format error";
    case ErrorCode::kValue: return "value error";
    case ErrorCode::kArity: return "arity error";
    case ErrorCode::kConflict: return "conflict error";
    case ErrorCode::kLookup: return "lookup error";
    case ErrorCode::kPersonSpecific: return "person-specific violation";
    case ErrorCode::kSchema: return "schema error";
    case ErrorCode::kUndefined: return "undefined";
    case ErrorCode::kDomain: return "domain error";
    case ErrorCode::kConfiguration: return "configuration error";
    case ErrorCode::kParameter: return "parameter error";
    case ErrorCode::kUnsupportedArity: return "unsupported arity";
    case ErrorCode::kAlignment: return "alignment error";
    case ErrorCode::kDimension: return "dimension mismatch";
    case ErrorCode::kNoBoundary: return "no decision boundary";
    case ErrorCode::kLevel: return "level error";
    case ErrorCode::kIo: return "i/o error";
  }
  return "error";
}

std::uint64_t RandomSource::SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double RandomSource::UniformDouble() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t RandomSource::UniformInt(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::kParameter, "UniformInt bound is 0");
  // Smallest all-ones mask covering bound - 1.
  std::uint64_t mask = bound - 1;
  mask |= mask >> 1;
  mask |= mask >> 2;
  mask |= mask >> 4;
  mask |= mask >> 8;
  mask |= mask >> 16;
  mask |= mask >> 32;
  while (true) {
    std::uint64_t candidate = engine_() & mask;
    if (candidate < bound) return candidate;
  }
}

double RandomSource::Gaussian(double mean, double stddev) {
  if (spare_gaussian_) {
    double z = *spare_gaussian_;
    spare_gaussian_.reset();
    return mean + stddev * z;
  }
  // 1 - U lies in (0, 1], so the log is finite.
  double u1 = 1.0 - UniformDouble();
  double u2 = UniformDouble();
  double radius = std::sqrt(-2.0 * std::log(u1));
  double angle = 2.0 * std::numbers::pi * u2;
  spare_gaussian_ = radius * std::sin(angle);
  return mean + stddev * radius * std::cos(angle);
}

}  // namespace facepriv
