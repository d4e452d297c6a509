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

#ifndef FACEPRIV_STATUS_H_
#define FACEPRIV_STATUS_H_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace facepriv {

enum class ErrorCode {
  kFormat,            // malformed input text
  kValue,             // token outside its value domain
  kArity,             // row/vector length mismatch
  kConflict,          // contradictory duplicate entries
  kLookup,            // missing key
  kPersonSpecific,    // duplicate (identity, values) record
  kSchema,            // unknown or invalid attribute name
  kUndefined,         // quantity undefined (e.g. empty table)
  kDomain,            // incompatible distributions / supports
  kConfiguration,     // inconsistent argument combination
  kParameter,         // scalar parameter out of range
  kUnsupportedArity,  // operation only defined for binary attributes
  kAlignment,         // before/after tables do not line up
  kDimension,         // vector/matrix/image size mismatch
  kNoBoundary,        // classifier has no decision boundary
  kLevel,             // image too small for requested scales
  kIo,                // file system failure
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> line = std::nullopt)
      : std::runtime_error(message), code_(code), line_(line) {}

  ErrorCode code() const { return code_; }
  // Physical 1-based line number for parse errors.
  std::optional<std::size_t> line() const { return line_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> line_;
};

}  // namespace facepriv

#endif  // FACEPRIV_STATUS_H_
