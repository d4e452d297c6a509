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

#ifndef FACEPRIV_CLI_H_
#define FACEPRIV_CLI_H_

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace facepriv {

inline constexpr std::string_view kToolVersion = "0.1.0";

// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitInvalid = 1,  // input, validation, or parameter error
  kExitIo = 2,       // file missing or unwritable
};

// Runs the command line `args` (args[0] is the program name). Results go to
// `out`, diagnostics to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace facepriv

#endif  // FACEPRIV_CLI_H_
