// Copyright 2026 The qchan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qchan::cli {

/// Stable exit codes for scripting.
enum ExitCode : int {
  kExitOk = 0,
  kExitInconsistent = 1,  // structure and behaviour disagree
  kExitInvalid = 2,       // file parsed but failed semantic validation
  kExitParse = 3,         // malformed file or invalid parameters
  kExitUnsupported = 4,   // request not defined for this input
};

struct Environment {
  /// ANSI colour in table output.
  bool color = false;
};

/// Runs one command. `args` excludes the program name, e.g.
/// {"probe", "mes", "--channel-b", "deph.json", "--dims", "2", "2"}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Environment& env = {});

}  // namespace qchan::cli
