/*
 * Copyright 2026 The netpass Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#ifndef NETPASS_TOOLS_CLI_H_
#define NETPASS_TOOLS_CLI_H_

#include <iosfwd>

namespace netpass::cli {

// Process exit codes. Verdict codes come first so scripts can branch on them.
enum ExitCode : int {
  kExitOk = 0,
  kExitOther = 1,
  kExitUsage = 2,
  kExitParse = 3,
  kExitValidation = 4,
  kExitConvergence = 5,
  kExitSingularity = 6,
  kExitNonPassive = 10,
  kExitPassiveAfterRegulation = 11,
  kExitTableMismatch = 12,
};

// Entry point shared by the executable and the tests.
int Run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace netpass::cli

#endif  // NETPASS_TOOLS_CLI_H_
