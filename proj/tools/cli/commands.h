// Copyright 2026 The commonlines Authors
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

#ifndef COMMONLINES_CLI_COMMANDS_H_
#define COMMONLINES_CLI_COMMANDS_H_

#include <ostream>
#include <string>
#include <vector>

namespace commonlines::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitInfeasibleDemand = 2,
  kExitInvalidConfig = 3,
  kExitUnsupportedShape = 4,
  kExitIo = 5,
};

// Runs the command line without the program name, e.g.
// {"solve", "--config", "s.json", "--demand", "100"}.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

int Main(int argc, char** argv);

}  // namespace commonlines::cli

#endif  // COMMONLINES_CLI_COMMANDS_H_
