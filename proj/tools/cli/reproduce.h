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

#ifndef COMMONLINES_CLI_REPRODUCE_H_
#define COMMONLINES_CLI_REPRODUCE_H_

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace commonlines::cli {

struct Check {
  std::string name;
  double value = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct ReproductionReport {
  std::string title;
  std::vector<Check> checks;
  // Extra values printed for reference only.
  std::vector<std::pair<std::string, double>> notes;

  bool passed() const;
};

// "a": queue-capacity dataset thresholds. "b": power-saturation dataset at
// x = 100 plus its thresholds. Returns nullopt for any other name.
std::optional<ReproductionReport> Reproduce(std::string_view which);

void PrintReport(std::ostream& out, const ReproductionReport& report);

}  // namespace commonlines::cli

#endif  // COMMONLINES_CLI_REPRODUCE_H_
