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

#ifndef COMMONLINES_CLI_SVG_H_
#define COMMONLINES_CLI_SVG_H_

#include <span>
#include <string>

#include "cli/sweep.h"

namespace commonlines::cli {

// Static SVG 1.1 document with three stacked line charts against demand:
// per-line flows (equilibrium solid, optimum dashed), both social costs, and
// the price of anarchy.
std::string RenderSweepSvg(std::span<const SweepRow> rows);

}  // namespace commonlines::cli

#endif  // COMMONLINES_CLI_SVG_H_
