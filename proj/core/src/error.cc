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

#include "commonlines/error.h"

#include <string>

namespace commonlines {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSaturatedFlow:
      return "SaturatedFlow";
    case ErrorCode::kDomain:
      return "DomainError";
    case ErrorCode::kInfeasibleDemand:
      return "InfeasibleDemand";
    case ErrorCode::kConvergence:
      return "ConvergenceError";
    case ErrorCode::kDegenerateNetwork:
      return "DegenerateNetwork";
    case ErrorCode::kDegenerateStrategy:
      return "DegenerateStrategy";
    case ErrorCode::kTooLarge:
      return "TooLarge";
    case ErrorCode::kUnsupported:
      return "Unsupported";
    case ErrorCode::kInvalidModel:
      return "InvalidModel";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace commonlines
