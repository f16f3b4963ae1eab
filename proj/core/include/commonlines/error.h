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

#ifndef COMMONLINES_ERROR_H_
#define COMMONLINES_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace commonlines {

enum class ErrorCode {
  kSaturatedFlow,
  kDomain,
  kInfeasibleDemand,
  kConvergence,
  kDegenerateNetwork,
  kDegenerateStrategy,
  kTooLarge,
  kUnsupported,
  kInvalidModel,
};

std::string_view ErrorCodeName(ErrorCode code);

// All failures raised by the library carry one of the codes above so callers
// (the CLI in particular) can map them to exit statuses without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace commonlines

#endif  // COMMONLINES_ERROR_H_
