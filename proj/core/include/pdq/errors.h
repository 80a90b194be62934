// Copyright 2026 The PDQ Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef PDQ_ERRORS_H_
#define PDQ_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace pdq {

enum class ErrorCode {
  kInvalidInput,
  kSingularPrior,
  kIrregularPrior,
  kDegenerateProfile,
  kInvalidWeight,
  kSolverFailure,
  kDomain,
  kDegenerateScaling,
  kInfeasibleTarget,
  kNoData,
  kAssignment,
  kSchema,
  kParse,
  kEmptyDataset,
  kConfig,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (and tests) can branch on the kind of failure without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pdq

#endif  // PDQ_ERRORS_H_
