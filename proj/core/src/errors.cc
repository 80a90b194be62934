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
#include "pdq/errors.h"

namespace pdq {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput:
      return "invalid-input";
    case ErrorCode::kSingularPrior:
      return "singular-prior";
    case ErrorCode::kIrregularPrior:
      return "irregular-prior";
    case ErrorCode::kDegenerateProfile:
      return "degenerate-profile";
    case ErrorCode::kInvalidWeight:
      return "invalid-weight";
    case ErrorCode::kSolverFailure:
      return "solver-failure";
    case ErrorCode::kDomain:
      return "domain";
    case ErrorCode::kDegenerateScaling:
      return "degenerate-scaling";
    case ErrorCode::kInfeasibleTarget:
      return "infeasible-target";
    case ErrorCode::kNoData:
      return "no-data";
    case ErrorCode::kAssignment:
      return "assignment";
    case ErrorCode::kSchema:
      return "schema";
    case ErrorCode::kParse:
      return "parse";
    case ErrorCode::kEmptyDataset:
      return "empty-dataset";
    case ErrorCode::kConfig:
      return "config";
    case ErrorCode::kIo:
      return "io";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace pdq
