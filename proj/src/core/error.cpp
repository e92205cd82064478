// Copyright 2026 The Authors.
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

#include "core/error.hpp"

namespace detmax {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid_argument";
    case ErrorCode::kParse:
      return "parse";
    case ErrorCode::kDimensionMismatch:
      return "dimension_mismatch";
    case ErrorCode::kDuplicateId:
      return "duplicate_id";
    case ErrorCode::kUnknownId:
      return "unknown_id";
    case ErrorCode::kGuardExceeded:
      return "guard_exceeded";
    case ErrorCode::kPrecondition:
      return "precondition";
    case ErrorCode::kInfeasible:
      return "infeasible";
    case ErrorCode::kNotPsd:
      return "not_psd";
    case ErrorCode::kIterationLimit:
      return "iteration_limit";
    case ErrorCode::kOverlappingSources:
      return "overlapping_sources";
    case ErrorCode::kInternal:
      return "internal";
  }
  return "unknown";
}

}  // namespace detmax
