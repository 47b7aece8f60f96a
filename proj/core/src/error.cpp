// Copyright 2026 The humanedit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "humanedit/error.hpp"

namespace humanedit {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidCoordinate: return "InvalidCoordinate";
    case ErrorCode::kEmptyImage: return "EmptyImage";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kInsufficientPoints: return "InsufficientPoints";
    case ErrorCode::kDegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorCode::kSingularTransform: return "SingularTransform";
    case ErrorCode::kEmptyPose: return "EmptyPose";
    case ErrorCode::kInvalidWeight: return "InvalidWeight";
    case ErrorCode::kRecordError: return "RecordError";
    case ErrorCode::kMalformedInput: return "MalformedInput";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

ErrorCategory error_category(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kInvalidWeight:
      return ErrorCategory::kArgument;
    case ErrorCode::kIoError: return ErrorCategory::kIo;
    default: return ErrorCategory::kData;
  }
}

}  // namespace humanedit
