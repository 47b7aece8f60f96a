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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace humanedit {

enum class ErrorCode {
  kInvalidCoordinate,
  kEmptyImage,
  kShapeMismatch,
  kInsufficientPoints,
  kDegenerateConfiguration,
  kSingularTransform,
  kEmptyPose,
  kInvalidWeight,
  kRecordError,
  kMalformedInput,
  kInvalidArgument,
  kIoError,
};

/// Stable identifier used in CLI error output, e.g. "InsufficientPoints".
std::string_view error_code_name(ErrorCode code);

/// Error categories map onto CLI exit statuses: data errors (3) and I/O (4).
enum class ErrorCategory { kArgument, kData, kIo };

ErrorCategory error_category(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace humanedit
