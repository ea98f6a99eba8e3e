// Copyright 2026 The Wholebody Tools Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wholebody/errors.hpp"

namespace wholebody {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedJson:
      return "MalformedJson";
    case ErrorCode::kWrongKeypointCount:
      return "WrongKeypointCount";
    case ErrorCode::kBadVisibility:
      return "BadVisibility";
    case ErrorCode::kBadScore:
      return "BadScore";
    case ErrorCode::kDanglingImageRef:
      return "DanglingImageRef";
    case ErrorCode::kInvalidField:
      return "InvalidField";
    case ErrorCode::kPartLengthMismatch:
      return "PartLengthMismatch";
    case ErrorCode::kOutOfBounds:
      return "OutOfBounds";
    case ErrorCode::kUnknownImageId:
      return "UnknownImageId";
    case ErrorCode::kIo:
      return "Io";
  }
  return "Unknown";
}

}  // namespace wholebody
