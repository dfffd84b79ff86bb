// Copyright 2026 The FAQS Authors
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
// Process exit codes, one per failure class.

#ifndef FAQS_TOOLS_EXIT_CODES_H_
#define FAQS_TOOLS_EXIT_CODES_H_

#include "absl/status/status.h"

namespace faqs::tools {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitEquivalence = 3;
inline constexpr int kExitOracleMismatch = 4;
inline constexpr int kExitIo = 5;

// Load and write failures map to kExitIo; everything else is a bad input.
inline int ExitCodeFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return kExitOk;
    case absl::StatusCode::kUnavailable:
    case absl::StatusCode::kNotFound:
    case absl::StatusCode::kPermissionDenied:
      return kExitIo;
    default:
      return kExitParse;
  }
}

}  // namespace faqs::tools

#endif  // FAQS_TOOLS_EXIT_CODES_H_
