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
// The faqs command-line driver: aggregate, replay, verify and fuzz.

#ifndef FAQS_TOOLS_COMMANDS_H_
#define FAQS_TOOLS_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace faqs::cli {

struct AggregateOptions {
  std::string rib;
  std::string family;  // empty: infer from the file
  std::string out;
  std::string stats;   // empty: no stats file
};

struct ReplayOptions {
  std::string rib;
  std::string updates;
  std::string family;
  std::string report;
  std::uint64_t oracle_every = 0;  // 0: oracle off
  std::uint64_t series_every = 0;  // 0: no series; else <report>.series.csv
};

struct VerifyOptions {
  std::string rib;
  std::string aggregated;
  std::string family;
};

int RunAggregate(const AggregateOptions& options, std::ostream& out,
                 std::ostream& err);
int RunReplay(const ReplayOptions& options, std::ostream& out,
              std::ostream& err);
int RunVerify(const VerifyOptions& options, std::ostream& out,
              std::ostream& err);

// Parses argv and dispatches. Usage errors exit 1.
int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err);

}  // namespace faqs::cli

#endif  // FAQS_TOOLS_COMMANDS_H_
