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

// Randomized differential testing of the incremental engine on toy widths.

#ifndef FAQS_TOOLS_FUZZ_H_
#define FAQS_TOOLS_FUZZ_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "faqs/aggregator.h"
#include "faqs/io.h"
#include "faqs/prefix.h"

namespace faqs::tools {

struct FuzzCase {
  AddressFamily family = AddressFamily::Ipv4();
  std::vector<RibEntry> initial;
  std::vector<RouteUpdate> updates;

  // RIB section followed by the trace, in the CLI file formats.
  std::string ToText() const;
};

struct FuzzConfig {
  int width = 8;
  std::uint64_t updates = 10000;
  std::uint32_t hops = 4;
  std::uint64_t seed = 1;
};

// Deterministic per config. Announcements go to present prefixes half of
// the time (hop churn) and to fresh random prefixes otherwise; withdrawals
// pick uniformly among present prefixes. The withdrawal rate rises once the
// table outgrows its initial size.
absl::StatusOr<FuzzCase> GenerateFuzzCase(const FuzzConfig& config);

struct CheckFailure {
  // -1 for the initial static aggregation.
  std::int64_t update_index = -1;
  std::string check;
  std::string detail;
};

struct ReplayStats {
  std::uint64_t updates = 0;
  std::uint64_t changes = 0;
  std::uint64_t burst_zero = 0;
  std::uint64_t max_burst = 0;
  std::uint64_t ignored_withdrawals = 0;
  std::uint64_t snapshot_mismatches = 0;
};

struct ReplayOptions {
  // Stop at the first incremental/static snapshot mismatch. When false the
  // mismatch is counted and the run continues with the remaining checks.
  bool stop_on_snapshot_mismatch = true;
  // Emit a progress line every this many updates (0 = never).
  std::uint64_t progress_every = 0;
  std::ostream* log = nullptr;
};

// Replays a case with every check after every update: trie invariants,
// original view against an independent shadow RIB, per-node equivalence,
// exhaustive equivalence, agreement with a static re-aggregation, and
// change-set fidelity.
std::optional<CheckFailure> ReplayWithChecks(const FuzzCase& fuzz_case,
                                             const ReplayOptions& options,
                                             ReplayStats* stats = nullptr);

// Greedily drops updates and initial entries while `fails` still holds.
// At most `budget` calls to `fails`.
FuzzCase Minimize(FuzzCase failing,
                  const std::function<bool(const FuzzCase&)>& fails,
                  int budget = 4000);

// The `fuzz` command body. Returns the process exit code.
int RunFuzz(const FuzzConfig& config, std::ostream& out, std::ostream& err);

}  // namespace faqs::tools

#endif  // FAQS_TOOLS_FUZZ_H_
