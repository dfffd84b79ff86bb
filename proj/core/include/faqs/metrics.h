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

#ifndef FAQS_METRICS_H_
#define FAQS_METRICS_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "faqs/patricia.h"

namespace faqs {

struct SeriesSample {
  std::uint64_t update_index = 0;
  std::size_t original_size = 0;
  std::size_t aggregated_size = 0;
  double cumulative_time_us = 0;
  std::uint64_t cumulative_changes = 0;
};

// Replay statistics. Times cover Apply() only.
struct ReplayReport {
  std::uint64_t n_u = 0;  // updates applied
  std::uint64_t n_c = 0;  // FIB changes, summed over updates
  std::uint64_t b_max = 0;
  std::uint64_t burst_zero = 0;
  std::uint64_t burst_one = 0;
  std::uint64_t burst_le30 = 0;
  std::map<std::uint64_t, std::uint64_t> burst_hist;  // burst size -> count
  std::chrono::nanoseconds total_time{0};
  std::chrono::nanoseconds peak_time{0};

  // Filled in by Snapshot() from the trie at report time.
  std::optional<double> ratio;  // aggregated / original entries
  std::size_t original_entries = 0;
  std::size_t aggregated_entries = 0;
  std::size_t mem_bytes = 0;

  std::vector<SeriesSample> series;

  double t_aggr_us() const;
  double t_peak_ms() const;
  double nc_per_nu() const;
};

void Record(ReplayReport& report, std::size_t burst,
            std::chrono::nanoseconds elapsed);

// Entry counts for the aggregation ratio. The root's implicit drop route
// counts only when the input declared a default route.
std::size_t OriginalEntryCount(const FibTrie& trie);
std::size_t AggregatedEntryCount(const FibTrie& trie);

// Captures ratio, entry counts and the memory estimate from `trie`.
void Snapshot(ReplayReport& report, const FibTrie& trie);

// Appends one series sample reflecting the report's current totals.
void AddSample(ReplayReport& report, const FibTrie& trie);

enum class ReportFormat { kTable, kJson, kCsvSeries };

std::string Render(const ReplayReport& report, ReportFormat format);

}  // namespace faqs

#endif  // FAQS_METRICS_H_
