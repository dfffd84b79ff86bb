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

#include "faqs/metrics.h"

#include <algorithm>
#include <cstdio>

#include "absl/strings/str_cat.h"
#include "json.hpp"

namespace faqs {
namespace {

double Percent(std::uint64_t part, std::uint64_t whole) {
  return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) /
                                static_cast<double>(whole);
}

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

double ReplayReport::t_aggr_us() const {
  if (n_u == 0) return 0.0;
  return std::chrono::duration<double, std::micro>(total_time).count() /
         static_cast<double>(n_u);
}

double ReplayReport::t_peak_ms() const {
  return std::chrono::duration<double, std::milli>(peak_time).count();
}

double ReplayReport::nc_per_nu() const {
  return n_u == 0 ? 0.0 : static_cast<double>(n_c) / static_cast<double>(n_u);
}

void Record(ReplayReport& report, std::size_t burst,
            std::chrono::nanoseconds elapsed) {
  ++report.n_u;
  report.n_c += burst;
  report.b_max = std::max<std::uint64_t>(report.b_max, burst);
  if (burst == 0) ++report.burst_zero;
  if (burst == 1) ++report.burst_one;
  if (burst <= 30) ++report.burst_le30;
  ++report.burst_hist[burst];
  report.total_time += elapsed;
  report.peak_time = std::max(report.peak_time, elapsed);
}

std::size_t OriginalEntryCount(const FibTrie& trie) {
  return trie.real_count() - (trie.has_default_route() ? 0 : 1);
}

std::size_t AggregatedEntryCount(const FibTrie& trie) {
  // Without a declared default the root usually holds the implicit drop; it
  // is a real entry only if aggregation moved a child's hop up into it.
  const PtNode* root = trie.root();
  const bool implicit_drop =
      !trie.has_default_route() && root->in_fib() &&
      root->selected_hop().value_or(NextHop::Drop()) == NextHop::Drop();
  return trie.in_fib_count() - (implicit_drop ? 1 : 0);
}

void Snapshot(ReplayReport& report, const FibTrie& trie) {
  report.original_entries = OriginalEntryCount(trie);
  report.aggregated_entries = AggregatedEntryCount(trie);
  report.ratio.reset();
  if (report.original_entries > 0) {
    report.ratio = static_cast<double>(report.aggregated_entries) /
                   static_cast<double>(report.original_entries);
  }
  report.mem_bytes = trie.node_count() * FibTrie::kNodeBytes;
}

void AddSample(ReplayReport& report, const FibTrie& trie) {
  report.series.push_back(SeriesSample{
      report.n_u, OriginalEntryCount(trie), AggregatedEntryCount(trie),
      std::chrono::duration<double, std::micro>(report.total_time).count(),
      report.n_c});
}

std::string Render(const ReplayReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::kJson: {
      nlohmann::ordered_json j;
      j["n_u"] = report.n_u;
      j["n_c"] = report.n_c;
      if (report.ratio.has_value()) {
        j["ratio"] = *report.ratio;
      } else {
        j["ratio"] = nullptr;
      }
      j["nc_per_nu"] = report.nc_per_nu();
      j["t_aggr_us"] = report.t_aggr_us();
      j["t_peak_ms"] = report.t_peak_ms();
      j["burst0_pct"] = Percent(report.burst_zero, report.n_u);
      j["burst1_pct"] = Percent(report.burst_one, report.n_u);
      j["burst_le30_pct"] = Percent(report.burst_le30, report.n_u);
      j["b_max"] = report.b_max;
      j["mem_bytes"] = report.mem_bytes;
      return j.dump(2) + "\n";
    }
    case ReportFormat::kCsvSeries: {
      std::string out =
          "update_index,original_size,aggregated_size,cumulative_time_us,"
          "cumulative_changes\n";
      for (const SeriesSample& s : report.series) {
        absl::StrAppend(&out, s.update_index, ",", s.original_size, ",",
                        s.aggregated_size, ",", Fixed(s.cumulative_time_us, 3),
                        ",", s.cumulative_changes, "\n");
      }
      return out;
    }
    case ReportFormat::kTable: {
      char line[512];
      std::string out;
      std::snprintf(line, sizeof(line),
                    "%12s %8s %8s %11s %11s %8s %8s %10s %7s %12s\n", "n_u",
                    "r", "n_c/n_u", "t_aggr(us)", "t_peak(ms)", "n_b=0%",
                    "n_b=1%", "n_b<=30%", "b_max", "m(bytes)");
      out += line;
      const std::string ratio =
          report.ratio.has_value() ? Fixed(*report.ratio, 4) : "-";
      std::snprintf(
          line, sizeof(line),
          "%12llu %8s %8.4f %11.3f %11.3f %8.2f %8.2f %10.4f %7llu %12zu\n",
          static_cast<unsigned long long>(report.n_u), ratio.c_str(),
          report.nc_per_nu(), report.t_aggr_us(), report.t_peak_ms(),
          Percent(report.burst_zero, report.n_u),
          Percent(report.burst_one, report.n_u),
          Percent(report.burst_le30, report.n_u),
          static_cast<unsigned long long>(report.b_max), report.mem_bytes);
      out += line;
      return out;
    }
  }
  return {};
}

}  // namespace faqs
