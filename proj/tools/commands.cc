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
#include "commands.h"

#include <chrono>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "exit_codes.h"
#include "faqs/aggregator.h"
#include "faqs/io.h"
#include "faqs/metrics.h"
#include "faqs/verify.h"
#include "fuzz.h"

namespace faqs::cli {
namespace {

using tools::ExitCodeFor;

int Fail(std::ostream& err, const absl::Status& status) {
  err << "error: " << status.message() << "\n";
  return ExitCodeFor(status);
}

absl::StatusOr<std::optional<AddressFamily>> ParseFamilyFlag(
    const std::string& name) {
  if (name.empty()) return std::optional<AddressFamily>();
  auto family = AddressFamily::FromName(name);
  if (!family.ok()) return family.status();
  return std::optional<AddressFamily>(*family);
}

// The aggregated table as written to disk: the root's implicit drop route
// is not an entry.
FibSnapshot WritableSnapshot(const FibTrie& trie) {
  FibSnapshot snapshot = TakeSnapshot(trie, SnapshotView::kAggregated);
  auto root = snapshot.entries.find(IpPrefix::Default(trie.family()));
  if (root != snapshot.entries.end() && root->second == NextHop::Drop()) {
    snapshot.entries.erase(root);
  }
  return snapshot;
}

FibSnapshot SnapshotOf(const Rib& rib, SnapshotView view) {
  FibSnapshot snapshot{rib.family, view, {}};
  for (const auto& [prefix, hop] : rib.entries) snapshot.entries[prefix] = hop;
  return snapshot;
}

}  // namespace

int RunAggregate(const AggregateOptions& options, std::ostream& out,
                 std::ostream& err) {
  auto family = ParseFamilyFlag(options.family);
  if (!family.ok()) {
    err << "error: " << family.status().message() << "\n";
    return tools::kExitUsage;
  }
  auto rib = LoadRib(options.rib, *family);
  if (!rib.ok()) return Fail(err, rib.status());
  auto trie = BuildTrie(rib->family, rib->entries);
  if (!trie.ok()) return Fail(err, trie.status());
  StaticAggregate(*trie);

  const EquivalenceReport check = CheckEquivalence(*trie);
  if (!check.ok) {
    err << "error: aggregated table is not forwarding-equivalent at "
        << check.first_violation->prefix().ToString() << " (original hop "
        << check.original_hop << ", aggregated hop " << check.aggregated_hop
        << ")\n";
    return tools::kExitEquivalence;
  }
  if (auto s = WriteSnapshot(WritableSnapshot(*trie), options.out); !s.ok()) {
    return Fail(err, s);
  }
  ReplayReport report;
  Snapshot(report, *trie);
  if (!options.stats.empty()) {
    if (auto s = WriteTextFile(options.stats, Render(report, ReportFormat::kJson));
        !s.ok()) {
      return Fail(err, s);
    }
  }
  out << "aggregated " << report.original_entries << " entries into "
      << report.aggregated_entries << "\n";
  return tools::kExitOk;
}

int RunReplay(const ReplayOptions& options, std::ostream& out,
              std::ostream& err) {
  auto family = ParseFamilyFlag(options.family);
  if (!family.ok()) {
    err << "error: " << family.status().message() << "\n";
    return tools::kExitUsage;
  }
  auto rib = LoadRib(options.rib, *family);
  if (!rib.ok()) return Fail(err, rib.status());
  auto trie = BuildTrie(rib->family, rib->entries);
  if (!trie.ok()) return Fail(err, trie.status());
  StaticAggregate(*trie);
  auto reader = UpdateReader::Open(options.updates, rib->family);
  if (!reader.ok()) return Fail(err, reader.status());

  ReplayReport report;
  std::uint64_t index = 0;
  while (true) {
    auto next = reader->Next();
    if (!next.ok()) {
      err << "error: " << options.updates << ": " << next.status().message()
          << "\n";
      return ExitCodeFor(next.status());
    }
    if (!next->has_value()) break;

    const auto start = std::chrono::steady_clock::now();
    auto result = Apply(*trie, **next);
    const auto elapsed = std::chrono::steady_clock::now() - start;
    if (!result.ok()) {
      err << "error: update " << index << " (line " << reader->line_number()
          << "): " << result.status().message() << "\n";
      return ExitCodeFor(result.status());
    }
    Record(report, result->burst(),
           std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed));
    ++index;

    if (options.oracle_every != 0 && index % options.oracle_every == 0) {
      const EquivalenceReport check = CheckEquivalence(*trie);
      if (!check.ok) {
        err << "error: equivalence violated after update " << index - 1
            << " at " << check.first_violation->prefix().ToString() << "\n";
        return tools::kExitEquivalence;
      }
      auto oracle = StaticOracle(TakeSnapshot(*trie, SnapshotView::kOriginal));
      if (!oracle.ok()) return Fail(err, oracle.status());
      if (*oracle != TakeSnapshot(*trie, SnapshotView::kAggregated)) {
        err << "error: oracle mismatch after update " << index - 1 << "\n";
        return tools::kExitOracleMismatch;
      }
    }
    if (options.series_every != 0 && index % options.series_every == 0) {
      AddSample(report, *trie);
    }
  }

  Snapshot(report, *trie);
  if (auto s = WriteTextFile(options.report, Render(report, ReportFormat::kJson));
      !s.ok()) {
    return Fail(err, s);
  }
  if (options.series_every != 0) {
    if (auto s = WriteTextFile(options.report + ".series.csv",
                               Render(report, ReportFormat::kCsvSeries));
        !s.ok()) {
      return Fail(err, s);
    }
  }
  out << Render(report, ReportFormat::kTable);
  return tools::kExitOk;
}

int RunVerify(const VerifyOptions& options, std::ostream& out,
              std::ostream& err) {
  auto family = ParseFamilyFlag(options.family);
  if (!family.ok()) {
    err << "error: " << family.status().message() << "\n";
    return tools::kExitUsage;
  }
  auto original = LoadRib(options.rib, *family);
  if (!original.ok()) return Fail(err, original.status());
  auto aggregated = LoadRib(options.aggregated,
                            family->has_value() ? *family : original->family);
  if (!aggregated.ok()) return Fail(err, aggregated.status());

  auto diff = CompareForwarding(SnapshotOf(*original, SnapshotView::kOriginal),
                                SnapshotOf(*aggregated, SnapshotView::kAggregated));
  if (!diff.ok()) return Fail(err, diff.status());
  if (!diff->equivalent) {
    err << diff->ToString() << "\n";
    return tools::kExitEquivalence;
  }
  out << "equivalent\n";
  return tools::kExitOk;
}

int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) {
  CLI::App app{"FIB aggregation with incremental updates"};
  app.require_subcommand(1);

  AggregateOptions aggregate;
  CLI::App* agg = app.add_subcommand("aggregate", "Aggregate a RIB file");
  agg->add_option("--rib", aggregate.rib, "RIB file")->required();
  agg->add_option("--family", aggregate.family, "v4, v6 or w4..w16");
  agg->add_option("--out", aggregate.out, "Aggregated table output")->required();
  agg->add_option("--stats", aggregate.stats, "JSON stats output");

  ReplayOptions replay;
  CLI::App* rep = app.add_subcommand("replay", "Replay an update trace");
  rep->add_option("--rib", replay.rib, "Initial RIB file")->required();
  rep->add_option("--updates", replay.updates, "Update trace")->required();
  rep->add_option("--family", replay.family, "v4, v6 or w4..w16");
  rep->add_option("--report", replay.report, "JSON report output")->required();
  rep->add_option("--oracle-every", replay.oracle_every,
                  "Run the oracles every N updates");
  rep->add_option("--series-every", replay.series_every,
                  "Sample the series every K updates");

  VerifyOptions verify;
  CLI::App* ver = app.add_subcommand("verify", "Compare forwarding behavior");
  ver->add_option("--rib", verify.rib, "Original table")->required();
  ver->add_option("--aggregated", verify.aggregated, "Aggregated table")
      ->required();
  ver->add_option("--family", verify.family, "v4, v6 or w4..w16");

  tools::FuzzConfig fuzz;
  CLI::App* fz = app.add_subcommand("fuzz", "Randomized differential test");
  fz->add_option("--width", fuzz.width, "Address width, 4..16");
  fz->add_option("--updates", fuzz.updates, "Number of updates");
  fz->add_option("--hops", fuzz.hops, "Number of distinct next hops");
  fz->add_option("--seed", fuzz.seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return tools::kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return tools::kExitUsage;
  }

  if (agg->parsed()) return RunAggregate(aggregate, out, err);
  if (rep->parsed()) return RunReplay(replay, out, err);
  if (ver->parsed()) return RunVerify(verify, out, err);
  return tools::RunFuzz(fuzz, out, err);
}

}  // namespace faqs::cli
