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

#include "fuzz.h"

#include <algorithm>
#include <iterator>
#include <map>
#include <random>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "exit_codes.h"
#include "faqs/metrics.h"
#include "faqs/verify.h"

namespace faqs::tools {
namespace {

IpPrefix RandomPrefix(std::mt19937_64& rng, AddressFamily family) {
  std::uniform_int_distribution<int> len(0, family.width());
  AddressBits bits;
  bits.hi = rng();
  return IpPrefix::Truncate(family, bits, len(rng));
}

std::string DescribeMismatch(const FibSnapshot& want, const FibSnapshot& got) {
  std::vector<std::string> diffs;
  for (const auto& [p, hop] : want.entries) {
    auto it = got.entries.find(p);
    if (it == got.entries.end()) {
      diffs.push_back(absl::StrCat("missing ", p.ToString(), "->", hop.id));
    } else if (it->second != hop) {
      diffs.push_back(absl::StrCat(p.ToString(), " want ", hop.id, " got ",
                                   it->second.id));
    }
  }
  for (const auto& [p, hop] : got.entries) {
    if (!want.entries.contains(p)) {
      diffs.push_back(absl::StrCat("extra ", p.ToString(), "->", hop.id));
    }
  }
  return absl::StrJoin(diffs, ", ");
}

class Checker {
 public:
  explicit Checker(FibTrie& trie) : trie_(trie) {}

  std::optional<CheckFailure> Run(std::int64_t index, const FibSnapshot& shadow,
                                  const FibSnapshot& previous,
                                  const ChangeSet& changes,
                                  ReplayStats* stats, bool stop_on_mismatch) {
    auto fail = [&](std::string check, std::string detail) {
      return CheckFailure{index, std::move(check), std::move(detail)};
    };
    if (auto s = trie_.CheckInvariants(); !s.ok()) {
      return fail("trie-invariants", std::string(s.message()));
    }
    if (!trie_.root()->in_fib()) return fail("root-in-fib", "root not IN_FIB");

    const FibSnapshot original = TakeSnapshot(trie_, SnapshotView::kOriginal);
    if (original != shadow) {
      return fail("original-view", DescribeMismatch(shadow, original));
    }
    const EquivalenceReport per_node = CheckEquivalence(trie_);
    if (!per_node.ok) {
      return fail("per-node-equivalence",
                  absl::StrCat("at ", per_node.first_violation->prefix().ToString(),
                               ": original ", per_node.original_hop.id,
                               " aggregated ", per_node.aggregated_hop.id));
    }
    auto brute = BruteForceEquivalence(trie_);
    if (!brute.ok()) return fail("brute-force", std::string(brute.status().message()));
    if (!*brute) return fail("brute-force-equivalence", "address tables differ");

    const FibSnapshot aggregated = TakeSnapshot(trie_, SnapshotView::kAggregated);
    auto oracle = StaticOracle(shadow);
    if (!oracle.ok()) return fail("static-oracle", std::string(oracle.status().message()));
    if (*oracle != aggregated) {
      if (stats != nullptr) ++stats->snapshot_mismatches;
      if (stop_on_mismatch) {
        return fail("static-oracle", DescribeMismatch(*oracle, aggregated));
      }
    }
    auto replayed = ApplyChangeSet(previous, changes);
    if (!replayed.ok()) {
      return fail("changeset-fidelity", std::string(replayed.status().message()));
    }
    if (*replayed != aggregated) {
      return fail("changeset-fidelity", DescribeMismatch(aggregated, *replayed));
    }
    return std::nullopt;
  }

 private:
  FibTrie& trie_;
};

int ExitCodeForCheck(const std::string& check) {
  if (check == "per-node-equivalence" || check == "brute-force-equivalence") {
    return kExitEquivalence;
  }
  return kExitOracleMismatch;
}

}  // namespace

std::string FuzzCase::ToText() const {
  std::string out = absl::StrCat("# rib family=", family.name(), "\n");
  for (const auto& [p, hop] : initial) {
    absl::StrAppend(&out, p.ToString(), " ", hop.id, "\n");
  }
  absl::StrAppend(&out, "# updates\n");
  for (const RouteUpdate& u : updates) {
    absl::StrAppend(&out, FormatUpdate(u), "\n");
  }
  return out;
}

absl::StatusOr<FuzzCase> GenerateFuzzCase(const FuzzConfig& config) {
  auto family = AddressFamily::Toy(config.width);
  if (!family.ok()) return family.status();
  if (config.hops == 0) return absl::InvalidArgumentError("need at least one hop");

  std::mt19937_64 rng(config.seed);
  std::uniform_int_distribution<std::uint32_t> hop(1, config.hops);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  FuzzCase out;
  out.family = *family;
  std::map<IpPrefix, NextHop> rib;
  const std::size_t initial_size =
      std::min<std::size_t>(std::size_t{1} << (config.width - 2),
                            8 * static_cast<std::size_t>(config.width));
  for (std::size_t tries = 0; rib.size() < initial_size && tries < 64 * initial_size;
       ++tries) {
    const IpPrefix p = RandomPrefix(rng, *family);
    if (rib.emplace(p, NextHop{hop(rng)}).second) {
      out.initial.emplace_back(p, rib[p]);
    }
  }

  out.updates.reserve(config.updates);
  for (std::uint64_t i = 0; i < config.updates; ++i) {
    // Holds the table near its initial size so every check sees a populated
    // trie.
    const double withdraw_rate = rib.size() > initial_size ? 0.45 : 0.25;
    if (!rib.empty() && u(rng) < withdraw_rate) {
      std::uniform_int_distribution<std::size_t> pick(0, rib.size() - 1);
      auto it = std::next(rib.begin(), static_cast<std::ptrdiff_t>(pick(rng)));
      out.updates.push_back(RouteUpdate::Withdraw(it->first));
      rib.erase(it);
      continue;
    }
    IpPrefix p = IpPrefix::Default(*family);
    if (!rib.empty() && u(rng) < 0.5) {
      std::uniform_int_distribution<std::size_t> pick(0, rib.size() - 1);
      p = std::next(rib.begin(), static_cast<std::ptrdiff_t>(pick(rng)))->first;
    } else {
      p = RandomPrefix(rng, *family);
    }
    const NextHop h{hop(rng)};
    rib[p] = h;
    out.updates.push_back(RouteUpdate::Announce(p, h));
  }
  return out;
}

std::optional<CheckFailure> ReplayWithChecks(const FuzzCase& fuzz_case,
                                             const ReplayOptions& options,
                                             ReplayStats* stats) {
  const AddressFamily family = fuzz_case.family;
  FibSnapshot shadow{family, SnapshotView::kOriginal, {}};
  shadow.entries[IpPrefix::Default(family)] = NextHop::Drop();
  for (const auto& [p, hop] : fuzz_case.initial) shadow.entries[p] = hop;

  auto built = BuildTrie(family, fuzz_case.initial);
  if (!built.ok()) {
    return CheckFailure{-1, "build", std::string(built.status().message())};
  }
  FibTrie& trie = *built;
  const ChangeSet initial_changes = StaticAggregate(trie);
  Checker checker(trie);
  const FibSnapshot empty{family, SnapshotView::kAggregated, {}};
  if (auto f = checker.Run(-1, shadow, empty, initial_changes, stats,
                           options.stop_on_snapshot_mismatch)) {
    return f;
  }

  for (std::size_t i = 0; i < fuzz_case.updates.size(); ++i) {
    const RouteUpdate& update = fuzz_case.updates[i];
    const FibSnapshot previous = TakeSnapshot(trie, SnapshotView::kAggregated);
    auto result = Apply(trie, update);
    const auto index = static_cast<std::int64_t>(i);
    if (!result.ok()) {
      return CheckFailure{index, "apply", std::string(result.status().message())};
    }
    if (update.kind == RouteUpdate::Kind::kAnnounce) {
      shadow.entries[update.prefix] = update.next_hop;
    } else if (update.prefix.is_default()) {
      shadow.entries[update.prefix] = NextHop::Drop();
    } else {
      shadow.entries.erase(update.prefix);
    }
    if (stats != nullptr) {
      ++stats->updates;
      stats->changes += result->burst();
      if (result->burst() == 0) ++stats->burst_zero;
      stats->max_burst = std::max<std::uint64_t>(stats->max_burst, result->burst());
      if (result->outcome == UpdateOutcome::kIgnoredWithdrawal) {
        ++stats->ignored_withdrawals;
      }
    }
    if (auto f = checker.Run(index, shadow, previous, result->changes, stats,
                             options.stop_on_snapshot_mismatch)) {
      return f;
    }
    if (options.log != nullptr && options.progress_every != 0 &&
        (i + 1) % options.progress_every == 0) {
      *options.log << "progress update=" << (i + 1)
                   << " original=" << OriginalEntryCount(trie)
                   << " aggregated=" << AggregatedEntryCount(trie)
                   << " changes=" << (stats != nullptr ? stats->changes : 0)
                   << "\n";
    }
  }
  return std::nullopt;
}

FuzzCase Minimize(FuzzCase failing,
                  const std::function<bool(const FuzzCase&)>& fails,
                  int budget) {
  for (std::size_t i = failing.updates.size(); i-- > 0 && budget > 0;) {
    FuzzCase candidate = failing;
    candidate.updates.erase(candidate.updates.begin() +
                            static_cast<std::ptrdiff_t>(i));
    --budget;
    if (fails(candidate)) failing = std::move(candidate);
  }
  for (std::size_t i = failing.initial.size(); i-- > 0 && budget > 0;) {
    FuzzCase candidate = failing;
    candidate.initial.erase(candidate.initial.begin() +
                            static_cast<std::ptrdiff_t>(i));
    --budget;
    if (fails(candidate)) failing = std::move(candidate);
  }
  return failing;
}

int RunFuzz(const FuzzConfig& config, std::ostream& out, std::ostream& err) {
  out << "fuzz width=" << config.width << " updates=" << config.updates
      << " hops=" << config.hops << " seed=" << config.seed << "\n";
  auto generated = GenerateFuzzCase(config);
  if (!generated.ok()) {
    err << "error: " << generated.status().message() << "\n";
    return kExitUsage;
  }
  out << "initial entries=" << generated->initial.size() << "\n";

  ReplayStats stats;
  ReplayOptions options;
  options.progress_every = 1000;
  options.log = &out;
  const std::optional<CheckFailure> failure =
      ReplayWithChecks(*generated, options, &stats);
  if (!failure.has_value()) {
    out << "ok updates=" << stats.updates << " changes=" << stats.changes
        << " burst0=" << stats.burst_zero << " max_burst=" << stats.max_burst
        << " ignored_withdrawals=" << stats.ignored_withdrawals << "\n";
    return kExitOk;
  }

  out << "FAIL update=" << failure->update_index << " check=" << failure->check
      << " detail=" << failure->detail << "\n";
  FuzzCase prefix_case = *generated;
  prefix_case.updates.erase(
      prefix_case.updates.begin() + (failure->update_index + 1),
      prefix_case.updates.end());
  const std::string check = failure->check;
  const FuzzCase minimal = Minimize(prefix_case, [&](const FuzzCase& c) {
    auto f = ReplayWithChecks(c, ReplayOptions{});
    return f.has_value() && f->check == check;
  });
  std::vector<std::string> rib, trace;
  for (const auto& [p, hop] : minimal.initial) {
    rib.push_back(absl::StrCat(p.ToString(), " ", hop.id));
  }
  for (const RouteUpdate& u : minimal.updates) trace.push_back(FormatUpdate(u));
  out << "repro: family=" << minimal.family.name() << " rib=["
      << absl::StrJoin(rib, "; ") << "] updates=["
      << absl::StrJoin(trace, "; ") << "]\n";
  out << minimal.ToText();
  err << "fuzz failed at update " << failure->update_index << " ("
      << failure->check << ")\n";
  return ExitCodeForCheck(check);
}

}  // namespace faqs::tools
