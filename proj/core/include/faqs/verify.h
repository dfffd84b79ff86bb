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

// Forwarding-correctness oracles.
//
// Two independent routes guard the aggregation: a linear per-node check on
// the trie and, for toy widths, an exhaustive per-address comparison of
// longest-prefix matches on the two table views.

#ifndef FAQS_VERIFY_H_
#define FAQS_VERIFY_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "faqs/aggregator.h"
#include "faqs/patricia.h"
#include "faqs/prefix.h"

namespace faqs {

enum class SnapshotView {
  kOriginal,    // REAL nodes with O
  kAggregated,  // IN_FIB nodes with S
};

struct FibSnapshot {
  AddressFamily family = AddressFamily::Ipv4();
  SnapshotView view = SnapshotView::kOriginal;
  std::map<IpPrefix, NextHop> entries;

  std::vector<std::pair<IpPrefix, NextHop>> ToVector() const {
    return {entries.begin(), entries.end()};
  }
  friend bool operator==(const FibSnapshot& a, const FibSnapshot& b) {
    return a.family == b.family && a.entries == b.entries;
  }
};

FibSnapshot TakeSnapshot(const FibTrie& trie, SnapshotView view);

// Longest-prefix match by linear scan. Addresses nothing covers resolve to
// Drop().
NextHop Lpm(const FibSnapshot& snapshot, const IpAddress& addr);

// The hop of every address of a toy-width family, indexed by the address
// value. Built with a sorted sweep, one write per address.
absl::StatusOr<std::vector<NextHop>> ForwardingTable(
    const FibSnapshot& snapshot);

struct EquivalenceReport {
  bool ok = true;
  const PtNode* first_violation = nullptr;
  NextHop original_hop;    // effective hop before aggregation
  NextHop aggregated_hop;  // effective hop after aggregation
};

// Per node whose own address block is not entirely covered by its children:
// the hop of the nearest REAL self-or-ancestor must equal the selected hop of
// the nearest IN_FIB self-or-ancestor. Reads O only on REAL nodes.
EquivalenceReport CheckEquivalence(const FibTrie& trie);

// Exhaustive comparison of the ORIGINAL and AGGREGATED views over every
// address. Widths up to 16 only.
absl::StatusOr<bool> BruteForceEquivalence(const FibTrie& trie);

// Builds a fresh trie from `original` and runs static aggregation on it.
// The result keeps the trie's view of 0/0, which is always present.
absl::StatusOr<FibSnapshot> StaticOracle(const FibSnapshot& original);

// Applies a change set to a snapshot as a map edit. Fails on additions of
// present keys and on changes or deletions of absent ones.
absl::StatusOr<FibSnapshot> ApplyChangeSet(const FibSnapshot& before,
                                           const ChangeSet& changes);

struct ForwardingDiff {
  bool equivalent = true;
  // Smallest region (trie node prefix) on which the tables disagree.
  std::optional<IpPrefix> region;
  // First differing address, when the family can be enumerated.
  std::optional<IpAddress> address;
  NextHop original_hop;
  NextHop aggregated_hop;

  std::string ToString() const;
};

// Compares the forwarding behavior of two arbitrary tables of one family.
// Missing 0/0 means drop. Uses the per-node check on a trie holding the
// union of both prefix sets, plus the exhaustive check on toy widths.
absl::StatusOr<ForwardingDiff> CompareForwarding(const FibSnapshot& original,
                                                 const FibSnapshot& aggregated);

}  // namespace faqs

#endif  // FAQS_VERIFY_H_
