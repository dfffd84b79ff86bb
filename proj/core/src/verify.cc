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

#include "faqs/verify.h"

#include <algorithm>
#include <tuple>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace faqs {
namespace {

// True when the two children tile the node's block exactly, so no address
// resolves to the node itself.
bool FullyCovered(const PtNode& n) {
  return n.left() != nullptr && n.right() != nullptr &&
         n.left()->length() == n.length() + 1 &&
         n.right()->length() == n.length() + 1;
}

}  // namespace

FibSnapshot TakeSnapshot(const FibTrie& trie, SnapshotView view) {
  FibSnapshot snap;
  snap.family = trie.family();
  snap.view = view;
  trie.ForEachNode([&](const PtNode& n) {
    if (view == SnapshotView::kOriginal) {
      if (n.is_real()) snap.entries.emplace(n.prefix(), n.original_hop());
    } else if (n.in_fib()) {
      snap.entries.emplace(n.prefix(),
                           n.selected_hop().value_or(NextHop::Drop()));
    }
  });
  return snap;
}

NextHop Lpm(const FibSnapshot& snapshot, const IpAddress& addr) {
  int best_len = -1;
  NextHop best = NextHop::Drop();
  for (const auto& [prefix, hop] : snapshot.entries) {
    if (prefix.length() > best_len && prefix.Contains(addr)) {
      best_len = prefix.length();
      best = hop;
    }
  }
  return best;
}

absl::StatusOr<std::vector<NextHop>> ForwardingTable(
    const FibSnapshot& snapshot) {
  const int width = snapshot.family.width();
  if (!snapshot.family.is_toy()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "exhaustive tables need a width of at most ",
        AddressFamily::kMaxToyWidth, " bits, got ", width));
  }
  const std::uint64_t size = std::uint64_t{1} << width;
  std::vector<NextHop> table(size, NextHop::Drop());

  // Entries arrive sorted by (bits, length), so every prefix follows the
  // prefixes covering it and the open blocks form a nested stack.
  struct Open {
    std::uint64_t end;
    NextHop hop;
  };
  std::vector<Open> open;
  std::uint64_t cursor = 0;
  auto fill_to = [&](std::uint64_t limit) {
    while (!open.empty() && open.back().end <= limit) {
      std::fill(table.begin() + cursor, table.begin() + open.back().end,
                open.back().hop);
      cursor = open.back().end;
      open.pop_back();
    }
    const NextHop hop = open.empty() ? NextHop::Drop() : open.back().hop;
    std::fill(table.begin() + cursor, table.begin() + limit, hop);
    cursor = limit;
  };
  for (const auto& [prefix, hop] : snapshot.entries) {
    fill_to(prefix.FirstInteger());
    open.push_back({prefix.LastInteger() + 1, hop});
  }
  fill_to(size);
  return table;
}

EquivalenceReport CheckEquivalence(const FibTrie& trie) {
  struct Frame {
    const PtNode* node;
    NextHop original;
    NextHop aggregated;
  };
  std::vector<Frame> stack{{trie.root(), NextHop::Drop(), NextHop::Drop()}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    const PtNode& n = *f.node;
    if (n.is_real()) f.original = n.original_hop();
    if (n.in_fib()) f.aggregated = n.selected_hop().value_or(NextHop::Drop());
    if (!FullyCovered(n) && f.original != f.aggregated) {
      return EquivalenceReport{false, &n, f.original, f.aggregated};
    }
    if (n.right() != nullptr) {
      stack.push_back({n.right(), f.original, f.aggregated});
    }
    if (n.left() != nullptr) {
      stack.push_back({n.left(), f.original, f.aggregated});
    }
  }
  return EquivalenceReport{};
}

absl::StatusOr<bool> BruteForceEquivalence(const FibTrie& trie) {
  auto before = ForwardingTable(TakeSnapshot(trie, SnapshotView::kOriginal));
  if (!before.ok()) return before.status();
  auto after = ForwardingTable(TakeSnapshot(trie, SnapshotView::kAggregated));
  if (!after.ok()) return after.status();
  return *before == *after;
}

absl::StatusOr<FibSnapshot> StaticOracle(const FibSnapshot& original) {
  auto trie = BuildTrie(original.family, original.ToVector());
  if (!trie.ok()) return trie.status();
  StaticAggregate(*trie);
  return TakeSnapshot(*trie, SnapshotView::kAggregated);
}

absl::StatusOr<FibSnapshot> ApplyChangeSet(const FibSnapshot& before,
                                           const ChangeSet& changes) {
  FibSnapshot after = before;
  for (const FibChange& c : changes) {
    auto it = after.entries.find(c.prefix);
    switch (c.kind) {
      case FibChange::Kind::kAdd:
        if (it != after.entries.end()) {
          return absl::FailedPreconditionError(
              absl::StrCat("spurious ", c.ToString(), ": already installed"));
        }
        after.entries.emplace(c.prefix, c.next_hop);
        break;
      case FibChange::Kind::kChange:
        if (it == after.entries.end() || it->second == c.next_hop) {
          return absl::FailedPreconditionError(
              absl::StrCat("spurious ", c.ToString()));
        }
        it->second = c.next_hop;
        break;
      case FibChange::Kind::kDelete:
        if (it == after.entries.end()) {
          return absl::FailedPreconditionError(
              absl::StrCat("spurious ", c.ToString(), ": not installed"));
        }
        after.entries.erase(it);
        break;
    }
  }
  return after;
}

std::string ForwardingDiff::ToString() const {
  if (equivalent) return "equivalent";
  std::string out = "not equivalent";
  if (region.has_value()) absl::StrAppend(&out, " in region ", region->ToString());
  if (address.has_value()) absl::StrAppend(&out, " at address ", address->ToString());
  absl::StrAppend(&out, ": original hop ", original_hop.id,
                  ", aggregated hop ", aggregated_hop.id);
  return out;
}

absl::StatusOr<ForwardingDiff> CompareForwarding(
    const FibSnapshot& original, const FibSnapshot& aggregated) {
  if (original.family != aggregated.family) {
    return absl::InvalidArgumentError("snapshots are of different families");
  }
  const AddressFamily family = original.family;
  FibTrie trie(family, NextHop::Drop());

  auto node_for = [&](const IpPrefix& prefix) -> absl::StatusOr<PtNode*> {
    auto found = trie.FindExact(prefix);
    if (!found.ok()) return found.status();
    if (*found != nullptr) return *found;
    auto inserted = trie.InsertStructural(prefix);
    if (!inserted.ok()) return inserted.status();
    // Stays FAKE unless the original table claims it.
    trie.SetType(inserted->node, NodeType::kFake);
    return inserted->node;
  };
  for (const auto* snap : {&original, &aggregated}) {
    for (const auto& [prefix, hop] : snap->entries) {
      if (auto n = node_for(prefix); !n.ok()) return n.status();
    }
  }
  for (const auto& [prefix, hop] : original.entries) {
    PtNode* n = *trie.FindExact(prefix);
    trie.SetType(n, NodeType::kReal);
    trie.SetOriginalHop(n, hop);
  }
  // An absent 0/0 forwards to drop in either table.
  trie.SetSelectedHop(trie.root(), NextHop::Drop());
  trie.SetStatus(trie.root(), FibStatus::kInFib);
  for (const auto& [prefix, hop] : aggregated.entries) {
    PtNode* n = *trie.FindExact(prefix);
    trie.SetSelectedHop(n, hop);
    trie.SetStatus(n, FibStatus::kInFib);
  }

  ForwardingDiff diff;
  const EquivalenceReport per_node = CheckEquivalence(trie);
  if (!per_node.ok) {
    diff.equivalent = false;
    diff.region = per_node.first_violation->prefix();
    diff.original_hop = per_node.original_hop;
    diff.aggregated_hop = per_node.aggregated_hop;
  }

  if (family.is_toy()) {
    auto before = ForwardingTable(original);
    if (!before.ok()) return before.status();
    auto after = ForwardingTable(aggregated);
    if (!after.ok()) return after.status();
    for (std::uint64_t a = 0; a < before->size(); ++a) {
      if ((*before)[a] != (*after)[a]) {
        if (diff.equivalent) {
          return absl::InternalError(absl::StrCat(
              "per-node check passed but address ",
              IpAddress::FromInteger(family, a).ToString(), " differs"));
        }
        diff.address = IpAddress::FromInteger(family, a);
        break;
      }
    }
    if (!diff.equivalent && !diff.address.has_value()) {
      return absl::InternalError(
          "per-node check failed but every address agrees");
    }
  }
  return diff;
}

}  // namespace faqs
