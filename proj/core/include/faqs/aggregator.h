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

// Incremental FIB aggregation.
//
// Every trie node carries a type (REAL/FAKE), an original hop O, a selected
// hop S and a FIB status. Static aggregation derives O for FAKE nodes top
// down and assigns S and the children's status bottom up in a single
// post-order walk. Route updates touch only the subtree under the updated
// node plus its ancestor chain, and each walk stops early:
//   - a new node whose hop equals its parent's O needs no walk at all;
//   - the downward walk does not enter REAL children;
//   - the upward walk stops at the first ancestor whose S is unchanged.
//
// Each call returns the net set of data-plane changes it caused.

#ifndef FAQS_AGGREGATOR_H_
#define FAQS_AGGREGATOR_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/statusor.h"
#include "faqs/patricia.h"
#include "faqs/prefix.h"

namespace faqs {

struct RouteUpdate {
  enum class Kind { kAnnounce, kWithdraw };

  static RouteUpdate Announce(const IpPrefix& prefix, NextHop hop) {
    return RouteUpdate{Kind::kAnnounce, prefix, hop};
  }
  static RouteUpdate Withdraw(const IpPrefix& prefix) {
    return RouteUpdate{Kind::kWithdraw, prefix, NextHop::Drop()};
  }

  Kind kind;
  IpPrefix prefix;
  NextHop next_hop;  // ignored for withdrawals

  friend bool operator==(const RouteUpdate&, const RouteUpdate&) = default;
};

struct FibChange {
  enum class Kind { kAdd, kChange, kDelete };

  Kind kind;
  IpPrefix prefix;
  NextHop next_hop;  // Drop() for deletions

  std::string ToString() const;
  friend bool operator==(const FibChange&, const FibChange&) = default;
  friend std::ostream& operator<<(std::ostream& os, const FibChange& c) {
    return os << c.ToString();
  }
};

// Net data-plane effect of one operation, at most one entry per prefix.
using ChangeSet = std::vector<FibChange>;

enum class UpdateOutcome {
  kApplied,
  // Withdrawal of a prefix that is absent or only a glue node. Nothing
  // changed; the caller may want to log it.
  kIgnoredWithdrawal,
};

struct UpdateResult {
  ChangeSet changes;
  UpdateOutcome outcome = UpdateOutcome::kApplied;

  std::size_t burst() const { return changes.size(); }
};

enum class TraversalPhase { kStatic, kSubtree, kAncestors };

// Collects (status, selected hop) transitions during one operation and
// coalesces them per prefix. Optionally reports every node the traversals
// visit, which the locality tests use.
class ChangeRecorder {
 public:
  using VisitHook = std::function<void(const PtNode&, TraversalPhase)>;

  ChangeRecorder() = default;
  explicit ChangeRecorder(VisitHook hook) : hook_(std::move(hook)) {}

  // Snapshots `node`'s installed state the first time it is seen.
  void Touch(const PtNode* node);
  // The node is about to be freed; its post-state is NON_FIB.
  void MarkRemoved(const PtNode* node);
  void Visit(const PtNode& node, TraversalPhase phase) const {
    if (hook_) hook_(node, phase);
  }

  // Net changes in first-touch order. Nodes still referenced must be live.
  ChangeSet Finish();

 private:
  struct Entry {
    const PtNode* node;  // nullptr once removed
    IpPrefix prefix;
    bool was_in_fib;
    NextHop old_hop;
  };

  VisitHook hook_;
  std::vector<Entry> entries_;
  absl::flat_hash_map<const PtNode*, std::size_t> index_;
};

// One post-order pass over the whole trie. On a freshly loaded trie the
// result lists the full aggregated FIB as additions.
ChangeSet StaticAggregate(FibTrie& trie);

// S(n) := S(n.l) when n has both children exactly one bit longer and
// O(n) != S(n.r); otherwise S(n) := O(n). Returns whether S changed.
bool SetSelectedNextHop(FibTrie& trie, PtNode* node, ChangeRecorder& recorder);

// A child is IN_FIB iff its S differs from S(node).
void SetChildFibStatus(FibTrie& trie, PtNode* node, ChangeRecorder& recorder);

// Pushes O(node) into FAKE descendants (not past REAL ones) and recomputes
// S and child statuses bottom up.
void UpdateSubtree(FibTrie& trie, PtNode* node, ChangeRecorder& recorder);

// Recomputes S and child statuses along the parent chain of `node`, stopping
// at the first ancestor whose S did not change.
void UpdateAncestors(FibTrie& trie, PtNode* node, ChangeRecorder& recorder);

// Like UpdateAncestors but starts at `node` itself.
void RefreshUpward(FibTrie& trie, PtNode* node, ChangeRecorder& recorder);

absl::StatusOr<UpdateResult> Announce(FibTrie& trie, const IpPrefix& prefix,
                                      NextHop hop,
                                      ChangeRecorder::VisitHook hook = {});
absl::StatusOr<UpdateResult> Withdraw(FibTrie& trie, const IpPrefix& prefix,
                                      ChangeRecorder::VisitHook hook = {});
// Dispatches to Announce/Withdraw. Requires a prior StaticAggregate.
absl::StatusOr<UpdateResult> Apply(FibTrie& trie, const RouteUpdate& update,
                                   ChangeRecorder::VisitHook hook = {});

// Builds a trie from original entries without aggregating it. A 0/0 entry
// sets the root hop and marks the default route as declared.
absl::StatusOr<FibTrie> BuildTrie(
    AddressFamily family,
    const std::vector<std::pair<IpPrefix, NextHop>>& entries);

}  // namespace faqs

#endif  // FAQS_AGGREGATOR_H_
