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

#include "faqs/aggregator.h"

#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace faqs {
namespace {

absl::Status CheckUpdatable(const FibTrie& trie, const IpPrefix& prefix) {
  if (prefix.family() != trie.family()) {
    return absl::InvalidArgumentError(
        absl::StrCat("prefix ", prefix.ToString(), " is not in family ",
                     trie.family().name()));
  }
  if (!trie.aggregated()) {
    return absl::FailedPreconditionError(
        "incremental updates need a statically aggregated trie");
  }
  return absl::OkStatus();
}

// Rewrites O(node) and re-aggregates the affected region.
void ChangeOriginalHop(FibTrie& trie, PtNode* node, NextHop hop,
                       ChangeRecorder& recorder) {
  trie.SetOriginalHop(node, hop);
  UpdateSubtree(trie, node, recorder);
  UpdateAncestors(trie, node, recorder);
}

}  // namespace

std::string FibChange::ToString() const {
  switch (kind) {
    case Kind::kAdd:
      return absl::StrCat("ADD ", prefix.ToString(), " ", next_hop.id);
    case Kind::kChange:
      return absl::StrCat("CHANGE ", prefix.ToString(), " ", next_hop.id);
    case Kind::kDelete:
      return absl::StrCat("DELETE ", prefix.ToString());
  }
  return "?";
}

void ChangeRecorder::Touch(const PtNode* node) {
  auto [it, inserted] = index_.try_emplace(node, entries_.size());
  if (!inserted) return;
  entries_.push_back(Entry{node, node->prefix(), node->in_fib(),
                           node->selected_hop().value_or(NextHop::Drop())});
}

void ChangeRecorder::MarkRemoved(const PtNode* node) {
  Touch(node);
  auto it = index_.find(node);
  entries_[it->second].node = nullptr;
  index_.erase(it);
}

ChangeSet ChangeRecorder::Finish() {
  ChangeSet out;
  for (const Entry& e : entries_) {
    const bool now_in = e.node != nullptr && e.node->in_fib();
    const NextHop now_hop =
        now_in ? e.node->selected_hop().value_or(NextHop::Drop())
               : NextHop::Drop();
    if (!e.was_in_fib && now_in) {
      out.push_back({FibChange::Kind::kAdd, e.prefix, now_hop});
    } else if (e.was_in_fib && !now_in) {
      out.push_back({FibChange::Kind::kDelete, e.prefix, NextHop::Drop()});
    } else if (e.was_in_fib && now_in && e.old_hop != now_hop) {
      out.push_back({FibChange::Kind::kChange, e.prefix, now_hop});
    }
  }
  entries_.clear();
  index_.clear();
  return out;
}

bool SetSelectedNextHop(FibTrie& trie, PtNode* node,
                        ChangeRecorder& recorder) {
  const PtNode* l = node->left();
  const PtNode* r = node->right();
  std::optional<NextHop> selected = node->original_hop();
  if (l != nullptr && r != nullptr && l->length() - node->length() == 1 &&
      r->length() - node->length() == 1 &&
      r->selected_hop() != node->original_hop()) {
    selected = l->selected_hop();
  }
  if (selected == node->selected_hop()) return false;
  recorder.Touch(node);
  trie.SetSelectedHop(node, selected);
  return true;
}

void SetChildFibStatus(FibTrie& trie, PtNode* node, ChangeRecorder& recorder) {
  for (int bit = 0; bit < 2; ++bit) {
    PtNode* c = node->child(bit);
    if (c == nullptr) continue;
    const FibStatus want = c->selected_hop() != node->selected_hop()
                               ? FibStatus::kInFib
                               : FibStatus::kNonFib;
    if (c->status() == want) continue;
    recorder.Touch(c);
    trie.SetStatus(c, want);
  }
}

ChangeSet StaticAggregate(FibTrie& trie) {
  ChangeRecorder recorder;
  PtNode* root = trie.root();
  recorder.Touch(root);
  trie.SetStatus(root, FibStatus::kInFib);

  // Explicit-stack post-order; the flag marks nodes whose children are done.
  std::vector<std::pair<PtNode*, bool>> stack;
  stack.emplace_back(root, false);
  while (!stack.empty()) {
    auto& [node, expanded] = stack.back();
    if (!expanded) {
      expanded = true;
      PtNode* n = node;
      if (!n->is_real()) trie.SetOriginalHop(n, n->parent()->original_hop());
      recorder.Visit(*n, TraversalPhase::kStatic);
      if (n->right() != nullptr) stack.emplace_back(n->right(), false);
      if (n->left() != nullptr) stack.emplace_back(n->left(), false);
      continue;
    }
    PtNode* n = node;
    stack.pop_back();
    SetSelectedNextHop(trie, n, recorder);
    SetChildFibStatus(trie, n, recorder);
  }
  trie.set_aggregated(true);
  return recorder.Finish();
}

void UpdateSubtree(FibTrie& trie, PtNode* node, ChangeRecorder& recorder) {
  recorder.Visit(*node, TraversalPhase::kSubtree);
  for (int bit = 0; bit < 2; ++bit) {
    PtNode* c = node->child(bit);
    if (c == nullptr || c->is_real()) continue;
    trie.SetOriginalHop(c, node->original_hop());
    UpdateSubtree(trie, c, recorder);
  }
  SetSelectedNextHop(trie, node, recorder);
  SetChildFibStatus(trie, node, recorder);
}

void RefreshUpward(FibTrie& trie, PtNode* node, ChangeRecorder& recorder) {
  for (PtNode* p = node; p != nullptr; p = p->parent()) {
    recorder.Visit(*p, TraversalPhase::kAncestors);
    const bool changed = SetSelectedNextHop(trie, p, recorder);
    SetChildFibStatus(trie, p, recorder);
    if (!changed) break;
  }
}

void UpdateAncestors(FibTrie& trie, PtNode* node, ChangeRecorder& recorder) {
  RefreshUpward(trie, node->parent(), recorder);
}

absl::StatusOr<UpdateResult> Announce(FibTrie& trie, const IpPrefix& prefix,
                                      NextHop hop,
                                      ChangeRecorder::VisitHook hook) {
  if (auto s = CheckUpdatable(trie, prefix); !s.ok()) return s;
  ChangeRecorder recorder(std::move(hook));
  UpdateResult result;

  auto found = trie.FindExact(prefix);
  if (!found.ok()) return found.status();
  PtNode* node = *found;

  if (node == nullptr) {
    auto inserted = trie.InsertStructural(prefix);
    if (!inserted.ok()) return inserted.status();
    node = inserted->node;
    trie.SetOriginalHop(node, hop);
    PtNode* parent = node->parent();
    if (parent->original_hop() != hop) {
      UpdateSubtree(trie, node, recorder);
      UpdateAncestors(trie, node, recorder);
    } else {
      // Same hop as the parent: nothing below or above can change. The new
      // node (and glue) only need their own fields filled in, which leaves
      // every pre-existing node as it was.
      SetSelectedNextHop(trie, node, recorder);
      SetChildFibStatus(trie, node, recorder);
      PtNode* top = node;
      if (inserted->glue != nullptr) {
        top = inserted->glue;
        SetSelectedNextHop(trie, top, recorder);
        SetChildFibStatus(trie, top, recorder);
      }
      SetChildFibStatus(trie, top->parent(), recorder);
    }
  } else {
    if (!node->is_real()) trie.SetType(node, NodeType::kReal);
    if (node->original_hop() != hop) {
      ChangeOriginalHop(trie, node, hop, recorder);
    }
  }
  if (prefix.is_default()) trie.set_has_default_route(true);

  result.changes = recorder.Finish();
  return result;
}

absl::StatusOr<UpdateResult> Withdraw(FibTrie& trie, const IpPrefix& prefix,
                                      ChangeRecorder::VisitHook hook) {
  if (auto s = CheckUpdatable(trie, prefix); !s.ok()) return s;
  ChangeRecorder recorder(std::move(hook));
  UpdateResult result;

  if (prefix.is_default()) {
    if (!trie.has_default_route()) {
      result.outcome = UpdateOutcome::kIgnoredWithdrawal;
      return result;
    }
    trie.set_has_default_route(false);
    if (trie.root()->original_hop() != NextHop::Drop()) {
      ChangeOriginalHop(trie, trie.root(), NextHop::Drop(), recorder);
    }
    result.changes = recorder.Finish();
    return result;
  }

  auto found = trie.FindExact(prefix);
  if (!found.ok()) return found.status();
  PtNode* node = *found;
  if (node == nullptr || !node->is_real()) {
    result.outcome = UpdateOutcome::kIgnoredWithdrawal;
    return result;
  }

  if (node->child_count() == 2) {
    // Stays as a branching node; O now comes from the nearest REAL ancestor.
    trie.SetType(node, NodeType::kFake);
    const NextHop derived = node->parent()->original_hop();
    if (node->original_hop() != derived) {
      ChangeOriginalHop(trie, node, derived, recorder);
    }
    result.changes = recorder.Finish();
    return result;
  }

  PtNode* parent = node->parent();
  const bool may_merge = node->is_leaf() && !parent->is_real();
  recorder.Touch(node);
  if (may_merge) recorder.Touch(parent);
  recorder.MarkRemoved(node);
  auto removed = trie.RemoveStructural(node);
  if (!removed.ok()) return removed.status();
  if (removed->merged_glue) recorder.MarkRemoved(parent);

  PtNode* survivor = removed->survivor;
  if (survivor != nullptr && !survivor->is_real() &&
      survivor->original_hop() != removed->parent->original_hop()) {
    trie.SetOriginalHop(survivor, removed->parent->original_hop());
    UpdateSubtree(trie, survivor, recorder);
  }
  RefreshUpward(trie, removed->parent, recorder);

  result.changes = recorder.Finish();
  return result;
}

absl::StatusOr<UpdateResult> Apply(FibTrie& trie, const RouteUpdate& update,
                                   ChangeRecorder::VisitHook hook) {
  switch (update.kind) {
    case RouteUpdate::Kind::kAnnounce:
      return Announce(trie, update.prefix, update.next_hop, std::move(hook));
    case RouteUpdate::Kind::kWithdraw:
      return Withdraw(trie, update.prefix, std::move(hook));
  }
  return absl::InvalidArgumentError("unknown update kind");
}

absl::StatusOr<FibTrie> BuildTrie(
    AddressFamily family,
    const std::vector<std::pair<IpPrefix, NextHop>>& entries) {
  FibTrie trie(family, NextHop::Drop());
  for (const auto& [prefix, hop] : entries) {
    if (prefix.family() != family) {
      return absl::InvalidArgumentError(absl::StrCat(
          "prefix ", prefix.ToString(), " is not in family ", family.name()));
    }
    if (prefix.is_default()) {
      if (trie.has_default_route()) {
        return absl::AlreadyExistsError("duplicate default route 0/0");
      }
      trie.set_has_default_route(true);
      trie.SetOriginalHop(trie.root(), hop);
      continue;
    }
    auto found = trie.FindExact(prefix);
    if (!found.ok()) return found.status();
    PtNode* node = *found;
    if (node != nullptr) {
      if (node->is_real()) {
        return absl::AlreadyExistsError(
            absl::StrCat("duplicate prefix ", prefix.ToString()));
      }
      trie.SetType(node, NodeType::kReal);
    } else {
      auto inserted = trie.InsertStructural(prefix);
      if (!inserted.ok()) return inserted.status();
      node = inserted->node;
    }
    trie.SetOriginalHop(node, hop);
  }
  return trie;
}

}  // namespace faqs
