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

#include "faqs/patricia.h"

#include <utility>

#include "absl/strings/str_cat.h"

namespace faqs {

FibTrie::FibTrie(AddressFamily family, NextHop default_hop) : family_(family) {
  root_ = Allocate(IpPrefix::Default(family), NodeType::kReal);
  root_->original_ = default_hop;
}

PtNode* FibTrie::Allocate(const IpPrefix& prefix, NodeType type) {
  PtNode* node;
  if (!free_list_.empty()) {
    node = free_list_.back();
    free_list_.pop_back();
  } else {
    node = &storage_.emplace_back(PtNode::Key{});
  }
  node->prefix_ = prefix;
  node->type_ = type;
  node->status_ = FibStatus::kNonFib;
  node->original_ = NextHop::Drop();
  node->selected_.reset();
  node->children_ = {nullptr, nullptr};
  node->parent_ = nullptr;
  ++node_count_;
  if (type == NodeType::kReal) ++real_count_;
  return node;
}

void FibTrie::Release(PtNode* node) {
  --node_count_;
  if (node->type_ == NodeType::kReal) --real_count_;
  if (node->status_ == FibStatus::kInFib) --in_fib_count_;
  node->children_ = {nullptr, nullptr};
  node->parent_ = nullptr;
  free_list_.push_back(node);
}

void FibTrie::Link(PtNode* parent, PtNode* child) {
  parent->children_[child->prefix_.bit(parent->length())] = child;
  child->parent_ = parent;
}

absl::StatusOr<PtNode*> FibTrie::FindExact(const IpPrefix& prefix) {
  auto found = std::as_const(*this).FindExact(prefix);
  if (!found.ok()) return found.status();
  return const_cast<PtNode*>(*found);
}

absl::StatusOr<const PtNode*> FibTrie::FindExact(const IpPrefix& prefix) const {
  if (prefix.family() != family_) {
    return absl::InvalidArgumentError(absl::StrCat(
        "prefix ", prefix.ToString(), " is not in family ", family_.name()));
  }
  const PtNode* n = root_;
  while (n != nullptr) {
    if (n->length() >= prefix.length()) {
      return n->prefix_ == prefix ? n : nullptr;
    }
    if (!n->prefix_.Contains(prefix)) return nullptr;
    n = n->children_[prefix.bit(n->length())];
  }
  return nullptr;
}

absl::StatusOr<FibTrie::InsertResult> FibTrie::InsertStructural(
    const IpPrefix& prefix) {
  if (prefix.family() != family_) {
    return absl::InvalidArgumentError(absl::StrCat(
        "prefix ", prefix.ToString(), " is not in family ", family_.name()));
  }
  if (prefix.is_default()) {
    return absl::AlreadyExistsError("0/0 is the trie root");
  }
  PtNode* n = root_;
  while (true) {
    const int bit = prefix.bit(n->length());
    PtNode* c = n->children_[bit];
    if (c == nullptr) {
      PtNode* node = Allocate(prefix, NodeType::kReal);
      Link(n, node);
      return InsertResult{node, nullptr};
    }
    if (c->prefix_ == prefix) {
      return absl::AlreadyExistsError(
          absl::StrCat("prefix ", prefix.ToString(), " already in trie"));
    }
    if (c->prefix_.Contains(prefix)) {
      n = c;
      continue;
    }
    PtNode* node = Allocate(prefix, NodeType::kReal);
    if (prefix.Contains(c->prefix_)) {
      // New node slots in between n and c.
      Link(n, node);
      Link(node, c);
      return InsertResult{node, nullptr};
    }
    const int split = prefix.CommonLength(c->prefix_);
    PtNode* glue = Allocate(
        IpPrefix::Truncate(family_, prefix.bits(), split), NodeType::kFake);
    glue->original_ = n->original_;
    Link(n, glue);
    Link(glue, node);
    Link(glue, c);
    return InsertResult{node, glue};
  }
}

absl::StatusOr<FibTrie::RemoveResult> FibTrie::RemoveStructural(PtNode* node) {
  if (node == nullptr) return absl::InvalidArgumentError("null node");
  if (node == root_) {
    return absl::FailedPreconditionError("the root node cannot be removed");
  }
  RemoveResult result;
  if (node->child_count() == 2) return result;

  PtNode* parent = node->parent_;
  const int slot = parent->children_[1] == node ? 1 : 0;
  PtNode* only = node->children_[0] != nullptr ? node->children_[0]
                                               : node->children_[1];
  result.removed = true;
  if (only != nullptr) {
    parent->children_[slot] = only;
    only->parent_ = parent;
    Release(node);
    result.survivor = only;
    result.parent = parent;
    return result;
  }

  parent->children_[slot] = nullptr;
  Release(node);
  if (parent->type_ == NodeType::kFake && parent->child_count() == 1) {
    PtNode* sibling = parent->children_[1 - slot];
    PtNode* grand = parent->parent_;
    const int gslot = grand->children_[1] == parent ? 1 : 0;
    grand->children_[gslot] = sibling;
    sibling->parent_ = grand;
    Release(parent);
    result.merged_glue = true;
    result.survivor = sibling;
    result.parent = grand;
    return result;
  }
  result.parent = parent;
  return result;
}

void FibTrie::SetType(PtNode* node, NodeType type) {
  if (node->type_ == type) return;
  if (type == NodeType::kReal) {
    ++real_count_;
  } else {
    --real_count_;
  }
  node->type_ = type;
}

void FibTrie::SetStatus(PtNode* node, FibStatus status) {
  if (node->status_ == status) return;
  if (status == FibStatus::kInFib) {
    ++in_fib_count_;
  } else {
    --in_fib_count_;
  }
  node->status_ = status;
}

absl::Status FibTrie::CheckInvariants() const {
  if (root_->parent_ != nullptr || !root_->prefix_.is_default() ||
      root_->type_ != NodeType::kReal) {
    return absl::InternalError("root must be a parentless REAL 0/0 node");
  }
  std::size_t nodes = 0, reals = 0, in_fib = 0;
  absl::Status status;
  ForEachNode([&](const PtNode& n) {
    ++nodes;
    if (n.is_real()) ++reals;
    if (n.in_fib()) ++in_fib;
    if (!status.ok()) return;
    if (n.prefix_.family() != family_) {
      status = absl::InternalError(
          absl::StrCat("node ", n.prefix_.ToString(), " has wrong family"));
      return;
    }
    if (n.type_ == NodeType::kFake && n.child_count() != 2) {
      status = absl::InternalError(absl::StrCat(
          "FAKE node ", n.prefix_.ToString(), " has ", n.child_count(),
          " children"));
      return;
    }
    for (int bit = 0; bit < 2; ++bit) {
      const PtNode* c = n.children_[bit];
      if (c == nullptr) continue;
      if (c->parent_ != &n) {
        status = absl::InternalError(absl::StrCat(
            "child ", c->prefix_.ToString(), " has a stale parent link"));
        return;
      }
      if (c->length() <= n.length() || !n.prefix_.Contains(c->prefix_)) {
        status = absl::InternalError(absl::StrCat(
            "child ", c->prefix_.ToString(), " does not extend ",
            n.prefix_.ToString()));
        return;
      }
      if (c->prefix_.bit(n.length()) != (bit == 1)) {
        status = absl::InternalError(absl::StrCat(
            "child ", c->prefix_.ToString(), " sits on the wrong side of ",
            n.prefix_.ToString()));
        return;
      }
    }
  });
  if (!status.ok()) return status;
  if (nodes != node_count_ || reals != real_count_ ||
      in_fib != in_fib_count_) {
    return absl::InternalError(absl::StrCat(
        "counter drift: nodes ", node_count_, "/", nodes, " real ",
        real_count_, "/", reals, " in_fib ", in_fib_count_, "/", in_fib));
  }
  return absl::OkStatus();
}

}  // namespace faqs
