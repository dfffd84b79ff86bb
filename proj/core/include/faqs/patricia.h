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

#ifndef FAQS_PATRICIA_H_
#define FAQS_PATRICIA_H_

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <ostream>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "faqs/prefix.h"

namespace faqs {

// Opaque next-hop identifier. Zero is reserved for "drop".
struct NextHop {
  std::uint32_t id = 0;

  static constexpr NextHop Drop() { return NextHop{0}; }

  friend constexpr auto operator<=>(NextHop, NextHop) = default;
  friend std::ostream& operator<<(std::ostream& os, NextHop h) {
    return os << h.id;
  }
};

// REAL nodes carry an entry of the original FIB; FAKE nodes only exist to
// branch.
enum class NodeType : std::uint8_t { kReal, kFake };
enum class FibStatus : std::uint8_t { kNonFib, kInFib };

class FibTrie;

class PtNode {
 public:
  // Only FibTrie can mint nodes.
  class Key {
    friend class FibTrie;
    Key() = default;
  };
  explicit PtNode(Key) : prefix_(IpPrefix::Default(AddressFamily::Ipv4())) {}
  PtNode(const PtNode&) = delete;
  PtNode& operator=(const PtNode&) = delete;

  const IpPrefix& prefix() const { return prefix_; }
  int length() const { return prefix_.length(); }

  NodeType type() const { return type_; }
  bool is_real() const { return type_ == NodeType::kReal; }

  // For FAKE nodes this is the hop derived from the nearest REAL ancestor.
  NextHop original_hop() const { return original_; }
  // Unset until the node has taken part in an aggregation pass.
  std::optional<NextHop> selected_hop() const { return selected_; }
  FibStatus status() const { return status_; }
  bool in_fib() const { return status_ == FibStatus::kInFib; }

  PtNode* child(int bit) const { return children_[bit]; }
  PtNode* left() const { return children_[0]; }
  PtNode* right() const { return children_[1]; }
  PtNode* parent() const { return parent_; }
  int child_count() const {
    return (children_[0] != nullptr) + (children_[1] != nullptr);
  }
  bool is_leaf() const { return child_count() == 0; }

 private:
  friend class FibTrie;

  IpPrefix prefix_;
  NodeType type_ = NodeType::kFake;
  FibStatus status_ = FibStatus::kNonFib;
  NextHop original_;
  std::optional<NextHop> selected_;
  std::array<PtNode*, 2> children_{nullptr, nullptr};
  PtNode* parent_ = nullptr;
};

// Path-compressed binary trie rooted at 0/0. Children are indexed by the
// branching bit: bit_at(child, len(parent)). Every FAKE node has exactly two
// children. The root is REAL, never removed, and holds the default hop.
//
// Single writer. Node pointers stay valid until the node is removed.
class FibTrie {
 public:
  FibTrie(AddressFamily family, NextHop default_hop);
  FibTrie(FibTrie&&) = default;
  FibTrie& operator=(FibTrie&&) = default;
  FibTrie(const FibTrie&) = delete;
  FibTrie& operator=(const FibTrie&) = delete;

  AddressFamily family() const { return family_; }
  PtNode* root() { return root_; }
  const PtNode* root() const { return root_; }

  std::size_t node_count() const { return node_count_; }
  std::size_t real_count() const { return real_count_; }
  std::size_t in_fib_count() const { return in_fib_count_; }

  // Whether 0/0 was declared by the input rather than implied as a drop.
  bool has_default_route() const { return has_default_route_; }
  void set_has_default_route(bool v) { has_default_route_ = v; }

  // Set once static aggregation has run; incremental updates require it.
  bool aggregated() const { return aggregated_; }
  void set_aggregated(bool v) { aggregated_ = v; }

  // Exact-match lookup. Returns nullptr when absent.
  absl::StatusOr<PtNode*> FindExact(const IpPrefix& prefix);
  absl::StatusOr<const PtNode*> FindExact(const IpPrefix& prefix) const;

  struct InsertResult {
    PtNode* node = nullptr;
    PtNode* glue = nullptr;  // FAKE branching node created alongside, if any
  };
  // Creates a REAL node for `prefix` (hop Drop, status NON_FIB, selected hop
  // unset). A glue node, when needed, copies its parent's original hop.
  absl::StatusOr<InsertResult> InsertStructural(const IpPrefix& prefix);

  struct RemoveResult {
    bool removed = false;
    // Child that took the removed node's (or merged glue's) place.
    PtNode* survivor = nullptr;
    // Parent of the region that changed shape. Always set when removed.
    PtNode* parent = nullptr;
    bool merged_glue = false;
  };
  // Unlinks a node with at most one child. When that leaves a FAKE parent
  // with a single child, the parent is merged away as well. A node with two
  // children is left untouched and `removed` is false.
  absl::StatusOr<RemoveResult> RemoveStructural(PtNode* node);

  // Field mutators. These keep the population counters in sync.
  void SetType(PtNode* node, NodeType type);
  void SetOriginalHop(PtNode* node, NextHop hop) { node->original_ = hop; }
  void SetSelectedHop(PtNode* node, std::optional<NextHop> hop) {
    node->selected_ = hop;
  }
  void SetStatus(PtNode* node, FibStatus status);

  // Pre-order walk, left before right.
  template <typename Fn>
  void ForEachNode(Fn&& fn) const {
    std::vector<const PtNode*> stack{root_};
    while (!stack.empty()) {
      const PtNode* n = stack.back();
      stack.pop_back();
      fn(*n);
      if (n->children_[1] != nullptr) stack.push_back(n->children_[1]);
      if (n->children_[0] != nullptr) stack.push_back(n->children_[0]);
    }
  }

  // Full structural audit: parent/child links, branching bits, FAKE nodes
  // with two children, root shape, and the cached counters.
  absl::Status CheckInvariants() const;

  // Rough per-node footprint used for memory estimates.
  static constexpr std::size_t kNodeBytes = sizeof(PtNode);

 private:
  PtNode* Allocate(const IpPrefix& prefix, NodeType type);
  void Release(PtNode* node);
  void Link(PtNode* parent, PtNode* child);

  AddressFamily family_;
  std::deque<PtNode> storage_;
  std::vector<PtNode*> free_list_;
  PtNode* root_ = nullptr;
  std::size_t node_count_ = 0;
  std::size_t real_count_ = 0;
  std::size_t in_fib_count_ = 0;
  bool has_default_route_ = false;
  bool aggregated_ = false;
};

}  // namespace faqs

#endif  // FAQS_PATRICIA_H_
