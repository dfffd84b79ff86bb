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

#include "synthetic.h"

#include <random>

#include "absl/container/flat_hash_map.h"
#include "absl/container/flat_hash_set.h"

namespace faqs::tools {
namespace {

const AddressFamily kV4 = AddressFamily::Ipv4();

IpPrefix RandomUnder(std::mt19937_64& rng, const IpPrefix& block, int length) {
  AddressBits bits = block.bits();
  bits.hi |= rng() & (~std::uint64_t{0} >> block.length());
  return IpPrefix::Truncate(kV4, bits, length);
}

// Skewed towards a few popular neighbors, as in real tables.
NextHop RandomHop(std::mt19937_64& rng, std::uint32_t hops) {
  std::geometric_distribution<std::uint32_t> geo(0.35);
  return NextHop{1 + geo(rng) % hops};
}

int MoreSpecificLength(std::mt19937_64& rng, int parent_length) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (u(rng) < 0.6 && parent_length < 24) return 24;
  const int hi = parent_length < 24 ? 24 : 32;
  std::uniform_int_distribution<int> len(parent_length + 1, hi);
  return len(rng);
}

}  // namespace

std::vector<RibEntry> SyntheticIpv4Table(std::size_t entries,
                                         std::uint32_t hops,
                                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> block_len(8, 20);

  std::vector<RibEntry> out;
  std::vector<RibEntry> blocks;
  absl::flat_hash_set<IpPrefix> seen;
  out.reserve(entries);
  while (out.size() < entries) {
    RibEntry e{IpPrefix::Default(kV4), NextHop{}};
    if (blocks.empty() || u(rng) < 0.12) {
      const IpPrefix p =
          RandomUnder(rng, IpPrefix::Default(kV4), block_len(rng));
      e = {p, RandomHop(rng, hops)};
      if (!seen.insert(p).second) continue;
      blocks.push_back(e);
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, blocks.size() - 1);
      const RibEntry& block = blocks[pick(rng)];
      const IpPrefix p = RandomUnder(
          rng, block.first, MoreSpecificLength(rng, block.first.length()));
      if (!seen.insert(p).second) continue;
      e = {p, u(rng) < 0.7 ? block.second : RandomHop(rng, hops)};
    }
    out.push_back(e);
  }
  return out;
}

std::vector<RouteUpdate> SyntheticIpv4Updates(
    const std::vector<RibEntry>& table, std::size_t updates,
    std::uint32_t hops, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  // Present prefixes in a vector for O(1) random picks.
  std::vector<IpPrefix> present;
  absl::flat_hash_map<IpPrefix, std::size_t> slot;
  std::vector<IpPrefix> withdrawn;
  for (const auto& [p, hop] : table) {
    slot[p] = present.size();
    present.push_back(p);
  }
  auto pick = [&](const std::vector<IpPrefix>& v) -> const IpPrefix& {
    std::uniform_int_distribution<std::size_t> d(0, v.size() - 1);
    return v[d(rng)];
  };
  auto add = [&](const IpPrefix& p) {
    if (slot.try_emplace(p, present.size()).second) present.push_back(p);
  };
  auto remove = [&](const IpPrefix& p) {
    const std::size_t i = slot[p];
    slot[present.back()] = i;
    std::swap(present[i], present.back());
    present.pop_back();
    slot.erase(p);
  };

  std::vector<RouteUpdate> out;
  out.reserve(updates);
  while (out.size() < updates) {
    const double r = u(rng);
    if (!present.empty() && r < 0.5) {
      out.push_back(RouteUpdate::Announce(pick(present), RandomHop(rng, hops)));
    } else if (!present.empty() && r < 0.75) {
      const IpPrefix p = pick(present);
      remove(p);
      withdrawn.push_back(p);
      out.push_back(RouteUpdate::Withdraw(p));
    } else {
      IpPrefix p = IpPrefix::Default(kV4);
      if (!withdrawn.empty() && u(rng) < 0.5) {
        std::uniform_int_distribution<std::size_t> d(0, withdrawn.size() - 1);
        const std::size_t i = d(rng);
        p = withdrawn[i];
        withdrawn[i] = withdrawn.back();
        withdrawn.pop_back();
      } else if (!present.empty()) {
        const IpPrefix& base = pick(present);
        if (base.length() >= 32) continue;
        p = RandomUnder(rng, base, MoreSpecificLength(rng, base.length()));
      } else {
        p = RandomUnder(rng, IpPrefix::Default(kV4), 24);
      }
      add(p);
      out.push_back(RouteUpdate::Announce(p, RandomHop(rng, hops)));
    }
  }
  return out;
}

}  // namespace faqs::tools
