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

// Seeded IPv4 workloads with a routing-table-like shape: covering blocks
// between /8 and /20, most more-specifics at /24, and more-specifics that
// usually share the hop of their covering block.

#ifndef FAQS_TOOLS_SYNTHETIC_H_
#define FAQS_TOOLS_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "faqs/aggregator.h"
#include "faqs/io.h"

namespace faqs::tools {

std::vector<RibEntry> SyntheticIpv4Table(std::size_t entries,
                                         std::uint32_t hops,
                                         std::uint64_t seed);

// Mix: 50% hop changes on present routes, 25% withdrawals, 25%
// announcements of new or previously withdrawn prefixes.
std::vector<RouteUpdate> SyntheticIpv4Updates(
    const std::vector<RibEntry>& table, std::size_t updates,
    std::uint32_t hops, std::uint64_t seed);

}  // namespace faqs::tools

#endif  // FAQS_TOOLS_SYNTHETIC_H_
