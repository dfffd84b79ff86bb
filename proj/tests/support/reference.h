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
// Independent reference models used as test oracles. None of this shares
// code with the engine beyond the prefix value type.

#ifndef FAQS_TESTS_SUPPORT_REFERENCE_H_
#define FAQS_TESTS_SUPPORT_REFERENCE_H_

#include <cstdint>
#include <vector>

#include "faqs/aggregator.h"
#include "support/test_util.h"

namespace faqs::testing {

// Longest-prefix match by linear scan. No covering entry means drop.
NextHop ReferenceLpm(const Table& table, const IpAddress& addr);

// Hop of every address of a toy family, by per-address linear scan.
std::vector<NextHop> ReferenceForwarding(AddressFamily family,
                                         const Table& table);

// Aggregated table for `original`. The path-compressed trie is derived
// top down from the prefix set (no incremental insertion), then hops are
// selected recursively. A missing 0/0 is an implicit drop route. The
// result always holds 0/0.
Table ReferenceAggregate(AddressFamily family, const Table& original);

// The map edit that turns `before` into `after`, sorted by prefix.
ChangeSet ReferenceDiff(const Table& before, const Table& after);

// Bit i (MSB first) of a dotted-quad address, via a 32-bit integer.
bool Ipv4Bit(std::uint32_t address, int i);
std::uint32_t Ipv4(std::uint8_t a, std::uint8_t b, std::uint8_t c,
                   std::uint8_t d);

}  // namespace faqs::testing

#endif  // FAQS_TESTS_SUPPORT_REFERENCE_H_
