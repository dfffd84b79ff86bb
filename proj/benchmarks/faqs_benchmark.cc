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
#include <cstddef>
#include <vector>

#include "benchmark/benchmark.h"
#include "faqs/aggregator.h"
#include "faqs/verify.h"
#include "synthetic.h"

namespace faqs {
namespace {

constexpr std::uint32_t kHops = 32;

void BM_BuildTrie(benchmark::State& state) {
  const auto table =
      tools::SyntheticIpv4Table(static_cast<std::size_t>(state.range(0)), kHops, 1);
  for (auto _ : state) {
    auto trie = BuildTrie(AddressFamily::Ipv4(), table);
    benchmark::DoNotOptimize(trie);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildTrie)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_StaticAggregate(benchmark::State& state) {
  const auto table =
      tools::SyntheticIpv4Table(static_cast<std::size_t>(state.range(0)), kHops, 1);
  for (auto _ : state) {
    state.PauseTiming();
    auto trie = BuildTrie(AddressFamily::Ipv4(), table).value();
    state.ResumeTiming();
    benchmark::DoNotOptimize(StaticAggregate(trie));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_StaticAggregate)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_ApplyUpdates(benchmark::State& state) {
  const auto table =
      tools::SyntheticIpv4Table(static_cast<std::size_t>(state.range(0)), kHops, 1);
  const auto updates = tools::SyntheticIpv4Updates(table, 200000, kHops, 2);
  auto trie = BuildTrie(AddressFamily::Ipv4(), table).value();
  StaticAggregate(trie);
  std::size_t i = 0;
  std::size_t changes = 0;
  for (auto _ : state) {
    if (i == updates.size()) {
      // Restart the trace from a fresh table so updates stay meaningful.
      state.PauseTiming();
      trie = BuildTrie(AddressFamily::Ipv4(), table).value();
      StaticAggregate(trie);
      i = 0;
      state.ResumeTiming();
    }
    auto r = Apply(trie, updates[i++]);
    changes += r->burst();
  }
  state.SetItemsProcessed(state.iterations());
  state.counters["changes_per_update"] = benchmark::Counter(
      static_cast<double>(changes) / static_cast<double>(state.iterations()));
}
BENCHMARK(BM_ApplyUpdates)->Arg(10000)->Arg(100000);

void BM_CheckEquivalence(benchmark::State& state) {
  const auto table =
      tools::SyntheticIpv4Table(static_cast<std::size_t>(state.range(0)), kHops, 1);
  auto trie = BuildTrie(AddressFamily::Ipv4(), table).value();
  StaticAggregate(trie);
  for (auto _ : state) {
    benchmark::DoNotOptimize(CheckEquivalence(trie).ok);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CheckEquivalence)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace faqs

BENCHMARK_MAIN();
