// Copyright 2026 The corefkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "corefkit/annotation.h"

namespace corefkit {
namespace {

std::vector<Clustering> random_annotations(int n, int annotators) {
  std::mt19937 rng(3);
  std::vector<Clustering> out;
  for (int a = 0; a < annotators; ++a) {
    Clustering c{"p", "a" + std::to_string(a), std::vector<Cluster>(static_cast<std::size_t>(n / 3 + 1))};
    for (int i = 0; i < n; ++i) {
      c.clusters[rng() % c.clusters.size()].push_back("m" + std::to_string(i));
    }
    std::erase_if(c.clusters, [](const Cluster& x) { return x.empty(); });
    out.push_back(std::move(c));
  }
  return out;
}

void BM_CountVotes(benchmark::State& state) {
  const auto annotations = random_annotations(static_cast<int>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(count_votes(annotations));
}
BENCHMARK(BM_CountVotes)->Arg(30)->Arg(120)->Arg(480);

void BM_Aggregate(benchmark::State& state) {
  const auto annotations = random_annotations(static_cast<int>(state.range(0)), 5);
  const VoteMatrix votes = count_votes(annotations);
  const std::vector<std::string> ids = annotations[0].mention_ids();
  for (auto _ : state) benchmark::DoNotOptimize(aggregate(votes, AggregationConfig{3}, ids));
}
BENCHMARK(BM_Aggregate)->Arg(30)->Arg(120)->Arg(480);

}  // namespace
}  // namespace corefkit

BENCHMARK_MAIN();
