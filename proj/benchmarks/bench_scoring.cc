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

#include "corefkit/scoring.h"

namespace corefkit {
namespace {

Clustering random_clustering(std::mt19937& rng, int n, int clusters, const std::string& who) {
  Clustering c{"p", who, std::vector<Cluster>(static_cast<std::size_t>(clusters))};
  for (int i = 0; i < n; ++i) {
    c.clusters[rng() % static_cast<unsigned>(clusters)].push_back("m" + std::to_string(i));
  }
  std::erase_if(c.clusters, [](const Cluster& x) { return x.empty(); });
  return c;
}

void BM_B3(benchmark::State& state) {
  std::mt19937 rng(1);
  const int n = static_cast<int>(state.range(0));
  const Clustering key = random_clustering(rng, n, n / 3 + 1, "key");
  const Clustering resp = random_clustering(rng, n, n / 3 + 1, "resp");
  for (auto _ : state) benchmark::DoNotOptimize(b3(key, resp, SingletonMode::kInclude));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_B3)->RangeMultiplier(4)->Range(16, 4096);

void BM_PassageAgreement(benchmark::State& state) {
  std::mt19937 rng(2);
  const int n = static_cast<int>(state.range(0));
  std::vector<Clustering> annotations;
  for (int a = 0; a < 5; ++a) annotations.push_back(random_clustering(rng, n, n / 3 + 1, "a" + std::to_string(a)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(passage_agreement(annotations, SingletonMode::kExclude));
  }
}
BENCHMARK(BM_PassageAgreement)->Arg(30)->Arg(120);

}  // namespace
}  // namespace corefkit

BENCHMARK_MAIN();
