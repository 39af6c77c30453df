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
#include <string>

#include "corefkit/mentions.h"
#include "corefkit/pipeline.h"

namespace corefkit {
namespace {

// One document of random shallow trees, about `tokens` tokens long.
std::string random_conllu(int tokens) {
  static const char* kUpos[] = {"NOUN", "PROPN", "PRON", "DET", "ADJ", "VERB", "ADP"};
  static const char* kDeprel[] = {"obj", "nsubj", "det", "amod", "compound", "nmod", "conj"};
  std::mt19937 rng(4);
  std::string out = "# newdoc id = bench\n";
  for (int emitted = 0, sent = 0; emitted < tokens; ++sent) {
    const int len = 5 + static_cast<int>(rng() % 30);
    out += "# sent_id = bench-" + std::to_string(sent) + "\n";
    for (int i = 1; i <= len; ++i) {
      const int head = i == 1 ? 0 : 1 + static_cast<int>(rng() % static_cast<unsigned>(i - 1));
      out += std::to_string(i) + "\tw\tw\t" + kUpos[rng() % 7] + "\t_\t_\t" + std::to_string(head) +
             "\t" + (head == 0 ? "root" : kDeprel[rng() % 7]) + "\t_\t_\n";
    }
    out += "\n";
    emitted += len;
  }
  return out;
}

void BM_DetectCorpus(benchmark::State& state) {
  const Corpus base = ingest_conllu({{"bench", random_conllu(static_cast<int>(state.range(0)))}},
                                    SplitConfig{});
  for (auto _ : state) {
    Corpus c = base;
    detect_corpus(c);
    benchmark::DoNotOptimize(c.passages.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DetectCorpus)->Arg(1000)->Arg(10000);

void BM_IngestConllu(benchmark::State& state) {
  const std::string text = random_conllu(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ingest_conllu({{"bench", text}}, SplitConfig{}));
  state.SetBytesProcessed(state.iterations() * static_cast<int64_t>(text.size()));
}
BENCHMARK(BM_IngestConllu)->Arg(10000);

}  // namespace
}  // namespace corefkit

BENCHMARK_MAIN();
