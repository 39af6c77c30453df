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

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "corefkit/annotation.h"
#include "corefkit/corpus.h"
#include "corefkit/json_io.h"
#include "corefkit/mention_eval.h"
#include "corefkit/scoring.h"

// Whole-corpus operations behind the CLI subcommands and the service's
// report endpoint. Each one composes the per-passage module operations.
namespace corefkit {

struct NamedText {
  std::string name;  // default document id
  std::string text;
};

// Parses every input and tiles each document into passages with `cfg`.
Corpus ingest_conllu(const std::vector<NamedText>& inputs, const SplitConfig& cfg,
                     std::vector<std::string>* warnings = nullptr);

// A .conllu file or a directory of them (sorted by name); file stems become
// default document ids.
std::vector<NamedText> read_conllu_inputs(const std::filesystem::path& path);

// Fills the mentions of every passage.
void detect_corpus(Corpus& corpus);

// Re-tiles every document; mentions already present move to the passage
// that now holds their sentence and get new ids.
void resplit_corpus(Corpus& corpus, const SplitConfig& cfg,
                    std::vector<std::string>* warnings = nullptr);

// doc_id -> gold mentions. File format:
//   {"documents": [{"doc_id": "d1", "mentions": [{"span": [s, e], "head": h}]}]}
// with "head" optional.
using GoldMentions = std::map<std::string, MentionSet>;
GoldMentions load_gold_mentions(const std::filesystem::path& path);

// Compares each document's detected mentions (all passages) with gold;
// documents without gold entries are skipped.
CorpusDetectorEval eval_corpus_detector(const Corpus& corpus, GoldMentions gold);
Json detector_report_json(const CorpusDetectorEval& eval);

// Mention ids of a passage in span order.
std::vector<std::string> passage_mention_ids(const Passage& passage);

// Aggregates the annotations of each passage at threshold `tau`. The mention
// universe comes from `corpus` when given, else from the annotations.
std::vector<AggregateClustering> aggregate_annotations(const std::vector<Clustering>& annotations,
                                                       int tau, const Corpus* corpus = nullptr);

struct PassageScore {
  std::string passage_id;
  B3Score score;
};

struct ScoreReport {
  SingletonMode singleton_mode = SingletonMode::kInclude;
  std::optional<int> tau;
  std::vector<PassageScore> passages;
  B3Score overall;  // pooled over the mentions of all scored passages
  std::vector<std::string> warnings;
};

// Scores responses against keys passage by passage (key = gold). A response
// passage without a key is an error; key passages without a response are
// skipped with a warning.
ScoreReport score_clusterings(const std::vector<Clustering>& key,
                              const std::vector<Clustering>& response, SingletonMode mode,
                              std::optional<int> tau = std::nullopt);
Json score_report_json(const ScoreReport& report);
// Per-passage P/R/F1 table followed by the overall row.
std::string render_score_table(const ScoreReport& report);

struct SweepRow {
  int tau = 0;
  B3Score score;
};

// Aggregate-vs-gold B3 for tau = 1..N, N being the smallest number of
// annotations on any annotated passage.
std::vector<SweepRow> tau_sweep(const std::vector<Clustering>& gold,
                                const std::vector<Clustering>& annotations, SingletonMode mode,
                                const Corpus* corpus = nullptr);
Json sweep_json(const std::vector<SweepRow>& rows, SingletonMode mode);
std::string render_sweep_csv(const std::vector<SweepRow>& rows);

struct IaaResult {
  SingletonMode singleton_mode = SingletonMode::kExclude;
  std::vector<IAAReport> groups;
  std::vector<std::string> warnings;
};

// Pairwise IAA grouped by document domain (from `corpus`) or as one "all"
// group when no corpus is given.
IaaResult iaa_report(const std::vector<Clustering>& annotations, SingletonMode mode,
                     const Corpus* corpus = nullptr);
Json iaa_json(const IaaResult& result);
std::string render_iaa_table(const IaaResult& result);

// Annotations that cover the passage's mention set exactly; throws
// Error(kValidation) otherwise.
void validate_against_corpus(const Clustering& clustering, const Corpus& corpus);

}  // namespace corefkit
