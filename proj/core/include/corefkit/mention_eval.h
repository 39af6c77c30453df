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

#include <string>
#include <vector>

#include "corefkit/corpus.h"

namespace corefkit {

// Headword-based comparison of a detected mention set with a gold one.
struct DetectorEval {
  double recall = 0.0;
  double precision = 0.0;
  double density_pred = 0.0;  // mentions per token
  double density_gold = 0.0;
  int matched = 0;
  int pred_total = 0;
  int gold_total = 0;
  int token_count = 0;
  // Set when the corresponding denominator is zero; the value is then 1.0.
  bool recall_undefined = false;
  bool precision_undefined = false;
};

// Mentions match when their head offsets are equal. Matching is one-to-one:
// a head occurring p times in `pred` and g times in `gold` yields min(p, g)
// matches. Densities divide by the document's token count.
DetectorEval eval_detector(const MentionSet& pred, const MentionSet& gold,
                           const Document& doc);

// Same computation from head counts and a token count, used to pool
// documents into a corpus-level figure.
DetectorEval eval_from_counts(int matched, int pred_total, int gold_total, int token_count);

struct DocumentEval {
  std::string doc_id;
  DetectorEval eval;
};

struct CorpusDetectorEval {
  DetectorEval overall;  // pooled counts over all documents
  std::vector<DocumentEval> documents;
};

// Gold mentions whose head is unknown (head < 0) get head_of their span.
void fill_gold_heads(MentionSet& gold, const Document& doc);

}  // namespace corefkit
