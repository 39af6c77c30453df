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

#include "corefkit/mention_eval.h"

#include <algorithm>
#include <map>

#include "corefkit/error.h"
#include "corefkit/mentions.h"

namespace corefkit {

DetectorEval eval_from_counts(int matched, int pred_total, int gold_total, int token_count) {
  DetectorEval e;
  e.matched = matched;
  e.pred_total = pred_total;
  e.gold_total = gold_total;
  e.token_count = token_count;
  if (gold_total == 0) {
    e.recall = 1.0;
    e.recall_undefined = true;
  } else {
    e.recall = static_cast<double>(matched) / gold_total;
  }
  if (pred_total == 0) {
    e.precision = 1.0;
    e.precision_undefined = true;
  } else {
    e.precision = static_cast<double>(matched) / pred_total;
  }
  if (token_count > 0) {
    e.density_pred = static_cast<double>(pred_total) / token_count;
    e.density_gold = static_cast<double>(gold_total) / token_count;
  }
  return e;
}

DetectorEval eval_detector(const MentionSet& pred, const MentionSet& gold,
                           const Document& doc) {
  std::map<int, int> pred_heads;
  std::map<int, int> gold_heads;
  for (const Mention& m : pred) ++pred_heads[m.head];
  for (const Mention& m : gold) ++gold_heads[m.head];
  int matched = 0;
  for (const auto& [head, count] : pred_heads) {
    auto it = gold_heads.find(head);
    if (it != gold_heads.end()) matched += std::min(count, it->second);
  }
  return eval_from_counts(matched, static_cast<int>(pred.size()),
                          static_cast<int>(gold.size()), doc.token_count());
}

void fill_gold_heads(MentionSet& gold, const Document& doc) {
  for (Mention& m : gold) {
    if (m.head >= 0) continue;
    const int s = doc.sentence_of_offset(m.start);
    if (s < 0 || !doc.sentences[static_cast<std::size_t>(s)].contains_offset(m.end)) {
      throw Error(ErrorCode::kValidation,
                  "gold mention [" + std::to_string(m.start) + "," + std::to_string(m.end) +
                      "] does not lie within one sentence of " + doc.doc_id);
    }
    m.head = head_of(Span{m.start, m.end}, doc.sentences[static_cast<std::size_t>(s)]);
  }
}

}  // namespace corefkit
