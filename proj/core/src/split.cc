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

#include <string>
#include <vector>

#include "corefkit/corpus.h"
#include "corefkit/error.h"

namespace corefkit {

std::vector<Passage> split_passages(const Document& doc, const SplitConfig& cfg,
                                    std::vector<std::string>* warnings) {
  cfg.validate();
  if (doc.sentences.empty()) {
    throw Error(ErrorCode::kValidation, "cannot split empty document " + doc.doc_id);
  }

  struct Range {
    int first;
    int last;
    int tokens;
  };
  std::vector<Range> ranges;
  Range open{0, -1, 0};
  const int n = static_cast<int>(doc.sentences.size());
  for (int i = 0; i < n; ++i) {
    const int len = doc.sentences[static_cast<std::size_t>(i)].size();
    if (warnings != nullptr && len > 4 * cfg.target_tokens) {
      warnings->push_back("sentence " + doc.sentences[static_cast<std::size_t>(i)].sent_id +
                          " has " + std::to_string(len) + " tokens (> 4x target " +
                          std::to_string(cfg.target_tokens) + ")");
    }
    open.last = i;
    open.tokens += len;
    if (open.tokens >= cfg.target_tokens) {
      ranges.push_back(open);
      open = Range{i + 1, i, 0};
    }
  }
  if (open.last >= open.first) {
    if (open.tokens < cfg.min_tail_tokens && !ranges.empty()) {
      ranges.back().last = open.last;
      ranges.back().tokens += open.tokens;
    } else {
      ranges.push_back(open);
    }
  }

  std::vector<Passage> passages;
  passages.reserve(ranges.size());
  for (std::size_t k = 0; k < ranges.size(); ++k) {
    Passage p;
    p.passage_id = make_passage_id(doc.doc_id, static_cast<int>(k));
    p.doc_id = doc.doc_id;
    p.first_sentence = ranges[k].first;
    p.last_sentence = ranges[k].last;
    p.token_count = ranges[k].tokens;
    passages.push_back(std::move(p));
  }
  return passages;
}

}  // namespace corefkit
