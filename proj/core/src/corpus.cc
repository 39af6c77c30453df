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

#include "corefkit/corpus.h"

#include <algorithm>
#include <map>
#include <set>

#include "corefkit/error.h"

namespace corefkit {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "parse_error";
    case ErrorCode::kValidation: return "validation_error";
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kNotFound: return "not_found";
    case ErrorCode::kConflict: return "conflict";
    case ErrorCode::kUnauthorized: return "unauthorized";
    case ErrorCode::kForbidden: return "forbidden";
    case ErrorCode::kIo: return "io_error";
  }
  return "unknown";
}

int Document::token_count() const {
  int n = 0;
  for (const Sentence& s : sentences) n += s.size();
  return n;
}

int Document::sentence_of_offset(int offset) const {
  // Sentences are ordered by offset; binary search on the first offset.
  auto it = std::upper_bound(
      sentences.begin(), sentences.end(), offset,
      [](int off, const Sentence& s) { return off < s.first_offset(); });
  if (it == sentences.begin()) return -1;
  --it;
  if (!it->contains_offset(offset)) return -1;
  return static_cast<int>(it - sentences.begin());
}

void sort_mentions(MentionSet& mentions) {
  std::sort(mentions.begin(), mentions.end(),
            [](const Mention& a, const Mention& b) {
              if (a.start != b.start) return a.start < b.start;
              return a.end > b.end;
            });
}

std::string make_mention_id(std::string_view passage_id, int start, int end) {
  std::string id(passage_id);
  id += ':';
  id += std::to_string(start);
  id += '-';
  id += std::to_string(end);
  return id;
}

std::string make_passage_id(std::string_view doc_id, int ordinal) {
  return std::string(doc_id) + ":p" + std::to_string(ordinal);
}

void SplitConfig::validate() const {
  if (min_tail_tokens <= 0 || target_tokens <= min_tail_tokens) {
    throw Error(ErrorCode::kInvalidArgument,
                "split config requires target_tokens > min_tail_tokens > 0 (got " +
                    std::to_string(target_tokens) + ", " +
                    std::to_string(min_tail_tokens) + ")");
  }
}

const Document& Corpus::document(std::string_view doc_id) const {
  for (const Document& d : documents) {
    if (d.doc_id == doc_id) return d;
  }
  throw Error(ErrorCode::kNotFound, "unknown document " + std::string(doc_id));
}

const Passage* Corpus::find_passage(std::string_view passage_id) const {
  for (const Passage& p : passages) {
    if (p.passage_id == passage_id) return &p;
  }
  return nullptr;
}

const Passage& Corpus::passage(std::string_view passage_id) const {
  const Passage* p = find_passage(passage_id);
  if (p == nullptr) {
    throw Error(ErrorCode::kNotFound, "unknown passage " + std::string(passage_id));
  }
  return *p;
}

void validate_corpus(const Corpus& corpus) {
  std::map<std::string, std::vector<const Passage*>> by_doc;
  for (const Passage& p : corpus.passages) by_doc[p.doc_id].push_back(&p);

  std::set<std::string> doc_ids;
  for (const Document& doc : corpus.documents) {
    if (!doc_ids.insert(doc.doc_id).second) {
      throw Error(ErrorCode::kValidation, "duplicate document id " + doc.doc_id);
    }
    int offset = 0;
    for (const Sentence& s : doc.sentences) {
      validate_sentence(s);
      for (const Token& t : s.tokens) {
        if (t.doc_offset != offset++) {
          throw Error(ErrorCode::kValidation,
                      "non-consecutive doc_offset in " + doc.doc_id + " sentence " + s.sent_id);
        }
      }
    }
    auto it = by_doc.find(doc.doc_id);
    if (it == by_doc.end()) continue;
    int next = 0;
    for (const Passage* p : it->second) {
      if (p->first_sentence != next || p->last_sentence < p->first_sentence ||
          p->last_sentence >= static_cast<int>(doc.sentences.size())) {
        throw Error(ErrorCode::kValidation,
                    "passage " + p->passage_id + " breaks the sentence tiling of " + doc.doc_id);
      }
      int tokens = 0;
      for (int i = p->first_sentence; i <= p->last_sentence; ++i) {
        tokens += doc.sentences[static_cast<std::size_t>(i)].size();
      }
      if (tokens != p->token_count) {
        throw Error(ErrorCode::kValidation, "passage " + p->passage_id + " token_count " +
                                                std::to_string(p->token_count) + " != " +
                                                std::to_string(tokens));
      }
      const int lo = doc.sentences[static_cast<std::size_t>(p->first_sentence)].first_offset();
      const int hi = doc.sentences[static_cast<std::size_t>(p->last_sentence)].last_offset();
      std::set<std::pair<int, int>> spans;
      std::set<std::string> ids;
      for (const Mention& m : p->mentions) {
        const int s = doc.sentence_of_offset(m.start);
        const bool ok = m.start >= lo && m.end <= hi && m.start <= m.head && m.head <= m.end &&
                        s >= 0 && doc.sentences[static_cast<std::size_t>(s)].contains_offset(m.end);
        if (!ok) {
          throw Error(ErrorCode::kValidation, "invalid mention " + m.mention_id + " in passage " +
                                                  p->passage_id);
        }
        if (!spans.emplace(m.start, m.end).second || !ids.insert(m.mention_id).second) {
          throw Error(ErrorCode::kValidation,
                      "duplicate mention " + m.mention_id + " in passage " + p->passage_id);
        }
      }
      next = p->last_sentence + 1;
    }
    if (next != static_cast<int>(doc.sentences.size())) {
      throw Error(ErrorCode::kValidation, "passages do not cover document " + doc.doc_id);
    }
    by_doc.erase(it);
  }
  if (!by_doc.empty()) {
    throw Error(ErrorCode::kValidation,
                "passage refers to unknown document " + by_doc.begin()->first);
  }
}

}  // namespace corefkit
