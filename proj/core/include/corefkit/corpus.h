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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace corefkit {

// One syntactic word of a dependency-parsed sentence. `index` and `head`
// follow CoNLL-U numbering (1-based, head 0 = root); `doc_offset` is the
// 0-based position of the word in its document.
struct Token {
  int index = 0;
  std::string surface;
  std::string lemma;
  std::string upos;
  int head = 0;
  std::string deprel;
  int doc_offset = 0;

  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::string sent_id;
  std::vector<Token> tokens;

  int size() const { return static_cast<int>(tokens.size()); }
  int first_offset() const { return tokens.empty() ? 0 : tokens.front().doc_offset; }
  int last_offset() const { return tokens.empty() ? -1 : tokens.back().doc_offset; }
  bool contains_offset(int offset) const {
    return !tokens.empty() && offset >= first_offset() && offset <= last_offset();
  }
  // Token by document offset. Precondition: contains_offset(offset).
  const Token& at_offset(int offset) const {
    return tokens[static_cast<std::size_t>(offset - first_offset())];
  }
  // Token by CoNLL-U index (1-based).
  const Token& at_index(int index) const {
    return tokens[static_cast<std::size_t>(index - 1)];
  }

  bool operator==(const Sentence&) const = default;
};

struct Document {
  std::string doc_id;
  std::string domain = "unknown";
  std::vector<Sentence> sentences;

  int token_count() const;
  // Index of the sentence holding `offset`, or -1.
  int sentence_of_offset(int offset) const;

  bool operator==(const Document&) const = default;
};

// A token span with its headword; `start`, `end` and `head` are document
// offsets and the span is inclusive on both ends.
struct Mention {
  std::string mention_id;
  std::string passage_id;
  int start = 0;
  int end = 0;
  int head = 0;
  // Full coordinated phrase ("John, Bob, and Mary"). Such a mention shares
  // its head with the first conjunct and does not absorb it during
  // same-head deduplication.
  bool coordination = false;

  int length() const { return end - start + 1; }
  bool same_span(const Mention& other) const {
    return start == other.start && end == other.end;
  }
  bool operator==(const Mention&) const = default;
};

// Mentions ordered by (start, -(end - start)).
using MentionSet = std::vector<Mention>;

// Canonical ordering of a mention set.
void sort_mentions(MentionSet& mentions);

// "<passage_id>:<start>-<end>".
std::string make_mention_id(std::string_view passage_id, int start, int end);

// A run of complete sentences; sentence indices are inclusive.
struct Passage {
  std::string passage_id;
  std::string doc_id;
  int first_sentence = 0;
  int last_sentence = 0;
  int token_count = 0;
  MentionSet mentions;

  bool operator==(const Passage&) const = default;
};

struct SplitConfig {
  int target_tokens = 175;
  int min_tail_tokens = 50;

  // Throws Error(kInvalidArgument) unless target > min_tail > 0.
  void validate() const;
};

// The interchange unit written by `ingest` and consumed downstream.
struct Corpus {
  std::vector<Document> documents;
  std::vector<Passage> passages;

  const Document& document(std::string_view doc_id) const;
  const Passage& passage(std::string_view passage_id) const;
  const Passage* find_passage(std::string_view passage_id) const;

  bool operator==(const Corpus&) const = default;
};

// Parses CoNLL-U text. Multiword-token ranges ("3-4") and empty nodes
// ("3.1") are skipped. "# newdoc id = X" starts a document, "# sent_id = X"
// names the next sentence and "# domain = X" labels the current document.
// Documents without a newdoc comment are named after `default_doc_id`.
//
// Throws ParseError (with line number) on malformed lines and
// Error(kValidation) naming the sent_id when a tree is not well formed.
std::vector<Document> parse_conllu(std::string_view text,
                                   std::string_view default_doc_id = "doc");

// Inverse of parse_conllu for the fields the model keeps.
std::string write_conllu(const std::vector<Document>& documents);

// Checks single root, no self-loops, head range and acyclicity.
void validate_sentence(const Sentence& sentence);

// Document trees, passage tiling and token counts, and mention invariants
// (span inside one sentence and its passage, start <= head <= end, unique
// spans). Throws Error(kValidation).
void validate_corpus(const Corpus& corpus);

// Greedy passage tiling: whole sentences accumulate until the running total
// reaches cfg.target_tokens, which closes the passage. A final leftover
// shorter than cfg.min_tail_tokens is merged into the previous passage.
// Sentences longer than 4x the target add a message to `warnings`.
std::vector<Passage> split_passages(const Document& doc, const SplitConfig& cfg,
                                    std::vector<std::string>* warnings = nullptr);

// "<doc_id>:p<k>".
std::string make_passage_id(std::string_view doc_id, int ordinal);

}  // namespace corefkit
