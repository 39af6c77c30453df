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

#include <string_view>

#include "corefkit/corpus.h"

namespace corefkit {

// Inclusive range of document offsets.
struct Span {
  int start = 0;
  int end = 0;

  bool operator==(const Span&) const = default;
};

// NOUN, PROPN, PRON and NUM.
bool is_markable_pos(std::string_view upos);

// Label before the first ':' ("nmod:poss" -> "nmod").
std::string_view deprel_base(std::string_view deprel);

// Multiword-expression relations (compound, flat, fixed) and modifier
// relations (det, amod, nummod, nmod), matched on the base label.
bool is_whitelisted(std::string_view deprel);
bool is_multiword_relation(std::string_view deprel);

// Minimal contiguous span covering `head_token` and every token reachable
// from it by descending through whitelisted relations only. Tokens that lie
// between collected ones (case markers, punctuation) are absorbed.
Span expand_span(const Token& head_token, const Sentence& sentence);

// Headword of a span: the span token that dominates all others. When the
// lowest common ancestor of the span lies outside it, the span token closest
// to that ancestor wins (ties go to the leftmost token).
//
// Throws Error(kInvalidArgument) on an empty span or one leaving the sentence.
int head_of(Span span, const Sentence& sentence);

// Drops exact duplicates, removes mentions strictly inside a larger mention
// with the same head, and replaces crossing spans with their union until
// none remain. Nested spans with distinct heads survive. The result is
// sorted and is a fixed point of this function.
MentionSet dedupe_and_merge(MentionSet mentions, const Sentence& sentence);

// Candidate mentions of one sentence, deduplicated and merged. Mention ids
// and passage ids are left empty.
MentionSet detect_mentions(const Sentence& sentence);

// Runs detect_mentions over the passage's sentences and assigns ids.
void detect_passage_mentions(const Document& doc, Passage& passage);

}  // namespace corefkit
