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

#include <algorithm>
#include <array>
#include <limits>
#include <string>
#include <vector>

#include "corefkit/error.h"
#include "corefkit/mentions.h"

namespace corefkit {
namespace {

constexpr std::array<std::string_view, 3> kMultiword = {"compound", "flat", "fixed"};
constexpr std::array<std::string_view, 4> kModifier = {"det", "amod", "nummod", "nmod"};

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& set, std::string_view label) {
  return std::find(set.begin(), set.end(), label) != set.end();
}

// children[i] lists the CoNLL-U indices attached to token i (0 = root).
std::vector<std::vector<int>> children_of(const Sentence& sentence) {
  std::vector<std::vector<int>> children(static_cast<std::size_t>(sentence.size()) + 1);
  for (const Token& t : sentence.tokens) {
    children[static_cast<std::size_t>(t.head)].push_back(t.index);
  }
  return children;
}

std::vector<int> depths(const Sentence& sentence) {
  std::vector<int> depth(static_cast<std::size_t>(sentence.size()) + 1, -1);
  depth[0] = 0;
  for (const Token& t : sentence.tokens) {
    std::vector<int> path;
    int cur = t.index;
    while (depth[static_cast<std::size_t>(cur)] < 0) {
      path.push_back(cur);
      cur = sentence.at_index(cur).head;
    }
    int d = depth[static_cast<std::size_t>(cur)];
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      depth[static_cast<std::size_t>(*it)] = ++d;
    }
  }
  return depth;
}

Span expand_with(const Token& head, const Sentence& sentence,
                 const std::vector<std::vector<int>>& children) {
  int lo = head.index;
  int hi = head.index;
  std::vector<int> stack{head.index};
  while (!stack.empty()) {
    const int cur = stack.back();
    stack.pop_back();
    lo = std::min(lo, cur);
    hi = std::max(hi, cur);
    for (int child : children[static_cast<std::size_t>(cur)]) {
      if (is_whitelisted(sentence.at_index(child).deprel)) stack.push_back(child);
    }
  }
  return Span{sentence.at_index(lo).doc_offset, sentence.at_index(hi).doc_offset};
}

bool strictly_contains(const Mention& outer, const Mention& inner) {
  return outer.start <= inner.start && inner.end <= outer.end && !outer.same_span(inner);
}

bool crossing(const Mention& a, const Mention& b) {
  return (a.start < b.start && b.start <= a.end && a.end < b.end) ||
         (b.start < a.start && a.start <= b.end && b.end < a.end);
}

// One normalization pass; returns true if anything changed.
bool normalize_once(MentionSet& mentions, const Sentence& sentence) {
  sort_mentions(mentions);

  // Exact duplicates.
  for (std::size_t i = 0; i + 1 < mentions.size(); ++i) {
    if (mentions[i].same_span(mentions[i + 1])) {
      mentions[i].coordination = mentions[i].coordination || mentions[i + 1].coordination;
      mentions.erase(mentions.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      return true;
    }
  }

  // A larger mention with the same head subsumes the smaller one, except
  // that a coordinated phrase keeps its first conjunct.
  for (std::size_t i = 0; i < mentions.size(); ++i) {
    for (std::size_t j = 0; j < mentions.size(); ++j) {
      if (i == j) continue;
      const Mention& outer = mentions[j];
      const Mention& inner = mentions[i];
      if (outer.head != inner.head || !strictly_contains(outer, inner)) continue;
      if (outer.coordination && !inner.coordination) continue;
      mentions.erase(mentions.begin() + static_cast<std::ptrdiff_t>(i));
      return true;
    }
  }

  for (std::size_t i = 0; i < mentions.size(); ++i) {
    for (std::size_t j = i + 1; j < mentions.size(); ++j) {
      if (!crossing(mentions[i], mentions[j])) continue;
      Mention merged;
      merged.start = std::min(mentions[i].start, mentions[j].start);
      merged.end = std::max(mentions[i].end, mentions[j].end);
      merged.head = head_of(Span{merged.start, merged.end}, sentence);
      mentions.erase(mentions.begin() + static_cast<std::ptrdiff_t>(j));
      mentions[i] = merged;
      return true;
    }
  }
  return false;
}

Mention make_candidate(Span span, const Sentence& sentence, bool coordination = false) {
  Mention m;
  m.start = span.start;
  m.end = span.end;
  m.head = head_of(span, sentence);
  m.coordination = coordination;
  return m;
}

}  // namespace

bool is_markable_pos(std::string_view upos) {
  return upos == "NOUN" || upos == "PROPN" || upos == "PRON" || upos == "NUM";
}

std::string_view deprel_base(std::string_view deprel) {
  return deprel.substr(0, deprel.find(':'));
}

bool is_multiword_relation(std::string_view deprel) {
  return contains(kMultiword, deprel_base(deprel));
}

bool is_whitelisted(std::string_view deprel) {
  const std::string_view base = deprel_base(deprel);
  return contains(kMultiword, base) || contains(kModifier, base);
}

Span expand_span(const Token& head_token, const Sentence& sentence) {
  return expand_with(head_token, sentence, children_of(sentence));
}

int head_of(Span span, const Sentence& sentence) {
  if (span.start > span.end) {
    throw Error(ErrorCode::kInvalidArgument,
                "empty span [" + std::to_string(span.start) + "," +
                    std::to_string(span.end) + "]");
  }
  if (!sentence.contains_offset(span.start) || !sentence.contains_offset(span.end)) {
    throw Error(ErrorCode::kInvalidArgument,
                "span [" + std::to_string(span.start) + "," + std::to_string(span.end) +
                    "] is not inside sentence " + sentence.sent_id);
  }
  const int first = sentence.at_offset(span.start).index;
  const int last = sentence.at_offset(span.end).index;
  if (first == last) return span.start;

  const std::vector<int> depth = depths(sentence);
  auto parent = [&](int i) { return i == 0 ? 0 : sentence.at_index(i).head; };

  // Lowest common ancestor of all span tokens (0 is the virtual root).
  int lca = first;
  for (int i = first + 1; i <= last; ++i) {
    int a = lca;
    int b = i;
    while (depth[static_cast<std::size_t>(a)] > depth[static_cast<std::size_t>(b)]) a = parent(a);
    while (depth[static_cast<std::size_t>(b)] > depth[static_cast<std::size_t>(a)]) b = parent(b);
    while (a != b) {
      a = parent(a);
      b = parent(b);
    }
    lca = a;
  }
  if (lca >= first && lca <= last) return sentence.at_index(lca).doc_offset;

  int best = first;
  int best_dist = std::numeric_limits<int>::max();
  for (int i = first; i <= last; ++i) {
    const int dist = depth[static_cast<std::size_t>(i)] - depth[static_cast<std::size_t>(lca)];
    if (dist < best_dist) {
      best = i;
      best_dist = dist;
    }
  }
  return sentence.at_index(best).doc_offset;
}

MentionSet dedupe_and_merge(MentionSet mentions, const Sentence& sentence) {
  while (normalize_once(mentions, sentence)) {
  }
  sort_mentions(mentions);
  return mentions;
}

MentionSet detect_mentions(const Sentence& sentence) {
  const auto children = children_of(sentence);
  auto has_whitelist_child = [&](const Token& t) {
    for (int c : children[static_cast<std::size_t>(t.index)]) {
      if (is_whitelisted(sentence.at_index(c).deprel)) return true;
    }
    return false;
  };

  MentionSet candidates;
  for (const Token& t : sentence.tokens) {
    const bool markable = is_markable_pos(t.upos);
    const bool multiword = is_multiword_relation(t.deprel);

    // Heads of noun phrases. Multiword parts are not phrases of their own,
    // and a number only counts when it is not a bare modifier.
    const bool phrase_head =
        markable && !multiword &&
        (t.upos != "NUM" || has_whitelist_child(t) || !is_whitelisted(t.deprel));
    const bool possessive = t.deprel == "nmod:poss";
    const bool proper_premodifier =
        t.upos == "PROPN" && multiword && t.head != 0 && t.index < t.head;

    if (!phrase_head && !possessive && !proper_premodifier) continue;
    const Span own = expand_with(t, sentence, children);
    candidates.push_back(make_candidate(own, sentence));

    if (!phrase_head || deprel_base(t.deprel) == "conj") continue;

    // Coordination: every conjunct plus the phrase covering all of them.
    int lo = own.start;
    int hi = own.end;
    bool any_conjunct = false;
    std::vector<int> stack{t.index};
    while (!stack.empty()) {
      const int cur = stack.back();
      stack.pop_back();
      for (int c : children[static_cast<std::size_t>(cur)]) {
        const Token& child = sentence.at_index(c);
        if (deprel_base(child.deprel) != "conj" || !is_markable_pos(child.upos)) continue;
        any_conjunct = true;
        const Span conj = expand_with(child, sentence, children);
        candidates.push_back(make_candidate(conj, sentence));
        lo = std::min(lo, conj.start);
        hi = std::max(hi, conj.end);
        for (int cc : children[static_cast<std::size_t>(c)]) {
          if (deprel_base(sentence.at_index(cc).deprel) == "cc") {
            lo = std::min(lo, sentence.at_index(cc).doc_offset);
            hi = std::max(hi, sentence.at_index(cc).doc_offset);
          }
        }
        stack.push_back(c);
      }
    }
    if (any_conjunct) {
      candidates.push_back(make_candidate(Span{lo, hi}, sentence, /*coordination=*/true));
    }
  }
  return dedupe_and_merge(std::move(candidates), sentence);
}

void detect_passage_mentions(const Document& doc, Passage& passage) {
  MentionSet all;
  for (int s = passage.first_sentence; s <= passage.last_sentence; ++s) {
    MentionSet found = detect_mentions(doc.sentences.at(static_cast<std::size_t>(s)));
    all.insert(all.end(), found.begin(), found.end());
  }
  sort_mentions(all);
  for (Mention& m : all) {
    m.passage_id = passage.passage_id;
    m.mention_id = make_mention_id(passage.passage_id, m.start, m.end);
  }
  passage.mentions = std::move(all);
}

}  // namespace corefkit
