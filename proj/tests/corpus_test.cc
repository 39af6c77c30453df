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

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "corefkit/corpus.h"
#include "corefkit/error.h"
#include "corefkit/json_io.h"
#include "corefkit/pipeline.h"
#include "support.h"

namespace corefkit {
namespace {

using testing::make_document;
using testing::make_sentence;
using testing::random_tree;

constexpr const char* kTwoSentences =
    "# newdoc id = news-1\n"
    "# domain = news\n"
    "# sent_id = a\n"
    "1\tThe\tthe\tDET\t_\t_\t2\tdet\t_\t_\n"
    "2\tcat\tcat\tNOUN\t_\t_\t3\tnsubj\t_\t_\n"
    "3\tslept\tsleep\tVERB\t_\t_\t0\troot\t_\t_\n"
    "\n"
    "# sent_id = b\n"
    "1-2\tdon't\t_\t_\t_\t_\t_\t_\t_\t_\n"
    "1\tdo\tdo\tAUX\t_\t_\t3\taux\t_\t_\n"
    "2\tn't\tnot\tPART\t_\t_\t3\tadvmod\t_\t_\n"
    "3\tgo\tgo\tVERB\t_\t_\t0\troot\t_\t_\n"
    "3.1\tgone\tgo\tVERB\t_\t_\t_\t_\t3:conj\t_\n"
    "\n";

TEST(ConlluTest, ParsesDocumentsSentencesAndOffsets) {
  const std::vector<Document> docs = parse_conllu(kTwoSentences);
  ASSERT_EQ(docs.size(), 1u);
  const Document& d = docs[0];
  EXPECT_EQ(d.doc_id, "news-1");
  EXPECT_EQ(d.domain, "news");
  ASSERT_EQ(d.sentences.size(), 2u);
  EXPECT_EQ(d.sentences[0].sent_id, "a");
  EXPECT_EQ(d.sentences[1].sent_id, "b");
  EXPECT_EQ(d.token_count(), 6);
  EXPECT_EQ(d.sentences[1].tokens[0].surface, "do");
  EXPECT_EQ(d.sentences[1].tokens[0].doc_offset, 3);
  EXPECT_EQ(d.sentences[0].tokens[1].head, 3);
  EXPECT_EQ(d.sentence_of_offset(4), 1);
  EXPECT_EQ(d.sentence_of_offset(99), -1);
}

TEST(ConlluTest, DefaultIdsWithoutComments) {
  const std::vector<Document> docs = parse_conllu("1\tHi\thi\tINTJ\t_\t_\t0\troot\t_\t_\n\n", "stem");
  ASSERT_EQ(docs.size(), 1u);
  EXPECT_EQ(docs[0].doc_id, "stem");
  EXPECT_EQ(docs[0].domain, "unknown");
  EXPECT_EQ(docs[0].sentences[0].sent_id, "stem-s1");
}

TEST(ConlluTest, ColumnCountErrorNamesLine) {
  const std::string text =
      "# sent_id = x\n"
      "1\tThe\tthe\tDET\t_\t_\t2\tdet\t_\t_\n"
      "2\tcat\tcat\tNOUN\t_\t_\t0\troot\t_\n";
  try {
    parse_conllu(text);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(ConlluTest, RejectsBadFields) {
  EXPECT_THROW(parse_conllu("x\tA\ta\tNOUN\t_\t_\t0\troot\t_\t_\n"), ParseError);
  EXPECT_THROW(parse_conllu("2\tA\ta\tNOUN\t_\t_\t0\troot\t_\t_\n"), ParseError);
  EXPECT_THROW(parse_conllu("1\tA\ta\tNOUN\t_\t_\tz\troot\t_\t_\n"), ParseError);
  EXPECT_THROW(parse_conllu("1\tA\ta\tNOUNISH\t_\t_\t0\troot\t_\t_\n"), ParseError);
}

std::string tree_error(const std::string& rows) {
  try {
    parse_conllu("# sent_id = bad-1\n" + rows + "\n");
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValidation);
    return e.what();
  }
  return "";
}

TEST(ConlluTest, TreeErrorsNameTheSentence) {
  const std::string multi_root = tree_error(
      "1\tA\ta\tNOUN\t_\t_\t0\troot\t_\t_\n"
      "2\tB\tb\tNOUN\t_\t_\t0\troot\t_\t_\n");
  EXPECT_NE(multi_root.find("multiple roots"), std::string::npos);
  EXPECT_NE(multi_root.find("bad-1"), std::string::npos);

  const std::string cycle = tree_error(
      "1\tA\ta\tNOUN\t_\t_\t0\troot\t_\t_\n"
      "2\tB\tb\tNOUN\t_\t_\t3\tnmod\t_\t_\n"
      "3\tC\tc\tNOUN\t_\t_\t2\tnmod\t_\t_\n");
  EXPECT_NE(cycle.find("cycle"), std::string::npos);
  EXPECT_NE(cycle.find("bad-1"), std::string::npos);

  const std::string loop = tree_error(
      "1\tA\ta\tNOUN\t_\t_\t0\troot\t_\t_\n"
      "2\tB\tb\tNOUN\t_\t_\t2\tnmod\t_\t_\n");
  EXPECT_NE(loop.find("self-loop"), std::string::npos);

  const std::string range = tree_error("1\tA\ta\tNOUN\t_\t_\t5\troot\t_\t_\n");
  EXPECT_NE(range.find("bad-1"), std::string::npos);
}

TEST(ConlluTest, RoundTripOnRandomTrees) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Sentence> sentences;
    const int n_sent = 1 + static_cast<int>(rng() % 4);
    for (int s = 0; s < n_sent; ++s) {
      Sentence sent = random_tree(rng, 1 + static_cast<int>(rng() % 15));
      sent.sent_id = "r" + std::to_string(trial) + "-" + std::to_string(s);
      sentences.push_back(std::move(sent));
    }
    Document doc = make_document("doc" + std::to_string(trial), std::move(sentences));
    doc.domain = trial % 2 ? "fiction" : "news";
    const std::string text = write_conllu({doc});
    const std::vector<Document> back = parse_conllu(text);
    ASSERT_EQ(back.size(), 1u);
    EXPECT_EQ(back[0], doc);
    EXPECT_EQ(write_conllu(back), text);
  }
}

Document doc_with_lengths(const std::vector<int>& lengths) {
  std::vector<Sentence> sentences;
  for (int len : lengths) {
    std::vector<testing::Row> rows;
    for (int i = 1; i <= len; ++i) rows.emplace_back("w", "NOUN", i == 1 ? 0 : 1, i == 1 ? "root" : "dep");
    sentences.push_back(make_sentence(rows));
  }
  return make_document("d", std::move(sentences));
}

std::vector<int> passage_lengths(const std::vector<Passage>& passages) {
  std::vector<int> out;
  for (const Passage& p : passages) out.push_back(p.token_count);
  return out;
}

TEST(SplitTest, ShortTailMergesIntoPreviousPassage) {
  const auto passages = split_passages(doc_with_lengths({80, 70, 60, 40}), SplitConfig{});
  EXPECT_EQ(passage_lengths(passages), std::vector<int>({250}));
  EXPECT_EQ(passages[0].first_sentence, 0);
  EXPECT_EQ(passages[0].last_sentence, 3);
}

TEST(SplitTest, SentenceAtTargetIsOnePassage) {
  EXPECT_EQ(passage_lengths(split_passages(doc_with_lengths({175}), SplitConfig{})),
            std::vector<int>({175}));
}

TEST(SplitTest, LongEnoughTailStays) {
  const auto passages = split_passages(doc_with_lengths({100, 100, 100}), SplitConfig{});
  EXPECT_EQ(passage_lengths(passages), std::vector<int>({200, 100}));
  EXPECT_EQ(passages[0].passage_id, "d:p0");
  EXPECT_EQ(passages[1].passage_id, "d:p1");
  EXPECT_EQ(passages[1].first_sentence, 2);
}

TEST(SplitTest, WarnsOnVeryLongSentence) {
  std::vector<std::string> warnings;
  split_passages(doc_with_lengths({10, 800}), SplitConfig{}, &warnings);
  ASSERT_EQ(warnings.size(), 1u);
}

TEST(SplitTest, RejectsBadConfig) {
  EXPECT_THROW((SplitConfig{50, 50}.validate()), Error);
  EXPECT_THROW((SplitConfig{100, 0}.validate()), Error);
  EXPECT_NO_THROW(SplitConfig{}.validate());
}

TEST(SplitTest, TilingHoldsOnRandomDocuments) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<int> lengths;
    const int n = 1 + static_cast<int>(rng() % 30);
    for (int i = 0; i < n; ++i) lengths.push_back(1 + static_cast<int>(rng() % 60));
    const Document doc = doc_with_lengths(lengths);
    Corpus corpus;
    corpus.documents.push_back(doc);
    corpus.passages = split_passages(doc, SplitConfig{});
    ASSERT_NO_THROW(validate_corpus(corpus));
    int next = 0;
    for (const Passage& p : corpus.passages) {
      EXPECT_EQ(p.first_sentence, next);
      next = p.last_sentence + 1;
    }
    EXPECT_EQ(next, n);
    if (corpus.passages.size() > 1) {
      EXPECT_GE(corpus.passages.back().token_count, SplitConfig{}.min_tail_tokens);
    }
  }
}

TEST(CorpusTest, ValidateRejectsGapsAndBadMentions) {
  Corpus corpus;
  corpus.documents.push_back(doc_with_lengths({100, 100, 100}));
  corpus.passages = split_passages(corpus.documents[0], SplitConfig{});
  corpus.passages.pop_back();
  EXPECT_THROW(validate_corpus(corpus), Error);

  corpus.passages = split_passages(corpus.documents[0], SplitConfig{});
  Mention m{"d:p0:5-2", "d:p0", 5, 2, 3, false};
  corpus.passages[0].mentions.push_back(m);
  EXPECT_THROW(validate_corpus(corpus), Error);

  corpus.passages[0].mentions = {Mention{"d:p0:98-101", "d:p0", 98, 101, 99, false}};
  EXPECT_THROW(validate_corpus(corpus), Error);  // crosses a sentence boundary
}

TEST(CorpusTest, JsonRoundTrip) {
  Corpus corpus = ingest_conllu({{"x", kTwoSentences}}, SplitConfig{});
  detect_corpus(corpus);
  const Json j = corpus;
  EXPECT_EQ(j.get<Corpus>(), corpus);
  EXPECT_EQ(corpus.passages[0].mentions.front().mention_id, "news-1:p0:0-1");
}

}  // namespace
}  // namespace corefkit
