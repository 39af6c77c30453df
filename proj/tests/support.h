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
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "corefkit/corpus.h"
#include "corefkit/json_io.h"
#include "corefkit/pipeline.h"

namespace corefkit::testing {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(COREFKIT_FIXTURES_DIR) / name;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "corefkit") {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            (tag + "-" + std::to_string(rd()) + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// (surface, upos, head, deprel) rows, CoNLL-U numbered from 1.
using Row = std::tuple<std::string, std::string, int, std::string>;

inline Sentence make_sentence(const std::vector<Row>& rows, int first_offset = 0,
                              const std::string& sent_id = "s") {
  Sentence s;
  s.sent_id = sent_id;
  int index = 1;
  for (const auto& [surface, upos, head, deprel] : rows) {
    s.tokens.push_back(Token{index, surface, surface, upos, head, deprel,
                             first_offset + index - 1});
    ++index;
  }
  return s;
}

inline Document make_document(const std::string& doc_id, std::vector<Sentence> sentences) {
  Document d;
  d.doc_id = doc_id;
  int offset = 0;
  for (Sentence& s : sentences) {
    for (Token& t : s.tokens) t.doc_offset = offset++;
    d.sentences.push_back(std::move(s));
  }
  return d;
}

// Random well-formed dependency tree of `n` tokens. Trees need not be
// projective; labels and tags are drawn to exercise every detector rule.
inline Sentence random_tree(std::mt19937& rng, int n, int first_offset = 0) {
  static const std::vector<std::string> kUpos = {"NOUN", "PROPN", "PRON", "NUM", "ADJ",
                                                 "DET",  "VERB",  "ADP",  "PUNCT", "CCONJ"};
  static const std::vector<std::string> kDeprel = {
      "nsubj", "obj",  "obl",   "compound", "flat", "fixed", "det",  "amod", "nummod",
      "nmod",  "nmod:poss", "conj", "cc", "case", "punct", "appos", "compound:prt", "acl"};
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i + 1;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> head(static_cast<std::size_t>(n) + 1, 0);
  for (int k = 1; k < n; ++k) {
    std::uniform_int_distribution<int> pick(0, k - 1);
    head[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] =
        order[static_cast<std::size_t>(pick(rng))];
  }
  std::uniform_int_distribution<std::size_t> upos(0, kUpos.size() - 1);
  std::uniform_int_distribution<std::size_t> deprel(0, kDeprel.size() - 1);
  std::vector<Row> rows;
  for (int i = 1; i <= n; ++i) {
    const int h = head[static_cast<std::size_t>(i)];
    rows.emplace_back("w" + std::to_string(i), kUpos[upos(rng)], h,
                      h == 0 ? "root" : kDeprel[deprel(rng)]);
  }
  return make_sentence(rows, first_offset);
}

// Corpus of `n` one-sentence passages "A gave B C", three pronoun mentions
// each.
inline Corpus passage_corpus(int n, const std::string& doc_id = "doc") {
  std::string text = "# newdoc id = " + doc_id + "\n# domain = fiction\n";
  for (int i = 0; i < n; ++i) {
    text += "# sent_id = " + doc_id + "-" + std::to_string(i) + "\n"
            "1\tA\ta\tPRON\t_\t_\t2\tnsubj\t_\t_\n"
            "2\tgave\tgive\tVERB\t_\t_\t0\troot\t_\t_\n"
            "3\tB\tb\tPRON\t_\t_\t2\tiobj\t_\t_\n"
            "4\tC\tc\tPRON\t_\t_\t2\tobj\t_\t_\n\n";
  }
  Corpus corpus = ingest_conllu({{doc_id, text}}, SplitConfig{4, 1});
  detect_corpus(corpus);
  return corpus;
}

}  // namespace corefkit::testing
