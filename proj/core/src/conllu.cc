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
#include <charconv>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "corefkit/corpus.h"
#include "corefkit/error.h"

namespace corefkit {
namespace {

constexpr std::array<std::string_view, 17> kUniversalPos = {
    "ADJ",   "ADP",  "ADV",   "AUX",  "CCONJ", "DET",   "INTJ", "NOUN", "NUM",
    "PART",  "PRON", "PROPN", "PUNCT", "SCONJ", "SYM",  "VERB", "X"};

bool is_universal_pos(std::string_view tag) {
  return std::find(kUniversalPos.begin(), kUniversalPos.end(), tag) !=
         kUniversalPos.end();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    std::size_t tab = line.find('\t', pos);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(pos));
      break;
    }
    fields.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
  return fields;
}

std::optional<int> to_int(std::string_view s) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

// Parses "# key = value" comments; returns the value for `key` if matched.
std::optional<std::string_view> comment_value(std::string_view comment,
                                              std::string_view key) {
  comment.remove_prefix(1);  // '#'
  comment = trim(comment);
  if (comment.substr(0, key.size()) != key) return std::nullopt;
  std::string_view rest = comment.substr(key.size());
  if (!rest.empty() && rest.front() != ' ' && rest.front() != '=' &&
      rest.front() != '\t') {
    return std::nullopt;  // "newdocument" is not "newdoc"
  }
  rest = trim(rest);
  if (rest.empty()) return std::string_view{};
  if (rest.front() != '=') return std::nullopt;
  rest.remove_prefix(1);
  return trim(rest);
}

class Reader {
 public:
  explicit Reader(std::string_view default_doc_id) : default_id_(default_doc_id) {}

  void feed(std::string_view raw, std::size_t line_no) {
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) {
      end_sentence();
      return;
    }
    if (line.front() == '#') {
      comment(line);
      return;
    }
    token_line(line, line_no);
  }

  std::vector<Document> finish() {
    end_sentence();
    std::erase_if(docs_, [](const Document& d) { return d.sentences.empty(); });
    for (Document& doc : docs_) assign_offsets(doc);
    return std::move(docs_);
  }

 private:
  void comment(std::string_view line) {
    if (auto v = comment_value(line, "newdoc id"); v.has_value()) {
      start_document(std::string(*v));
    } else if (auto v2 = comment_value(line, "newdoc"); v2.has_value()) {
      start_document("");
    } else if (auto sid = comment_value(line, "sent_id"); sid.has_value()) {
      pending_sent_id_ = std::string(*sid);
    } else if (auto dom = comment_value(line, "domain"); dom.has_value()) {
      current_document().domain = dom->empty() ? "unknown" : std::string(*dom);
    }
  }

  void token_line(std::string_view line, std::size_t line_no) {
    std::vector<std::string_view> f = split_tabs(line);
    if (f.size() != 10) {
      throw ParseError(line_no, "expected 10 tab-separated columns, found " +
                                    std::to_string(f.size()));
    }
    std::string_view id = f[0];
    if (id.find('-') != std::string_view::npos || id.find('.') != std::string_view::npos) {
      return;  // multiword range or empty node
    }
    std::optional<int> index = to_int(id);
    if (!index) throw ParseError(line_no, "bad token id '" + std::string(id) + "'");
    const int expected = static_cast<int>(sentence_.tokens.size()) + 1;
    if (*index != expected) {
      throw ParseError(line_no, "token id " + std::to_string(*index) +
                                    " out of sequence (expected " +
                                    std::to_string(expected) + ")");
    }
    std::optional<int> head = to_int(f[6]);
    if (!head || *head < 0) {
      throw ParseError(line_no, "bad head '" + std::string(f[6]) + "'");
    }
    if (!is_universal_pos(f[3])) {
      throw ParseError(line_no, "unknown UPOS tag '" + std::string(f[3]) + "'");
    }
    Token tok;
    tok.index = *index;
    tok.surface = std::string(f[1]);
    tok.lemma = f[2] == "_" ? std::string() : std::string(f[2]);
    tok.upos = std::string(f[3]);
    tok.head = *head;
    tok.deprel = std::string(f[7]);
    sentence_.tokens.push_back(std::move(tok));
  }

  void end_sentence() {
    if (sentence_.tokens.empty()) {
      pending_sent_id_.reset();
      return;
    }
    Document& doc = current_document();
    sentence_.sent_id = pending_sent_id_.value_or(
        doc.doc_id + "-s" + std::to_string(doc.sentences.size() + 1));
    pending_sent_id_.reset();
    validate_sentence(sentence_);
    doc.sentences.push_back(std::move(sentence_));
    sentence_ = Sentence{};
  }

  void start_document(std::string id) {
    end_sentence();
    if (id.empty()) id = std::string(default_id_) + "-" + std::to_string(docs_.size() + 1);
    docs_.push_back(Document{std::move(id), "unknown", {}});
  }

  Document& current_document() {
    if (docs_.empty()) docs_.push_back(Document{std::string(default_id_), "unknown", {}});
    return docs_.back();
  }

  static void assign_offsets(Document& doc) {
    int offset = 0;
    for (Sentence& s : doc.sentences) {
      for (Token& t : s.tokens) t.doc_offset = offset++;
    }
  }

  std::string_view default_id_;
  std::vector<Document> docs_;
  Sentence sentence_;
  std::optional<std::string> pending_sent_id_;
};

}  // namespace

void validate_sentence(const Sentence& sentence) {
  const std::string& sid = sentence.sent_id;
  const int n = sentence.size();
  std::vector<int> roots;
  for (const Token& t : sentence.tokens) {
    if (t.head == t.index) {
      throw Error(ErrorCode::kValidation, "self-loop at sent_id " + sid + " token " +
                                              std::to_string(t.index));
    }
    if (t.head < 0 || t.head > n) {
      throw Error(ErrorCode::kValidation,
                  "head " + std::to_string(t.head) + " out of range at sent_id " + sid +
                      " token " + std::to_string(t.index));
    }
    if (t.head == 0) roots.push_back(t.index);
  }
  if (roots.empty()) {
    throw Error(ErrorCode::kValidation, "no root at sent_id " + sid);
  }
  if (roots.size() > 1) {
    std::string list;
    for (int r : roots) list += (list.empty() ? "" : ", ") + std::to_string(r);
    throw Error(ErrorCode::kValidation,
                "multiple roots at sent_id " + sid + " (tokens " + list + ")");
  }
  // Walk up from every token; reaching a token twice means a cycle.
  std::vector<int> state(static_cast<std::size_t>(n) + 1, 0);  // 0 new, 1 on path, 2 done
  for (int start = 1; start <= n; ++start) {
    std::vector<int> path;
    int cur = start;
    while (cur != 0 && state[static_cast<std::size_t>(cur)] == 0) {
      state[static_cast<std::size_t>(cur)] = 1;
      path.push_back(cur);
      cur = sentence.at_index(cur).head;
    }
    if (cur != 0 && state[static_cast<std::size_t>(cur)] == 1) {
      throw Error(ErrorCode::kValidation, "cycle at sent_id " + sid +
                                              " involving token " + std::to_string(cur));
    }
    for (int p : path) state[static_cast<std::size_t>(p)] = 2;
  }
}

std::vector<Document> parse_conllu(std::string_view text, std::string_view default_doc_id) {
  Reader reader(default_doc_id);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line =
        nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
    ++line_no;
    if (nl == std::string_view::npos && line.empty()) break;
    reader.feed(line, line_no);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return reader.finish();
}

std::string write_conllu(const std::vector<Document>& documents) {
  std::ostringstream out;
  for (const Document& doc : documents) {
    out << "# newdoc id = " << doc.doc_id << '\n';
    if (doc.domain != "unknown") out << "# domain = " << doc.domain << '\n';
    for (const Sentence& s : doc.sentences) {
      out << "# sent_id = " << s.sent_id << '\n';
      for (const Token& t : s.tokens) {
        out << t.index << '\t' << t.surface << '\t' << (t.lemma.empty() ? "_" : t.lemma)
            << '\t' << t.upos << "\t_\t_\t" << t.head << '\t' << t.deprel << "\t_\t_\n";
      }
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace corefkit
