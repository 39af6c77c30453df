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

#include "corefkit/json_io.h"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "corefkit/error.h"

namespace corefkit {

namespace fs = std::filesystem;

void to_json(Json& j, const Token& t) {
  j = Json{{"index", t.index},   {"surface", t.surface}, {"lemma", t.lemma},
           {"upos", t.upos},     {"head", t.head},       {"deprel", t.deprel},
           {"doc_offset", t.doc_offset}};
}

void from_json(const Json& j, Token& t) {
  j.at("index").get_to(t.index);
  j.at("surface").get_to(t.surface);
  t.lemma = j.value("lemma", std::string());
  j.at("upos").get_to(t.upos);
  j.at("head").get_to(t.head);
  j.at("deprel").get_to(t.deprel);
  j.at("doc_offset").get_to(t.doc_offset);
}

void to_json(Json& j, const Sentence& s) {
  j = Json{{"sent_id", s.sent_id}, {"tokens", s.tokens}};
}

void from_json(const Json& j, Sentence& s) {
  j.at("sent_id").get_to(s.sent_id);
  j.at("tokens").get_to(s.tokens);
}

void to_json(Json& j, const Document& d) {
  j = Json{{"doc_id", d.doc_id}, {"domain", d.domain}, {"sentences", d.sentences}};
}

void from_json(const Json& j, Document& d) {
  j.at("doc_id").get_to(d.doc_id);
  d.domain = j.value("domain", std::string("unknown"));
  j.at("sentences").get_to(d.sentences);
}

void to_json(Json& j, const Mention& m) {
  j = Json{{"mention_id", m.mention_id},
           {"passage_id", m.passage_id},
           {"span", {m.start, m.end}},
           {"head", m.head}};
  if (m.coordination) j["coordination"] = true;
}

void from_json(const Json& j, Mention& m) {
  m.mention_id = j.value("mention_id", std::string());
  m.passage_id = j.value("passage_id", std::string());
  const Json& span = j.at("span");
  if (!span.is_array() || span.size() != 2) {
    throw Error(ErrorCode::kValidation, "mention span must be [start, end]");
  }
  m.start = span[0].get<int>();
  m.end = span[1].get<int>();
  m.head = j.contains("head") && !j["head"].is_null() ? j["head"].get<int>() : -1;
  m.coordination = j.value("coordination", false);
}

void to_json(Json& j, const Passage& p) {
  j = Json{{"passage_id", p.passage_id},
           {"doc_id", p.doc_id},
           {"sentence_range", {p.first_sentence, p.last_sentence}},
           {"token_count", p.token_count},
           {"mentions", p.mentions}};
}

void from_json(const Json& j, Passage& p) {
  j.at("passage_id").get_to(p.passage_id);
  j.at("doc_id").get_to(p.doc_id);
  const Json& range = j.at("sentence_range");
  if (!range.is_array() || range.size() != 2) {
    throw Error(ErrorCode::kValidation, "sentence_range must be [first, last]");
  }
  p.first_sentence = range[0].get<int>();
  p.last_sentence = range[1].get<int>();
  j.at("token_count").get_to(p.token_count);
  p.mentions = j.value("mentions", MentionSet{});
}

void to_json(Json& j, const Corpus& c) {
  j = Json{{"documents", c.documents}, {"passages", c.passages}};
}

void from_json(const Json& j, Corpus& c) {
  j.at("documents").get_to(c.documents);
  c.passages = j.value("passages", std::vector<Passage>{});
}

void to_json(Json& j, const Clustering& c) {
  j = Json{{"passage_id", c.passage_id},
           {"annotator_id", c.annotator_id},
           {"clusters", c.clusters}};
}

void from_json(const Json& j, Clustering& c) {
  j.at("passage_id").get_to(c.passage_id);
  c.annotator_id = j.value("annotator_id", std::string());
  j.at("clusters").get_to(c.clusters);
}

void to_json(Json& j, const AggregateClustering& a) {
  j = Json{{"passage_id", a.passage_id},
           {"annotator_id", "aggregate"},
           {"tau", a.tau},
           {"clusters", a.clusters}};
}

void from_json(const Json& j, AggregateClustering& a) {
  j.at("passage_id").get_to(a.passage_id);
  j.at("tau").get_to(a.tau);
  j.at("clusters").get_to(a.clusters);
}

void to_json(Json& j, const B3Score& s) {
  j = Json{{"precision", s.precision},
           {"recall", s.recall},
           {"f1", s.f1},
           {"singleton_mode", singleton_mode_name(s.singleton_mode)}};
}

void to_json(Json& j, const DetectorEval& e) {
  j = Json{{"recall", e.recall},
           {"precision", e.precision},
           {"density_pred", e.density_pred},
           {"density_gold", e.density_gold},
           {"matched", e.matched},
           {"pred_total", e.pred_total},
           {"gold_total", e.gold_total},
           {"token_count", e.token_count},
           {"recall_undefined", e.recall_undefined},
           {"precision_undefined", e.precision_undefined}};
}

void to_json(Json& j, const PassageAgreement& p) {
  j = Json{{"passage_id", p.passage_id},
           {"group", p.group},
           {"n_annotators", p.n_annotators},
           {"f1", p.mean_f1}};
}

void to_json(Json& j, const IAAReport& r) {
  j = Json{{"group", r.group},
           {"f1", r.mean_f1},
           {"min_f1", r.min_f1},
           {"max_f1", r.max_f1},
           {"passages", r.passages}};
}

void to_json(Json& j, const ScreeningResult& r) {
  j = Json{{"annotator_id", r.annotator_id},
           {"b3_f1", r.b3_f1},
           {"threshold", r.threshold},
           {"passed", r.passed}};
}

void from_json(const Json& j, ScreeningResult& r) {
  j.at("annotator_id").get_to(r.annotator_id);
  j.at("b3_f1").get_to(r.b3_f1);
  r.threshold = j.value("threshold", kScreeningThreshold);
  j.at("passed").get_to(r.passed);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  return buf.str();
}

Json read_json_file(const fs::path& path) {
  const std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
  }
}

namespace {

std::atomic<unsigned long> tmp_counter{0};

void write_all(int fd, std::string_view content, const fs::path& tmp) {
  const char* p = content.data();
  std::size_t left = content.size();
  while (left > 0) {
    const ssize_t n = ::write(fd, p, left);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw Error(ErrorCode::kIo, "write " + tmp.string() + ": " + std::strerror(errno));
    }
    p += n;
    left -= static_cast<std::size_t>(n);
  }
}

}  // namespace

bool is_temporary_file(const fs::path& path) {
  return path.filename().string().find(".tmp.") != std::string::npos;
}

void write_file_atomic(const fs::path& path, std::string_view content,
                       const WriteHook& before_rename) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw Error(ErrorCode::kIo, "mkdir " + path.parent_path().string() + ": " + ec.message());
  }
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(tmp_counter++);

  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) throw Error(ErrorCode::kIo, "open " + tmp.string() + ": " + std::strerror(errno));
  try {
    write_all(fd, content, tmp);
    if (::fsync(fd) != 0) {
      throw Error(ErrorCode::kIo, "fsync " + tmp.string() + ": " + std::strerror(errno));
    }
  } catch (...) {
    ::close(fd);
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw;
  }
  ::close(fd);

  // A hook that throws models a crash: the temporary file is left behind
  // exactly as a dead process would leave it.
  if (before_rename) before_rename(tmp);

  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::kIo, "rename to " + path.string() + " failed");
  }
}

namespace {

void collect_clusterings(const Json& j, const fs::path& origin, std::vector<Clustering>& out) {
  try {
    if (j.is_array()) {
      for (const Json& item : j) out.push_back(item.get<Clustering>());
    } else if (j.is_object() && j.contains("clusterings")) {
      for (const Json& item : j.at("clusterings")) out.push_back(item.get<Clustering>());
    } else {
      out.push_back(j.get<Clustering>());
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kValidation, origin.string() + ": " + e.what());
  }
}

}  // namespace

std::vector<Clustering> load_clusterings(const fs::path& path) {
  std::vector<Clustering> out;
  std::error_code ec;
  if (fs::is_directory(path, ec)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json" &&
          !is_temporary_file(entry.path())) {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    for (const fs::path& f : files) collect_clusterings(read_json_file(f), f, out);
    return out;
  }
  collect_clusterings(read_json_file(path), path, out);
  return out;
}

Corpus load_corpus(const fs::path& path) {
  const Json j = read_json_file(path);
  Corpus corpus;
  try {
    corpus = j.get<Corpus>();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kValidation, path.string() + ": " + e.what());
  }
  validate_corpus(corpus);
  return corpus;
}

}  // namespace corefkit
