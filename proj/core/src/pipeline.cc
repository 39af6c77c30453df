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

#include "corefkit/pipeline.h"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

#include "corefkit/error.h"
#include "corefkit/mentions.h"

namespace corefkit {

namespace fs = std::filesystem;

namespace {

std::string fixed(double v, int digits = 4) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::map<std::string, std::vector<Clustering>> by_passage(const std::vector<Clustering>& items) {
  std::map<std::string, std::vector<Clustering>> out;
  for (const Clustering& c : items) out[c.passage_id].push_back(c);
  return out;
}

}  // namespace

Corpus ingest_conllu(const std::vector<NamedText>& inputs, const SplitConfig& cfg,
                     std::vector<std::string>* warnings) {
  cfg.validate();
  Corpus corpus;
  std::set<std::string> ids;
  for (const NamedText& input : inputs) {
    for (Document& doc : parse_conllu(input.text, input.name)) {
      if (!ids.insert(doc.doc_id).second) {
        throw Error(ErrorCode::kValidation, "duplicate document id " + doc.doc_id);
      }
      std::vector<Passage> passages = split_passages(doc, cfg, warnings);
      corpus.passages.insert(corpus.passages.end(), passages.begin(), passages.end());
      corpus.documents.push_back(std::move(doc));
    }
  }
  return corpus;
}

std::vector<NamedText> read_conllu_inputs(const fs::path& path) {
  std::vector<fs::path> files;
  std::error_code ec;
  if (fs::is_directory(path, ec)) {
    for (const auto& entry : fs::directory_iterator(path)) {
      const auto ext = entry.path().extension();
      if (entry.is_regular_file() && (ext == ".conllu" || ext == ".conll")) {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw Error(ErrorCode::kIo, "no .conllu files in " + path.string());
  } else {
    files.push_back(path);
  }
  std::vector<NamedText> inputs;
  for (const fs::path& f : files) inputs.push_back({f.stem().string(), read_text_file(f)});
  return inputs;
}

void detect_corpus(Corpus& corpus) {
  for (Passage& p : corpus.passages) detect_passage_mentions(corpus.document(p.doc_id), p);
}

void resplit_corpus(Corpus& corpus, const SplitConfig& cfg, std::vector<std::string>* warnings) {
  cfg.validate();
  std::vector<Passage> next;
  for (const Document& doc : corpus.documents) {
    MentionSet existing;
    for (const Passage& p : corpus.passages) {
      if (p.doc_id == doc.doc_id) existing.insert(existing.end(), p.mentions.begin(), p.mentions.end());
    }
    std::vector<Passage> passages = split_passages(doc, cfg, warnings);
    for (Passage& p : passages) {
      const int lo = doc.sentences[static_cast<std::size_t>(p.first_sentence)].first_offset();
      const int hi = doc.sentences[static_cast<std::size_t>(p.last_sentence)].last_offset();
      for (const Mention& m : existing) {
        if (m.start < lo || m.end > hi) continue;
        Mention moved = m;
        moved.passage_id = p.passage_id;
        moved.mention_id = make_mention_id(p.passage_id, m.start, m.end);
        p.mentions.push_back(std::move(moved));
      }
      sort_mentions(p.mentions);
    }
    next.insert(next.end(), passages.begin(), passages.end());
  }
  corpus.passages = std::move(next);
}

GoldMentions load_gold_mentions(const fs::path& path) {
  const Json j = read_json_file(path);
  GoldMentions gold;
  try {
    for (const Json& doc : j.at("documents")) {
      MentionSet& set = gold[doc.at("doc_id").get<std::string>()];
      for (const Json& m : doc.at("mentions")) set.push_back(m.get<Mention>());
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kValidation, path.string() + ": " + e.what());
  }
  return gold;
}

CorpusDetectorEval eval_corpus_detector(const Corpus& corpus, GoldMentions gold) {
  CorpusDetectorEval out;
  int matched = 0, pred_total = 0, gold_total = 0, tokens = 0;
  for (const Document& doc : corpus.documents) {
    auto it = gold.find(doc.doc_id);
    if (it == gold.end()) continue;
    fill_gold_heads(it->second, doc);
    MentionSet pred;
    for (const Passage& p : corpus.passages) {
      if (p.doc_id == doc.doc_id) pred.insert(pred.end(), p.mentions.begin(), p.mentions.end());
    }
    DetectorEval e = eval_detector(pred, it->second, doc);
    matched += e.matched;
    pred_total += e.pred_total;
    gold_total += e.gold_total;
    tokens += e.token_count;
    out.documents.push_back({doc.doc_id, e});
  }
  for (const auto& [doc_id, mentions] : gold) {
    bool known = std::any_of(corpus.documents.begin(), corpus.documents.end(),
                             [&](const Document& d) { return d.doc_id == doc_id; });
    if (!known) throw Error(ErrorCode::kValidation, "gold refers to unknown document " + doc_id);
  }
  out.overall = eval_from_counts(matched, pred_total, gold_total, tokens);
  return out;
}

Json detector_report_json(const CorpusDetectorEval& eval) {
  Json j = eval.overall;
  Json docs = Json::array();
  for (const DocumentEval& d : eval.documents) {
    Json item = d.eval;
    item["doc_id"] = d.doc_id;
    docs.push_back(std::move(item));
  }
  j["documents"] = std::move(docs);
  return j;
}

std::vector<std::string> passage_mention_ids(const Passage& passage) {
  MentionSet sorted = passage.mentions;
  sort_mentions(sorted);
  std::vector<std::string> ids;
  ids.reserve(sorted.size());
  for (const Mention& m : sorted) ids.push_back(m.mention_id);
  return ids;
}

void validate_against_corpus(const Clustering& clustering, const Corpus& corpus) {
  const Passage* p = corpus.find_passage(clustering.passage_id);
  if (p == nullptr) {
    throw Error(ErrorCode::kValidation, "annotation refers to unknown passage " +
                                            clustering.passage_id);
  }
  validate_partition(clustering, passage_mention_ids(*p));
}

std::vector<AggregateClustering> aggregate_annotations(const std::vector<Clustering>& annotations,
                                                       int tau, const Corpus* corpus) {
  std::vector<AggregateClustering> out;
  for (const auto& [passage_id, items] : by_passage(annotations)) {
    std::vector<std::string> ids;
    if (corpus != nullptr) {
      for (const Clustering& c : items) validate_against_corpus(c, *corpus);
      ids = passage_mention_ids(corpus->passage(passage_id));
    } else {
      ids = items.front().mention_ids();
      sort_mention_ids(ids);
    }
    out.push_back(aggregate(count_votes(items), AggregationConfig{tau}, ids));
  }
  return out;
}

ScoreReport score_clusterings(const std::vector<Clustering>& key,
                              const std::vector<Clustering>& response, SingletonMode mode,
                              std::optional<int> tau) {
  ScoreReport report;
  report.singleton_mode = mode;
  report.tau = tau;
  std::map<std::string, const Clustering*> keys;
  for (const Clustering& k : key) {
    if (!keys.emplace(k.passage_id, &k).second) {
      throw Error(ErrorCode::kValidation, "several gold clusterings for " + k.passage_id);
    }
  }
  std::map<std::string, const Clustering*> responses;
  for (const Clustering& r : response) {
    if (!responses.emplace(r.passage_id, &r).second) {
      throw Error(ErrorCode::kValidation, "several responses for " + r.passage_id);
    }
    if (!keys.contains(r.passage_id)) {
      throw Error(ErrorCode::kNotFound, "no gold clustering for passage " + r.passage_id);
    }
  }
  B3Counts pooled;
  for (const auto& [passage_id, k] : keys) {
    auto it = responses.find(passage_id);
    if (it == responses.end()) {
      report.warnings.push_back("no response for gold passage " + passage_id);
      continue;
    }
    const B3Counts counts = b3_counts(*k, *it->second, mode);
    pooled += counts;
    report.passages.push_back({passage_id, b3_from_counts(counts, mode)});
  }
  if (report.passages.empty()) {
    throw Error(ErrorCode::kValidation, "no passage has both a key and a response");
  }
  report.overall = b3_from_counts(pooled, mode);
  return report;
}

Json score_report_json(const ScoreReport& report) {
  auto row = [&](const std::string& id_key, const std::string& id, const B3Score& s) {
    Json j = s;
    j[id_key] = id;
    if (report.tau) j["tau"] = *report.tau;
    return j;
  };
  Json passages = Json::array();
  for (const PassageScore& p : report.passages) {
    passages.push_back(row("passage_id", p.passage_id, p.score));
  }
  Json j{{"singleton_mode", singleton_mode_name(report.singleton_mode)},
         {"passages", std::move(passages)},
         {"overall", row("group", "all", report.overall)},
         {"warnings", report.warnings}};
  if (report.tau) j["tau"] = *report.tau;
  return j;
}

std::string render_score_table(const ScoreReport& report) {
  std::ostringstream out;
  std::size_t width = 7;
  for (const PassageScore& p : report.passages) width = std::max(width, p.passage_id.size());
  auto line = [&](const std::string& name, const B3Score& s) {
    out << name << std::string(width - name.size() + 2, ' ') << fixed(s.precision) << "  "
        << fixed(s.recall) << "  " << fixed(s.f1) << '\n';
  };
  out << "passage" << std::string(width - 7 + 2, ' ') << "P       R       F1\n";
  for (const PassageScore& p : report.passages) line(p.passage_id, p.score);
  line("overall", report.overall);
  out << "(B3, singletons " << singleton_mode_name(report.singleton_mode) << "d";
  if (report.tau) out << ", tau=" << *report.tau;
  out << ")\n";
  return out.str();
}

std::vector<SweepRow> tau_sweep(const std::vector<Clustering>& gold,
                                const std::vector<Clustering>& annotations, SingletonMode mode,
                                const Corpus* corpus) {
  const auto grouped = by_passage(annotations);
  if (grouped.empty()) throw Error(ErrorCode::kValidation, "no annotations to aggregate");
  std::size_t n = SIZE_MAX;
  for (const auto& [id, items] : grouped) n = std::min(n, items.size());
  std::vector<SweepRow> rows;
  for (int tau = 1; tau <= static_cast<int>(n); ++tau) {
    std::vector<Clustering> responses;
    for (const AggregateClustering& a : aggregate_annotations(annotations, tau, corpus)) {
      responses.push_back(as_clustering(a));
    }
    rows.push_back({tau, score_clusterings(gold, responses, mode, tau).overall});
  }
  return rows;
}

Json sweep_json(const std::vector<SweepRow>& rows, SingletonMode mode) {
  Json items = Json::array();
  for (const SweepRow& r : rows) {
    Json j = r.score;
    j["tau"] = r.tau;
    items.push_back(std::move(j));
  }
  return Json{{"singleton_mode", singleton_mode_name(mode)}, {"rows", std::move(items)}};
}

std::string render_sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "tau,precision,recall,f1\n";
  for (const SweepRow& r : rows) {
    out << r.tau << ',' << fixed(r.score.precision, 6) << ',' << fixed(r.score.recall, 6) << ','
        << fixed(r.score.f1, 6) << '\n';
  }
  return out.str();
}

IaaResult iaa_report(const std::vector<Clustering>& annotations, SingletonMode mode,
                     const Corpus* corpus) {
  IaaResult result;
  result.singleton_mode = mode;
  std::function<std::string(const std::string&)> group_of = [](const std::string&) {
    return std::string("all");
  };
  if (corpus != nullptr) {
    for (const Clustering& c : annotations) validate_against_corpus(c, *corpus);
    group_of = [corpus](const std::string& passage_id) {
      return corpus->document(corpus->passage(passage_id).doc_id).domain;
    };
  }
  result.groups = pairwise_iaa(annotations, mode, group_of, &result.warnings);
  return result;
}

Json iaa_json(const IaaResult& result) {
  return Json{{"singleton_mode", singleton_mode_name(result.singleton_mode)},
              {"groups", result.groups},
              {"warnings", result.warnings}};
}

std::string render_iaa_table(const IaaResult& result) {
  std::ostringstream out;
  out << "group  passages  IAA (B3 F1 %)\n";
  for (const IAAReport& g : result.groups) {
    out << g.group << "  " << g.passages.size() << "  " << fixed(100.0 * g.mean_f1, 1) << '\n';
  }
  return out.str();
}

}  // namespace corefkit
