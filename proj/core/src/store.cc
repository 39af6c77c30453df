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

#include "corefkit/store.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <mutex>
#include <random>

#include "corefkit/error.h"
#include "corefkit/pipeline.h"

namespace corefkit {

namespace fs = std::filesystem;

namespace {

std::string random_token() {
  static std::mutex mu;
  static std::mt19937_64 rng{std::random_device{}()};
  std::lock_guard lock(mu);
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(rng()),
                static_cast<unsigned long long>(rng()));
  return buf;
}

int int_param(const std::map<std::string, std::string>& params, const std::string& name,
              int fallback) {
  auto it = params.find(name);
  if (it == params.end() || it->second.empty()) return fallback;
  try {
    std::size_t used = 0;
    const int v = std::stoi(it->second, &used);
    if (used == it->second.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::kInvalidArgument, "parameter " + name + " must be an integer");
}

Json annotator_json(const AnnotatorRecord& r) {
  Json j{{"annotator_id", r.annotator_id}, {"token", r.token}, {"tutorial_step", r.tutorial_step}};
  j["screening"] = r.screening ? Json(*r.screening) : Json(nullptr);
  return j;
}

AnnotatorRecord annotator_from_json(const Json& j) {
  AnnotatorRecord r;
  j.at("annotator_id").get_to(r.annotator_id);
  j.at("token").get_to(r.token);
  r.tutorial_step = j.value("tutorial_step", 0);
  if (j.contains("screening") && !j["screening"].is_null()) {
    r.screening = j["screening"].get<ScreeningResult>();
  }
  return r;
}

// Changes whenever the set of gold files or any of their contents changes.
std::string gold_signature(const fs::path& dir) {
  std::vector<fs::path> files;
  if (fs::is_directory(dir / "gold")) {
    for (const auto& entry : fs::recursive_directory_iterator(dir / "gold")) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
  }
  if (fs::exists(dir / "gold_mentions.json")) files.push_back(dir / "gold_mentions.json");
  std::sort(files.begin(), files.end());
  std::string sig;
  for (const fs::path& f : files) {
    std::error_code ec;
    const auto size = fs::file_size(f, ec);
    const auto mtime = fs::last_write_time(f, ec).time_since_epoch().count();
    sig += f.string() + ":" + std::to_string(size) + ":" + std::to_string(mtime) + ";";
  }
  return sig;
}

}  // namespace

std::string file_safe(const std::string& id) {
  std::string out;
  for (unsigned char c : id) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.') {
      out += static_cast<char>(c);
    } else {
      char buf[4];
      std::snprintf(buf, sizeof buf, "%%%02X", c);
      out += buf;
    }
  }
  if (out.empty() || out == "." || out == "..") out = "%" + out;
  return out;
}

void to_json(Json& j, const StoreConfig& c) {
  j = Json{{"target_annotations", c.target_annotations},
           {"lease_ttl_seconds", c.lease_ttl.count()},
           {"allow_resubmission", c.allow_resubmission},
           {"screening_threshold", c.screening_threshold},
           {"admin_token", c.admin_token}};
}

void from_json(const Json& j, StoreConfig& c) {
  c.target_annotations = j.value("target_annotations", 5);
  c.lease_ttl = std::chrono::seconds(j.value("lease_ttl_seconds", 3600));
  c.allow_resubmission = j.value("allow_resubmission", true);
  c.screening_threshold = j.value("screening_threshold", kScreeningThreshold);
  c.admin_token = j.value("admin_token", std::string());
}

Store::Store(fs::path dir) : dir_(std::move(dir)), now_([] { return Clock::now(); }) {}

std::unique_ptr<Store> Store::open(const fs::path& dir) {
  std::unique_ptr<Store> store(new Store(dir));
  store->load();
  return store;
}

std::unique_ptr<Store> Store::create(const fs::path& dir, const Corpus& corpus,
                                     const TutorialScript& tutorial, const StoreConfig& config) {
  validate_corpus(corpus);
  validate_tutorial(tutorial);
  write_file_atomic(dir / "corpus.json", dump(Json(corpus)));
  write_file_atomic(dir / "tutorial.json", dump(Json(tutorial)));
  write_file_atomic(dir / "store.json", dump(Json(config)));
  return open(dir);
}

void Store::load() {
  if (!fs::is_directory(dir_)) throw Error(ErrorCode::kIo, "store directory " + dir_.string() + " not found");

  // Interrupted writes leave "<name>.tmp.<pid>.<n>" files; they never hold
  // a committed record.
  for (const auto& entry : fs::recursive_directory_iterator(dir_)) {
    if (entry.is_regular_file() && is_temporary_file(entry.path())) fs::remove(entry.path());
  }

  corpus_ = load_corpus(dir_ / "corpus.json");
  tutorial_ = load_tutorial(dir_ / "tutorial.json");
  if (fs::exists(dir_ / "store.json")) {
    config_ = read_json_file(dir_ / "store.json").get<StoreConfig>();
  }
  if (config_.target_annotations < 1) {
    throw Error(ErrorCode::kValidation, "target_annotations must be positive");
  }
  for (const Passage& p : corpus_.passages) passage_mentions_[p.passage_id] = passage_mention_ids(p);

  if (fs::is_directory(dir_ / "annotators")) {
    for (const auto& entry : fs::directory_iterator(dir_ / "annotators")) {
      if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
      AnnotatorRecord r = annotator_from_json(read_json_file(entry.path()));
      tokens_[r.token] = r.annotator_id;
      annotators_[r.annotator_id] = std::move(r);
    }
  }
  if (fs::is_directory(dir_ / "annotations")) {
    for (const Clustering& c : load_clusterings(dir_ / "annotations")) {
      validate_against_corpus(c, corpus_);
      if (!annotations_[c.passage_id].emplace(c.annotator_id, c).second) {
        throw Error(ErrorCode::kValidation, "duplicate annotation of " + c.passage_id + " by " +
                                                c.annotator_id);
      }
      auto it = annotators_.find(c.annotator_id);
      if (it != annotators_.end()) ++it->second.completed_passages;
    }
  }
  for (const auto& [passage_id, by_annotator] : annotations_) {
    if (static_cast<int>(by_annotator.size()) > config_.target_annotations) {
      throw Error(ErrorCode::kValidation, "passage " + passage_id + " has more than " +
                                              std::to_string(config_.target_annotations) +
                                              " annotations");
    }
  }
}

void Store::set_clock(Now now) {
  std::unique_lock lock(mu_);
  now_ = std::move(now);
}

void Store::set_write_hook(WriteHook hook) {
  std::unique_lock lock(mu_);
  write_hook_ = std::move(hook);
}

void Store::write(const fs::path& path, const Json& j) {
  write_file_atomic(path, dump(j), write_hook_);
}

void Store::persist_annotator(const AnnotatorRecord& record) {
  write(dir_ / "annotators" / (file_safe(record.annotator_id) + ".json"), annotator_json(record));
}

fs::path Store::annotation_path(const std::string& passage_id,
                                const std::string& annotator_id) const {
  return dir_ / "annotations" / file_safe(passage_id) / (file_safe(annotator_id) + ".json");
}

Registration Store::register_annotator() {
  std::unique_lock lock(mu_);
  AnnotatorRecord record;
  for (std::size_t n = annotators_.size() + 1;; ++n) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "annotator-%04zu", n);
    if (!annotators_.contains(buf)) {
      record.annotator_id = buf;
      break;
    }
  }
  record.token = random_token();
  persist_annotator(record);
  tokens_[record.token] = record.annotator_id;
  annotators_[record.annotator_id] = record;
  return {record.annotator_id, record.token};
}

std::string Store::authenticate(const std::string& token) const {
  std::shared_lock lock(mu_);
  auto it = tokens_.find(token);
  if (token.empty() || it == tokens_.end()) {
    throw Error(ErrorCode::kUnauthorized, "unknown or missing annotator token");
  }
  return it->second;
}

bool Store::is_admin_token(const std::string& token) const {
  return config_.admin_token.empty() || token == config_.admin_token;
}

AnnotatorRecord Store::annotator(const std::string& annotator_id) const {
  std::shared_lock lock(mu_);
  auto it = annotators_.find(annotator_id);
  if (it == annotators_.end()) throw Error(ErrorCode::kNotFound, "unknown annotator " + annotator_id);
  return it->second;
}

TutorialOutcome Store::run_tutorial_step(const std::string& annotator_id, int step_index,
                                         Clustering submitted) {
  std::unique_lock lock(mu_);
  auto it = annotators_.find(annotator_id);
  if (it == annotators_.end()) throw Error(ErrorCode::kNotFound, "unknown annotator " + annotator_id);
  AnnotatorRecord record = it->second;
  if (record.screening.has_value()) {
    throw Error(ErrorCode::kConflict, "tutorial already completed by " + annotator_id);
  }
  if (step_index != record.tutorial_step) {
    throw Error(ErrorCode::kConflict, "out-of-order tutorial step " + std::to_string(step_index) +
                                          " (expected " + std::to_string(record.tutorial_step) + ")");
  }
  const TutorialStep& step = tutorial_.steps.at(static_cast<std::size_t>(step_index));
  submitted.passage_id = tutorial_passage_id(step_index);
  submitted.annotator_id = annotator_id;

  TutorialOutcome outcome;
  outcome.step = step_index;
  if (step.is_screening) {
    validate_partition(submitted, step.mention_ids());
    ScreeningResult result =
        screening_pass(submitted, step_gold(step, step_index), config_.screening_threshold);
    record.screening = result;
    record.tutorial_step = step_index + 1;
    outcome.screening = result;
    outcome.advanced = true;
  } else {
    outcome.feedback = tutorial_feedback(step, submitted);
    if (outcome.feedback.empty()) {
      record.tutorial_step = step_index + 1;
      outcome.advanced = true;
    }
  }
  outcome.next_step = record.tutorial_step;
  if (outcome.advanced) {
    persist_annotator(record);
    it->second = record;
  }
  return outcome;
}

void Store::expire_leases(Clock::time_point now) {
  std::erase_if(leases_, [now](const auto& item) { return item.second.expires_at <= now; });
}

std::optional<Assignment> Store::assign_next(const std::string& annotator_id) {
  std::unique_lock lock(mu_);
  auto rec = annotators_.find(annotator_id);
  if (rec == annotators_.end()) throw Error(ErrorCode::kNotFound, "unknown annotator " + annotator_id);
  if (!rec->second.screened_in()) {
    throw Error(ErrorCode::kForbidden, annotator_id + " has not passed the screening example");
  }
  const Clock::time_point now = now_();
  expire_leases(now);
  if (auto held = leases_.find(annotator_id); held != leases_.end()) {
    return Assignment{held->second.passage_id, held->second.expires_at};
  }

  std::map<std::string, int> leased;
  for (const auto& [annotator, lease] : leases_) ++leased[lease.passage_id];

  const Passage* best = nullptr;
  int best_load = 0;
  for (const Passage& p : corpus_.passages) {
    int completed = 0;
    if (auto a = annotations_.find(p.passage_id); a != annotations_.end()) {
      if (a->second.contains(annotator_id)) continue;
      completed = static_cast<int>(a->second.size());
    }
    const int load = completed + leased[p.passage_id];
    if (load >= config_.target_annotations) continue;
    if (best == nullptr || load < best_load ||
        (load == best_load && p.passage_id < best->passage_id)) {
      best = &p;
      best_load = load;
    }
  }
  if (best == nullptr) return std::nullopt;
  Lease lease{best->passage_id, now + config_.lease_ttl};
  leases_[annotator_id] = lease;
  return Assignment{lease.passage_id, lease.expires_at};
}

void Store::submit_annotation(const std::string& annotator_id, Clustering clustering) {
  std::unique_lock lock(mu_);
  auto rec = annotators_.find(annotator_id);
  if (rec == annotators_.end()) throw Error(ErrorCode::kNotFound, "unknown annotator " + annotator_id);
  if (!rec->second.screened_in()) {
    throw Error(ErrorCode::kForbidden, annotator_id + " has not passed the screening example");
  }
  if (!clustering.annotator_id.empty() && clustering.annotator_id != annotator_id) {
    throw Error(ErrorCode::kForbidden, "cannot submit on behalf of " + clustering.annotator_id);
  }
  clustering.annotator_id = annotator_id;
  auto mentions = passage_mentions_.find(clustering.passage_id);
  if (mentions == passage_mentions_.end()) {
    throw Error(ErrorCode::kNotFound, "unknown passage " + clustering.passage_id);
  }

  expire_leases(now_());
  auto lease = leases_.find(annotator_id);
  const bool leased = lease != leases_.end() && lease->second.passage_id == clustering.passage_id;
  auto& stored = annotations_[clustering.passage_id];
  const bool resubmission = stored.contains(annotator_id);
  if (!leased && !(resubmission && config_.allow_resubmission)) {
    throw Error(ErrorCode::kConflict, "no live lease on " + clustering.passage_id + " for " + annotator_id);
  }
  if (!resubmission && static_cast<int>(stored.size()) >= config_.target_annotations) {
    throw Error(ErrorCode::kConflict, "passage " + clustering.passage_id + " is saturated");
  }
  validate_partition(clustering, mentions->second);

  write(annotation_path(clustering.passage_id, annotator_id), Json(clustering));

  stored[annotator_id] = std::move(clustering);
  if (leased) leases_.erase(lease);
  if (!resubmission) ++rec->second.completed_passages;
  ++revision_;
}

Json Store::passage_view(const std::string& passage_id, const std::string& annotator_id) const {
  const Passage& p = corpus_.passage(passage_id);
  const Document& doc = corpus_.document(p.doc_id);
  Json sentences = Json::array();
  for (int s = p.first_sentence; s <= p.last_sentence; ++s) {
    const Sentence& sentence = doc.sentences[static_cast<std::size_t>(s)];
    Json tokens = Json::array();
    for (const Token& t : sentence.tokens) {
      tokens.push_back(Json{{"offset", t.doc_offset}, {"surface", t.surface}});
    }
    sentences.push_back(Json{{"sent_id", sentence.sent_id}, {"tokens", std::move(tokens)}});
  }
  MentionSet mentions = p.mentions;
  sort_mentions(mentions);
  Json view{{"passage_id", p.passage_id},
            {"doc_id", p.doc_id},
            {"domain", doc.domain},
            {"token_count", p.token_count},
            {"sentences", std::move(sentences)},
            {"mentions", mentions},
            {"draft", nullptr}};
  std::shared_lock lock(mu_);
  if (auto a = annotations_.find(passage_id); a != annotations_.end()) {
    if (auto c = a->second.find(annotator_id); c != a->second.end()) view["draft"] = c->second;
  }
  return view;
}

std::vector<Clustering> Store::annotations() const {
  std::shared_lock lock(mu_);
  std::vector<Clustering> out;
  for (const auto& [passage_id, by_annotator] : annotations_) {
    for (const auto& [annotator, c] : by_annotator) out.push_back(c);
  }
  return out;
}

std::map<std::string, int> Store::completed_counts() const {
  std::shared_lock lock(mu_);
  std::map<std::string, int> out;
  for (const Passage& p : corpus_.passages) out[p.passage_id] = 0;
  for (const auto& [passage_id, by_annotator] : annotations_) {
    out[passage_id] = static_cast<int>(by_annotator.size());
  }
  return out;
}

Json Store::report(const std::string& kind, const std::map<std::string, std::string>& params) {
  std::vector<Clustering> snapshot;
  std::string digest_input = kind;
  for (const auto& [k, v] : params) digest_input += "|" + k + "=" + v;
  digest_input += "|gold=" + gold_signature(dir_);
  {
    std::shared_lock lock(mu_);
    digest_input += "|rev=" + std::to_string(revision_);
    if (auto it = report_cache_.find(digest_input); it != report_cache_.end()) return it->second;
    for (const auto& [passage_id, by_annotator] : annotations_) {
      for (const auto& [annotator, c] : by_annotator) snapshot.push_back(c);
    }
  }
  Json result = compute_report(kind, params, snapshot);
  std::unique_lock lock(mu_);
  report_cache_[digest_input] = result;
  return result;
}

Json Store::compute_report(const std::string& kind, const std::map<std::string, std::string>& params,
                           const std::vector<Clustering>& annotations) const {
  auto mode_param = [&](SingletonMode fallback) {
    auto it = params.find("singletons");
    return it == params.end() || it->second.empty() ? fallback : parse_singleton_mode(it->second);
  };
  auto eligible = [&](int tau, std::vector<std::string>& skipped) {
    std::map<std::string, std::vector<Clustering>> grouped;
    for (const Clustering& c : annotations) grouped[c.passage_id].push_back(c);
    std::vector<Clustering> out;
    for (auto& [passage_id, items] : grouped) {
      if (static_cast<int>(items.size()) < tau) {
        skipped.push_back("passage " + passage_id + " has " + std::to_string(items.size()) +
                          " annotation(s), fewer than tau");
        continue;
      }
      out.insert(out.end(), items.begin(), items.end());
    }
    return out;
  };
  auto load_gold = [&] {
    if (!fs::is_directory(dir_ / "gold")) {
      throw Error(ErrorCode::kNotFound, "missing gold clusterings (" + (dir_ / "gold").string() + ")");
    }
    return load_clusterings(dir_ / "gold");
  };

  if (kind == "aggregate") {
    const int tau = int_param(params, "tau", 3);
    std::vector<std::string> skipped;
    const std::vector<Clustering> usable = eligible(tau, skipped);
    Json aggs = Json::array();
    for (const AggregateClustering& a : aggregate_annotations(usable, tau, &corpus_)) aggs.push_back(a);
    return Json{{"kind", kind}, {"tau", tau}, {"aggregates", std::move(aggs)}, {"warnings", skipped}};
  }
  if (kind == "scores") {
    const std::vector<Clustering> gold = load_gold();
    const SingletonMode mode = mode_param(SingletonMode::kInclude);
    if (params.contains("tau") && !params.at("tau").empty()) {
      const int tau = int_param(params, "tau", 3);
      std::vector<std::string> skipped;
      std::vector<Clustering> responses;
      for (const AggregateClustering& a : aggregate_annotations(eligible(tau, skipped), tau, &corpus_)) {
        responses.push_back(as_clustering(a));
      }
      Json j = score_report_json(score_clusterings(gold, responses, mode, tau));
      j["kind"] = kind;
      for (const std::string& s : skipped) j["warnings"].push_back(s);
      return j;
    }
    Json j = sweep_json(tau_sweep(gold, annotations, mode, &corpus_), mode);
    j["kind"] = kind;
    return j;
  }
  if (kind == "iaa") {
    Json j = iaa_json(iaa_report(annotations, mode_param(SingletonMode::kExclude), &corpus_));
    j["kind"] = kind;
    return j;
  }
  if (kind == "detector-eval") {
    if (!fs::exists(dir_ / "gold_mentions.json")) {
      throw Error(ErrorCode::kNotFound, "missing gold mentions (" + (dir_ / "gold_mentions.json").string() + ")");
    }
    Json j = detector_report_json(eval_corpus_detector(corpus_, load_gold_mentions(dir_ / "gold_mentions.json")));
    j["kind"] = kind;
    return j;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown report kind '" + kind + "'");
}

}  // namespace corefkit
