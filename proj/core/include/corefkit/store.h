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

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include "corefkit/annotation.h"
#include "corefkit/corpus.h"
#include "corefkit/json_io.h"
#include "corefkit/scoring.h"
#include "corefkit/tutorial.h"

namespace corefkit {

using Clock = std::chrono::system_clock;

struct StoreConfig {
  int target_annotations = 5;
  std::chrono::seconds lease_ttl{60 * 60};
  // An annotator may replace an already submitted passage.
  bool allow_resubmission = true;
  double screening_threshold = kScreeningThreshold;
  // When non-empty, admin reports require this bearer token.
  std::string admin_token;
};

void to_json(Json& j, const StoreConfig& c);
void from_json(const Json& j, StoreConfig& c);

struct AnnotatorRecord {
  std::string annotator_id;
  std::string token;
  int tutorial_step = 0;  // next step to submit
  std::optional<ScreeningResult> screening;
  int completed_passages = 0;  // derived from stored annotations

  bool screened_in() const { return screening.has_value() && screening->passed; }
};

struct Registration {
  std::string annotator_id;
  std::string token;
};

struct Assignment {
  std::string passage_id;
  Clock::time_point expires_at;
};

// Result of one tutorial submission: feedback for a training step, or the
// screening outcome for the final step.
struct TutorialOutcome {
  int step = 0;
  std::vector<LinkFeedback> feedback;
  bool advanced = false;
  int next_step = 0;
  std::optional<ScreeningResult> screening;
};

// Directory-backed annotation store:
//
//   <dir>/corpus.json                        corpus with detected mentions
//   <dir>/tutorial.json                      tutorial script
//   <dir>/store.json                         StoreConfig (optional)
//   <dir>/annotators/<annotator_id>.json     AnnotatorRecord
//   <dir>/annotations/<passage_id>/<annotator_id>.json   Clustering
//   <dir>/gold/*.json                        gold clusterings (optional)
//   <dir>/gold_mentions.json                 gold mentions (optional)
//
// Every file is replaced by atomic rename. Mutations hold an exclusive lock
// and happen one at a time; readers take a shared lock, so any interleaving
// of calls equals some sequential order.
class Store {
 public:
  using Now = std::function<Clock::time_point()>;

  // Loads and validates the store. Leftover temporary files from an
  // interrupted write are removed; every stored clustering must partition
  // its passage's mentions.
  static std::unique_ptr<Store> open(const std::filesystem::path& dir);

  // Creates `dir` holding the given corpus and tutorial (and config), then
  // opens it. Existing files are overwritten.
  static std::unique_ptr<Store> create(const std::filesystem::path& dir, const Corpus& corpus,
                                       const TutorialScript& tutorial,
                                       const StoreConfig& config = {});

  const std::filesystem::path& dir() const { return dir_; }
  const StoreConfig& config() const { return config_; }
  const Corpus& corpus() const { return corpus_; }
  const TutorialScript& tutorial() const { return tutorial_; }

  void set_clock(Now now);
  // Invoked inside every atomic write, before the rename (fault injection).
  void set_write_hook(WriteHook hook);

  Registration register_annotator();
  // Annotator id for a bearer token; Error(kUnauthorized) if unknown.
  std::string authenticate(const std::string& token) const;
  bool is_admin_token(const std::string& token) const;
  AnnotatorRecord annotator(const std::string& annotator_id) const;

  // Steps must be taken in order. Training steps advance only when the
  // submission matches gold; the screening step is scored once.
  TutorialOutcome run_tutorial_step(const std::string& annotator_id, int step_index,
                                    Clustering submitted);

  // Passage not yet done by this annotator with the fewest completed plus
  // leased annotations (ties by passage id), leased for config().lease_ttl.
  // An annotator holding a live lease gets that lease back. Returns nullopt
  // when every eligible passage is saturated.
  std::optional<Assignment> assign_next(const std::string& annotator_id);

  // Persists the clustering (annotator id taken from the caller) and
  // releases the lease. Requires a live lease, or a previous submission of
  // the same passage when resubmission is allowed (last write wins).
  void submit_annotation(const std::string& annotator_id, Clustering clustering);

  // The passage text with its mentions, plus the caller's stored clustering
  // (null if none).
  Json passage_view(const std::string& passage_id, const std::string& annotator_id) const;

  // kind: aggregate | scores | iaa | detector-eval. params: tau,
  // singletons. Results are cached by kind, params, the annotation revision
  // and the gold files' sizes and modification times.
  Json report(const std::string& kind, const std::map<std::string, std::string>& params);

  std::vector<Clustering> annotations() const;
  std::map<std::string, int> completed_counts() const;

 private:
  struct Lease {
    std::string passage_id;
    Clock::time_point expires_at;
  };

  explicit Store(std::filesystem::path dir);
  void load();
  void write(const std::filesystem::path& path, const Json& j);
  void persist_annotator(const AnnotatorRecord& record);
  void expire_leases(Clock::time_point now);
  Json compute_report(const std::string& kind, const std::map<std::string, std::string>& params,
                      const std::vector<Clustering>& annotations) const;
  std::filesystem::path annotation_path(const std::string& passage_id,
                                        const std::string& annotator_id) const;

  std::filesystem::path dir_;
  StoreConfig config_;
  Corpus corpus_;
  TutorialScript tutorial_;
  std::map<std::string, std::vector<std::string>> passage_mentions_;

  mutable std::shared_mutex mu_;
  Now now_;
  WriteHook write_hook_;
  std::map<std::string, AnnotatorRecord> annotators_;
  std::map<std::string, std::string> tokens_;  // token -> annotator id
  // passage id -> annotator id -> clustering
  std::map<std::string, std::map<std::string, Clustering>> annotations_;
  std::map<std::string, Lease> leases_;  // annotator id -> lease
  unsigned long revision_ = 0;
  std::map<std::string, Json> report_cache_;  // keyed by kind, params and revision
};

// Passage and annotator ids may contain ':'; this encodes them as file names.
std::string file_safe(const std::string& id);

}  // namespace corefkit
