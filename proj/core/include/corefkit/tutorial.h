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

#include <map>
#include <string>
#include <vector>

#include "corefkit/annotation.h"
#include "corefkit/json_io.h"

namespace corefkit {

struct TutorialMention {
  std::string mention_id;
  int start = 0;  // token positions within the step's tokens, inclusive
  int end = 0;
};

// One tutorial screen: a short text with its mentions and the expected
// clustering. `feedback` maps an error kind ("missing_link", "wrong_link")
// to the message shown for it; "{a}" and "{b}" expand to the two mentions.
struct TutorialStep {
  std::string title;
  std::string instructions;
  std::vector<std::string> tokens;
  std::vector<TutorialMention> mentions;
  std::vector<Cluster> gold;
  std::map<std::string, std::string> feedback;
  bool is_screening = false;

  std::vector<std::string> mention_ids() const;
  std::string mention_text(const std::string& mention_id) const;
};

struct TutorialScript {
  std::vector<TutorialStep> steps;
};

// Exactly one screening step and it is the last; every gold clustering
// partitions its step's mentions; spans lie within the step's tokens.
void validate_tutorial(const TutorialScript& script);

struct LinkFeedback {
  std::string kind;  // "missing_link" or "wrong_link"
  std::string first;
  std::string second;
  std::string message;
};

// Pairwise comparison of a submission with the step's gold clustering:
// gold links the submission lacks, then submitted links gold lacks.
// The submission must partition the step's mentions.
std::vector<LinkFeedback> tutorial_feedback(const TutorialStep& step, const Clustering& submitted);

// Gold clustering of step `index` as a Clustering ("tutorial:<index>").
Clustering step_gold(const TutorialStep& step, int index);
std::string tutorial_passage_id(int index);

void to_json(Json& j, const TutorialMention& m);
void from_json(const Json& j, TutorialMention& m);
void to_json(Json& j, const TutorialStep& s);
void from_json(const Json& j, TutorialStep& s);
void to_json(Json& j, const TutorialScript& s);
void from_json(const Json& j, TutorialScript& s);
void to_json(Json& j, const LinkFeedback& f);

// Script view for annotators: gold clusterings removed.
Json public_tutorial_json(const TutorialScript& script);

TutorialScript load_tutorial(const std::filesystem::path& path);

// The bundled five-step script (pronouns, possessives, nesting, places,
// then screening).
TutorialScript default_tutorial();

}  // namespace corefkit
