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

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "corefkit/annotation.h"

namespace corefkit {

enum class SingletonMode { kInclude, kExclude };

std::string_view singleton_mode_name(SingletonMode mode);
// Accepts "include" / "exclude"; throws Error(kInvalidArgument) otherwise.
SingletonMode parse_singleton_mode(std::string_view text);

struct B3Score {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  SingletonMode singleton_mode = SingletonMode::kInclude;
};

// Unnormalized B3 sums, so several passages can be pooled. precision_num is
// the sum over response mentions of |R(m) & K(m)| / |R(m)|, precision_den
// the number of response mentions; recall likewise over key mentions.
struct B3Counts {
  double precision_num = 0.0;
  double precision_den = 0.0;
  double recall_num = 0.0;
  double recall_den = 0.0;

  B3Counts& operator+=(const B3Counts& other);
};

B3Counts b3_counts(const Clustering& key, const Clustering& response, SingletonMode mode);

// Turns sums into a score. An empty side scores 0 on its pass; both sides
// empty (possible only after singleton exclusion) scores 1.
B3Score b3_from_counts(const B3Counts& counts, SingletonMode mode);

// B3 of `response` against `key`. Both must cover the same, non-empty,
// mention universe. In exclude mode size-1 clusters are removed from each
// side independently before scoring.
B3Score b3(const Clustering& key, const Clustering& response, SingletonMode mode);

struct PassageAgreement {
  std::string passage_id;
  std::string group;
  int n_annotators = 0;
  double mean_f1 = 0.0;  // mean B3 F1 over unordered annotator pairs
};

struct IAAReport {
  std::string group;
  double mean_f1 = 0.0;  // mean over the group's passages
  double min_f1 = 0.0;
  double max_f1 = 0.0;
  std::vector<PassageAgreement> passages;
};

// Mean pairwise B3 F1 of the annotations of one passage (>= 2 required).
double passage_agreement(const std::vector<Clustering>& annotations, SingletonMode mode);

// Groups annotations by passage, scores each passage with passage_agreement
// and averages per group (group_of maps a passage id to its group, e.g. the
// document domain). Passages with fewer than two annotations are skipped and
// reported in `warnings`. Groups come back sorted by name.
std::vector<IAAReport> pairwise_iaa(
    const std::vector<Clustering>& annotations, SingletonMode mode,
    const std::function<std::string(const std::string&)>& group_of,
    std::vector<std::string>* warnings = nullptr);

inline constexpr double kScreeningThreshold = 0.90;

struct ScreeningResult {
  std::string annotator_id;
  double b3_f1 = 0.0;
  double threshold = kScreeningThreshold;
  bool passed = false;
};

// f1 >= threshold, allowing for floating-point rounding of exact ratios.
bool passes_threshold(double f1, double threshold);

// B3 F1 (singletons included) of the candidate against gold.
ScreeningResult screening_pass(const Clustering& candidate, const Clustering& gold,
                               double threshold = kScreeningThreshold);

}  // namespace corefkit
