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

#include "corefkit/scoring.h"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "corefkit/error.h"

namespace corefkit {
namespace {

std::vector<Cluster> scored_clusters(const Clustering& c, SingletonMode mode) {
  std::vector<Cluster> out;
  for (const Cluster& cluster : c.clusters) {
    if (mode == SingletonMode::kExclude && cluster.size() < 2) continue;
    out.push_back(cluster);
  }
  return out;
}

// Sum over mentions of `side` of |S(m) & O(m)| / |S(m)|, where O(m) is the
// cluster of `other` holding m (empty if none).
double overlap_sum(const std::vector<Cluster>& side, const std::vector<Cluster>& other) {
  std::unordered_map<std::string, std::size_t> other_cluster;
  for (std::size_t i = 0; i < other.size(); ++i) {
    for (const std::string& m : other[i]) other_cluster.emplace(m, i);
  }
  double sum = 0.0;
  for (const Cluster& cluster : side) {
    std::map<std::size_t, std::size_t> overlap;
    for (const std::string& m : cluster) {
      auto it = other_cluster.find(m);
      if (it != other_cluster.end()) ++overlap[it->second];
    }
    double squares = 0.0;
    for (const auto& [idx, n] : overlap) squares += static_cast<double>(n * n);
    sum += squares / static_cast<double>(cluster.size());
  }
  return sum;
}

std::size_t mention_count(const std::vector<Cluster>& clusters) {
  std::size_t n = 0;
  for (const Cluster& c : clusters) n += c.size();
  return n;
}

}  // namespace

std::string_view singleton_mode_name(SingletonMode mode) {
  return mode == SingletonMode::kInclude ? "include" : "exclude";
}

SingletonMode parse_singleton_mode(std::string_view text) {
  if (text == "include") return SingletonMode::kInclude;
  if (text == "exclude") return SingletonMode::kExclude;
  throw Error(ErrorCode::kInvalidArgument,
              "singleton mode must be 'include' or 'exclude', got '" + std::string(text) + "'");
}

B3Counts& B3Counts::operator+=(const B3Counts& other) {
  precision_num += other.precision_num;
  precision_den += other.precision_den;
  recall_num += other.recall_num;
  recall_den += other.recall_den;
  return *this;
}

B3Counts b3_counts(const Clustering& key, const Clustering& response, SingletonMode mode) {
  const std::vector<std::string> key_ids = key.mention_ids();
  if (key_ids.empty()) {
    throw Error(ErrorCode::kValidation, "empty mention universe for " + key.passage_id);
  }
  if (key_ids != response.mention_ids()) {
    throw Error(ErrorCode::kValidation, "key and response of " + key.passage_id +
                                            " cover different mentions");
  }
  validate_partition(key, key_ids);
  validate_partition(response, key_ids);

  const std::vector<Cluster> k = scored_clusters(key, mode);
  const std::vector<Cluster> r = scored_clusters(response, mode);
  B3Counts counts;
  counts.precision_num = overlap_sum(r, k);
  counts.precision_den = static_cast<double>(mention_count(r));
  counts.recall_num = overlap_sum(k, r);
  counts.recall_den = static_cast<double>(mention_count(k));
  return counts;
}

B3Score b3_from_counts(const B3Counts& counts, SingletonMode mode) {
  B3Score s;
  s.singleton_mode = mode;
  if (counts.precision_den == 0.0 && counts.recall_den == 0.0) {
    s.precision = s.recall = s.f1 = 1.0;
    return s;
  }
  s.precision = counts.precision_den > 0.0 ? counts.precision_num / counts.precision_den : 0.0;
  s.recall = counts.recall_den > 0.0 ? counts.recall_num / counts.recall_den : 0.0;
  s.f1 = s.precision + s.recall > 0.0
             ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
             : 0.0;
  return s;
}

B3Score b3(const Clustering& key, const Clustering& response, SingletonMode mode) {
  return b3_from_counts(b3_counts(key, response, mode), mode);
}

double passage_agreement(const std::vector<Clustering>& annotations, SingletonMode mode) {
  if (annotations.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "agreement needs at least two annotations");
  }
  double sum = 0.0;
  int pairs = 0;
  for (std::size_t i = 0; i < annotations.size(); ++i) {
    for (std::size_t j = i + 1; j < annotations.size(); ++j) {
      sum += b3(annotations[i], annotations[j], mode).f1;
      ++pairs;
    }
  }
  return sum / pairs;
}

std::vector<IAAReport> pairwise_iaa(
    const std::vector<Clustering>& annotations, SingletonMode mode,
    const std::function<std::string(const std::string&)>& group_of,
    std::vector<std::string>* warnings) {
  std::map<std::string, std::vector<Clustering>> by_passage;
  for (const Clustering& c : annotations) by_passage[c.passage_id].push_back(c);

  std::map<std::string, IAAReport> groups;
  for (auto& [passage_id, group_annotations] : by_passage) {
    if (group_annotations.size() < 2) {
      if (warnings != nullptr) {
        warnings->push_back("passage " + passage_id + " has " +
                            std::to_string(group_annotations.size()) +
                            " annotation(s); skipped");
      }
      continue;
    }
    PassageAgreement pa;
    pa.passage_id = passage_id;
    pa.group = group_of ? group_of(passage_id) : std::string("all");
    pa.n_annotators = static_cast<int>(group_annotations.size());
    pa.mean_f1 = passage_agreement(group_annotations, mode);
    IAAReport& report = groups[pa.group];
    report.group = pa.group;
    report.passages.push_back(std::move(pa));
  }

  std::vector<IAAReport> out;
  for (auto& [name, report] : groups) {
    double sum = 0.0;
    report.min_f1 = 1.0;
    report.max_f1 = 0.0;
    for (const PassageAgreement& pa : report.passages) {
      sum += pa.mean_f1;
      report.min_f1 = std::min(report.min_f1, pa.mean_f1);
      report.max_f1 = std::max(report.max_f1, pa.mean_f1);
    }
    report.mean_f1 = sum / static_cast<double>(report.passages.size());
    out.push_back(std::move(report));
  }
  return out;
}

bool passes_threshold(double f1, double threshold) { return f1 >= threshold - 1e-9; }

ScreeningResult screening_pass(const Clustering& candidate, const Clustering& gold,
                               double threshold) {
  ScreeningResult result;
  result.annotator_id = candidate.annotator_id;
  result.threshold = threshold;
  result.b3_f1 = b3(gold, candidate, SingletonMode::kInclude).f1;
  result.passed = passes_threshold(result.b3_f1, threshold);
  return result;
}

}  // namespace corefkit
