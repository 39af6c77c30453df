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
#include <utility>
#include <vector>

namespace corefkit {

using Cluster = std::vector<std::string>;

// One annotator's partition of a passage's mentions into entities.
struct Clustering {
  std::string passage_id;
  std::string annotator_id;
  std::vector<Cluster> clusters;

  // All mention ids in the clustering, sorted.
  std::vector<std::string> mention_ids() const;

  bool operator==(const Clustering&) const = default;
};

// Throws Error(kValidation) unless `clustering` partitions `mention_ids`
// exactly. Details name every offending mention id.
void validate_partition(const Clustering& clustering,
                        const std::vector<std::string>& mention_ids);

// Unordered mention pair with first < second.
using MentionPair = std::pair<std::string, std::string>;
MentionPair make_pair_key(const std::string& a, const std::string& b);

struct VoteMatrix {
  std::string passage_id;
  int n_annotators = 0;
  // Pairs with at least one vote; absent pairs have zero votes.
  std::map<MentionPair, int> votes;

  int count(const std::string& a, const std::string& b) const;
};

struct AggregationConfig {
  int tau = 3;
};

struct AggregateClustering {
  std::string passage_id;
  int tau = 0;
  std::vector<Cluster> clusters;

  bool operator==(const AggregateClustering&) const = default;
};

// For each unordered mention pair, the number of annotators who put both
// mentions in one cluster. All annotations must cover the same passage and
// the same mention set (Error(kValidation) otherwise).
VoteMatrix count_votes(const std::vector<Clustering>& annotations);

// Links pairs with at least cfg.tau votes and returns the connected
// components over `mention_ids`. Members keep the order of `mention_ids`;
// clusters are ordered by their first member. Requires 1 <= tau <= N.
AggregateClustering aggregate(const VoteMatrix& votes, const AggregationConfig& cfg,
                              const std::vector<std::string>& mention_ids);

// Clustering view of an aggregate, for scoring.
Clustering as_clustering(const AggregateClustering& agg,
                         const std::string& annotator_id = "aggregate");

// Order mention ids of the form "<passage>:<start>-<end>" by (start, longer
// first); ids without that shape sort lexicographically after them.
void sort_mention_ids(std::vector<std::string>& ids);

}  // namespace corefkit
