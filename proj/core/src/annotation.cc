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

#include "corefkit/annotation.h"

#include <algorithm>
#include <charconv>
#include <optional>
#include <set>
#include <unordered_map>

#include "corefkit/error.h"
#include "corefkit/union_find.h"

namespace corefkit {
namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const std::string& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

struct IdShape {
  int start;
  int end;
};

std::optional<IdShape> parse_span_suffix(const std::string& id) {
  const std::size_t colon = id.rfind(':');
  if (colon == std::string::npos) return std::nullopt;
  const std::string_view tail = std::string_view(id).substr(colon + 1);
  const std::size_t dash = tail.find('-');
  if (dash == std::string_view::npos) return std::nullopt;
  IdShape shape{};
  auto parse = [](std::string_view s, int& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size() && !s.empty();
  };
  if (!parse(tail.substr(0, dash), shape.start) || !parse(tail.substr(dash + 1), shape.end)) {
    return std::nullopt;
  }
  return shape;
}

}  // namespace

std::vector<std::string> Clustering::mention_ids() const {
  std::vector<std::string> ids;
  for (const Cluster& c : clusters) ids.insert(ids.end(), c.begin(), c.end());
  std::sort(ids.begin(), ids.end());
  return ids;
}

void validate_partition(const Clustering& clustering,
                        const std::vector<std::string>& mention_ids) {
  const std::set<std::string> expected(mention_ids.begin(), mention_ids.end());
  std::set<std::string> seen;
  std::vector<std::string> duplicated;
  std::vector<std::string> unknown;
  bool empty_cluster = false;
  for (const Cluster& c : clustering.clusters) {
    if (c.empty()) empty_cluster = true;
    for (const std::string& m : c) {
      if (!seen.insert(m).second) duplicated.push_back(m);
      if (!expected.contains(m)) unknown.push_back(m);
    }
  }
  std::vector<std::string> missing;
  for (const std::string& m : expected) {
    if (!seen.contains(m)) missing.push_back(m);
  }
  if (missing.empty() && unknown.empty() && duplicated.empty() && !empty_cluster) return;

  std::vector<std::string> details;
  if (!missing.empty()) details.push_back("unassigned mentions: " + join(missing));
  if (!unknown.empty()) details.push_back("unknown mentions: " + join(unknown));
  if (!duplicated.empty()) details.push_back("mentions in several clusters: " + join(duplicated));
  if (empty_cluster) details.push_back("empty cluster");
  throw Error(ErrorCode::kValidation,
              "clustering of " + clustering.passage_id + " by " + clustering.annotator_id +
                  " is not a partition of the passage mentions",
              std::move(details));
}

MentionPair make_pair_key(const std::string& a, const std::string& b) {
  return a < b ? MentionPair{a, b} : MentionPair{b, a};
}

int VoteMatrix::count(const std::string& a, const std::string& b) const {
  auto it = votes.find(make_pair_key(a, b));
  return it == votes.end() ? 0 : it->second;
}

VoteMatrix count_votes(const std::vector<Clustering>& annotations) {
  if (annotations.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "count_votes needs at least one annotation");
  }
  const Clustering& first = annotations.front();
  const std::vector<std::string> universe = first.mention_ids();
  validate_partition(first, universe);

  VoteMatrix matrix;
  matrix.passage_id = first.passage_id;
  matrix.n_annotators = static_cast<int>(annotations.size());
  for (const Clustering& c : annotations) {
    if (c.passage_id != first.passage_id) {
      throw Error(ErrorCode::kValidation, "annotations mix passages " + first.passage_id +
                                              " and " + c.passage_id);
    }
    validate_partition(c, universe);
    for (const Cluster& cluster : c.clusters) {
      for (std::size_t i = 0; i < cluster.size(); ++i) {
        for (std::size_t j = i + 1; j < cluster.size(); ++j) {
          ++matrix.votes[make_pair_key(cluster[i], cluster[j])];
        }
      }
    }
  }
  return matrix;
}

AggregateClustering aggregate(const VoteMatrix& votes, const AggregationConfig& cfg,
                              const std::vector<std::string>& mention_ids) {
  if (cfg.tau < 1 || cfg.tau > votes.n_annotators) {
    throw Error(ErrorCode::kInvalidArgument,
                "tau must lie in [1, " + std::to_string(votes.n_annotators) + "], got " +
                    std::to_string(cfg.tau));
  }
  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < mention_ids.size(); ++i) {
    if (!position.emplace(mention_ids[i], i).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate mention id " + mention_ids[i]);
    }
  }
  UnionFind components(mention_ids.size());
  for (const auto& [pair, count] : votes.votes) {
    auto a = position.find(pair.first);
    auto b = position.find(pair.second);
    if (a == position.end() || b == position.end()) {
      throw Error(ErrorCode::kValidation,
                  "vote on unknown mention pair (" + pair.first + ", " + pair.second + ")");
    }
    if (count >= cfg.tau) components.unite(a->second, b->second);
  }

  AggregateClustering out;
  out.passage_id = votes.passage_id;
  out.tau = cfg.tau;
  std::unordered_map<std::size_t, std::size_t> cluster_of_root;
  for (std::size_t i = 0; i < mention_ids.size(); ++i) {
    const std::size_t root = components.find(i);
    auto [it, inserted] = cluster_of_root.emplace(root, out.clusters.size());
    if (inserted) out.clusters.emplace_back();
    out.clusters[it->second].push_back(mention_ids[i]);
  }
  return out;
}

Clustering as_clustering(const AggregateClustering& agg, const std::string& annotator_id) {
  return Clustering{agg.passage_id, annotator_id, agg.clusters};
}

void sort_mention_ids(std::vector<std::string>& ids) {
  std::stable_sort(ids.begin(), ids.end(), [](const std::string& a, const std::string& b) {
    const auto sa = parse_span_suffix(a);
    const auto sb = parse_span_suffix(b);
    if (sa && sb) {
      if (sa->start != sb->start) return sa->start < sb->start;
      if (sa->end != sb->end) return sa->end > sb->end;
      return a < b;
    }
    if (sa || sb) return sa.has_value();
    return a < b;
  });
}

}  // namespace corefkit
