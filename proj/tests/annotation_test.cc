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

#include <gtest/gtest.h>

#include <random>

#include "corefkit/annotation.h"
#include "corefkit/error.h"
#include "oracles.h"

namespace corefkit {
namespace {

Clustering clustering(const std::string& annotator, std::vector<Cluster> clusters) {
  return Clustering{"f1", annotator, std::move(clusters)};
}

// Five annotators: {a,b} linked by 4, {b,c} by 2, {a,c} by 1.
std::vector<Clustering> fixture_f1() {
  return {clustering("1", {{"a", "b"}, {"c"}}), clustering("2", {{"a", "b"}, {"c"}}),
          clustering("3", {{"a", "b"}, {"c"}}), clustering("4", {{"a", "b", "c"}}),
          clustering("5", {{"a"}, {"b", "c"}})};
}

const std::vector<std::string> kIds = {"a", "b", "c"};

TEST(ValidatePartitionTest, AcceptsPartition) {
  EXPECT_NO_THROW(validate_partition(clustering("x", {{"a", "c"}, {"b"}}), kIds));
}

TEST(ValidatePartitionTest, NamesMissingUnknownAndDuplicate) {
  try {
    validate_partition(clustering("x", {{"a", "z"}, {"a"}, {}}), kIds);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValidation);
    std::string all;
    for (const std::string& d : e.details()) all += d + "\n";
    EXPECT_NE(all.find("b"), std::string::npos);
    EXPECT_NE(all.find("c"), std::string::npos);
    EXPECT_NE(all.find("z"), std::string::npos);
    EXPECT_NE(all.find("a"), std::string::npos);
    EXPECT_NE(all.find("empty"), std::string::npos);
  }
}

TEST(VoteTest, CountsPairs) {
  const VoteMatrix v = count_votes(fixture_f1());
  EXPECT_EQ(v.n_annotators, 5);
  EXPECT_EQ(v.count("a", "b"), 4);
  EXPECT_EQ(v.count("b", "a"), 4);
  EXPECT_EQ(v.count("b", "c"), 2);
  EXPECT_EQ(v.count("a", "c"), 1);
}

TEST(VoteTest, RejectsMixedInputs) {
  EXPECT_THROW(count_votes({}), Error);
  auto mixed = fixture_f1();
  mixed[1].passage_id = "other";
  EXPECT_THROW(count_votes(mixed), Error);
  auto uneven = fixture_f1();
  uneven[2].clusters = {{"a", "b"}};
  EXPECT_THROW(count_votes(uneven), Error);
}

TEST(AggregateTest, FixtureAtTau3And2) {
  const VoteMatrix v = count_votes(fixture_f1());
  EXPECT_EQ(aggregate(v, {3}, kIds).clusters, (std::vector<Cluster>{{"a", "b"}, {"c"}}));
  EXPECT_EQ(aggregate(v, {2}, kIds).clusters, (std::vector<Cluster>{{"a", "b", "c"}}));
  EXPECT_EQ(aggregate(v, {5}, kIds).clusters, (std::vector<Cluster>{{"a"}, {"b"}, {"c"}}));
}

TEST(AggregateTest, TauOutOfRange) {
  const VoteMatrix v = count_votes(fixture_f1());
  EXPECT_THROW(aggregate(v, {0}, kIds), Error);
  EXPECT_THROW(aggregate(v, {6}, kIds), Error);
}

TEST(AggregateTest, UnanimousSingleAnnotator) {
  const VoteMatrix v = count_votes({clustering("1", {{"a", "c"}, {"b"}})});
  EXPECT_EQ(aggregate(v, {1}, kIds).clusters, (std::vector<Cluster>{{"a", "c"}, {"b"}}));
}

TEST(AggregatePropertyTest, MatchesClosureAndRefines) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 10);
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) ids.push_back("m" + std::to_string(i));
    std::vector<Clustering> anns;
    for (int a = 0; a < 5; ++a) {
      std::vector<int> labels;
      for (int i = 0; i < n; ++i) labels.push_back(static_cast<int>(rng() % 4));
      Clustering c = oracle::from_labels(labels, std::to_string(a));
      anns.push_back(c);
    }
    const VoteMatrix v = count_votes(anns);
    std::set<std::set<std::string>> prev;
    for (int tau = 1; tau <= 5; ++tau) {
      const auto got = oracle::as_sets(aggregate(v, {tau}, ids).clusters);
      EXPECT_EQ(got, oracle::closure_components(ids, v.votes, tau));
      if (tau > 1) {
        // Every cluster at tau lies inside one cluster at tau - 1.
        for (const auto& c : got) {
          bool inside = false;
          for (const auto& p : prev) {
            inside = inside || std::includes(p.begin(), p.end(), c.begin(), c.end());
          }
          EXPECT_TRUE(inside);
        }
      }
      prev = got;
    }
  }
}

TEST(SortMentionIdsTest, SpanOrder) {
  std::vector<std::string> ids = {"p:3-3", "zeta", "p:0-0", "p:0-2", "alpha", "p:10-11"};
  sort_mention_ids(ids);
  EXPECT_EQ(ids, (std::vector<std::string>{"p:0-2", "p:0-0", "p:3-3", "p:10-11", "alpha", "zeta"}));
}

TEST(AsClusteringTest, CarriesPassageAndAnnotator) {
  const AggregateClustering agg{"f1", 3, {{"a", "b"}, {"c"}}};
  const Clustering c = as_clustering(agg);
  EXPECT_EQ(c.passage_id, "f1");
  EXPECT_EQ(c.annotator_id, "aggregate");
  EXPECT_EQ(c.clusters, agg.clusters);
}

}  // namespace
}  // namespace corefkit
