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

#include <sstream>

#include "cli.h"
#include "corefkit/json_io.h"
#include "corefkit/pipeline.h"
#include "corefkit/tutorial.h"
#include "support.h"

namespace corefkit {
namespace {

using testing::fixture;
using testing::TempDir;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  std::string path(const std::string& name) { return (dir_ / name).string(); }

  // Ingests and detects the worked examples into corpus.json.
  std::string detected_corpus() {
    const std::string corpus = path("corpus.json");
    EXPECT_EQ(run({"ingest", "--conllu", fixture("worked_examples.conllu"), "--out", corpus}).code, 0);
    EXPECT_EQ(run({"detect", "--corpus", corpus}).code, 0);
    return corpus;
  }

  TempDir dir_;
};

TEST_F(CliTest, IngestMatchesLibrary) {
  const CliRun r = run({"ingest", "--conllu", fixture("worked_examples.conllu"), "--out", "-"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Corpus direct =
      ingest_conllu(read_conllu_inputs(fixture("worked_examples.conllu")), SplitConfig{});
  EXPECT_EQ(r.out, dump(Json(direct)));
}

TEST_F(CliTest, DetectIsDeterministicAndMatchesLibrary) {
  const std::string corpus = detected_corpus();
  const std::string first = read_text_file(corpus);
  ASSERT_EQ(run({"detect", "--corpus", corpus, "--out", path("again.json")}).code, 0);
  EXPECT_EQ(read_text_file(path("again.json")), first);

  Corpus direct = ingest_conllu(read_conllu_inputs(fixture("worked_examples.conllu")), SplitConfig{});
  detect_corpus(direct);
  EXPECT_EQ(first, dump(Json(direct)));
}

TEST_F(CliTest, SplitRewritesPassages) {
  const std::string corpus = detected_corpus();
  const CliRun r = run({"split", "--corpus", corpus, "--target-tokens", "10", "--min-tail-tokens",
                     "2", "--out", "-"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Corpus split = Json::parse(r.out).get<Corpus>();
  EXPECT_GT(split.passages.size(), 1u);
  Corpus direct = load_corpus(corpus);
  resplit_corpus(direct, SplitConfig{10, 2});
  EXPECT_EQ(r.out, dump(Json(direct)));
}

TEST_F(CliTest, AggregateVotes) {
  const CliRun r = run({"aggregate", "--annotations", fixture("votes_f1")});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0]["tau"], 3);
  EXPECT_EQ(j[0]["clusters"], Json::parse(R"([["a","b"],["c"]])"));

  const CliRun low = run({"aggregate", "--annotations", fixture("votes_f1"), "--tau", "1"});
  EXPECT_EQ(Json::parse(low.out)[0]["clusters"], Json::parse(R"([["a","b","c"]])"));
}

TEST_F(CliTest, ScoreMatchesLibrary) {
  const std::string key = fixture("votes_f1_gold.json");
  const std::string resp = fixture("votes_f1/ann5.json");
  const CliRun r = run({"score", "--key", key, "--response", resp, "--singletons", "exclude"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  for (const char* field : {"precision", "recall", "f1"}) {
    EXPECT_TRUE(j["overall"].contains(field)) << field;
  }
  const ScoreReport direct =
      score_clusterings(load_clusterings(key), load_clusterings(resp), SingletonMode::kExclude);
  EXPECT_EQ(r.out, dump(score_report_json(direct)));

  const CliRun table = run({"score", "--key", key, "--response", resp, "--format", "table"});
  ASSERT_EQ(table.code, 0);
  EXPECT_EQ(table.out, render_score_table(score_clusterings(
                           load_clusterings(key), load_clusterings(resp), SingletonMode::kInclude)));
}

TEST_F(CliTest, ScoreAggregatedAndSweep) {
  const std::string key = fixture("votes_f1_gold.json");
  const CliRun agg = run({"score", "--key", key, "--annotations", fixture("votes_f1")});
  ASSERT_EQ(agg.code, 0) << agg.err;
  EXPECT_DOUBLE_EQ(Json::parse(agg.out)["overall"]["f1"].get<double>(), 1.0);

  const CliRun csv = run({"score", "--key", key, "--annotations", fixture("votes_f1"), "--tau-sweep",
                       "--format", "csv"});
  ASSERT_EQ(csv.code, 0) << csv.err;
  EXPECT_EQ(csv.out, render_sweep_csv(tau_sweep(load_clusterings(key),
                                                load_clusterings(fixture("votes_f1")),
                                                SingletonMode::kInclude)));
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "tau,precision,recall,f1");
}

TEST_F(CliTest, IaaDefaultsToExcludingSingletons) {
  const CliRun r = run({"iaa", "--annotations", fixture("votes_f1")});
  ASSERT_EQ(r.code, 0) << r.err;
  const IaaResult direct =
      iaa_report(load_clusterings(fixture("votes_f1")), SingletonMode::kExclude);
  EXPECT_EQ(r.out, dump(iaa_json(direct)));
}

TEST_F(CliTest, EvalDetector) {
  const std::string corpus = detected_corpus();
  write_file_atomic(path("gold.json"), R"({"documents": [{"doc_id": "worked", "mentions": [
      {"span": [0, 2]}, {"span": [5, 6]}, {"span": [29, 29]}]}]})");
  const CliRun r = run({"eval-detector", "--corpus", corpus, "--gold", path("gold.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, dump(detector_report_json(eval_corpus_detector(
                       load_corpus(corpus), load_gold_mentions(path("gold.json"))))));
}

TEST_F(CliTest, ConfigFileSuppliesOptions) {
  write_file_atomic(path("cfg.json"), R"({"tau": 1, "unrelated": true})");
  const CliRun r =
      run({"aggregate", "--config", path("cfg.json"), "--annotations", fixture("votes_f1")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)[0]["tau"], 1);

  // The command line wins over the file.
  const CliRun cli = run({"aggregate", "--config", path("cfg.json"), "--annotations",
                       fixture("votes_f1"), "--tau", "4"});
  EXPECT_EQ(Json::parse(cli.out)[0]["tau"], 4);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"aggregate"}).code, 1);
  EXPECT_EQ(run({"aggregate", "--annotations", fixture("votes_f1"), "--tau", "9"}).code, 1);
  EXPECT_EQ(run({"score", "--key", fixture("votes_f1_gold.json"), "--response",
                 fixture("votes_f1/ann1.json"), "--singletons", "maybe"})
                .code,
            1);
  const CliRun missing = run({"aggregate", "--annotations", path("nope")});
  EXPECT_EQ(missing.code, 2);
  EXPECT_FALSE(missing.err.empty());
  write_file_atomic(path("bad.json"), "{not json");
  EXPECT_EQ(run({"aggregate", "--annotations", path("bad.json")}).code, 1);
}

TEST_F(CliTest, TutorialCheck) {
  const CliRun r = run({"tutorial-check"});
  EXPECT_EQ(r.code, 0) << r.err;

  const TutorialScript script = default_tutorial();
  Json answers = Json::array();
  for (std::size_t i = 0; i < script.steps.size(); ++i) {
    Json clusters = Json::array();
    Json all = Json::array();
    for (const Cluster& c : script.steps[i].gold) {
      for (const std::string& m : c) all.push_back(m);
    }
    clusters.push_back(all);
    answers.push_back({{"passage_id", "tutorial:" + std::to_string(i)},
                       {"annotator_id", "x"},
                       {"clusters", clusters}});
  }
  write_file_atomic(path("answers.json"), answers.dump());
  const CliRun graded = run({"tutorial-check", "--responses", path("answers.json")});
  ASSERT_EQ(graded.code, 0) << graded.err;
  const Json rows = Json::parse(graded.out)["responses"];
  ASSERT_EQ(rows.size(), script.steps.size());
  for (const Json& row : rows) {
    if (row.contains("screening")) {
      EXPECT_FALSE(row["screening"]["passed"].get<bool>());
    } else {
      EXPECT_FALSE(row["feedback"].empty()) << row.dump();
    }
  }
}

}  // namespace
}  // namespace corefkit
