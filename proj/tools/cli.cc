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

#include "cli.h"

#include <CLI11.hpp>
#include <signal.h>

#include <cstdlib>
#include <filesystem>
#include <thread>

#include "corefkit/error.h"
#include "corefkit/json_io.h"
#include "corefkit/pipeline.h"
#include "corefkit/service.h"
#include "corefkit/store.h"
#include "corefkit/tutorial.h"

namespace corefkit {
namespace {

namespace fs = std::filesystem;

// Reads `--config` files: a flat JSON object whose keys are long option
// names of the selected subcommand. Values given on the command line take
// precedence; keys the subcommand does not know are ignored.
class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(const CLI::App* app) : app_(app) {}

  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}\n"; }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    Json j;
    try {
      j = Json::parse(input);
    } catch (const Json::parse_error& e) {
      throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config file must hold a JSON object");
    std::vector<CLI::ConfigItem> items;
    for (const auto& [name, value] : j.items()) {
      CLI::ConfigItem item;
      for (const CLI::App* sub : app_->get_subcommands()) item.parents.push_back(sub->get_name());
      item.name = name;
      if (value.is_array()) {
        for (const Json& v : value) item.inputs.push_back(scalar(v));
      } else {
        item.inputs.push_back(scalar(value));
      }
      items.push_back(std::move(item));
    }
    return items;
  }

 private:
  static std::string scalar(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
  }

  const CLI::App* app_;
};

void emit(const CliConfig& cfg, const std::string& content, std::ostream& out) {
  if (cfg.out.empty() || cfg.out == "-") {
    out << content;
    return;
  }
  write_file_atomic(cfg.out, content);
}

SplitConfig split_config(const CliConfig& cfg) {
  SplitConfig split{cfg.target_tokens, cfg.min_tail_tokens};
  split.validate();
  return split;
}

void print_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const std::string& w : warnings) err << "warning: " << w << '\n';
}

SingletonMode singleton_mode(const CliConfig& cfg, SingletonMode fallback) {
  return cfg.singleton_mode ? parse_singleton_mode(*cfg.singleton_mode) : fallback;
}

void require(const std::string& value, const std::string& flag) {
  if (value.empty()) throw Error(ErrorCode::kInvalidArgument, flag + " is required");
}

void check_format(const CliConfig& cfg, std::initializer_list<std::string_view> allowed) {
  for (std::string_view f : allowed) {
    if (cfg.format == f) return;
  }
  throw Error(ErrorCode::kInvalidArgument, "unsupported --format " + cfg.format);
}

int cmd_ingest(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<std::string> warnings;
  const Corpus corpus = ingest_conllu(read_conllu_inputs(cfg.conllu), split_config(cfg), &warnings);
  print_warnings(warnings, err);
  emit(cfg, dump(Json(corpus)), out);
  return 0;
}

// Corpus subcommands rewrite --corpus in place unless --out is given.
void emit_corpus(CliConfig cfg, const Corpus& corpus, std::ostream& out) {
  validate_corpus(corpus);
  if (cfg.out.empty()) cfg.out = cfg.corpus;
  emit(cfg, dump(Json(corpus)), out);
}

int cmd_detect(const CliConfig& cfg, std::ostream& out, std::ostream&) {
  Corpus corpus = load_corpus(cfg.corpus);
  detect_corpus(corpus);
  emit_corpus(cfg, corpus, out);
  return 0;
}

int cmd_split(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  Corpus corpus = load_corpus(cfg.corpus);
  std::vector<std::string> warnings;
  resplit_corpus(corpus, split_config(cfg), &warnings);
  print_warnings(warnings, err);
  emit_corpus(cfg, corpus, out);
  return 0;
}

int cmd_eval_detector(const CliConfig& cfg, std::ostream& out, std::ostream&) {
  check_format(cfg, {"json"});
  const Corpus corpus = load_corpus(cfg.corpus);
  const CorpusDetectorEval eval = eval_corpus_detector(corpus, load_gold_mentions(cfg.gold));
  emit(cfg, dump(detector_report_json(eval)), out);
  return 0;
}

int cmd_aggregate(const CliConfig& cfg, std::ostream& out, std::ostream&) {
  check_format(cfg, {"json"});
  std::optional<Corpus> corpus;
  if (!cfg.corpus.empty()) corpus = load_corpus(cfg.corpus);
  const std::vector<AggregateClustering> aggregates = aggregate_annotations(
      load_clusterings(cfg.annotations), cfg.tau.value_or(AggregationConfig{}.tau),
      corpus ? &*corpus : nullptr);
  emit(cfg, dump(Json(aggregates)), out);
  return 0;
}

int cmd_score(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const SingletonMode mode = singleton_mode(cfg, SingletonMode::kInclude);
  const std::vector<Clustering> key = load_clusterings(cfg.key);
  std::optional<Corpus> corpus;
  if (!cfg.corpus.empty()) corpus = load_corpus(cfg.corpus);
  const Corpus* corpus_ptr = corpus ? &*corpus : nullptr;

  if (cfg.tau_sweep) {
    check_format(cfg, {"json", "csv"});
    require(cfg.annotations, "--annotations");
    const std::vector<SweepRow> rows =
        tau_sweep(key, load_clusterings(cfg.annotations), mode, corpus_ptr);
    emit(cfg, cfg.format == "csv" ? render_sweep_csv(rows) : dump(sweep_json(rows, mode)), out);
    return 0;
  }

  check_format(cfg, {"json", "table"});
  std::vector<Clustering> response;
  std::optional<int> tau;
  if (!cfg.response.empty()) {
    response = load_clusterings(cfg.response);
    tau = cfg.tau;
  } else {
    require(cfg.annotations, "--response or --annotations");
    tau = cfg.tau.value_or(AggregationConfig{}.tau);
    for (const AggregateClustering& a :
         aggregate_annotations(load_clusterings(cfg.annotations), *tau, corpus_ptr)) {
      response.push_back(as_clustering(a));
    }
  }
  const ScoreReport report = score_clusterings(key, response, mode, tau);
  print_warnings(report.warnings, err);
  emit(cfg, cfg.format == "table" ? render_score_table(report) : dump(score_report_json(report)),
       out);
  return 0;
}

int cmd_iaa(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  check_format(cfg, {"json", "table"});
  std::optional<Corpus> corpus;
  if (!cfg.corpus.empty()) corpus = load_corpus(cfg.corpus);
  const IaaResult result = iaa_report(load_clusterings(cfg.annotations),
                                      singleton_mode(cfg, SingletonMode::kExclude),
                                      corpus ? &*corpus : nullptr);
  print_warnings(result.warnings, err);
  emit(cfg, cfg.format == "table" ? render_iaa_table(result) : dump(iaa_json(result)), out);
  return 0;
}

TutorialScript tutorial_of(const CliConfig& cfg) {
  return cfg.tutorial.empty() ? default_tutorial() : load_tutorial(cfg.tutorial);
}

// Validates the script, checks that every gold answer passes its own step,
// and optionally grades submitted answers keyed "tutorial:<step>".
int cmd_tutorial_check(const CliConfig& cfg, std::ostream& out, std::ostream&) {
  check_format(cfg, {"json"});
  const TutorialScript script = tutorial_of(cfg);
  Json report{{"steps", script.steps.size()}, {"valid", true}};
  for (std::size_t i = 0; i < script.steps.size(); ++i) {
    const TutorialStep& step = script.steps[i];
    const Clustering gold = step_gold(step, static_cast<int>(i));
    if (!tutorial_feedback(step, gold).empty() ||
        !screening_pass(gold, gold, cfg.threshold).passed) {
      throw Error(ErrorCode::kValidation, "gold answer of step " + std::to_string(i) +
                                              " does not pass its own check");
    }
  }
  if (!cfg.responses.empty()) {
    Json graded = Json::array();
    for (const Clustering& c : load_clusterings(cfg.responses)) {
      int index = -1;
      for (std::size_t i = 0; i < script.steps.size(); ++i) {
        if (tutorial_passage_id(static_cast<int>(i)) == c.passage_id) index = static_cast<int>(i);
      }
      if (index < 0) throw Error(ErrorCode::kNotFound, "no tutorial step " + c.passage_id);
      const TutorialStep& step = script.steps[static_cast<std::size_t>(index)];
      Json row{{"step", index}, {"annotator_id", c.annotator_id}};
      if (step.is_screening) {
        ScreeningResult r = screening_pass(c, step_gold(step, index), cfg.threshold);
        r.annotator_id = c.annotator_id;
        row["screening"] = r;
      } else {
        row["feedback"] = tutorial_feedback(step, c);
      }
      graded.push_back(std::move(row));
    }
    report["responses"] = std::move(graded);
  }
  emit(cfg, dump(report), out);
  return 0;
}

int cmd_serve(CliConfig cfg, std::ostream&, std::ostream& err) {
  if (cfg.store.empty()) {
    if (const char* env = std::getenv("COREFKIT_STORE")) cfg.store = env;
  }
  require(cfg.store, "--store (or COREFKIT_STORE)");
  std::unique_ptr<Store> store;
  if (!cfg.corpus.empty()) {
    StoreConfig sc;
    sc.target_annotations = cfg.target_annotations;
    sc.screening_threshold = cfg.threshold;
    sc.admin_token = cfg.admin_token;
    store = Store::create(cfg.store, load_corpus(cfg.corpus), tutorial_of(cfg), sc);
  } else {
    store = Store::open(cfg.store);
  }

  Service service(*store);
  if (!cfg.static_dir.empty()) service.mount_static(cfg.static_dir);
  const int port = service.bind(cfg.host, cfg.port);
  err << "serving " << cfg.store << " on http://" << cfg.host << ':' << port << '\n';

  // SIGINT/SIGTERM stop the server from a watcher thread.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);
  std::thread watcher([&service, signals] {
    int sig = 0;
    sigwait(&signals, &sig);
    service.stop();
  });
  service.listen();
  if (watcher.joinable()) {
    pthread_kill(watcher.native_handle(), SIGTERM);
    watcher.join();
  }
  return 0;
}

int exit_code(ErrorCode code) { return code == ErrorCode::kIo ? 2 : 1; }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  CLI::App app{"Coreference corpus preparation, aggregation and scoring", "corefkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "corefkit 0.1.0");
  app.config_formatter(std::make_shared<JsonConfig>(&app));
  app.set_config("--config", "", "JSON file of option defaults");
  app.allow_config_extras(CLI::config_extras_mode::ignore);
  // Lets --config follow the subcommand name.
  app.fallthrough();

  auto add = [&](const std::string& name, const std::string& description) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--seed", cfg.seed, "Accepted and ignored");
    return sub;
  };
  auto out_opt = [&](CLI::App* sub, const std::string& help) {
    sub->add_option("--out,-o", cfg.out, help);
  };
  auto split_opts = [&](CLI::App* sub) {
    sub->add_option("--target-tokens", cfg.target_tokens, "Passage length target")
        ->capture_default_str();
    sub->add_option("--min-tail-tokens", cfg.min_tail_tokens,
                    "Shorter final passages merge into the previous one")
        ->capture_default_str();
  };
  auto format_opt = [&](CLI::App* sub, const std::string& choices) {
    sub->add_option("--format", cfg.format, "Output format: " + choices)->capture_default_str();
  };
  auto singletons_opt = [&](CLI::App* sub) {
    sub->add_option("--singletons", cfg.singleton_mode, "include | exclude");
  };

  CLI::App* ingest = add("ingest", "Parse CoNLL-U and tile documents into passages");
  ingest->add_option("--conllu", cfg.conllu, "CoNLL-U file or directory")->required();
  out_opt(ingest, "Corpus JSON (- for stdout)");
  ingest->get_option("--out")->required();
  split_opts(ingest);

  CLI::App* detect = add("detect", "Detect candidate mentions in every passage");
  detect->add_option("--corpus", cfg.corpus, "Corpus JSON")->required();
  out_opt(detect, "Output corpus (default: rewrite --corpus)");

  CLI::App* split = add("split", "Re-tile documents into passages");
  split->add_option("--corpus", cfg.corpus, "Corpus JSON")->required();
  out_opt(split, "Output corpus (default: rewrite --corpus)");
  split_opts(split);

  CLI::App* eval = add("eval-detector", "Headword recall and precision of detected mentions");
  eval->add_option("--corpus", cfg.corpus, "Corpus JSON with mentions")->required();
  eval->add_option("--gold", cfg.gold, "Gold mentions JSON")->required();
  out_opt(eval, "Report path (default stdout)");
  format_opt(eval, "json");

  CLI::App* aggregate = add("aggregate", "Merge annotations by link voting");
  aggregate->add_option("--annotations", cfg.annotations, "Clustering file or directory")
      ->required();
  aggregate->add_option("--tau", cfg.tau, "Minimum votes per link (default 3)");
  aggregate->add_option("--corpus", cfg.corpus, "Corpus JSON supplying the mention sets");
  out_opt(aggregate, "Aggregate JSON (default stdout)");
  format_opt(aggregate, "json");

  CLI::App* score = add("score", "B3 of responses against gold");
  score->add_option("--key", cfg.key, "Gold clusterings")->required();
  score->add_option("--response", cfg.response, "Response clusterings");
  score->add_option("--annotations", cfg.annotations, "Raw annotations to aggregate first");
  score->add_option("--tau", cfg.tau, "Vote threshold when aggregating (default 3)");
  score->add_flag("--tau-sweep", cfg.tau_sweep, "Score the aggregate at every tau");
  score->add_option("--corpus", cfg.corpus, "Corpus JSON supplying the mention sets");
  singletons_opt(score);
  out_opt(score, "Report path (default stdout)");
  format_opt(score, "json | table | csv (sweep)");

  CLI::App* iaa = add("iaa", "Pairwise inter-annotator agreement");
  iaa->add_option("--annotations", cfg.annotations, "Clustering file or directory")->required();
  iaa->add_option("--corpus", cfg.corpus, "Corpus JSON; groups passages by domain");
  singletons_opt(iaa);
  out_opt(iaa, "Report path (default stdout)");
  format_opt(iaa, "json | table");

  CLI::App* serve = add("serve", "Run the annotation service");
  serve->add_option("--store", cfg.store, "Store directory (default $COREFKIT_STORE)");
  serve->add_option("--corpus", cfg.corpus, "Initialise the store from this corpus");
  serve->add_option("--tutorial", cfg.tutorial, "Tutorial script (default: bundled)");
  serve->add_option("--host", cfg.host, "Listen address")->capture_default_str();
  serve->add_option("--port", cfg.port, "Listen port, 0 for any")->capture_default_str();
  serve->add_option("--static", cfg.static_dir, "Directory served at /");
  serve->add_option("--admin-token", cfg.admin_token, "Bearer token for admin reports");
  serve->add_option("--target-annotations", cfg.target_annotations, "Annotations per passage")
      ->capture_default_str();
  serve->add_option("--threshold", cfg.threshold, "Screening F1 threshold")->capture_default_str();

  CLI::App* check = add("tutorial-check", "Validate a tutorial script and grade answers");
  check->add_option("--tutorial", cfg.tutorial, "Tutorial script (default: bundled)");
  check->add_option("--responses", cfg.responses, "Answers keyed tutorial:<step>");
  check->add_option("--threshold", cfg.threshold, "Screening F1 threshold")->capture_default_str();
  out_opt(check, "Report path (default stdout)");
  format_opt(check, "json");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (dynamic_cast<const CLI::CallForVersion*>(&e) ? std::string(e.what()) + "\n"
                                                            : app.help());
      return 0;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    cfg.subcommand = app.get_subcommands().front()->get_name();
    if (ingest->parsed()) return cmd_ingest(cfg, out, err);
    if (detect->parsed()) return cmd_detect(cfg, out, err);
    if (split->parsed()) return cmd_split(cfg, out, err);
    if (eval->parsed()) return cmd_eval_detector(cfg, out, err);
    if (aggregate->parsed()) return cmd_aggregate(cfg, out, err);
    if (score->parsed()) return cmd_score(cfg, out, err);
    if (iaa->parsed()) return cmd_iaa(cfg, out, err);
    if (serve->parsed()) return cmd_serve(cfg, out, err);
    if (check->parsed()) return cmd_tutorial_check(cfg, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    for (const std::string& d : e.details()) err << "  " << d << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace corefkit
