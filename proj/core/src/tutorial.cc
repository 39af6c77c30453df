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

#include "corefkit/tutorial.h"

#include <set>

#include "corefkit/error.h"
#include "default_tutorial.h"

namespace corefkit {
namespace {

std::set<MentionPair> links_of(const std::vector<Cluster>& clusters) {
  std::set<MentionPair> links;
  for (const Cluster& c : clusters) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t j = i + 1; j < c.size(); ++j) links.insert(make_pair_key(c[i], c[j]));
    }
  }
  return links;
}

std::string expand(std::string text, const std::string& a, const std::string& b) {
  auto replace = [&text](const std::string& from, const std::string& to) {
    for (std::size_t pos = text.find(from); pos != std::string::npos;
         pos = text.find(from, pos + to.size())) {
      text.replace(pos, from.size(), to);
    }
  };
  replace("{a}", a);
  replace("{b}", b);
  return text;
}

}  // namespace

std::vector<std::string> TutorialStep::mention_ids() const {
  std::vector<std::string> ids;
  for (const TutorialMention& m : mentions) ids.push_back(m.mention_id);
  return ids;
}

std::string TutorialStep::mention_text(const std::string& mention_id) const {
  for (const TutorialMention& m : mentions) {
    if (m.mention_id != mention_id) continue;
    std::string text;
    for (int i = m.start; i <= m.end; ++i) {
      if (!text.empty()) text += ' ';
      text += tokens[static_cast<std::size_t>(i)];
    }
    return text;
  }
  return mention_id;
}

std::string tutorial_passage_id(int index) { return "tutorial:" + std::to_string(index); }

Clustering step_gold(const TutorialStep& step, int index) {
  return Clustering{tutorial_passage_id(index), "gold", step.gold};
}

void validate_tutorial(const TutorialScript& script) {
  if (script.steps.empty()) throw Error(ErrorCode::kValidation, "tutorial has no steps");
  int screening = 0;
  for (std::size_t i = 0; i < script.steps.size(); ++i) {
    const TutorialStep& step = script.steps[i];
    const std::string where = "tutorial step " + std::to_string(i);
    if (step.is_screening) {
      ++screening;
      if (i + 1 != script.steps.size()) {
        throw Error(ErrorCode::kValidation, where + ": the screening step must be last");
      }
    }
    std::set<std::string> ids;
    for (const TutorialMention& m : step.mentions) {
      if (m.start < 0 || m.end < m.start || m.end >= static_cast<int>(step.tokens.size())) {
        throw Error(ErrorCode::kValidation, where + ": mention " + m.mention_id +
                                                " lies outside the step tokens");
      }
      if (!ids.insert(m.mention_id).second) {
        throw Error(ErrorCode::kValidation, where + ": duplicate mention " + m.mention_id);
      }
    }
    try {
      validate_partition(step_gold(step, static_cast<int>(i)), step.mention_ids());
    } catch (const Error& e) {
      throw Error(ErrorCode::kValidation, where + ": " + e.what(), e.details());
    }
  }
  if (screening != 1) {
    throw Error(ErrorCode::kValidation, "tutorial needs exactly one screening step, found " +
                                            std::to_string(screening));
  }
}

std::vector<LinkFeedback> tutorial_feedback(const TutorialStep& step, const Clustering& submitted) {
  validate_partition(submitted, step.mention_ids());
  const std::set<MentionPair> gold = links_of(step.gold);
  const std::set<MentionPair> got = links_of(submitted.clusters);

  auto message_for = [&](const std::string& kind, const MentionPair& p) {
    auto it = step.feedback.find(kind);
    const std::string tmpl = it != step.feedback.end()
                                 ? it->second
                                 : (kind == "missing_link" ? "\"{a}\" and \"{b}\" refer to the same entity."
                                                           : "\"{a}\" and \"{b}\" do not refer to the same entity.");
    return expand(tmpl, step.mention_text(p.first), step.mention_text(p.second));
  };

  std::vector<LinkFeedback> out;
  for (const MentionPair& p : gold) {
    if (!got.contains(p)) out.push_back({"missing_link", p.first, p.second, message_for("missing_link", p)});
  }
  for (const MentionPair& p : got) {
    if (!gold.contains(p)) out.push_back({"wrong_link", p.first, p.second, message_for("wrong_link", p)});
  }
  return out;
}

void to_json(Json& j, const TutorialMention& m) {
  j = Json{{"mention_id", m.mention_id}, {"span", {m.start, m.end}}};
}

void from_json(const Json& j, TutorialMention& m) {
  j.at("mention_id").get_to(m.mention_id);
  const Json& span = j.at("span");
  if (!span.is_array() || span.size() != 2) {
    throw Error(ErrorCode::kValidation, "tutorial mention span must be [start, end]");
  }
  m.start = span[0].get<int>();
  m.end = span[1].get<int>();
}

void to_json(Json& j, const TutorialStep& s) {
  j = Json{{"title", s.title},       {"instructions", s.instructions},
           {"tokens", s.tokens},     {"mentions", s.mentions},
           {"gold", s.gold},         {"feedback", s.feedback},
           {"is_screening", s.is_screening}};
}

void from_json(const Json& j, TutorialStep& s) {
  s.title = j.value("title", std::string());
  s.instructions = j.value("instructions", std::string());
  j.at("tokens").get_to(s.tokens);
  j.at("mentions").get_to(s.mentions);
  j.at("gold").get_to(s.gold);
  s.feedback = j.value("feedback", std::map<std::string, std::string>{});
  s.is_screening = j.value("is_screening", false);
}

void to_json(Json& j, const TutorialScript& s) { j = Json{{"steps", s.steps}}; }

void from_json(const Json& j, TutorialScript& s) { j.at("steps").get_to(s.steps); }

void to_json(Json& j, const LinkFeedback& f) {
  j = Json{{"kind", f.kind}, {"mentions", {f.first, f.second}}, {"message", f.message}};
}

Json public_tutorial_json(const TutorialScript& script) {
  Json steps = Json::array();
  for (std::size_t i = 0; i < script.steps.size(); ++i) {
    Json step = script.steps[i];
    step.erase("gold");
    step["index"] = i;
    steps.push_back(std::move(step));
  }
  return Json{{"steps", std::move(steps)}};
}

TutorialScript load_tutorial(const std::filesystem::path& path) {
  const Json j = read_json_file(path);
  TutorialScript script;
  try {
    script = j.get<TutorialScript>();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kValidation, path.string() + ": " + e.what());
  }
  validate_tutorial(script);
  return script;
}

TutorialScript default_tutorial() {
  TutorialScript script = Json::parse(kDefaultTutorialJson).get<TutorialScript>();
  validate_tutorial(script);
  return script;
}

}  // namespace corefkit
