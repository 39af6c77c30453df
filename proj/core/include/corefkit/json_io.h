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

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "corefkit/annotation.h"
#include "corefkit/corpus.h"
#include "corefkit/mention_eval.h"
#include "corefkit/scoring.h"

// JSON mapping of the domain types. Keys are emitted in sorted order, so a
// given value always serializes to the same bytes.
namespace corefkit {

using Json = nlohmann::json;

void to_json(Json& j, const Token& t);
void from_json(const Json& j, Token& t);
void to_json(Json& j, const Sentence& s);
void from_json(const Json& j, Sentence& s);
void to_json(Json& j, const Document& d);
void from_json(const Json& j, Document& d);
void to_json(Json& j, const Mention& m);
void from_json(const Json& j, Mention& m);
void to_json(Json& j, const Passage& p);
void from_json(const Json& j, Passage& p);
void to_json(Json& j, const Corpus& c);
void from_json(const Json& j, Corpus& c);
void to_json(Json& j, const Clustering& c);
void from_json(const Json& j, Clustering& c);
void to_json(Json& j, const AggregateClustering& a);
void from_json(const Json& j, AggregateClustering& a);
void to_json(Json& j, const B3Score& s);
void to_json(Json& j, const DetectorEval& e);
void to_json(Json& j, const PassageAgreement& p);
void to_json(Json& j, const IAAReport& r);
void to_json(Json& j, const ScreeningResult& r);
void from_json(const Json& j, ScreeningResult& r);

// Two-space indented JSON followed by a newline.
std::string dump(const Json& j);

std::string read_text_file(const std::filesystem::path& path);
Json read_json_file(const std::filesystem::path& path);

// Called after the temporary file is fully written and before the rename;
// tests throw from it to simulate a crash at that point.
using WriteHook = std::function<void(const std::filesystem::path& tmp)>;

// Writes `content` to a temporary sibling ("<name>.tmp.<n>"), flushes it and
// renames it over `path`, so readers see either the old or the new file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content,
                       const WriteHook& before_rename = {});

bool is_temporary_file(const std::filesystem::path& path);

// Clusterings from a file holding one clustering object, an array of them,
// or {"clusterings": [...]}; a directory is read recursively (*.json).
std::vector<Clustering> load_clusterings(const std::filesystem::path& path);

Corpus load_corpus(const std::filesystem::path& path);

}  // namespace corefkit
