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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace corefkit {

// Options of one CLI invocation. Fields not used by a subcommand keep their
// defaults.
struct CliConfig {
  std::string subcommand;
  std::string conllu;
  std::string corpus;
  std::string out;
  std::string gold;
  std::string key;
  std::string response;
  std::string annotations;
  std::string tutorial;
  std::string responses;
  std::string store;
  std::string static_dir;
  std::string host = "127.0.0.1";
  std::string admin_token;
  std::string format = "json";
  std::optional<int> tau;
  bool tau_sweep = false;
  std::optional<std::string> singleton_mode;
  int target_tokens = 175;
  int min_tail_tokens = 50;
  int target_annotations = 5;
  int port = 8080;
  double threshold = 0.90;
  unsigned long seed = 0;  // accepted for scripting symmetry; unused
};

// Runs the `corefkit` command line. `args` excludes the program name.
// Returns 0 on success, 1 on usage or validation errors and 2 on I/O
// errors. Reports go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace corefkit
