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
#include <memory>
#include <string>

#include "corefkit/error.h"
#include "corefkit/store.h"

namespace httplib {
class Server;
}

namespace corefkit {

// HTTP/1.1 JSON front end over a Store.
//
//   POST /api/annotators             register, returns {annotator_id, token}
//   GET  /api/tutorial               tutorial steps (without gold)
//   POST /api/tutorial/steps/{i}     {clusters} -> feedback or screening result
//   GET  /api/assignments/next       {assignment: {passage_id, expires_at} | null}
//   GET  /api/passages/{id}          tokens, mentions, caller's saved clustering
//   POST /api/annotations            {passage_id, clusters}
//   GET  /api/admin/reports?kind=..  aggregate | scores | iaa | detector-eval
//   GET  /healthz
//
// Annotator endpoints take "Authorization: Bearer <token>". Errors are
// {code, message, details}.
class Service {
 public:
  explicit Service(Store& store);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Serves files under `dir` at "/" (the browser bundle).
  void mount_static(const std::filesystem::path& dir);

  // Binds; port 0 picks a free port. Returns the bound port.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  void listen();
  void stop();
  // Waits until the server accepts connections.
  void wait_until_ready() const;

 private:
  void routes();

  Store& store_;
  std::unique_ptr<httplib::Server> server_;
};

// HTTP status for an error category.
int http_status(ErrorCode code);

}  // namespace corefkit
