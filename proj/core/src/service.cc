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

#include "corefkit/service.h"

#include <httplib.h>

#include <chrono>

#include "corefkit/error.h"

namespace corefkit {

namespace {

std::string bearer_token(const httplib::Request& req) {
  const std::string header = req.get_header_value("Authorization");
  const std::string prefix = "Bearer ";
  if (header.compare(0, prefix.size(), prefix) != 0) return {};
  return header.substr(prefix.size());
}

void send_json(httplib::Response& res, const Json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json; charset=utf-8");
}

void send_error(httplib::Response& res, const Error& e) {
  send_json(res,
            Json{{"code", error_code_name(e.code())}, {"message", e.what()}, {"details", e.details()}},
            http_status(e.code()));
}

Json parse_body(const httplib::Request& req) {
  try {
    return Json::parse(req.body);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("request body is not JSON: ") + e.what());
  }
}

Clustering clustering_from_body(const Json& body) {
  Clustering c;
  try {
    c.passage_id = body.value("passage_id", std::string());
    c.annotator_id = body.value("annotator_id", std::string());
    body.at("clusters").get_to(c.clusters);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kValidation, std::string("malformed clustering: ") + e.what());
  }
  return c;
}

std::int64_t epoch_seconds(Clock::time_point t) {
  return std::chrono::duration_cast<std::chrono::seconds>(t.time_since_epoch()).count();
}

Json outcome_json(const TutorialOutcome& o) {
  Json j{{"step", o.step}, {"advanced", o.advanced}, {"next_step", o.next_step},
         {"feedback", o.feedback}};
  j["screening"] = o.screening ? Json(*o.screening) : Json(nullptr);
  return j;
}

}  // namespace

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return 400;
    case ErrorCode::kInvalidArgument: return 400;
    case ErrorCode::kValidation: return 422;
    case ErrorCode::kNotFound: return 404;
    case ErrorCode::kConflict: return 409;
    case ErrorCode::kUnauthorized: return 401;
    case ErrorCode::kForbidden: return 403;
    case ErrorCode::kIo: return 500;
  }
  return 500;
}

Service::Service(Store& store) : store_(store), server_(std::make_unique<httplib::Server>()) {
  routes();
}

Service::~Service() { stop(); }

void Service::mount_static(const std::filesystem::path& dir) {
  if (!server_->set_mount_point("/", dir.string())) {
    throw Error(ErrorCode::kIo, "cannot serve static files from " + dir.string());
  }
}

int Service::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = server_->bind_to_any_port(host);
    if (bound < 0) throw Error(ErrorCode::kIo, "cannot bind " + host);
    return bound;
  }
  if (!server_->bind_to_port(host, port)) {
    throw Error(ErrorCode::kIo, "cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void Service::listen() { server_->listen_after_bind(); }

void Service::stop() {
  if (server_ && server_->is_running()) server_->stop();
}

void Service::wait_until_ready() const { server_->wait_until_ready(); }

void Service::routes() {
  httplib::Server& s = *server_;
  Store& store = store_;

  s.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    try {
      std::rethrow_exception(ep);
    } catch (const Error& e) {
      send_error(res, e);
    } catch (const std::exception& e) {
      send_json(res, Json{{"code", "internal"}, {"message", e.what()}, {"details", Json::array()}}, 500);
    }
  });

  auto annotator_of = [&store](const httplib::Request& req) {
    return store.authenticate(bearer_token(req));
  };

  s.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
    send_json(res, Json{{"status", "ok"}});
  });

  s.Post("/api/annotators", [&store](const httplib::Request&, httplib::Response& res) {
    const Registration r = store.register_annotator();
    send_json(res, Json{{"annotator_id", r.annotator_id}, {"token", r.token}}, 201);
  });

  s.Get("/api/tutorial", [&store](const httplib::Request&, httplib::Response& res) {
    send_json(res, public_tutorial_json(store.tutorial()));
  });

  s.Post("/api/tutorial/steps/:index",
         [&store, annotator_of](const httplib::Request& req, httplib::Response& res) {
           const std::string annotator = annotator_of(req);
           int index = -1;
           try {
             index = std::stoi(req.path_params.at("index"));
           } catch (const std::exception&) {
             throw Error(ErrorCode::kInvalidArgument, "step index must be an integer");
           }
           if (index < 0 || index >= static_cast<int>(store.tutorial().steps.size())) {
             throw Error(ErrorCode::kNotFound, "no tutorial step " + std::to_string(index));
           }
           Clustering c = clustering_from_body(parse_body(req));
           send_json(res, outcome_json(store.run_tutorial_step(annotator, index, std::move(c))));
         });

  s.Get("/api/assignments/next",
        [&store, annotator_of](const httplib::Request& req, httplib::Response& res) {
          const std::optional<Assignment> a = store.assign_next(annotator_of(req));
          Json body{{"assignment", nullptr}};
          if (a) {
            body["assignment"] = Json{{"passage_id", a->passage_id},
                                      {"expires_at", epoch_seconds(a->expires_at)}};
          }
          send_json(res, body);
        });

  s.Get("/api/passages/:id", [&store, annotator_of](const httplib::Request& req, httplib::Response& res) {
    const std::string annotator = annotator_of(req);
    send_json(res, store.passage_view(req.path_params.at("id"), annotator));
  });

  s.Post("/api/annotations", [&store, annotator_of](const httplib::Request& req, httplib::Response& res) {
    const std::string annotator = annotator_of(req);
    Clustering c = clustering_from_body(parse_body(req));
    const std::string passage_id = c.passage_id;
    store.submit_annotation(annotator, std::move(c));
    send_json(res, Json{{"status", "stored"}, {"passage_id", passage_id}, {"annotator_id", annotator}});
  });

  s.Get("/api/admin/reports", [&store](const httplib::Request& req, httplib::Response& res) {
    if (!store.is_admin_token(bearer_token(req))) {
      throw Error(ErrorCode::kUnauthorized, "admin token required");
    }
    std::map<std::string, std::string> params;
    for (const auto& [key, value] : req.params) {
      if (key != "kind") params[key] = value;
    }
    const std::string kind = req.get_param_value("kind");
    if (kind.empty()) throw Error(ErrorCode::kInvalidArgument, "missing kind parameter");
    send_json(res, store.report(kind, params));
  });
}

}  // namespace corefkit
