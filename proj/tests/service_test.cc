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
#include <httplib.h>

#include <thread>

#include "corefkit/service.h"
#include "corefkit/store.h"
#include "support.h"

namespace corefkit {
namespace {

using testing::TempDir;

class ServiceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    StoreConfig cfg;
    cfg.admin_token = "admin-secret";
    store_ = Store::create(dir_.path(), testing::passage_corpus(3), default_tutorial(), cfg);
    write_file_atomic(static_dir_ / "index.html", "<html>ui</html>");
    service_ = std::make_unique<Service>(*store_);
    service_->mount_static(static_dir_.path());
    port_ = service_->bind("127.0.0.1", 0);
    thread_ = std::thread([this] { service_->listen(); });
    service_->wait_until_ready();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }

  void TearDown() override {
    service_->stop();
    thread_.join();
  }

  httplib::Headers auth(const std::string& token) {
    return {{"Authorization", "Bearer " + token}};
  }

  // Registers an annotator and returns its token.
  std::string register_annotator() {
    auto res = client_->Post("/api/annotators");
    EXPECT_EQ(res->status, 201);
    return Json::parse(res->body)["token"];
  }

  void pass_tutorial(const std::string& token) {
    const TutorialScript& script = store_->tutorial();
    for (std::size_t i = 0; i < script.steps.size(); ++i) {
      const Json body{{"clusters", script.steps[i].gold}};
      auto res = client_->Post("/api/tutorial/steps/" + std::to_string(i), auth(token), body.dump(),
                               "application/json");
      ASSERT_EQ(res->status, 200) << res->body;
    }
  }

  Json mentions_of(const std::string& token, const std::string& passage) {
    auto res = client_->Get("/api/passages/" + passage, auth(token));
    EXPECT_EQ(res->status, 200);
    return Json::parse(res->body)["mentions"];
  }

  TempDir dir_;
  TempDir static_dir_{"corefkit-static"};
  std::unique_ptr<Store> store_;
  std::unique_ptr<Service> service_;
  std::thread thread_;
  int port_ = 0;
  std::unique_ptr<httplib::Client> client_;
};

TEST_F(ServiceTest, Health) {
  auto res = client_->Get("/healthz");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(Json::parse(res->body)["status"], "ok");
  EXPECT_NE(res->get_header_value("Content-Type").find("application/json"), std::string::npos);
}

TEST_F(ServiceTest, StaticFiles) {
  auto res = client_->Get("/index.html");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->body, "<html>ui</html>");
}

TEST_F(ServiceTest, TutorialHidesGold) {
  auto res = client_->Get("/api/tutorial");
  const Json j = Json::parse(res->body);
  EXPECT_EQ(j["steps"].size(), 5u);
  EXPECT_FALSE(j["steps"][0].contains("gold"));
}

TEST_F(ServiceTest, TutorialFeedbackAndErrors) {
  const std::string token = register_annotator();
  const Json merged{{"clusters", {{"john", "he", "fred", "him"}, {"party"}}}};
  auto res = client_->Post("/api/tutorial/steps/0", auth(token), merged.dump(), "application/json");
  ASSERT_EQ(res->status, 200);
  const Json out = Json::parse(res->body);
  EXPECT_FALSE(out["advanced"].get<bool>());
  EXPECT_EQ(out["feedback"].size(), 4u);

  res = client_->Post("/api/tutorial/steps/3", auth(token), merged.dump(), "application/json");
  EXPECT_EQ(res->status, 409);
  const Json err = Json::parse(res->body);
  EXPECT_EQ(err["code"], "conflict");
  EXPECT_TRUE(err.contains("message"));
  EXPECT_TRUE(err["details"].is_array());

  res = client_->Post("/api/tutorial/steps/17", auth(token), merged.dump(), "application/json");
  EXPECT_EQ(res->status, 404);
  res = client_->Post("/api/tutorial/steps/0", auth(token), "{oops", "application/json");
  EXPECT_EQ(res->status, 400);
  res = client_->Post("/api/tutorial/steps/0", merged.dump(), "application/json");
  EXPECT_EQ(res->status, 401);
  res = client_->Post("/api/tutorial/steps/0", auth(token), R"({"clusters": [["john"]]})",
                      "application/json");
  EXPECT_EQ(res->status, 422);
}

TEST_F(ServiceTest, AssignmentFlow) {
  const std::string token = register_annotator();
  auto res = client_->Get("/api/assignments/next", auth(token));
  EXPECT_EQ(res->status, 403);
  res = client_->Get("/api/assignments/next");
  EXPECT_EQ(res->status, 401);

  pass_tutorial(token);
  res = client_->Get("/api/assignments/next", auth(token));
  ASSERT_EQ(res->status, 200);
  const Json a = Json::parse(res->body)["assignment"];
  EXPECT_EQ(a["passage_id"], "doc:p0");
  EXPECT_TRUE(a["expires_at"].is_number());

  const Json mentions = mentions_of(token, "doc:p0");
  ASSERT_EQ(mentions.size(), 3u);
  // Percent-encoded ids resolve too.
  EXPECT_EQ(mentions_of(token, "doc%3Ap0"), mentions);

  // Leaving one mention out is rejected and names it.
  Json partial{{"passage_id", "doc:p0"}, {"clusters", Json::array()}};
  partial["clusters"].push_back(Json::array({mentions[0]["mention_id"], mentions[1]["mention_id"]}));
  res = client_->Post("/api/annotations", auth(token), partial.dump(), "application/json");
  EXPECT_EQ(res->status, 422);
  EXPECT_NE(res->body.find(mentions[2]["mention_id"].get<std::string>()), std::string::npos);

  Json full = partial;
  full["clusters"].push_back(Json::array({mentions[2]["mention_id"]}));
  res = client_->Post("/api/annotations", auth(token), full.dump(), "application/json");
  ASSERT_EQ(res->status, 200) << res->body;

  res = client_->Get("/api/passages/doc:p0", auth(token));
  EXPECT_EQ(Json::parse(res->body)["draft"]["clusters"].size(), 2u);

  // No lease on p1.
  Json other{{"passage_id", "doc:p1"}, {"clusters", Json::array()}};
  res = client_->Post("/api/annotations", auth(token), other.dump(), "application/json");
  EXPECT_EQ(res->status, 409);

  res = client_->Get("/api/passages/doc:p9", auth(token));
  EXPECT_EQ(res->status, 404);
}

TEST_F(ServiceTest, NullAssignmentWhenExhausted) {
  const std::string token = register_annotator();
  pass_tutorial(token);
  for (int i = 0; i < 3; ++i) {
    auto res = client_->Get("/api/assignments/next", auth(token));
    const std::string p = Json::parse(res->body)["assignment"]["passage_id"];
    Json body{{"passage_id", p}, {"clusters", Json::array()}};
    for (const Json& m : mentions_of(token, p)) body["clusters"].push_back(Json::array({m["mention_id"]}));
    ASSERT_EQ(client_->Post("/api/annotations", auth(token), body.dump(), "application/json")->status, 200);
  }
  auto res = client_->Get("/api/assignments/next", auth(token));
  ASSERT_EQ(res->status, 200);
  EXPECT_TRUE(Json::parse(res->body)["assignment"].is_null());
}

TEST_F(ServiceTest, AdminReports) {
  auto res = client_->Get("/api/admin/reports?kind=iaa");
  EXPECT_EQ(res->status, 401);
  const std::string annotator = register_annotator();
  res = client_->Get("/api/admin/reports?kind=iaa", auth(annotator));
  EXPECT_EQ(res->status, 401);
  res = client_->Get("/api/admin/reports?kind=iaa", auth("admin-secret"));
  ASSERT_EQ(res->status, 200);
  EXPECT_EQ(Json::parse(res->body)["kind"], "iaa");
  res = client_->Get("/api/admin/reports?kind=aggregate&tau=1", auth("admin-secret"));
  ASSERT_EQ(res->status, 200);
  EXPECT_EQ(Json::parse(res->body)["tau"], 1);
  res = client_->Get("/api/admin/reports?kind=scores", auth("admin-secret"));
  EXPECT_EQ(res->status, 404);
  res = client_->Get("/api/admin/reports", auth("admin-secret"));
  EXPECT_EQ(res->status, 400);
  res = client_->Get("/api/admin/reports?kind=iaa&singletons=sometimes", auth("admin-secret"));
  EXPECT_EQ(res->status, 400);
}

TEST(HttpStatusTest, Mapping) {
  EXPECT_EQ(http_status(ErrorCode::kParse), 400);
  EXPECT_EQ(http_status(ErrorCode::kInvalidArgument), 400);
  EXPECT_EQ(http_status(ErrorCode::kValidation), 422);
  EXPECT_EQ(http_status(ErrorCode::kNotFound), 404);
  EXPECT_EQ(http_status(ErrorCode::kConflict), 409);
  EXPECT_EQ(http_status(ErrorCode::kUnauthorized), 401);
  EXPECT_EQ(http_status(ErrorCode::kForbidden), 403);
  EXPECT_EQ(http_status(ErrorCode::kIo), 500);
}

}  // namespace
}  // namespace corefkit
