// Copyright 2026 The ctxeval Authors.
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

#include "ctxeval/gateway/gateway.h"

#include <gtest/gtest.h>
#include <httplib.h>

#include <cstdlib>
#include <thread>

#include "ctxeval/core/digest.h"
#include "ctxeval/gateway/http_backend.h"
#include "ctxeval/gateway/mock.h"
#include "testing/util.h"

namespace ctxeval {
namespace {

ProviderConfig MockProvider(int max_concurrency = 4) {
  ProviderConfig p;
  p.provider_id = "mock";
  p.requests_per_minute = 1e9;
  p.max_concurrency = max_concurrency;
  p.retry.max_attempts = 3;
  return p;
}

TEST(MockScript, DigestPlayback) {
  MockScript script;
  script.AddDigest(Sha256Hex("say hello"), "hello");
  testing::MockModels models(std::move(script), {"m"});
  auto r = models.gateway->Complete(models.gateway->MakeRequest("m", "say hello"));
  EXPECT_EQ(r.text, "hello");
}

TEST(MockScript, RegexRuleMatchesJudgingPrompts) {
  MockScript script;
  script.AddRegex(".*judgement.*", R"(**output: {"judgement": "Response 1"}** because clearer)");
  EXPECT_EQ(script.Respond(ChatRequest{"mock", "m", "fill the judgement in", 10, {}}),
            R"(**output: {"judgement": "Response 1"}** because clearer)");
}

TEST(MockScript, MissWithoutDefault) {
  MockScript script;
  script.AddContains({"never"}, "x");
  try {
    script.Respond(ChatRequest{"mock", "m", "prompt", 10, {}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMockMiss);
  }
  script.SetDefault("fallback");
  EXPECT_EQ(script.Respond(ChatRequest{"mock", "m", "prompt", 10, {}}), "fallback");
}

TEST(MockScript, FirstMatchWins) {
  MockScript script;
  script.AddContains({"abc"}, "first").AddContains({"abc"}, "second");
  EXPECT_EQ(script.Respond(ChatRequest{"mock", "m", "xxabcxx", 10, {}}), "first");
}

TEST(MockScript, ModelFilter) {
  MockScript script;
  script.AddContains({"q"}, "for b", "b").AddContains({"q"}, "for others");
  EXPECT_EQ(script.Respond(ChatRequest{"mock", "b", "q", 10, {}}), "for b");
  EXPECT_EQ(script.Respond(ChatRequest{"mock", "bb", "q", 10, {}}), "for others");
}

TEST(MockScript, FromJson) {
  auto script = MockScript::FromJson(Json::parse(
      R"({"default": "d", "rules": [{"contains": ["x"], "model": "m1", "text": "t"}]})"));
  EXPECT_EQ(script.rule_count(), 1u);
  EXPECT_EQ(script.Respond(ChatRequest{"mock", "m1", "x", 10, {}}), "t");
  EXPECT_EQ(script.Respond(ChatRequest{"mock", "m2", "x", 10, {}}), "d");
}

TEST(Gateway, CacheHitOnRepeat) {
  testing::TempDir dir;
  MockScript script;
  script.SetDefault("reply");
  auto backend = std::make_shared<MockBackend>(std::move(script));
  Gateway gateway(dir.path());
  gateway.AddProvider(MockProvider(), backend);
  gateway.AddModel("m", "mock");
  auto first = gateway.Complete(gateway.MakeRequest("m", "p"));
  auto second = gateway.Complete(gateway.MakeRequest("m", "p"));
  EXPECT_FALSE(first.cached);
  EXPECT_TRUE(second.cached);
  EXPECT_EQ(second.text, "reply");
  EXPECT_EQ(backend->calls(), 1);
  EXPECT_EQ(gateway.stats().network_calls, 0);

  // A second gateway over the same directory is served from disk.
  Gateway again(dir.path());
  again.AddProvider(MockProvider(), backend);
  again.AddModel("m", "mock");
  EXPECT_TRUE(again.Complete(again.MakeRequest("m", "p")).cached);
  EXPECT_EQ(backend->calls(), 1);
}

TEST(Gateway, EmptyPromptIsPrecondition) {
  testing::MockModels models(MockScript().SetDefault("x"), {"m"});
  try {
    models.gateway->Complete(models.gateway->MakeRequest("m", ""));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPrecondition);
  }
}

TEST(Gateway, DigestIgnoresNothingRelevant) {
  ChatRequest a{"p", "m", "prompt", 100, {}};
  ChatRequest b = a;
  EXPECT_EQ(Gateway::RequestDigest(a), Gateway::RequestDigest(b));
  b.max_tokens = 101;
  EXPECT_NE(Gateway::RequestDigest(a), Gateway::RequestDigest(b));
  b = a;
  b.temperature = 0.5;
  EXPECT_NE(Gateway::RequestDigest(a), Gateway::RequestDigest(b));
}

class FlakyBackend : public Backend {
 public:
  FlakyBackend(int failures, int status) : failures_(failures), status_(status) {}
  BackendReply Send(const ChatRequest&, const ProviderConfig&, const std::string&,
                    const std::string&) override {
    if (calls_++ < failures_) throw ProviderFailure(ErrorCode::kProviderError, status_, "busy");
    return BackendReply{"ok", FinishReason::kStop, {}};
  }
  bool needs_credential() const override { return false; }
  int calls_ = 0;

 private:
  int failures_;
  int status_;
};

TEST(Gateway, RetriesTransientFailures) {
  auto backend = std::make_shared<FlakyBackend>(2, 503);
  Gateway gateway;
  std::vector<std::chrono::milliseconds> sleeps;
  gateway.SetSleeper([&](std::chrono::milliseconds d) { sleeps.push_back(d); });
  gateway.AddProvider(MockProvider(), backend);
  gateway.AddModel("m", "mock");
  EXPECT_EQ(gateway.Complete(gateway.MakeRequest("m", "p")).text, "ok");
  EXPECT_EQ(backend->calls_, 3);
  EXPECT_EQ(sleeps.size(), 2u);
  EXPECT_EQ(gateway.stats().retries, 2);
}

TEST(Gateway, RateLimitExhausted) {
  auto backend = std::make_shared<FlakyBackend>(100, 429);
  Gateway gateway;
  gateway.SetSleeper([](std::chrono::milliseconds) {});
  gateway.AddProvider(MockProvider(), backend);
  gateway.AddModel("m", "mock");
  try {
    gateway.Complete(gateway.MakeRequest("m", "p"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRateLimitedExhausted);
  }
  EXPECT_EQ(backend->calls_, 3);
}

TEST(Gateway, PermanentFailureIsNotRetried) {
  auto backend = std::make_shared<FlakyBackend>(100, 400);
  Gateway gateway;
  gateway.SetSleeper([](std::chrono::milliseconds) {});
  gateway.AddProvider(MockProvider(), backend);
  gateway.AddModel("m", "mock");
  try {
    gateway.Complete(gateway.MakeRequest("m", "p"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kProviderError);
  }
  EXPECT_EQ(backend->calls_, 1);
}

TEST(Gateway, ConcurrencyCapHolds) {
  MockScript script;
  script.SetDefault("x").SetLatency(std::chrono::milliseconds(20));
  testing::MockModels models(std::move(script), {"m"}, 2);
  std::vector<std::thread> threads;
  for (int i = 0; i < 8; ++i) {
    threads.emplace_back([&, i] {
      models.gateway->Complete(models.gateway->MakeRequest("m", "p" + std::to_string(i)));
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(models.backend->calls(), 8);
  EXPECT_LE(models.backend->max_in_flight(), 2);
}

TEST(Gateway, MissingCredential) {
  ProviderConfig p;
  p.provider_id = "remote";
  p.kind = "openai";
  p.base_url = "http://127.0.0.1:1";
  p.credential_env = "CTXEVAL_TEST_UNSET_CREDENTIAL";
  ::unsetenv(p.credential_env.c_str());
  Gateway gateway;
  gateway.AddProvider(p, std::make_shared<HttpChatBackend>());
  gateway.AddModel("m", "remote");
  try {
    gateway.Complete(gateway.MakeRequest("m", "p"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCredentialMissing);
  }
}

TEST(HttpChatBackend, TalksOpenAiShape) {
  httplib::Server server;
  std::string seen_auth;
  Json seen_body;
  server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
    seen_auth = req.get_header_value("Authorization");
    seen_body = Json::parse(req.body);
    res.set_content(
        R"({"choices": [{"message": {"content": "remote text"}, "finish_reason": "length"}],
            "usage": {"prompt_tokens": 7, "completion_tokens": 3}})",
        "application/json");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  ProviderConfig p;
  p.provider_id = "remote";
  p.kind = "openai";
  p.base_url = "http://127.0.0.1:" + std::to_string(port);
  p.credential_env = "CTXEVAL_TEST_CREDENTIAL";
  ::setenv(p.credential_env.c_str(), "secret", 1);
  Gateway gateway;
  gateway.AddProvider(p, std::make_shared<HttpChatBackend>());
  gateway.AddModel("m", "remote", "api-model");
  const auto r = gateway.Complete(gateway.MakeRequest("m", "hi", 55));
  server.stop();
  thread.join();

  EXPECT_EQ(r.text, "remote text");
  EXPECT_EQ(r.finish_reason, FinishReason::kLength);
  EXPECT_EQ(r.usage.prompt_tokens, 7);
  EXPECT_EQ(seen_auth, "Bearer secret");
  EXPECT_EQ(seen_body.at("model"), "api-model");
  EXPECT_EQ(seen_body.at("max_tokens"), 55);
  EXPECT_EQ(seen_body.at("messages").at(0).at("content"), "hi");
  EXPECT_EQ(gateway.stats().network_calls, 1);
}

}  // namespace
}  // namespace ctxeval
