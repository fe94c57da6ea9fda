// Copyright 2026 The agentdock Authors
// SPDX-License-Identifier: Apache-2.0

// Must match the library's configuration of the header.
#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "agentdock/http_backend.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <thread>

#include "agentdock/error.hpp"
#include "scenarios.hpp"

namespace agentdock {
namespace {

using nlohmann::json;

json completion_body(const std::string& text, const std::string& finish = "stop") {
  return {{"choices", {{{"message", {{"role", "assistant"}, {"content", text}}},
                        {"finish_reason", finish}}}}};
}

// Serves canned replies in order on a loopback port.
class FixtureServer {
 public:
  explicit FixtureServer(std::vector<std::pair<int, std::string>> replies)
      : replies_(std::move(replies)) {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      const std::size_t i = hits_++;
      last_body_ = req.body;
      last_auth_ = req.get_header_value("Authorization");
      const auto& [status, body] = replies_[std::min(i, replies_.size() - 1)];
      res.status = status;
      res.set_content(body, "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::jthread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FixtureServer() { server_.stop(); }

  std::string url() const {
    return "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat/completions";
  }
  std::size_t hits() const { return hits_; }
  json last_body() const { return json::parse(last_body_); }
  std::string last_auth() const { return last_auth_; }

 private:
  std::vector<std::pair<int, std::string>> replies_;
  httplib::Server server_;
  int port_ = 0;
  std::atomic<std::size_t> hits_{0};
  std::string last_body_;
  std::string last_auth_;
  std::jthread thread_;
};

EndpointConfig endpoint_for(const FixtureServer& server) {
  EndpointConfig e;
  e.role = "thinker";
  e.url = server.url();
  e.model = "vlm-test";
  e.timeout_ms = 2000;
  return e;
}

ChatRequest sample_request() {
  ChatRequest r;
  r.messages.push_back({MessageRole::kSystem, "Be brief.", std::nullopt});
  r.messages.push_back({MessageRole::kUser, "Question: total?", testing::sample_document()});
  r.model_name = "vlm-test";
  r.temperature = 0.25;
  r.max_tokens = 77;
  return r;
}

struct Sleeps {
  std::vector<std::chrono::milliseconds> seen;
  RetryPolicy policy() {
    RetryPolicy p;
    p.sleep = [this](std::chrono::milliseconds d) { seen.push_back(d); };
    return p;
  }
};

TEST(HttpBackend, ParsesTheFixtureReply) {
  FixtureServer server({{200, completion_body("1. read\nANSWER: 7").dump()}});
  Sleeps sleeps;
  HttpBackend backend(sleeps.policy());
  const ChatResponse r = backend.complete(endpoint_for(server), sample_request());
  EXPECT_EQ(r.text, "1. read\nANSWER: 7");
  EXPECT_EQ(r.finish_reason, FinishReason::kStop);
  EXPECT_GE(r.latency_ms, 0);
  EXPECT_TRUE(sleeps.seen.empty());
}

TEST(HttpBackend, SendsTheWireSchema) {
  FixtureServer server({{200, completion_body("ok").dump()}});
  HttpBackend backend;
  EndpointConfig e = endpoint_for(server);
  e.extra = {{"seed", 5}};
  backend.complete(e, sample_request());
  const json body = server.last_body();
  EXPECT_EQ(body["model"], "vlm-test");
  EXPECT_EQ(body["temperature"], 0.25);
  EXPECT_EQ(body["max_tokens"], 77);
  EXPECT_EQ(body["logprobs"], false);
  EXPECT_FALSE(body.contains("top_logprobs"));
  EXPECT_EQ(body["seed"], 5);
  ASSERT_EQ(body["messages"].size(), 2u);
  EXPECT_EQ(body["messages"][0]["role"], "system");
  const auto& parts = body["messages"][1]["content"];
  EXPECT_EQ(parts[0]["type"], "text");
  EXPECT_EQ(parts[1]["type"], "image");
  EXPECT_TRUE(parts[1]["image_data"].get<std::string>().starts_with("data:image/png;base64,"));
}

TEST(HttpBackend, WireRequestRoundTrips) {
  const ChatRequest original = sample_request();
  EndpointConfig e;
  e.model = "vlm-test";
  const ChatRequest back = request_from_wire(request_to_wire(original, e));
  ASSERT_EQ(back.messages.size(), original.messages.size());
  for (std::size_t i = 0; i < back.messages.size(); ++i) {
    EXPECT_EQ(back.messages[i].role, original.messages[i].role);
    EXPECT_EQ(back.messages[i].text, original.messages[i].text);
    EXPECT_EQ(back.messages[i].image.has_value(), original.messages[i].image.has_value());
  }
  const auto bytes = back.messages[1].image->image_bytes();
  EXPECT_EQ(std::vector<std::uint8_t>(bytes.begin(), bytes.end()), testing::png_bytes());
  EXPECT_EQ(back.model_name, original.model_name);
  EXPECT_EQ(back.temperature, original.temperature);
  EXPECT_EQ(back.max_tokens, original.max_tokens);
}

TEST(HttpBackend, RetriesTransientStatusWithBackoff) {
  FixtureServer server({{503, "{}"}, {429, "{}"}, {200, completion_body("late").dump()}});
  Sleeps sleeps;
  HttpBackend backend(sleeps.policy());
  EXPECT_EQ(backend.complete(endpoint_for(server), sample_request()).text, "late");
  EXPECT_EQ(server.hits(), 3u);
  ASSERT_EQ(sleeps.seen.size(), 2u);
  EXPECT_EQ(sleeps.seen[0].count(), 500);
  EXPECT_EQ(sleeps.seen[1].count(), 1000);
}

TEST(HttpBackend, GivesUpAfterMaxAttempts) {
  FixtureServer server({{500, "{}"}});
  Sleeps sleeps;
  HttpBackend backend(sleeps.policy());
  EXPECT_THROW(backend.complete(endpoint_for(server), sample_request()), TransportError);
  EXPECT_EQ(server.hits(), 3u);
}

TEST(HttpBackend, NeverRetriesProtocolErrors) {
  FixtureServer bad_request({{400, R"({"error":"bad"})"}});
  Sleeps sleeps;
  HttpBackend backend(sleeps.policy());
  EXPECT_THROW(backend.complete(endpoint_for(bad_request), sample_request()), ProtocolError);
  EXPECT_EQ(bad_request.hits(), 1u);

  FixtureServer garbage({{200, "not json"}});
  EXPECT_THROW(backend.complete(endpoint_for(garbage), sample_request()), ProtocolError);
  EXPECT_EQ(garbage.hits(), 1u);

  FixtureServer no_content({{200, R"({"choices":[]})"}});
  EXPECT_THROW(backend.complete(endpoint_for(no_content), sample_request()), ProtocolError);
  EXPECT_TRUE(sleeps.seen.empty());
}

TEST(HttpBackend, RefusalIsNotRetried) {
  FixtureServer server({{200, completion_body("", "content_filter").dump()}});
  Sleeps sleeps;
  auto backend = std::make_shared<HttpBackend>(sleeps.policy());
  const Endpoint ep{endpoint_for(server), backend};
  EXPECT_THROW(complete(ep, sample_request()), ModelRefusal);
  EXPECT_EQ(server.hits(), 1u);
}

TEST(HttpBackend, UnreachableIsATransportError) {
  EndpointConfig e;
  e.role = "thinker";
  e.url = "http://127.0.0.1:1/v1/chat/completions";
  e.model = "m";
  e.timeout_ms = 200;
  Sleeps sleeps;
  HttpBackend backend(sleeps.policy());
  EXPECT_THROW(backend.complete(e, sample_request()), TransportError);
  EXPECT_EQ(sleeps.seen.size(), 2u);
}

TEST(HttpBackend, SendsBearerTokenFromEnvironment) {
  FixtureServer server({{200, completion_body("ok").dump()}});
  ::setenv("AGENTDOCK_TEST_TOKEN", "s3cret", 1);
  EndpointConfig e = endpoint_for(server);
  e.auth_env = "AGENTDOCK_TEST_TOKEN";
  HttpBackend backend;
  backend.complete(e, sample_request());
  EXPECT_EQ(server.last_auth(), "Bearer s3cret");
  ::unsetenv("AGENTDOCK_TEST_TOKEN");
}

TEST(HttpBackend, NextTokenDistributionFromTopLogprobs) {
  const json body = {
      {"choices",
       {{{"message", {{"role", "assistant"}, {"content", "table"}}},
         {"finish_reason", "length"},
         {"logprobs",
          {{"content",
            {{{"token", "table"},
              {"logprob", std::log(0.9)},
              {"top_logprobs",
               {{{"token", "table"}, {"logprob", std::log(0.9)}},
                {{"token", "figure"}, {"logprob", std::log(0.1)}}}}}}}}}}}}};
  FixtureServer server({{200, body.dump()}});
  HttpBackend backend;
  EndpointConfig e = endpoint_for(server);
  const std::vector<std::string> prefix = {"tab"};
  const TokenDistribution d = backend.next_token_distribution(e, prefix, sample_request());
  ASSERT_EQ(d.entries.size(), 2u);
  EXPECT_EQ(d.entries[0].token, "table");
  EXPECT_NEAR(d.entries[0].probability, 0.9, 1e-12);
  const json sent = server.last_body();
  EXPECT_EQ(sent["max_tokens"], 1);
  EXPECT_EQ(sent["logprobs"], true);
  EXPECT_EQ(sent["top_logprobs"], 10);
  EXPECT_EQ(sent["messages"].back()["role"], "assistant");

  e.supports_logprobs = false;
  EXPECT_THROW(backend.next_token_distribution(e, prefix, sample_request()), UnsupportedCapability);
  EXPECT_THROW(distribution_from_wire(completion_body("x")), UnsupportedCapability);
}

TEST(Base64, RoundTrip) {
  const std::vector<std::uint8_t> bytes = {0, 1, 2, 250, 251, 252, 253, 254, 255, 'a'};
  for (std::size_t n = 0; n <= bytes.size(); ++n) {
    const std::vector<std::uint8_t> part(bytes.begin(), bytes.begin() + static_cast<long>(n));
    EXPECT_EQ(base64_decode(base64_encode(part)), part);
  }
  EXPECT_EQ(base64_encode(std::vector<std::uint8_t>{'M', 'a', 'n'}), "TWFu");
}

}  // namespace
}  // namespace agentdock
