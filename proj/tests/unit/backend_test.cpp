// Copyright 2026 The agentdock Authors
// SPDX-License-Identifier: Apache-2.0

#include "agentdock/backend.hpp"

#include <gtest/gtest.h>

#include <thread>

#include "agentdock/error.hpp"
#include "agentdock/scripted_backend.hpp"
#include "scenarios.hpp"

namespace agentdock {
namespace {

ChatRequest user_request(std::string text) {
  ChatRequest r;
  r.messages.push_back({MessageRole::kUser, std::move(text), std::nullopt});
  return r;
}

EndpointRegistry registry_for(std::shared_ptr<Backend> backend, std::vector<std::string> roles) {
  EndpointRegistry reg;
  for (auto& role : roles) {
    EndpointConfig c;
    c.role = role;
    c.kind = "scripted";
    c.model = "m-" + role;
    c.temperature = 0.3;
    c.max_tokens = 64;
    reg.emplace(role, Endpoint{c, backend});
  }
  return reg;
}

TEST(ChatRequest, Validate) {
  ChatRequest r;
  EXPECT_THROW(r.validate(), InvalidArgument);
  r = user_request("hi");
  EXPECT_NO_THROW(r.validate());
  r.messages[0].image = testing::sample_document();
  r.messages.push_back({MessageRole::kUser, "again", testing::sample_document()});
  EXPECT_THROW(r.validate(), InvalidArgument);
  r = user_request("hi");
  r.max_tokens = 0;
  EXPECT_THROW(r.validate(), InvalidArgument);
  r = user_request("hi");
  r.temperature = -1;
  EXPECT_THROW(r.validate(), InvalidArgument);
}

TEST(TokenDistribution, Validate) {
  EXPECT_NO_THROW((TokenDistribution{{{"a", 0.6}, {"b", 0.3}}}.validate()));
  EXPECT_THROW((TokenDistribution{{{"a", 0.0}}}.validate()), OracleError);
  EXPECT_THROW((TokenDistribution{{{"a", 0.5}, {"a", 0.2}}}.validate()), OracleError);
  EXPECT_THROW((TokenDistribution{{{"a", 0.7}, {"b", 0.7}}}.validate()), OracleError);
}

TEST(ScriptedBackend, ReturnsCannedResponseVerbatim) {
  Script script;
  script.respond("thinker", "1. look\nANSWER: 42");
  auto backend = std::make_shared<ScriptedBackend>(script);
  const auto reg = registry_for(backend, {"thinker"});
  Session session(reg);
  EXPECT_EQ(session.complete("thinker", user_request("q")).text, "1. look\nANSWER: 42");
}

TEST(ScriptedBackend, MissingKeyIsAHardError) {
  auto backend = std::make_shared<ScriptedBackend>(Script{});
  const auto reg = registry_for(backend, {"thinker"});
  Session session(reg);
  try {
    session.complete("thinker", user_request("q"));
    FAIL();
  } catch (const UnscriptedRequest& e) {
    EXPECT_NE(std::string(e.what()).find("unscripted request"), std::string::npos);
  }
}

TEST(ScriptedBackend, MatchesOnOrdinalContentAndFingerprint) {
  Script script;
  script.respond("judge", "first", {.ordinal = 0});
  script.respond("judge", "about tables", {.contains = {"table"}, .excludes = {"chair"}});
  ChatRequest probe = user_request("exact");
  probe.agent_role = "judge";
  script.respond("judge", "fingerprinted", {.fingerprint = fingerprint(probe)});
  auto backend = std::make_shared<ScriptedBackend>(script, true);
  const auto reg = registry_for(backend, {"judge"});
  Session session(reg);

  EXPECT_EQ(session.complete("judge", user_request("table")).text, "first");
  EXPECT_EQ(session.complete("judge", user_request("a table")).text, "about tables");
  EXPECT_THROW(session.complete("judge", user_request("table and chair")), UnscriptedRequest);
  EXPECT_EQ(session.complete("judge", user_request("exact")).text, "fingerprinted");
  EXPECT_EQ(session.calls("judge"), 4);
  // Unanswered requests are recorded too.
  EXPECT_EQ(backend->calls_for("judge").size(), 4u);
}

TEST(Session, StampsRoleOrdinalAndGenerationParameters) {
  Script script;
  script.respond("eval", "ok");
  auto backend = std::make_shared<ScriptedBackend>(script, true);
  const auto reg = registry_for(backend, {"eval", "debate"});
  Session session(reg);
  session.complete("eval", user_request("a"));
  session.complete("eval", user_request("b"));
  const auto calls = backend->calls_for("eval");
  ASSERT_EQ(calls.size(), 2u);
  EXPECT_EQ(calls[0].ordinal, 0);
  EXPECT_EQ(calls[1].ordinal, 1);
  EXPECT_EQ(session.total_calls(), 2);
  EXPECT_THROW(session.complete("thesis", user_request("x")), ConfigError);
}

TEST(ScriptedBackend, FinishReasonErrorBecomesModelRefusal) {
  Script script;
  ResponseRule rule{"sanity", {}, {}};
  rule.response.finish_reason = FinishReason::kError;
  rule.response.error_detail = "content filter";
  script.respond(rule);
  auto backend = std::make_shared<ScriptedBackend>(script);
  const auto reg = registry_for(backend, {"sanity"});
  Session session(reg);
  EXPECT_THROW(session.complete("sanity", user_request("q")), ModelRefusal);
}

TEST(ScriptedBackend, DistributionsByPrefix) {
  Script script;
  script.distribution("router", {}, {{"table", 0.9}, {"figure", 0.1}});
  script.distribution("router", {"x"}, {{"x", 0.5}, {"y", 0.5}});
  script.distribution("router", {"bad"}, {});
  DistributionRule failing{"router", {"boom"}, {}, {}, std::string("oracle offline")};
  script.distribution(failing);
  auto backend = std::make_shared<ScriptedBackend>(script);
  const auto reg = registry_for(backend, {"router"});
  Session session(reg);
  const ChatRequest ctx = user_request("route me");

  const std::vector<std::string> root;
  const auto d0 = session.next_token_distribution("router", root, ctx);
  ASSERT_EQ(d0.entries.size(), 2u);
  EXPECT_EQ(d0.entries[0].token, "table");
  EXPECT_DOUBLE_EQ(d0.entries[0].probability, 0.9);

  const std::vector<std::string> x = {"x"};
  EXPECT_EQ(session.next_token_distribution("router", x, ctx).entries.size(), 2u);

  const std::vector<std::string> unknown = {"z"};
  EXPECT_THROW(session.next_token_distribution("router", unknown, ctx), UnscriptedRequest);
  const std::vector<std::string> bad = {"bad"};
  EXPECT_THROW(session.next_token_distribution("router", bad, ctx), EmptyDistribution);
  const std::vector<std::string> boom = {"boom"};
  EXPECT_THROW(session.next_token_distribution("router", boom, ctx), OracleError);
}

TEST(Script, JsonRoundTrip) {
  Script script;
  script.respond("thinker", "1. a\nANSWER: b", {.ordinal = 2, .contains = {"q"}});
  script.distribution("router", {"x"}, {{"x", 0.5}, {"y", 0.25}});
  const auto json = script.to_json();
  EXPECT_EQ(Script::from_json(json).to_json(), json);
}

TEST(Script, MalformedJsonIsAConfigError) {
  EXPECT_THROW(Script::from_json(nlohmann::json::parse(R"({"responses":[{"text":"x"}]})")),
               ConfigError);
}

TEST(ScriptedBackend, DeterministicAcrossThreads) {
  Script script;
  for (int i = 0; i < 8; ++i) {
    script.respond("eval", "reply " + std::to_string(i), {.ordinal = i});
  }
  auto backend = std::make_shared<ScriptedBackend>(script);
  const auto reg = registry_for(backend, {"eval"});

  std::vector<std::vector<std::string>> seen(4);
  {
    std::vector<std::jthread> threads;
    for (std::size_t t = 0; t < seen.size(); ++t) {
      threads.emplace_back([&, t] {
        Session session(reg);
        for (int i = 0; i < 8; ++i) seen[t].push_back(session.complete("eval", user_request("q")).text);
      });
    }
  }
  for (const auto& s : seen) EXPECT_EQ(s, seen[0]);
  EXPECT_EQ(seen[0].back(), "reply 7");
}

TEST(Fingerprint, StableAndContentSensitive) {
  const ChatRequest a = user_request("hello");
  ChatRequest b = user_request("hello");
  EXPECT_EQ(fingerprint(a), fingerprint(b));
  EXPECT_EQ(fingerprint(a).size(), 16u);
  b.messages[0].text = "hello!";
  EXPECT_NE(fingerprint(a), fingerprint(b));
}

}  // namespace
}  // namespace agentdock
