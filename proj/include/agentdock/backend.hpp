// Copyright 2026 The agentdock Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "agentdock/types.hpp"

namespace agentdock {

enum class MessageRole { kSystem, kUser, kAssistant };

const char* to_string(MessageRole role);

struct ChatMessage {
  MessageRole role = MessageRole::kUser;
  std::string text;
  std::optional<Document> image;
};

struct ChatRequest {
  std::vector<ChatMessage> messages;
  std::string model_name;
  double temperature = 0.0;
  int max_tokens = 512;
  bool want_logprobs = false;

  // Call-site metadata used for scripting and tracing; never serialized.
  std::string agent_role;
  int ordinal = 0;

  /// Throws InvalidArgument unless there is at least one user message,
  /// at most one image, a non-negative temperature and positive max_tokens.
  void validate() const;

  /// All message texts joined by newlines, in order.
  std::string joined_text() const;
};

enum class FinishReason { kStop, kLength, kError };

const char* to_string(FinishReason reason);

struct ChatResponse {
  std::string text;
  FinishReason finish_reason = FinishReason::kStop;
  std::int64_t latency_ms = 0;
  std::string error_detail;
};

struct TokenProbability {
  std::string token;
  double probability = 0.0;
};

/// Next-token distribution, possibly truncated to the endpoint's top-k.
struct TokenDistribution {
  std::vector<TokenProbability> entries;

  /// Throws OracleError when a probability is outside (0, 1], a token is
  /// repeated, or the mass exceeds 1 by more than the given slack.
  void validate(double slack = 1e-6) const;
};

struct EndpointConfig {
  std::string role;
  std::string kind = "http";  // "http" or "scripted"
  std::string url;
  std::string model;
  int timeout_ms = 60000;
  int max_attempts = 3;
  std::string auth_env;
  double temperature = 0.0;
  int max_tokens = 512;
  int top_logprobs = 10;
  bool supports_logprobs = true;
  /// Extra top-level fields merged into every HTTP request body.
  nlohmann::json extra = nlohmann::json::object();
};

class Backend {
 public:
  virtual ~Backend() = default;

  virtual ChatResponse complete(const EndpointConfig& endpoint,
                                const ChatRequest& request) = 0;

  virtual TokenDistribution next_token_distribution(
      const EndpointConfig& endpoint, std::span<const std::string> prefix,
      const ChatRequest& context) = 0;
};

struct Endpoint {
  EndpointConfig config;
  std::shared_ptr<Backend> backend;
};

using EndpointRegistry = std::map<std::string, Endpoint, std::less<>>;

/// Calls the backend and turns finish_reason Error into ModelRefusal.
ChatResponse complete(const Endpoint& endpoint, const ChatRequest& request);

/// Validates the returned distribution; empty distributions raise
/// EmptyDistribution.
TokenDistribution next_token_distribution(const Endpoint& endpoint,
                                          std::span<const std::string> prefix,
                                          const ChatRequest& context);

/// FNV-1a over the role-tagged message texts, as 16 hex digits.
std::string fingerprint(const ChatRequest& request);

/// One pipeline run's view of the endpoints. Stamps each request with its
/// role, per-role call ordinal and the endpoint's generation parameters.
/// Not thread-safe; a run owns its session.
class Session {
 public:
  explicit Session(const EndpointRegistry& endpoints) : endpoints_(&endpoints) {}

  const Endpoint& endpoint(std::string_view role) const;
  bool has_role(std::string_view role) const;

  ChatResponse complete(std::string_view role, ChatRequest request);
  TokenDistribution next_token_distribution(std::string_view role,
                                            std::span<const std::string> prefix,
                                            const ChatRequest& context);

  int calls(std::string_view role) const;
  int total_calls() const;

 private:
  const EndpointRegistry* endpoints_;
  std::map<std::string, int, std::less<>> ordinals_;
};

}  // namespace agentdock
