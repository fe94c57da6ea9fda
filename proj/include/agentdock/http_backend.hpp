// Copyright 2026 The agentdock Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <functional>
#include <string>

#include <nlohmann/json.hpp>

#include "agentdock/backend.hpp"

namespace agentdock {

/// Exponential backoff applied to transport-class failures only.
struct RetryPolicy {
  std::chrono::milliseconds initial_backoff{500};
  double multiplier = 2.0;
  std::function<void(std::chrono::milliseconds)> sleep;  // defaults to this_thread
};

/// Client for chat-completions style endpoints. Each call opens its own
/// connection, so one instance may serve concurrent runs.
class HttpBackend final : public Backend {
 public:
  explicit HttpBackend(RetryPolicy policy = {});

  ChatResponse complete(const EndpointConfig& endpoint,
                        const ChatRequest& request) override;

  /// Asks for a single token with top-k logprobs, prefilling the prefix as
  /// an assistant turn.
  TokenDistribution next_token_distribution(const EndpointConfig& endpoint,
                                            std::span<const std::string> prefix,
                                            const ChatRequest& context) override;

 private:
  nlohmann::json post(const EndpointConfig& endpoint, const nlohmann::json& body);

  RetryPolicy policy_;
};

// Wire schema helpers, exposed for fixture tests.

nlohmann::json request_to_wire(const ChatRequest& request, const EndpointConfig& endpoint);

/// Inverse of request_to_wire for the fields the wire carries.
ChatRequest request_from_wire(const nlohmann::json& body);

/// Throws ProtocolError when the body lacks choices[0].message.content.
ChatResponse response_from_wire(const nlohmann::json& body);

/// Top logprobs at the first generated position. Throws
/// UnsupportedCapability when the body carries none.
TokenDistribution distribution_from_wire(const nlohmann::json& body);

std::string base64_encode(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> base64_decode(std::string_view text);

}  // namespace agentdock
