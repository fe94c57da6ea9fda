// Copyright 2026 The agentdock Authors
// SPDX-License-Identifier: Apache-2.0

#include "agentdock/backend.hpp"

#include <cstdio>
#include <set>

#include "agentdock/error.hpp"

namespace agentdock {

const char* to_string(MessageRole role) {
  switch (role) {
    case MessageRole::kSystem: return "system";
    case MessageRole::kUser: return "user";
    case MessageRole::kAssistant: return "assistant";
  }
  return "user";
}

const char* to_string(FinishReason reason) {
  switch (reason) {
    case FinishReason::kStop: return "stop";
    case FinishReason::kLength: return "length";
    case FinishReason::kError: return "error";
  }
  return "error";
}

void ChatRequest::validate() const {
  bool has_user = false;
  int images = 0;
  for (const auto& m : messages) {
    has_user = has_user || m.role == MessageRole::kUser;
    images += m.image ? 1 : 0;
  }
  if (!has_user) throw InvalidArgument("chat request has no user message");
  if (images > 1) throw InvalidArgument("chat request carries more than one image");
  if (temperature < 0.0) throw InvalidArgument("negative temperature");
  if (max_tokens <= 0) throw InvalidArgument("max_tokens must be positive");
}

std::string ChatRequest::joined_text() const {
  std::string out;
  for (const auto& m : messages) {
    if (!out.empty()) out += '\n';
    out += m.text;
  }
  return out;
}

void TokenDistribution::validate(double slack) const {
  std::set<std::string_view> seen;
  double mass = 0.0;
  for (const auto& e : entries) {
    if (!(e.probability > 0.0 && e.probability <= 1.0)) {
      throw OracleError("token '" + e.token + "' has probability outside (0, 1]");
    }
    if (!seen.insert(e.token).second) {
      throw OracleError("token '" + e.token + "' repeated in distribution");
    }
    mass += e.probability;
  }
  if (mass > 1.0 + slack) {
    throw OracleError("distribution mass exceeds 1");
  }
}

ChatResponse complete(const Endpoint& endpoint, const ChatRequest& request) {
  if (!endpoint.backend) {
    throw ConfigError("endpoint '" + endpoint.config.role + "' has no backend");
  }
  ChatResponse response = endpoint.backend->complete(endpoint.config, request);
  if (response.finish_reason == FinishReason::kError) {
    throw ModelRefusal("agent '" + endpoint.config.role + "' refused: " +
                       (response.error_detail.empty() ? std::string("no detail")
                                                      : response.error_detail));
  }
  return response;
}

TokenDistribution next_token_distribution(const Endpoint& endpoint,
                                          std::span<const std::string> prefix,
                                          const ChatRequest& context) {
  if (!endpoint.backend) {
    throw ConfigError("endpoint '" + endpoint.config.role + "' has no backend");
  }
  TokenDistribution dist =
      endpoint.backend->next_token_distribution(endpoint.config, prefix, context);
  if (dist.entries.empty()) {
    throw EmptyDistribution("agent '" + endpoint.config.role +
                            "' returned an empty next-token distribution");
  }
  dist.validate();
  return dist;
}

std::string fingerprint(const ChatRequest& request) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& m : request.messages) {
    mix(to_string(m.role));
    mix(std::string_view("\x1f", 1));
    mix(m.text);
    mix(std::string_view("\x1e", 1));
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

const Endpoint& Session::endpoint(std::string_view role) const {
  auto it = endpoints_->find(role);
  if (it == endpoints_->end()) {
    throw ConfigError("no endpoint configured for role '" + std::string(role) + "'");
  }
  return it->second;
}

bool Session::has_role(std::string_view role) const {
  return endpoints_->find(role) != endpoints_->end();
}

ChatResponse Session::complete(std::string_view role, ChatRequest request) {
  const Endpoint& ep = endpoint(role);
  auto [it, inserted] = ordinals_.try_emplace(std::string(role), 0);
  request.agent_role = std::string(role);
  request.ordinal = it->second++;
  if (request.model_name.empty()) request.model_name = ep.config.model;
  request.temperature = ep.config.temperature;
  request.max_tokens = ep.config.max_tokens;
  request.validate();
  return agentdock::complete(ep, request);
}

TokenDistribution Session::next_token_distribution(std::string_view role,
                                                   std::span<const std::string> prefix,
                                                   const ChatRequest& context) {
  const Endpoint& ep = endpoint(role);
  ChatRequest request = context;
  request.agent_role = std::string(role);
  if (request.model_name.empty()) request.model_name = ep.config.model;
  request.want_logprobs = true;
  request.validate();
  return agentdock::next_token_distribution(ep, prefix, request);
}

int Session::calls(std::string_view role) const {
  auto it = ordinals_.find(role);
  return it == ordinals_.end() ? 0 : it->second;
}

int Session::total_calls() const {
  int n = 0;
  for (const auto& [role, count] : ordinals_) n += count;
  return n;
}

}  // namespace agentdock
