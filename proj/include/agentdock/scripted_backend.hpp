// Copyright 2026 The agentdock Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "agentdock/backend.hpp"

namespace agentdock {

/// Which requests a rule answers. Empty fields match anything.
struct RuleMatch {
  std::optional<int> ordinal;
  std::vector<std::string> contains;
  std::vector<std::string> excludes;
  std::optional<std::string> fingerprint;
};

struct ResponseRule {
  std::string role;
  RuleMatch match;
  ChatResponse response;
};

struct DistributionRule {
  std::string role;
  std::vector<std::string> prefix;
  RuleMatch match;
  TokenDistribution distribution;
  std::optional<std::string> error;  // raise OracleError instead
};

/// Declarative test scenario: canned responses keyed by (role, call
/// ordinal, request content class). Rules are tried in declaration order and
/// the first match wins; a request no rule answers is a hard error.
class Script {
 public:
  Script& respond(std::string role, std::string text, RuleMatch match = {});
  Script& respond(ResponseRule rule);
  Script& distribution(std::string role, std::vector<std::string> prefix,
                       std::vector<TokenProbability> entries, RuleMatch match = {});
  Script& distribution(DistributionRule rule);

  /// Throws UnscriptedRequest when nothing matches.
  const ChatResponse& lookup_response(const ChatRequest& request) const;
  const DistributionRule& lookup_distribution(std::span<const std::string> prefix,
                                              const ChatRequest& context) const;

  const std::vector<ResponseRule>& responses() const noexcept { return responses_; }
  const std::vector<DistributionRule>& distributions() const noexcept { return distributions_; }

  static Script from_json(const nlohmann::json& doc);
  static Script load(const std::filesystem::path& path);
  nlohmann::json to_json() const;

 private:
  std::vector<ResponseRule> responses_;
  std::vector<DistributionRule> distributions_;
};

struct RecordedCall {
  std::string role;
  int ordinal = 0;
  std::string fingerprint;
  std::string text;
  bool has_image = false;
  bool is_distribution = false;
  std::vector<std::string> prefix;
};

/// Deterministic backend answering from a Script. Lookups are pure, so one
/// instance is safe to share across concurrent runs. Call recording is
/// opt-in and guarded by a mutex.
class ScriptedBackend final : public Backend {
 public:
  explicit ScriptedBackend(Script script, bool record_calls = false)
      : script_(std::move(script)), record_(record_calls) {}

  ChatResponse complete(const EndpointConfig& endpoint,
                        const ChatRequest& request) override;

  TokenDistribution next_token_distribution(const EndpointConfig& endpoint,
                                            std::span<const std::string> prefix,
                                            const ChatRequest& context) override;

  const Script& script() const noexcept { return script_; }

  std::vector<RecordedCall> calls() const;
  std::vector<RecordedCall> calls_for(std::string_view role) const;
  void clear_calls();

 private:
  void record(RecordedCall call);

  Script script_;
  bool record_;
  mutable std::mutex mu_;
  std::vector<RecordedCall> calls_;
};

}  // namespace agentdock
