// Copyright 2026 The agentdock Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <functional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "agentdock/backend.hpp"
#include "agentdock/types.hpp"

namespace agentdock {

struct DecodeConfig {
  double min_prob = 0.02;
  int max_new_tokens = 3;
  double temperature = 0.9;
  /// Tokens that close a label sequence, besides whitespace-only tokens.
  std::vector<std::string> end_tokens = {"</s>", "<eos>", "<|endoftext|>", "<|im_end|>",
                                         "<|eot_id|>"};

  /// Throws InvalidArgument for min_prob outside (0, 1), non-positive
  /// max_new_tokens or temperature.
  void validate() const;

  /// Cumulative-NLL pruning bound, -log(min_prob).
  double score_threshold() const;
};

struct DecodeCandidate {
  std::vector<std::string> tokens;
  double score = 0.0;        // cumulative negative log-likelihood
  double probability = 1.0;  // exp(-score)
  bool greedy = false;       // the greedy-decoding sequence

  std::string text() const;

  bool operator==(const DecodeCandidate&) const = default;
};

/// Next-token distribution given the tokens decoded so far.
using NextTokenOracle = std::function<TokenDistribution(std::span<const std::string>)>;

bool is_end_of_label(std::string_view token, const DecodeConfig& config);

/// Temperature-scaled negative log-likelihood of every entry, after
/// renormalizing the (possibly truncated) distribution. Same order as input.
std::vector<double> scaled_nll(const TokenDistribution& dist, double temperature);

/// Score-guided depth-first enumeration of label sequences. A branch is
/// pruned once its cumulative NLL exceeds -log(min_prob), except along the
/// greedy sequence, which always survives. Sequences end at an end-of-label
/// token (kept in `tokens`) or at max_new_tokens. Output is ascending by
/// score, ties broken lexicographically on tokens.
std::vector<DecodeCandidate> turbo_dfs(const NextTokenOracle& oracle, const DecodeConfig& config);

/// Splits the concatenated token text on whitespace and commas and matches
/// each piece case-insensitively against the agent labels.
std::set<AgentKind> decode_agents(std::span<const std::string> tokens);

struct ActivationVector {
  std::array<bool, kAgentCount> bits{};
  std::vector<DecodeCandidate> provenance;
  bool fallback = false;  // no label decoded; routed to Other

  bool test(AgentKind kind) const noexcept { return bits[index_of(kind)]; }
  std::size_t count() const noexcept;
  std::vector<AgentKind> active() const;

  bool operator==(const ActivationVector&) const = default;
};

/// Union of decoded agents over candidates with probability >= min_prob.
/// A trailing end-of-label token is ignored. An empty union falls back to {Other} with the fallback flag set.
ActivationVector extract_activation(std::span<const DecodeCandidate> candidates,
                                    const DecodeConfig& config);

ActivationVector route(Session& session, const Question& question, const Document& doc,
                       const ReasoningPath& path, const DecodeConfig& config,
                       std::string_view router_role = "router");

}  // namespace agentdock
