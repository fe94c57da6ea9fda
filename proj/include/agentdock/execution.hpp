// Copyright 2026 The agentdock Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "agentdock/backend.hpp"
#include "agentdock/router.hpp"
#include "agentdock/types.hpp"

namespace agentdock {

struct ThinkerOutput {
  ReasoningPath path;
  Answer answer;              // origin Thinker
  bool answer_empty = false;  // ANSWER: line present but blank
};

/// Parses numbered steps ("1. ...", "2) ...", "Step 3: ...") followed by a
/// final "ANSWER: <text>" line. Unnumbered lines after a step continue it.
/// Throws ParseError when the answer line or every step is missing.
ThinkerOutput parse_thinker_reply(std::string_view reply);

ThinkerOutput think(Session& session, const Question& question, const Document& doc,
                    std::string_view thinker_role = "thinker");

struct ExecutionPlan {
  std::vector<AgentKind> order;

  bool operator==(const ExecutionPlan&) const = default;
};

/// Orders the activated agents by the first reasoning step mentioning one of
/// their keywords. Unmentioned agents follow, ties break on the canonical
/// agent index, and Other is always last.
ExecutionPlan orchestrate(const ActivationVector& active, const ReasoningPath& path);

/// The index of the first step mentioning one of the agent's keywords.
std::optional<std::size_t> first_mention(AgentKind kind, const ReasoningPath& path);

struct MaskConfig {
  int threshold = 2;
  std::string mask_token = "[MASKED]";

  void validate() const;
};

/// Case-insensitive, non-overlapping occurrences of the normalized answer in
/// the normalized steps. Text inside existing mask tokens is not searched.
std::size_t count_answer_occurrences(const ReasoningPath& path, std::string_view answer,
                                     std::string_view mask_token);

/// Replaces every occurrence of the answer with the mask token when the
/// occurrence count exceeds the threshold; otherwise returns the path as is.
ReasoningPath mask_answer(const ReasoningPath& path, const Answer& answer,
                          const MaskConfig& config);

struct ChainStep {
  AgentKind agent;
  std::string answer;

  bool operator==(const ChainStep&) const = default;
};

struct ChainResult {
  Answer answer;  // a_E, origin Expert
  std::vector<ChainStep> steps;
};

/// Runs the plan sequentially. Each agent sees the question, the page and
/// its predecessor's answer; only the last one also sees the masked path.
ChainResult execute_chain(Session& session, const ExecutionPlan& plan, const Question& question,
                          const Document& doc, const ReasoningPath& masked_path);

}  // namespace agentdock
