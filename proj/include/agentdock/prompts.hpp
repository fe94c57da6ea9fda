// Copyright 2026 The agentdock Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "agentdock/backend.hpp"
#include "agentdock/types.hpp"

// Prompt templates for every agent role. Each builder returns a request
// with a system preamble and one user turn; the document image rides on
// the user turn only for roles that look at the page. Output tags the
// parsers rely on (ANSWER:, VERDICT:, SUMMARY:, FINAL:, [REFERENCE] ...)
// are spelled out in the preambles. See docs/prompts.md.
namespace agentdock::prompts {

inline constexpr std::string_view kAnswerTag = "ANSWER:";
inline constexpr std::string_view kResponseTag = "RESPONSE:";
inline constexpr std::string_view kVerdictTag = "VERDICT:";
inline constexpr std::string_view kSummaryTag = "SUMMARY:";
inline constexpr std::string_view kFinalTag = "FINAL:";

ChatRequest thinker(const Question& question, const Document& doc);

/// Preamble listing the nine labels, then the question, the numbered
/// reasoning steps and the image.
ChatRequest routing(const Question& question, const Document& doc, const ReasoningPath& path);

/// A dock agent call. The predecessor slot is omitted entirely for the first
/// agent; only the final agent receives the (masked) reasoning path.
ChatRequest specialist(AgentKind kind, const Question& question, const Document& doc,
                       const std::optional<std::string>& predecessor_answer,
                       const ReasoningPath* masked_path);

ChatRequest debate_question(const Question& question, const Document& doc,
                            std::string_view expert_answer);

ChatRequest stress_reply(AgentKind kind, std::string_view debate_question,
                         const Question& question, const Document& doc,
                         std::string_view expert_answer);

ChatRequest evaluation(std::string_view debate_question, std::string_view response,
                       std::string_view expert_answer, std::string_view revised_answer);

ChatRequest antithesis_proposal(const Question& question, const Document& doc,
                                std::string_view expert_answer);

ChatRequest antithesis_argument(const Question& question, const Document& doc,
                                std::string_view expert_answer, std::string_view summary);

ChatRequest thesis(const Question& question, const Document& doc, std::string_view expert_answer,
                   std::string_view reference, std::string_view criticism,
                   std::string_view summary);

ChatRequest judge_turn(std::string_view thesis_answer, std::string_view thesis_reply,
                       std::string_view reference, std::string_view criticism,
                       std::string_view conclusion);

ChatRequest judge_final(std::string_view thesis_answer, std::string_view antithesis_answer,
                        std::string_view transcript);

ChatRequest sanity(const Question& question, const Document& doc, std::string_view answer);

}  // namespace agentdock::prompts
