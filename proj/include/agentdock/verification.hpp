// Copyright 2026 The agentdock Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "agentdock/backend.hpp"
#include "agentdock/types.hpp"

namespace agentdock {

enum class Verdict { kPass, kFail };

struct StressTurn {
  std::string debate_question;
  std::string response;
  std::string revised_answer;
  Verdict verdict = Verdict::kFail;
  bool evaluator_passed = false;  // what the evaluation agent said
  bool answer_drift = false;      // revised answer differs from a_E

  bool operator==(const StressTurn&) const = default;
};

struct StressOutcome {
  bool passed = false;
  std::vector<StressTurn> turns;
  std::optional<Answer> settled_answer;  // a_D, origin StressTest

  bool operator==(const StressOutcome&) const = default;
};

struct StressRoles {
  std::string specialist;  // the final chain agent
  std::string debate = "debate";
  std::string eval = "eval";
};

/// Up to `turns` rounds of challenge, reply and evaluation. The first Fail
/// ends the session. A turn also fails when the specialist's revised answer
/// no longer equals a_E, whatever the evaluator said.
StressOutcome stress_test(Session& session, const Question& question, const Document& doc,
                          const Answer& expert_answer, AgentKind specialist,
                          int turns = 2, const StressRoles& roles = {});

struct StructuredArgument {
  std::string reference;
  std::string criticism;
  std::string conclusion;

  /// The ANSWER: value inside the conclusion, else its first line.
  std::string proposed_answer() const;

  bool operator==(const StructuredArgument&) const = default;
};

/// Extracts the [REFERENCE], [CRITICISM] and [CONCLUSION] sections in any
/// order. Throws ParseError naming every missing or empty section.
StructuredArgument parse_argument(std::string_view text);

enum class DebateSide { kThesis, kAntithesis };

const char* to_string(DebateSide side);

struct Convinced {
  DebateSide winner;
  std::string answer;

  bool operator==(const Convinced&) const = default;
};

struct JudgeVerdict {
  std::optional<Convinced> convinced;
  std::string summary;

  bool operator==(const JudgeVerdict&) const = default;
};

/// Parses "VERDICT: CONTINUE|THESIS|ANTITHESIS" and "SUMMARY: ...". The
/// winner's answer is taken from thesis_answer or the antithesis conclusion.
JudgeVerdict parse_judge_reply(std::string_view reply, std::string_view thesis_answer,
                               const StructuredArgument& argument, bool allow_continue = true);

JudgeVerdict judge_turn(Session& session, std::string_view thesis_answer,
                        std::string_view thesis_reply, const StructuredArgument& argument,
                        std::string_view judge_role = "judge");

struct DebateTurn {
  StructuredArgument antithesis;
  std::string thesis_reply;
  JudgeVerdict verdict;

  bool operator==(const DebateTurn&) const = default;
};

enum class DebateResolution { kEarlyExit, kConvinced, kFinalJudgment };

const char* to_string(DebateResolution r);

struct DebateOutcome {
  Answer answer;  // a_C, origin Debate
  std::string alternative;
  DebateResolution resolution = DebateResolution::kEarlyExit;
  std::vector<DebateTurn> transcript;
  std::optional<DebateSide> winner;
  std::string final_summary;

  bool operator==(const DebateOutcome&) const = default;
};

struct DebateRoles {
  std::string thesis = "thesis";
  std::string antithesis = "antithesis";
  std::string judge = "judge";
};

/// The antithesis proposes an alternative; when it equals or contains a_E
/// the debate ends immediately with a_E. Otherwise up to `turns` rounds of
/// argument, defense and judging, closed by a forced final judgment.
DebateOutcome debate(Session& session, const Question& question, const Document& doc,
                     const Answer& expert_answer, int turns = 3, const DebateRoles& roles = {});

}  // namespace agentdock
