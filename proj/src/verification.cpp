// Copyright 2026 The agentdock Authors
// SPDX-License-Identifier: Apache-2.0

#include "agentdock/verification.hpp"

#include <algorithm>
#include <array>

#include "agentdock/error.hpp"
#include "agentdock/prompts.hpp"
#include "agentdock/tags.hpp"
#include "agentdock/text.hpp"

namespace agentdock {
namespace {

std::string first_word_upper(std::string_view value) {
  std::string word;
  for (char c : value) {
    if (c == ' ' || c == '\t' || c == '.' || c == ',' || c == '*') {
      if (!word.empty()) break;
      continue;
    }
    word += (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c;
  }
  return word;
}

// Everything after the first line carrying `tag`, up to a line carrying
// `stop` (exclusive).
std::optional<std::string> tagged_block(std::string_view text, std::string_view tag,
                                        std::string_view stop) {
  const auto lines = split_lines(text);
  std::optional<std::string> block;
  for (auto line : lines) {
    if (block) {
      if (!stop.empty() && last_tagged_value(line, stop)) break;
      *block += "\n";
      *block += line;
    } else if (auto v = first_tagged_value(line, tag)) {
      block = *v;
    }
  }
  if (block) block = trim(*block);
  return block;
}

struct ParsedStressReply {
  std::string response;
  std::string answer;
};

ParsedStressReply parse_stress_reply(std::string_view reply) {
  auto answer = last_tagged_value(reply, prompts::kAnswerTag);
  if (!answer || answer->empty()) {
    throw ParseError("stress-test reply has no ANSWER: line");
  }
  ParsedStressReply out{{}, std::move(*answer)};
  if (auto r = tagged_block(reply, prompts::kResponseTag, prompts::kAnswerTag)) {
    out.response = std::move(*r);
  } else {
    std::string before;
    for (auto line : split_lines(reply)) {
      if (last_tagged_value(line, prompts::kAnswerTag)) break;
      before += std::string(line) + "\n";
    }
    out.response = trim(before);
  }
  return out;
}

bool parse_evaluation(std::string_view reply) {
  const auto verdict = last_tagged_value(reply, prompts::kVerdictTag);
  if (!verdict) throw ParseError("evaluation reply has no VERDICT: line");
  const std::string word = first_word_upper(*verdict);
  if (word == "PASS") return true;
  if (word == "FAIL") return false;
  throw ParseError("evaluation verdict '" + *verdict + "' is neither PASS nor FAIL");
}

std::string format_transcript(const std::vector<DebateTurn>& transcript) {
  std::string out;
  for (std::size_t t = 0; t < transcript.size(); ++t) {
    const auto& turn = transcript[t];
    out += "Turn " + std::to_string(t + 1) + "\n";
    out += "[REFERENCE] " + turn.antithesis.reference + "\n";
    out += "[CRITICISM] " + turn.antithesis.criticism + "\n";
    out += "[CONCLUSION] " + turn.antithesis.conclusion + "\n";
    out += "Thesis: " + turn.thesis_reply + "\n";
    out += "Judge summary: " + turn.verdict.summary + "\n";
  }
  return out;
}

}  // namespace

StressOutcome stress_test(Session& session, const Question& question, const Document& doc,
                          const Answer& expert_answer, AgentKind specialist, int turns,
                          const StressRoles& roles) {
  if (turns < 1 || turns > 2) throw InvalidArgument("stress test runs one or two turns");
  const std::string specialist_role =
      roles.specialist.empty() ? std::string(label(specialist)) : roles.specialist;

  StressOutcome outcome;
  for (int t = 0; t < turns; ++t) {
    StressTurn turn;
    try {
      // Each turn challenges the original a_E, never the revised answer.
      turn.debate_question =
          trim(session.complete(roles.debate, prompts::debate_question(question, doc, expert_answer.text))
                   .text);
      if (turn.debate_question.empty()) throw ParseError("debate agent asked nothing");

      const auto reply = parse_stress_reply(
          session
              .complete(specialist_role, prompts::stress_reply(specialist, turn.debate_question,
                                                                question, doc, expert_answer.text))
              .text);
      turn.response = reply.response;
      turn.revised_answer = reply.answer;

      turn.evaluator_passed = parse_evaluation(
          session
              .complete(roles.eval, prompts::evaluation(turn.debate_question, turn.response,
                                                        expert_answer.text, turn.revised_answer))
              .text);
    } catch (const Error& e) {
      rethrow_with_context(e, "stress test turn " + std::to_string(t + 1));
    }
    turn.answer_drift = !answers_equal(turn.revised_answer, expert_answer.text);
    turn.verdict = (turn.evaluator_passed && !turn.answer_drift) ? Verdict::kPass : Verdict::kFail;
    outcome.turns.push_back(std::move(turn));
    if (outcome.turns.back().verdict == Verdict::kFail) return outcome;
  }
  outcome.passed = true;
  outcome.settled_answer = Answer{expert_answer.text, AnswerOrigin::kStressTest};
  return outcome;
}

std::string StructuredArgument::proposed_answer() const {
  if (auto tagged = last_tagged_value(conclusion, prompts::kAnswerTag); tagged && !tagged->empty()) {
    return *tagged;
  }
  const auto lines = split_lines(conclusion);
  return lines.empty() ? std::string() : trim(lines.front());
}

StructuredArgument parse_argument(std::string_view text) {
  static constexpr std::array<std::string_view, 3> kNames = {"REFERENCE", "CRITICISM",
                                                             "CONCLUSION"};
  const std::string upper = [&] {
    std::string u(text);
    for (char& c : u) {
      if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    }
    return u;
  }();

  std::array<std::size_t, 3> starts{};
  std::array<std::size_t, 3> body{};
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    const std::string tag = "[" + std::string(kNames[i]) + "]";
    starts[i] = upper.find(tag);
    body[i] = starts[i] == std::string::npos ? starts[i] : starts[i] + tag.size();
  }

  std::array<std::string, 3> sections;
  std::string missing;
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (starts[i] != std::string::npos) {
      std::size_t end = text.size();
      for (std::size_t j = 0; j < kNames.size(); ++j) {
        if (j != i && starts[j] != std::string::npos && starts[j] > starts[i]) {
          end = std::min(end, starts[j]);
        }
      }
      std::string_view section = text.substr(body[i], end - body[i]);
      if (!section.empty() && section.front() == ':') section.remove_prefix(1);
      sections[i] = trim(section);
    }
    if (sections[i].empty()) {
      missing += (missing.empty() ? "" : ", ") + std::string(kNames[i]);
    }
  }
  if (!missing.empty()) throw ParseError("structured argument missing section(s): " + missing);
  return {sections[0], sections[1], sections[2]};
}

const char* to_string(DebateSide side) {
  return side == DebateSide::kThesis ? "thesis" : "antithesis";
}

const char* to_string(DebateResolution r) {
  switch (r) {
    case DebateResolution::kEarlyExit: return "early_exit";
    case DebateResolution::kConvinced: return "convinced";
    case DebateResolution::kFinalJudgment: return "final_judgment";
  }
  return "unknown";
}

JudgeVerdict parse_judge_reply(std::string_view reply, std::string_view thesis_answer,
                               const StructuredArgument& argument, bool allow_continue) {
  const auto verdict = last_tagged_value(reply, prompts::kVerdictTag);
  if (!verdict) throw ParseError("judge reply has no VERDICT: line");
  JudgeVerdict out;
  out.summary = tagged_block(reply, prompts::kSummaryTag, prompts::kVerdictTag).value_or("");

  const std::string word = first_word_upper(*verdict);
  if (word == "CONTINUE" && allow_continue) return out;
  if (word == "THESIS") {
    out.convinced = Convinced{DebateSide::kThesis, std::string(thesis_answer)};
  } else if (word == "ANTITHESIS") {
    out.convinced = Convinced{DebateSide::kAntithesis, argument.proposed_answer()};
  } else {
    throw ParseError("judge verdict '" + *verdict + "' is not " +
                     (allow_continue ? "CONTINUE, THESIS or ANTITHESIS" : "THESIS or ANTITHESIS"));
  }
  if (trim(out.convinced->answer).empty()) {
    throw ParseError("judge verdict names a side with no answer");
  }
  return out;
}

JudgeVerdict judge_turn(Session& session, std::string_view thesis_answer,
                        std::string_view thesis_reply, const StructuredArgument& argument,
                        std::string_view judge_role) {
  const ChatResponse reply =
      session.complete(judge_role, prompts::judge_turn(thesis_answer, thesis_reply, argument.reference,
                                                       argument.criticism, argument.conclusion));
  return parse_judge_reply(reply.text, thesis_answer, argument);
}

DebateOutcome debate(Session& session, const Question& question, const Document& doc,
                     const Answer& expert_answer, int turns, const DebateRoles& roles) {
  if (turns < 1 || turns > 3) throw InvalidArgument("debate runs one to three turns");
  DebateOutcome outcome;
  try {
    const std::string proposal =
        session.complete(roles.antithesis, prompts::antithesis_proposal(question, doc, expert_answer.text))
            .text;
    outcome.alternative = last_tagged_value(proposal, prompts::kAnswerTag).value_or(trim(proposal));
    if (outcome.alternative.empty()) throw ParseError("antithesis proposed no answer");

    if (answers_equal(outcome.alternative, expert_answer.text) ||
        answer_contained(expert_answer.text, outcome.alternative)) {
      outcome.answer = {expert_answer.text, AnswerOrigin::kDebate};
      outcome.resolution = DebateResolution::kEarlyExit;
      return outcome;
    }

    std::string summary;
    for (int t = 0; t < turns; ++t) {
      DebateTurn turn;
      turn.antithesis = parse_argument(
          session
              .complete(roles.antithesis,
                        prompts::antithesis_argument(question, doc, expert_answer.text, summary))
              .text);
      // The thesis never sees the antithesis conclusion.
      turn.thesis_reply = trim(
          session
              .complete(roles.thesis, prompts::thesis(question, doc, expert_answer.text,
                                                      turn.antithesis.reference,
                                                      turn.antithesis.criticism, summary))
              .text);
      turn.verdict = judge_turn(session, expert_answer.text, turn.thesis_reply, turn.antithesis,
                                roles.judge);
      summary = turn.verdict.summary;
      outcome.transcript.push_back(turn);
      if (turn.verdict.convinced) {
        outcome.answer = {turn.verdict.convinced->answer, AnswerOrigin::kDebate};
        outcome.winner = turn.verdict.convinced->winner;
        outcome.resolution = DebateResolution::kConvinced;
        return outcome;
      }
    }

    const StructuredArgument& last = outcome.transcript.back().antithesis;
    const ChatResponse final_reply = session.complete(
        roles.judge, prompts::judge_final(expert_answer.text, last.proposed_answer(),
                                          format_transcript(outcome.transcript)));
    const JudgeVerdict final_verdict =
        parse_judge_reply(final_reply.text, expert_answer.text, last, /*allow_continue=*/false);
    outcome.answer = {final_verdict.convinced->answer, AnswerOrigin::kDebate};
    outcome.winner = final_verdict.convinced->winner;
    outcome.final_summary = final_verdict.summary;
    outcome.resolution = DebateResolution::kFinalJudgment;
  } catch (const Error& e) {
    rethrow_with_context(e, "debate");
  }
  return outcome;
}

}  // namespace agentdock
