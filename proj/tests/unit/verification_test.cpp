// Copyright 2026 The agentdock Authors
// SPDX-License-Identifier: Apache-2.0

#include "agentdock/verification.hpp"

#include <gtest/gtest.h>

#include "agentdock/error.hpp"
#include "agentdock/scripted_backend.hpp"
#include "scenarios.hpp"

namespace agentdock {
namespace {

const Answer kExpert{"4.2M", AnswerOrigin::kExpert};

Script stress_script(std::vector<std::string> verdicts, std::string revised = "4.2M") {
  Script s;
  s.respond("debate", "Is 4.2M the Q3 figure or the annual one?");
  s.respond("table", "RESPONSE: The Q3 column reads 4.2M.\nANSWER: " + revised);
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    s.respond("eval", "VERDICT: " + verdicts[i], {.ordinal = static_cast<int>(i)});
  }
  return s;
}

StressOutcome run_stress(const Script& script, int turns = 2) {
  auto setup = testing::scripted_setup(script);
  Session session(setup.config.endpoints);
  return stress_test(session, Question::make("q", "Total?"), testing::sample_document(), kExpert,
                     AgentKind::kTable, turns);
}

TEST(StressTest, BothTurnsPass) {
  const StressOutcome out = run_stress(stress_script({"PASS", "PASS"}));
  EXPECT_TRUE(out.passed);
  ASSERT_EQ(out.turns.size(), 2u);
  EXPECT_EQ(out.settled_answer, (Answer{"4.2M", AnswerOrigin::kStressTest}));
  EXPECT_EQ(out.turns[0].response, "The Q3 column reads 4.2M.");
  EXPECT_EQ(out.turns[0].revised_answer, "4.2M");
}

TEST(StressTest, FirstFailShortCircuits) {
  const StressOutcome out = run_stress(stress_script({"FAIL"}));
  EXPECT_FALSE(out.passed);
  EXPECT_EQ(out.turns.size(), 1u);
  EXPECT_FALSE(out.settled_answer.has_value());
}

TEST(StressTest, SecondTurnFail) {
  const StressOutcome out = run_stress(stress_script({"PASS", "fail"}));
  EXPECT_FALSE(out.passed);
  ASSERT_EQ(out.turns.size(), 2u);
  EXPECT_EQ(out.turns[1].verdict, Verdict::kFail);
}

TEST(StressTest, AnswerDriftFailsDespiteEvaluator) {
  const StressOutcome out = run_stress(stress_script({"PASS", "PASS"}, "3.9M"));
  EXPECT_FALSE(out.passed);
  ASSERT_EQ(out.turns.size(), 1u);
  EXPECT_TRUE(out.turns[0].evaluator_passed);
  EXPECT_TRUE(out.turns[0].answer_drift);
}

TEST(StressTest, EveryTurnChallengesTheOriginalAnswer) {
  auto setup = testing::scripted_setup(stress_script({"PASS", "PASS"}));
  Session session(setup.config.endpoints);
  stress_test(session, Question::make("q", "Total?"), testing::sample_document(), kExpert,
              AgentKind::kTable);
  for (const auto& call : setup.backend->calls_for("debate")) {
    EXPECT_NE(call.text.find("Answer under review: 4.2M"), std::string::npos);
  }
  EXPECT_EQ(setup.backend->calls_for("debate").size(), 2u);
}

TEST(StressTest, MalformedRepliesAreErrors) {
  EXPECT_THROW(run_stress(stress_script({"MAYBE"})), ParseError);
  Script no_answer;
  no_answer.respond("debate", "Why?");
  no_answer.respond("table", "RESPONSE: because");
  EXPECT_THROW(run_stress(no_answer), ParseError);
  EXPECT_THROW(run_stress(stress_script({"PASS"}), 3), InvalidArgument);
}

TEST(ParseArgument, Examples) {
  const StructuredArgument want{"line 4 says X", "thesis ignored X", "answer is Y"};
  EXPECT_EQ(parse_argument("[REFERENCE] line 4 says X [CRITICISM] thesis ignored X "
                           "[CONCLUSION] answer is Y"),
            want);
  EXPECT_EQ(parse_argument("Here is my case.\n[CONCLUSION]: answer is Y\n[REFERENCE] line 4 says "
                           "X\n[criticism] thesis ignored X\n"),
            want);
}

TEST(ParseArgument, NamesMissingSections) {
  try {
    parse_argument("[REFERENCE] a [CONCLUSION] c");
    FAIL();
  } catch (const ParseError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("CRITICISM"), std::string::npos);
    EXPECT_EQ(what.find("REFERENCE"), std::string::npos);
  }
  try {
    parse_argument("[REFERENCE]   [CRITICISM] b");
    FAIL();
  } catch (const ParseError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("REFERENCE"), std::string::npos);
    EXPECT_NE(what.find("CONCLUSION"), std::string::npos);
  }
}

TEST(StructuredArgument, ProposedAnswer) {
  EXPECT_EQ((StructuredArgument{"r", "c", "ANSWER: B\nbecause"}.proposed_answer()), "B");
  EXPECT_EQ((StructuredArgument{"r", "c", "B is right\nmore"}.proposed_answer()), "B is right");
}

TEST(ParseJudgeReply, Examples) {
  const StructuredArgument arg{"r", "c", "ANSWER: B"};
  const JudgeVerdict cont =
      parse_judge_reply("VERDICT: CONTINUE\nSUMMARY: both hold positions", "A", arg);
  EXPECT_FALSE(cont.convinced.has_value());
  EXPECT_EQ(cont.summary, "both hold positions");

  const JudgeVerdict anti = parse_judge_reply("VERDICT: ANTITHESIS\nSUMMARY: B wins", "A", arg);
  EXPECT_EQ(anti.convinced, (Convinced{DebateSide::kAntithesis, "B"}));
  const JudgeVerdict thesis = parse_judge_reply("verdict: thesis.\nSUMMARY: A holds", "A", arg);
  EXPECT_EQ(thesis.convinced, (Convinced{DebateSide::kThesis, "A"}));

  EXPECT_THROW(parse_judge_reply("SUMMARY: no verdict", "A", arg), ParseError);
  EXPECT_THROW(parse_judge_reply("VERDICT: DRAW", "A", arg), ParseError);
  EXPECT_THROW(parse_judge_reply("VERDICT: CONTINUE", "A", arg, false), ParseError);
}

struct DebateScript {
  std::string alternative = "3.9M";
  std::vector<std::string> verdicts;
  std::string final_verdict = "THESIS";
};

Script debate_script(const DebateScript& d) {
  Script s;
  s.respond("antithesis", "ANSWER: " + d.alternative, {.contains = {"Propose the most plausible"}});
  s.respond("antithesis",
            "[REFERENCE] Footnote 2 gives the total.\n[CRITICISM] The thesis read a subtotal.\n"
            "[CONCLUSION] ANSWER: " + d.alternative + "\nThe footnote wins.");
  s.respond("thesis", "The row is labelled Total.");
  for (std::size_t i = 0; i < d.verdicts.size(); ++i) {
    s.respond("judge", "VERDICT: " + d.verdicts[i] + "\nSUMMARY: after turn " + std::to_string(i + 1),
              {.ordinal = static_cast<int>(i), .excludes = {"Transcript:"}});
  }
  s.respond("judge", "VERDICT: " + d.final_verdict + "\nSUMMARY: final call",
            {.contains = {"Transcript:"}});
  return s;
}

struct DebateRun {
  DebateOutcome outcome;
  testing::ScriptedSetup setup;
};

DebateRun run_debate(const DebateScript& d) {
  DebateRun run{{}, testing::scripted_setup(debate_script(d))};
  Session session(run.setup.config.endpoints);
  run.outcome =
      debate(session, Question::make("q", "Total?"), testing::sample_document(), kExpert);
  return run;
}

TEST(Debate, EarlyExitWhenAlternativeMatches) {
  for (const std::string alt : {"4.2m", "about 4.2M in total"}) {
    const DebateRun run = run_debate({.alternative = alt});
    EXPECT_EQ(run.outcome.resolution, DebateResolution::kEarlyExit);
    EXPECT_EQ(run.outcome.answer, (Answer{"4.2M", AnswerOrigin::kDebate}));
    EXPECT_TRUE(run.outcome.transcript.empty());
    EXPECT_EQ(run.setup.backend->calls().size(), 1u);
  }
}

TEST(Debate, AntithesisConvincesAtTurnTwo) {
  const DebateRun run = run_debate({.verdicts = {"CONTINUE", "ANTITHESIS"}});
  EXPECT_EQ(run.outcome.resolution, DebateResolution::kConvinced);
  EXPECT_EQ(run.outcome.answer, (Answer{"3.9M", AnswerOrigin::kDebate}));
  EXPECT_EQ(run.outcome.transcript.size(), 2u);
  EXPECT_EQ(run.outcome.winner, DebateSide::kAntithesis);
}

TEST(Debate, FinalJudgmentAfterThreeTurns) {
  const DebateRun run = run_debate({.verdicts = {"CONTINUE", "CONTINUE", "CONTINUE"}});
  EXPECT_EQ(run.outcome.resolution, DebateResolution::kFinalJudgment);
  EXPECT_EQ(run.outcome.answer.text, "4.2M");
  EXPECT_EQ(run.outcome.transcript.size(), 3u);
  EXPECT_EQ(run.outcome.final_summary, "final call");
  const auto final_call = run.setup.backend->calls_for("judge").back();
  EXPECT_NE(final_call.text.find("Turn 3"), std::string::npos);
}

TEST(Debate, ThesisNeverSeesTheConclusion) {
  const DebateRun run = run_debate({.verdicts = {"CONTINUE", "CONTINUE", "CONTINUE"}});
  const auto thesis_calls = run.setup.backend->calls_for("thesis");
  ASSERT_EQ(thesis_calls.size(), 3u);
  for (const auto& call : thesis_calls) {
    EXPECT_NE(call.text.find("Footnote 2 gives the total."), std::string::npos);
    EXPECT_NE(call.text.find("The thesis read a subtotal."), std::string::npos);
    EXPECT_EQ(call.text.find("The footnote wins."), std::string::npos);
    EXPECT_EQ(call.text.find("3.9M"), std::string::npos);
  }
  // Later turns carry the judge's running summary.
  EXPECT_NE(thesis_calls[1].text.find("after turn 1"), std::string::npos);
}

TEST(Debate, JudgeParseFailureIsAnError) {
  EXPECT_THROW(run_debate({.verdicts = {"UNSURE"}}), ParseError);
}

}  // namespace
}  // namespace agentdock
