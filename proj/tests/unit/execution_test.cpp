// Copyright 2026 The agentdock Authors
// SPDX-License-Identifier: Apache-2.0

#include "agentdock/execution.hpp"

#include <gtest/gtest.h>

#include <random>

#include "agentdock/error.hpp"
#include "agentdock/scripted_backend.hpp"
#include "agentdock/text.hpp"
#include "scenarios.hpp"

namespace agentdock {
namespace {

ActivationVector activate(std::initializer_list<AgentKind> kinds) {
  ActivationVector v;
  for (AgentKind k : kinds) v.bits[index_of(k)] = true;
  return v;
}

TEST(ParseThinkerReply, NumberedStepsAndAnswer) {
  const ThinkerOutput out = parse_thinker_reply(
      "1. Locate the quarterly revenue table\n2. Find the Q3 column\n"
      "3. Extract the total revenue value\nANSWER: 4.2M");
  EXPECT_EQ(out.path.steps,
            (std::vector<std::string>{"Locate the quarterly revenue table", "Find the Q3 column",
                                      "Extract the total revenue value"}));
  EXPECT_EQ(out.answer, (Answer{"4.2M", AnswerOrigin::kThinker}));
  EXPECT_FALSE(out.answer_empty);
}

TEST(ParseThinkerReply, RejectsMissingPartsAndAcceptsVariants) {
  EXPECT_THROW(parse_thinker_reply("ANSWER: yes"), ParseError);
  EXPECT_THROW(parse_thinker_reply("1. look\n2. read"), ParseError);
  const ThinkerOutput out =
      parse_thinker_reply("Step 1: look at\nthe header\n2) read it\n**Answer:** Blue");
  EXPECT_EQ(out.path.steps, (std::vector<std::string>{"look at the header", "read it"}));
  EXPECT_EQ(out.answer.text, "Blue");
  EXPECT_TRUE(parse_thinker_reply("1. nothing found\nANSWER:").answer_empty);
}

TEST(Orchestrate, Examples) {
  EXPECT_EQ(orchestrate(activate({AgentKind::kTable}), {}).order,
            std::vector<AgentKind>{AgentKind::kTable});
  const ReasoningPath charted{{"read the chart", "then check the table"}};
  EXPECT_EQ(orchestrate(activate({AgentKind::kTable, AgentKind::kFigure}), charted).order,
            (std::vector<AgentKind>{AgentKind::kFigure, AgentKind::kTable}));
  const ReasoningPath silent{{"think hard", "answer"}};
  EXPECT_EQ(orchestrate(activate({AgentKind::kTable, AgentKind::kFigure}), silent).order,
            (std::vector<AgentKind>{AgentKind::kFigure, AgentKind::kTable}));
}

TEST(Orchestrate, MentionOrderUnmentionedAndOtherLast) {
  const ReasoningPath path{{"Find the form field for the date", "Look at the rows of the table",
                            "Read the handwritten note"}};
  const auto plan = orchestrate(activate({AgentKind::kOther, AgentKind::kOcr, AgentKind::kTable,
                                          AgentKind::kForm, AgentKind::kImage}),
                                path);
  EXPECT_EQ(plan.order, (std::vector<AgentKind>{AgentKind::kForm, AgentKind::kTable,
                                                AgentKind::kOcr, AgentKind::kImage,
                                                AgentKind::kOther}));
}

TEST(Orchestrate, WholeWordMatching) {
  // "nowhere" must not count as the yes/no keyword "no"; "tables" counts.
  const ReasoningPath path{{"nowhere near", "compare the tables"}};
  EXPECT_EQ(first_mention(AgentKind::kYesNo, path), std::nullopt);
  EXPECT_EQ(first_mention(AgentKind::kTable, path), 1u);
}

TEST(Orchestrate, IsAPermutationAndDeterministic) {
  std::mt19937 rng(21);
  const std::vector<std::string> words = {"chart", "table", "form", "photo", "no", "text",
                                          "header", "ocr", "misc"};
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  std::bernoulli_distribution on(0.4);
  for (int trial = 0; trial < 300; ++trial) {
    ActivationVector v;
    for (auto& b : v.bits) b = on(rng);
    if (v.count() == 0) v.bits[index_of(AgentKind::kOther)] = true;
    ReasoningPath path;
    for (int s = 0; s < 4; ++s) path.steps.push_back("use " + words[pick(rng)]);
    const auto a = orchestrate(v, path);
    EXPECT_EQ(a, orchestrate(v, path));
    auto sorted = a.order;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(sorted, v.active());
    if (v.test(AgentKind::kOther)) {
      EXPECT_EQ(a.order.back(), AgentKind::kOther);
    }
  }
}

TEST(MaskAnswer, Examples) {
  const ReasoningPath path{{"total is 42", "42 in row 3", "so 42"}};
  const Answer answer{"42", AnswerOrigin::kThinker};
  EXPECT_EQ(mask_answer(ReasoningPath{{"nothing here"}}, answer, {}),
            ReasoningPath{{"nothing here"}});
  const ReasoningPath masked = mask_answer(path, answer, {});
  EXPECT_EQ(masked.steps,
            (std::vector<std::string>{"total is [MASKED]", "[MASKED] in row 3", "so [MASKED]"}));
  EXPECT_EQ(count_answer_occurrences(masked, "42", "[MASKED]"), 0u);
  EXPECT_EQ(mask_answer(path, answer, {.threshold = 3}), path);
  EXPECT_EQ(mask_answer(path, Answer{"", AnswerOrigin::kThinker}, {.threshold = 0}), path);
}

TEST(MaskAnswer, CaseInsensitiveAndWhitespaceTolerant) {
  const ReasoningPath path{{"GSU,  1977 appears", "gsu, 1977 again", "Gsu,\t1977!"}};
  const ReasoningPath masked = mask_answer(path, {"gsu, 1977", AnswerOrigin::kThinker}, {});
  EXPECT_EQ(masked.steps,
            (std::vector<std::string>{"[MASKED] appears", "[MASKED] again", "[MASKED]!"}));
}

TEST(MaskAnswer, AnswerInsideMaskTokenIsNotCounted) {
  const ReasoningPath path{{"[MASKED] masked masked", "masked"}};
  const MaskConfig cfg{.threshold = 2};
  const ReasoningPath once = mask_answer(path, {"masked", AnswerOrigin::kThinker}, cfg);
  EXPECT_EQ(once.steps, (std::vector<std::string>{"[MASKED] [MASKED] [MASKED]", "[MASKED]"}));
  EXPECT_EQ(mask_answer(once, {"masked", AnswerOrigin::kThinker}, cfg), once);
}

TEST(MaskConfig, Validation) {
  EXPECT_THROW((MaskConfig{.threshold = -1}.validate()), InvalidArgument);
  EXPECT_THROW((MaskConfig{.threshold = 2, .mask_token = ""}.validate()), InvalidArgument);
}

Script chain_script() {
  Script s;
  s.respond("figure", "The chart shows it.\nANSWER: interim", {.excludes = {"Previous agent"}});
  s.respond("table", "ANSWER: final", {.contains = {"Previous agent answer: interim"}});
  s.respond("table", "ANSWER: GSU, 1977");
  return s;
}

TEST(ExecuteChain, SingleAgent) {
  auto setup = testing::scripted_setup(chain_script());
  Session session(setup.config.endpoints);
  const ChainResult r = execute_chain(session, {{AgentKind::kTable}}, Question::make("q", "Who?"),
                                      testing::sample_document(), {});
  EXPECT_EQ(r.answer, (Answer{"GSU, 1977", AnswerOrigin::kExpert}));
}

TEST(ExecuteChain, HandsOffAndOnlyTheLastAgentSeesThePath) {
  auto setup = testing::scripted_setup(chain_script());
  Session session(setup.config.endpoints);
  const ReasoningPath masked{{"secret step one", "secret step two"}};
  const ChainResult r =
      execute_chain(session, {{AgentKind::kFigure, AgentKind::kTable}},
                    Question::make("q", "Total?"), testing::sample_document(), masked);
  EXPECT_EQ(r.answer.text, "final");
  ASSERT_EQ(r.steps.size(), 2u);
  EXPECT_EQ(r.steps[0].answer, "interim");

  const auto figure = setup.backend->calls_for("figure");
  const auto table = setup.backend->calls_for("table");
  ASSERT_EQ(figure.size(), 1u);
  ASSERT_EQ(table.size(), 1u);
  EXPECT_EQ(figure[0].text.find("secret step"), std::string::npos);
  EXPECT_EQ(figure[0].text.find("Previous agent answer"), std::string::npos);
  EXPECT_NE(table[0].text.find("secret step two"), std::string::npos);
  EXPECT_TRUE(figure[0].has_image);
  EXPECT_EQ(session.total_calls(), 2);
}

TEST(ExecuteChain, FailuresNameTheAgent) {
  Script s;
  s.respond("figure", "no tag here");
  s.respond("table", "no tag either");
  auto setup = testing::scripted_setup(s);
  Session session(setup.config.endpoints);
  // Intermediate agents may omit the tag; the last one may not.
  try {
    execute_chain(session, {{AgentKind::kFigure, AgentKind::kTable}}, Question::make("q", "x"),
                  testing::sample_document(), {});
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("'table' (position 2)"), std::string::npos);
  }
  EXPECT_THROW(execute_chain(session, {}, Question::make("q", "x"), testing::sample_document(), {}),
               InvalidArgument);
}

TEST(Think, UsesTheThinkerRole) {
  Script s;
  s.respond("thinker", "1. Read the header.\nANSWER: Acme");
  auto setup = testing::scripted_setup(s);
  Session session(setup.config.endpoints);
  const ThinkerOutput out = think(session, Question::make("q", "Who?"), testing::sample_document());
  EXPECT_EQ(out.answer.text, "Acme");
  EXPECT_EQ(out.path.size(), 1u);
}

}  // namespace
}  // namespace agentdock
