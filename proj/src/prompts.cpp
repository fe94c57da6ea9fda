// Copyright 2026 The agentdock Authors
// SPDX-License-Identifier: Apache-2.0

#include "agentdock/prompts.hpp"

#include <array>

namespace agentdock::prompts {
namespace {

ChatRequest make(std::string system, std::string user, const Document* image) {
  ChatRequest r;
  r.messages.push_back({MessageRole::kSystem, std::move(system), std::nullopt});
  ChatMessage turn{MessageRole::kUser, std::move(user), std::nullopt};
  if (image != nullptr) turn.image = *image;
  r.messages.push_back(std::move(turn));
  return r;
}

std::string numbered(const ReasoningPath& path) {
  std::string out;
  for (std::size_t i = 0; i < path.steps.size(); ++i) {
    out += std::to_string(i + 1) + ". " + path.steps[i] + "\n";
  }
  return out;
}

std::string_view specialty(AgentKind kind) {
  static constexpr std::array<std::string_view, kAgentCount> kSpecialty = {
      "charts, plots and diagrams",
      "questions answered by yes or no",
      "tables and lists",
      "page layout and the placement of regions",
      "photographs and embedded pictures",
      "handwriting and hard-to-read text",
      "running text and paragraphs",
      "forms and their fields",
      "content no other specialist covers",
  };
  return kSpecialty[index_of(kind)];
}

}  // namespace

ChatRequest thinker(const Question& question, const Document& doc) {
  return make(
      "You analyze a document image to answer a question. First write the "
      "reasoning needed as numbered steps, one per line (\"1. ...\"). Then write "
      "a final line of the form \"ANSWER: <answer>\" using the document's wording.",
      "Question: " + question.text, &doc);
}

ChatRequest routing(const Question& question, const Document& doc, const ReasoningPath& path) {
  return make(
      "Select the specialist agents needed for this question. Reply only with "
      "labels from: figure, yesno, table, layout, image, ocr, text, form, other. "
      "Separate multiple labels with commas.",
      "Question: " + question.text + "\nReasoning steps:\n" + numbered(path), &doc);
}

ChatRequest specialist(AgentKind kind, const Question& question, const Document& doc,
                       const std::optional<std::string>& predecessor_answer,
                       const ReasoningPath* masked_path) {
  std::string system = "You are a document specialist for " + std::string(specialty(kind)) +
                       ". Answer the question from the document image. End with a "
                       "line \"ANSWER: <answer>\" copying the document's wording.";
  std::string user = "Question: " + question.text;
  if (predecessor_answer) {
    user += "\nPrevious agent answer: " + *predecessor_answer;
  }
  if (masked_path != nullptr) {
    user += "\nReasoning steps:\n" + numbered(*masked_path);
  }
  return make(std::move(system), std::move(user), &doc);
}

ChatRequest debate_question(const Question& question, const Document& doc,
                            std::string_view expert_answer) {
  return make(
      "You probe an answer for weaknesses. Ask one challenging follow-up "
      "question about the document that would expose an error in the answer "
      "if there is one. Reply with the question only.",
      "Question: " + question.text + "\nAnswer under review: " + std::string(expert_answer), &doc);
}

ChatRequest stress_reply(AgentKind kind, std::string_view debate_question,
                         const Question& question, const Document& doc,
                         std::string_view expert_answer) {
  return make("You are a document specialist for " + std::string(specialty(kind)) +
                  ". Your earlier answer is being challenged. Respond to the challenge "
                  "on a line \"RESPONSE: <text>\", then give your answer to the original "
                  "question on a line \"ANSWER: <answer>\".",
              "Challenge: " + std::string(debate_question) + "\nOriginal question: " +
                  question.text + "\nYour earlier answer: " + std::string(expert_answer),
              &doc);
}

ChatRequest evaluation(std::string_view debate_question, std::string_view response,
                       std::string_view expert_answer, std::string_view revised_answer) {
  return make(
      "You judge a specialist under questioning. PASS only if the response is "
      "coherent, stays on the topic of the challenge, and keeps the original "
      "answer. Reply with a line \"VERDICT: PASS\" or \"VERDICT: FAIL\".",
      "Challenge: " + std::string(debate_question) + "\nResponse: " + std::string(response) +
          "\nOriginal answer: " + std::string(expert_answer) +
          "\nAnswer after challenge: " + std::string(revised_answer),
      nullptr);
}

ChatRequest antithesis_proposal(const Question& question, const Document& doc,
                                std::string_view expert_answer) {
  return make(
      "Another agent answered the question below. Propose the most plausible "
      "different answer supported by the document, on a line \"ANSWER: <answer>\". "
      "If no different answer is defensible, repeat the given answer.",
      "Question: " + question.text + "\nAnswer under dispute: " + std::string(expert_answer),
      &doc);
}

ChatRequest antithesis_argument(const Question& question, const Document& doc,
                                std::string_view expert_answer, std::string_view summary) {
  std::string user =
      "Question: " + question.text + "\nAnswer under dispute: " + std::string(expert_answer);
  if (!summary.empty()) user += "\nDebate so far: " + std::string(summary);
  return make(
      "Argue against the disputed answer. Use exactly three sections: "
      "[REFERENCE] evidence from the document, [CRITICISM] the flaw in the disputed "
      "answer, [CONCLUSION] a line \"ANSWER: <your answer>\" followed by your reasoning.",
      std::move(user), &doc);
}

ChatRequest thesis(const Question& question, const Document& doc, std::string_view expert_answer,
                   std::string_view reference, std::string_view criticism,
                   std::string_view summary) {
  std::string user = "Question: " + question.text + "\nYour answer: " +
                     std::string(expert_answer) + "\nOpponent reference: " +
                     std::string(reference) + "\nOpponent criticism: " + std::string(criticism);
  if (!summary.empty()) user += "\nDebate so far: " + std::string(summary);
  return make(
      "Defend your answer against the criticism using evidence from the "
      "document. If the criticism is right, say so and state the corrected answer "
      "on a line \"ANSWER: <answer>\".",
      std::move(user), &doc);
}

ChatRequest judge_turn(std::string_view thesis_answer, std::string_view thesis_reply,
                       std::string_view reference, std::string_view criticism,
                       std::string_view conclusion) {
  return make(
      "You moderate a debate between a thesis and an antithesis agent. Decide "
      "whether either side has been convinced by the other. Reply with a line "
      "\"VERDICT: CONTINUE\", \"VERDICT: THESIS\" or \"VERDICT: ANTITHESIS\" naming the "
      "position that prevailed, then a line \"SUMMARY: <summary of the exchange>\".",
      "Thesis answer: " + std::string(thesis_answer) + "\nThesis reply: " +
          std::string(thesis_reply) + "\nAntithesis reference: " + std::string(reference) +
          "\nAntithesis criticism: " + std::string(criticism) +
          "\nAntithesis conclusion: " + std::string(conclusion),
      nullptr);
}

ChatRequest judge_final(std::string_view thesis_answer, std::string_view antithesis_answer,
                        std::string_view transcript) {
  return make(
      "No side conceded. Read the full debate and decide which agent argued with "
      "greater confidence and consistency. Reply with a line \"VERDICT: THESIS\" or "
      "\"VERDICT: ANTITHESIS\", then a line \"SUMMARY: <reason>\".",
      "Thesis answer: " + std::string(thesis_answer) +
          "\nAntithesis answer: " + std::string(antithesis_answer) + "\nTranscript:\n" +
          std::string(transcript),
      nullptr);
}

ChatRequest sanity(const Question& question, const Document& doc, std::string_view answer) {
  return make(
      "Check the answer's formatting against the document. You may only insert "
      "spaces that the document has and the answer lacks, and add, remove or "
      "change punctuation to match the document. Do not change any letter or "
      "digit. Reply with a line \"FINAL: <answer>\".",
      "Question: " + question.text + "\nAnswer to check: " + std::string(answer), &doc);
}

}  // namespace agentdock::prompts
