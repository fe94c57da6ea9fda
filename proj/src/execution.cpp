// Copyright 2026 The agentdock Authors
// SPDX-License-Identifier: Apache-2.0

#include "agentdock/execution.hpp"

#include <algorithm>
#include <array>
#include <regex>

#include "agentdock/error.hpp"
#include "agentdock/prompts.hpp"
#include "agentdock/tags.hpp"
#include "agentdock/text.hpp"

namespace agentdock {
namespace {

struct Keyword {
  std::string_view word;
  bool stem;  // matches any word starting with it
};

const std::vector<Keyword>& keywords(AgentKind kind) {
  static const std::array<std::vector<Keyword>, kAgentCount> kTable = {{
      {{"figure", false}, {"chart", false}, {"diagram", false}, {"graph", false}},
      {{"yes", false}, {"no", false}, {"whether", false}},
      {{"table", false}, {"list", false}, {"row", false}, {"column", false}, {"cell", false}},
      {{"layout", false}, {"section", false}, {"header", false}, {"footer", false}},
      {{"photo", false}, {"image", false}, {"picture", false}},
      {{"handwrit", true}, {"ocr", false}},
      {{"paragraph", false}, {"text", false}, {"sentence", false}},
      {{"form", false}, {"field", false}},
      {},
  }};
  return kTable[index_of(kind)];
}

std::vector<std::string> words_of(std::string_view text) {
  std::vector<std::string> words;
  std::string current;
  for (char32_t c : to_code_points(text)) {
    if (is_letter_or_digit(c)) {
      current += to_utf8(std::u32string_view(&c, 1));
    } else if (!current.empty()) {
      words.push_back(ascii_lower(current));
      current.clear();
    }
  }
  if (!current.empty()) words.push_back(ascii_lower(current));
  return words;
}

bool keyword_hits(const Keyword& k, const std::string& word) {
  if (k.stem) return word.starts_with(k.word);
  if (!word.starts_with(k.word)) return false;
  const std::string_view rest = std::string_view(word).substr(k.word.size());
  return rest.empty() || rest == "s" || rest == "es";
}

struct Span {
  std::size_t begin;
  std::size_t end;
};

// Occurrence spans of `needle` (already normalized) in the original bytes
// of `step`, skipping text inside mask tokens.
std::vector<Span> find_spans(std::string_view step, std::string_view needle,
                             std::string_view mask_token) {
  std::vector<Span> spans;
  std::size_t piece_begin = 0;
  while (piece_begin <= step.size()) {
    std::size_t piece_end =
        mask_token.empty() ? std::string_view::npos : step.find(mask_token, piece_begin);
    if (piece_end == std::string_view::npos) piece_end = step.size();

    const NormalizedText normalized =
        normalize_with_offsets(step.substr(piece_begin, piece_end - piece_begin));
    std::size_t pos = 0;
    while ((pos = normalized.text.find(needle, pos)) != std::string::npos) {
      const std::size_t last = pos + needle.size() - 1;
      spans.push_back({piece_begin + normalized.source[pos].first,
                       piece_begin + normalized.source[last].second});
      pos += needle.size();
    }
    if (piece_end == step.size()) break;
    piece_begin = piece_end + mask_token.size();
  }
  return spans;
}

std::string agent_answer(std::string_view reply, bool require_tag, AgentKind kind) {
  std::optional<std::string> tagged = last_tagged_value(reply, prompts::kAnswerTag);
  if (!tagged) {
    if (require_tag) {
      throw ParseError("agent '" + std::string(label(kind)) + "' reply has no ANSWER: line");
    }
    tagged = trim(reply);
  }
  if (tagged->empty()) {
    throw ParseError("agent '" + std::string(label(kind)) + "' produced an empty answer");
  }
  return *tagged;
}

}  // namespace

ThinkerOutput parse_thinker_reply(std::string_view reply) {
  static const std::regex kStep(R"(^\s*(?:[Ss]tep\s*)?\d+\s*[.):]\s*(.*)$)");
  const auto lines = split_lines(reply);

  std::optional<std::size_t> answer_line;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (last_tagged_value(lines[i], prompts::kAnswerTag)) answer_line = i;
  }
  if (!answer_line) throw ParseError("thinker reply has no ANSWER: line");

  ThinkerOutput out;
  for (std::size_t i = 0; i < *answer_line; ++i) {
    const std::string line(lines[i]);
    std::smatch m;
    if (std::regex_match(line, m, kStep)) {
      out.path.steps.push_back(trim(m[1].str()));
    } else if (!out.path.steps.empty() && !trim(line).empty()) {
      auto& step = out.path.steps.back();
      step += (step.empty() ? "" : " ") + trim(line);
    }
  }
  std::erase_if(out.path.steps, [](const std::string& s) { return s.empty(); });
  if (out.path.empty()) throw ParseError("thinker reply has no numbered reasoning steps");

  out.answer = {*last_tagged_value(lines[*answer_line], prompts::kAnswerTag),
                AnswerOrigin::kThinker};
  out.answer_empty = out.answer.text.empty();
  return out;
}

ThinkerOutput think(Session& session, const Question& question, const Document& doc,
                    std::string_view thinker_role) {
  const ChatResponse reply = session.complete(thinker_role, prompts::thinker(question, doc));
  return parse_thinker_reply(reply.text);
}

std::optional<std::size_t> first_mention(AgentKind kind, const ReasoningPath& path) {
  const auto& kws = keywords(kind);
  if (kws.empty()) return std::nullopt;
  for (std::size_t i = 0; i < path.steps.size(); ++i) {
    for (const auto& word : words_of(path.steps[i])) {
      for (const auto& k : kws) {
        if (keyword_hits(k, word)) return i;
      }
    }
  }
  return std::nullopt;
}

ExecutionPlan orchestrate(const ActivationVector& active, const ReasoningPath& path) {
  struct Entry {
    AgentKind kind;
    bool is_other;
    std::size_t mention;  // steps.size() when never mentioned
  };
  std::vector<Entry> entries;
  for (AgentKind kind : active.active()) {
    entries.push_back({kind, kind == AgentKind::kOther,
                       first_mention(kind, path).value_or(path.steps.size())});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.is_other != b.is_other) return b.is_other;
    if (a.mention != b.mention) return a.mention < b.mention;
    return index_of(a.kind) < index_of(b.kind);
  });
  ExecutionPlan plan;
  for (const auto& e : entries) plan.order.push_back(e.kind);
  return plan;
}

void MaskConfig::validate() const {
  if (threshold < 0) throw InvalidArgument("mask threshold must be non-negative");
  if (mask_token.empty()) throw InvalidArgument("mask token must be non-empty");
}

std::size_t count_answer_occurrences(const ReasoningPath& path, std::string_view answer,
                                     std::string_view mask_token) {
  const std::string needle = normalize_answer(answer);
  if (needle.empty()) return 0;
  std::size_t n = 0;
  for (const auto& step : path.steps) n += find_spans(step, needle, mask_token).size();
  return n;
}

ReasoningPath mask_answer(const ReasoningPath& path, const Answer& answer,
                          const MaskConfig& config) {
  config.validate();
  const std::string needle = normalize_answer(answer.text);
  if (needle.empty()) return path;

  std::vector<std::vector<Span>> per_step;
  std::size_t total = 0;
  for (const auto& step : path.steps) {
    per_step.push_back(find_spans(step, needle, config.mask_token));
    total += per_step.back().size();
  }
  if (total <= static_cast<std::size_t>(config.threshold)) return path;

  ReasoningPath masked;
  for (std::size_t i = 0; i < path.steps.size(); ++i) {
    const std::string& step = path.steps[i];
    std::string out;
    std::size_t cursor = 0;
    for (const Span& s : per_step[i]) {
      // Spans widen to whole canonical segments, so neighbours may overlap.
      if (s.begin < cursor) {
        cursor = std::max(cursor, s.end);
        continue;
      }
      out.append(step, cursor, s.begin - cursor);
      out += config.mask_token;
      cursor = s.end;
    }
    out.append(step, cursor, std::string::npos);
    masked.steps.push_back(std::move(out));
  }
  return masked;
}

ChainResult execute_chain(Session& session, const ExecutionPlan& plan, const Question& question,
                          const Document& doc, const ReasoningPath& masked_path) {
  if (plan.order.empty()) throw InvalidArgument("execution plan is empty");
  ChainResult result;
  std::optional<std::string> predecessor;
  for (std::size_t i = 0; i < plan.order.size(); ++i) {
    const AgentKind kind = plan.order[i];
    const bool last = i + 1 == plan.order.size();
    const std::string role(label(kind));
    try {
      const ChatResponse reply = session.complete(
          role, prompts::specialist(kind, question, doc, predecessor, last ? &masked_path : nullptr));
      predecessor = agent_answer(reply.text, last, kind);
    } catch (const Error& e) {
      rethrow_with_context(e, "chain agent '" + role + "' (position " + std::to_string(i + 1) + ")");
    }
    result.steps.push_back({kind, *predecessor});
  }
  result.answer = {*predecessor, AnswerOrigin::kExpert};
  return result;
}

}  // namespace agentdock
