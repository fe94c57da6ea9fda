// Copyright 2026 The agentdock Authors
// SPDX-License-Identifier: Apache-2.0

#include "agentdock/refinement.hpp"

#include <limits>

#include "agentdock/error.hpp"
#include "agentdock/prompts.hpp"
#include "agentdock/tags.hpp"
#include "agentdock/text.hpp"

namespace agentdock {
namespace {

constexpr int kForbidden = std::numeric_limits<int>::max() / 4;

enum class Op { kMatch, kSubstitute, kDelete, kInsert };

}  // namespace

const char* to_string(EditKind kind) {
  return kind == EditKind::kSpaceInsertion ? "space_insertion" : "punctuation_adjustment";
}

std::optional<EditKind> edit_kind_from_string(std::string_view s) {
  if (s == "space_insertion") return EditKind::kSpaceInsertion;
  if (s == "punctuation_adjustment") return EditKind::kPunctuationAdjustment;
  return std::nullopt;
}

std::optional<std::vector<Edit>> permitted_edits(std::string_view before, std::string_view after,
                                                 const RefinementConfig& config) {
  const std::u32string a = to_code_points(before);
  const std::u32string b = to_code_points(after);
  const auto punct = [&](char32_t c) {
    return is_punctuation(c) || config.extra_punctuation.find(c) != std::u32string::npos;
  };
  const std::size_t n = a.size();
  const std::size_t m = b.size();

  // cost[i][j]: fewest permitted edits aligning a[i..] with b[j..].
  std::vector<std::vector<int>> cost(n + 1, std::vector<int>(m + 1, kForbidden));
  const auto step_cost = [&](std::size_t i, std::size_t j, Op op) -> int {
    switch (op) {
      case Op::kMatch:
        return (i < n && j < m && a[i] == b[j]) ? cost[i + 1][j + 1] : kForbidden;
      case Op::kSubstitute:
        return (i < n && j < m && a[i] != b[j] && punct(a[i]) && punct(b[j]))
                   ? cost[i + 1][j + 1] + 1
                   : kForbidden;
      case Op::kDelete:
        return (i < n && punct(a[i])) ? cost[i + 1][j] + 1 : kForbidden;
      case Op::kInsert:
        return (j < m && (b[j] == U' ' || punct(b[j]))) ? cost[i][j + 1] + 1 : kForbidden;
    }
    return kForbidden;
  };
  constexpr Op kOps[] = {Op::kMatch, Op::kSubstitute, Op::kDelete, Op::kInsert};

  cost[n][m] = 0;
  for (std::size_t i = n + 1; i-- > 0;) {
    for (std::size_t j = m + 1; j-- > 0;) {
      if (i == n && j == m) continue;
      int best = kForbidden;
      for (Op op : kOps) best = std::min(best, step_cost(i, j, op));
      cost[i][j] = std::min(best, kForbidden);
    }
  }
  if (cost[0][0] >= kForbidden) return std::nullopt;

  std::vector<Edit> edits;
  std::u32string group_before;
  std::u32string group_after;
  bool group_open = false;
  bool spaces_only = true;
  const auto close_group = [&] {
    if (!group_open) return;
    edits.push_back({spaces_only ? EditKind::kSpaceInsertion : EditKind::kPunctuationAdjustment,
                     to_utf8(group_before), to_utf8(group_after)});
    group_before.clear();
    group_after.clear();
    group_open = false;
    spaces_only = true;
  };

  std::size_t i = 0;
  std::size_t j = 0;
  while (i < n || j < m) {
    Op chosen = Op::kMatch;
    for (Op op : kOps) {
      if (step_cost(i, j, op) == cost[i][j]) {
        chosen = op;
        break;
      }
    }
    if (chosen == Op::kMatch) {
      close_group();
      ++i;
      ++j;
      continue;
    }
    group_open = true;
    if (chosen != Op::kInsert) {
      group_before += a[i++];
      spaces_only = false;
    }
    if (chosen != Op::kDelete) {
      if (b[j] != U' ' || chosen != Op::kInsert) spaces_only = false;
      group_after += b[j++];
    }
  }
  close_group();
  return edits;
}

RefinementResult refine(std::string_view previous, std::string_view proposed,
                        const RefinementConfig& config) {
  RefinementResult result;
  result.proposed = std::string(proposed);
  result.answer = {std::string(previous), AnswerOrigin::kFinal};
  std::optional<std::vector<Edit>> edits;
  if (!trim(proposed).empty()) edits = permitted_edits(previous, proposed, config);
  if (!edits) {
    result.rejected = true;
    return result;
  }
  result.edits = std::move(*edits);
  result.changed = !result.edits.empty();
  if (result.changed) result.answer.text = std::string(proposed);
  return result;
}

RefinementResult sanity_check(Session& session, const Question& question, const Document& doc,
                              const Answer& previous, std::string_view sanity_role,
                              const RefinementConfig& config) {
  if (trim(previous.text).empty()) throw InvalidArgument("sanity check needs a non-empty answer");
  const ChatResponse reply =
      session.complete(sanity_role, prompts::sanity(question, doc, previous.text));
  const auto proposed = last_tagged_value(reply.text, prompts::kFinalTag);
  if (!proposed) throw ParseError("sanity reply has no FINAL: line");
  return refine(previous.text, *proposed, config);
}

}  // namespace agentdock
