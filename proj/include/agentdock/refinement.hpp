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

enum class EditKind { kSpaceInsertion, kPunctuationAdjustment };

const char* to_string(EditKind kind);
std::optional<EditKind> edit_kind_from_string(std::string_view s);

/// One contiguous change: `before` (possibly empty) was replaced by `after`.
struct Edit {
  EditKind kind = EditKind::kSpaceInsertion;
  std::string before;
  std::string after;

  bool operator==(const Edit&) const = default;
};

struct RefinementConfig {
  /// Code points treated as punctuation on top of is_punctuation().
  std::u32string extra_punctuation;
};

/// The permitted edits turning `before` into `after`, or nullopt when no
/// alignment uses only space insertions and punctuation insertions,
/// removals and substitutions. Adjacent edits are merged; a merged edit
/// made only of inserted spaces is a SpaceInsertion.
std::optional<std::vector<Edit>> permitted_edits(std::string_view before, std::string_view after,
                                                 const RefinementConfig& config = {});

struct RefinementResult {
  Answer answer;  // a_F, origin Final
  bool changed = false;
  std::vector<Edit> edits;
  bool rejected = false;
  std::string proposed;  // the sanity agent's FINAL: text

  bool operator==(const RefinementResult&) const = default;
};

/// Applies the guardrail to a proposed rewrite of `previous`. A rejected
/// proposal leaves the answer untouched.
RefinementResult refine(std::string_view previous, std::string_view proposed,
                        const RefinementConfig& config = {});

/// Asks the sanity agent for a FINAL: line and refines with it. Throws
/// ParseError when the tag is missing.
RefinementResult sanity_check(Session& session, const Question& question, const Document& doc,
                              const Answer& previous, std::string_view sanity_role = "sanity",
                              const RefinementConfig& config = {});

}  // namespace agentdock
