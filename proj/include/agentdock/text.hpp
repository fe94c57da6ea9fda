// Copyright 2026 The agentdock Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace agentdock {

/// Case-folds, NFC-normalizes, trims and collapses whitespace runs to a
/// single U+0020. Punctuation is retained. Invalid UTF-8 sequences are
/// replaced with U+FFFD.
std::string normalize_answer(std::string_view text);

/// Equality after normalize_answer.
bool answers_equal(std::string_view a, std::string_view b);

/// True iff normalize_answer(inner) is a substring of normalize_answer(outer).
bool answer_contained(std::string_view inner, std::string_view outer);

/// Normalized text plus, for every byte of it, the half-open byte range of
/// the original input it was produced from. A collapsed whitespace byte maps
/// to the whole whitespace run.
struct NormalizedText {
  std::string text;
  std::vector<std::pair<std::size_t, std::size_t>> source;
};

/// Same transformation as normalize_answer, with provenance. Normalization
/// is applied per canonical segment so every output byte traces back to a
/// contiguous input span.
NormalizedText normalize_with_offsets(std::string_view text);

std::u32string to_code_points(std::string_view utf8);
std::string to_utf8(std::u32string_view code_points);

/// Unicode lowercasing (root locale) followed by whitespace trimming.
std::string lowercase_trim(std::string_view text);

/// ASCII/Unicode whitespace trimming only.
std::string trim(std::string_view text);

bool is_whitespace(char32_t c) noexcept;
bool is_letter_or_digit(char32_t c) noexcept;

/// Unicode general category P* plus the ASCII symbols , . ; : ' " - ( ) / & %.
bool is_punctuation(char32_t c) noexcept;

/// The letters and digits of text, in order.
std::u32string letter_digit_subsequence(std::string_view text);

/// ASCII case-insensitive prefix test used by tag parsers.
bool starts_with_ci(std::string_view text, std::string_view prefix) noexcept;

std::string ascii_lower(std::string_view text);

}  // namespace agentdock
