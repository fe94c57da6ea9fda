// Copyright 2026 The agentdock Authors
// SPDX-License-Identifier: Apache-2.0

#include "agentdock/text.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <stdexcept>

namespace agentdock {
namespace {

struct DecodedCodePoint {
  char32_t value;
  std::size_t begin;
  std::size_t end;
};

std::vector<DecodedCodePoint> decode(std::string_view utf8) {
  std::vector<DecodedCodePoint> out;
  out.reserve(utf8.size());
  const auto* s = reinterpret_cast<const std::uint8_t*>(utf8.data());
  const auto length = static_cast<std::int32_t>(utf8.size());
  std::int32_t i = 0;
  while (i < length) {
    const std::int32_t start = i;
    UChar32 c = 0;
    U8_NEXT(s, i, length, c);
    if (c < 0) c = 0xFFFD;
    out.push_back({static_cast<char32_t>(c), static_cast<std::size_t>(start),
                   static_cast<std::size_t>(i)});
  }
  return out;
}

void append_utf8(std::string& out, char32_t c) {
  char buf[U8_MAX_LENGTH];
  std::int32_t n = 0;
  UBool error = false;
  U8_APPEND(reinterpret_cast<std::uint8_t*>(buf), n, U8_MAX_LENGTH,
            static_cast<UChar32>(c), error);
  if (error) {
    U8_APPEND_UNSAFE(reinterpret_cast<std::uint8_t*>(buf), n, 0xFFFD);
  }
  out.append(buf, static_cast<std::size_t>(n));
}

const icu::Normalizer2& nfc() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || n == nullptr) {
    throw std::runtime_error("ICU NFC normalizer unavailable");
  }
  return *n;
}

icu::UnicodeString nfc_normalize(const icu::UnicodeString& s) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString out = nfc().normalize(s, status);
  if (U_FAILURE(status)) {
    throw std::runtime_error("ICU NFC normalization failed");
  }
  return out;
}

// NFC, full case folding, then NFC again: folding can emit decomposed
// sequences (e.g. U+0130).
icu::UnicodeString fold_segment(const icu::UnicodeString& segment) {
  icu::UnicodeString s = nfc_normalize(segment);
  s.foldCase(U_FOLD_CASE_DEFAULT);
  return nfc_normalize(s);
}

}  // namespace

bool is_whitespace(char32_t c) noexcept {
  return u_isUWhiteSpace(static_cast<UChar32>(c)) != 0;
}

bool is_letter_or_digit(char32_t c) noexcept {
  return u_isalnum(static_cast<UChar32>(c)) != 0;
}

bool is_punctuation(char32_t c) noexcept {
  switch (c) {
    case U',': case U'.': case U';': case U':': case U'\'': case U'"':
    case U'-': case U'(': case U')': case U'/': case U'&': case U'%':
      return true;
    default:
      return u_ispunct(static_cast<UChar32>(c)) != 0;
  }
}

std::u32string to_code_points(std::string_view utf8) {
  std::u32string out;
  for (const auto& cp : decode(utf8)) out.push_back(cp.value);
  return out;
}

std::string to_utf8(std::u32string_view code_points) {
  std::string out;
  out.reserve(code_points.size());
  for (char32_t c : code_points) append_utf8(out, c);
  return out;
}

NormalizedText normalize_with_offsets(std::string_view text) {
  const auto input = decode(text);
  const icu::Normalizer2& normalizer = nfc();

  // Fold each canonical segment independently; every produced code point
  // inherits the byte span of its segment.
  std::vector<DecodedCodePoint> folded;
  folded.reserve(input.size());
  std::size_t i = 0;
  while (i < input.size()) {
    std::size_t j = i + 1;
    while (j < input.size() &&
           !normalizer.hasBoundaryBefore(static_cast<UChar32>(input[j].value))) {
      ++j;
    }
    icu::UnicodeString segment;
    for (std::size_t k = i; k < j; ++k) {
      segment.append(static_cast<UChar32>(input[k].value));
    }
    const icu::UnicodeString result = fold_segment(segment);
    for (std::int32_t k = 0; k < result.length();) {
      const UChar32 c = result.char32At(k);
      folded.push_back({static_cast<char32_t>(c), input[i].begin, input[j - 1].end});
      k += U16_LENGTH(c);
    }
    i = j;
  }

  NormalizedText out;
  auto emit = [&out](char32_t c, std::size_t begin, std::size_t end) {
    const std::size_t before = out.text.size();
    append_utf8(out.text, c);
    out.source.insert(out.source.end(), out.text.size() - before, {begin, end});
  };

  std::size_t k = 0;
  while (k < folded.size()) {
    if (!is_whitespace(folded[k].value)) {
      emit(folded[k].value, folded[k].begin, folded[k].end);
      ++k;
      continue;
    }
    std::size_t run_end = k;
    while (run_end < folded.size() && is_whitespace(folded[run_end].value)) {
      ++run_end;
    }
    // Leading and trailing runs are trimmed; interior runs become one space.
    if (!out.text.empty() && run_end < folded.size()) {
      emit(U' ', folded[k].begin, folded[run_end - 1].end);
    }
    k = run_end;
  }
  return out;
}

std::string normalize_answer(std::string_view text) {
  return normalize_with_offsets(text).text;
}

bool answers_equal(std::string_view a, std::string_view b) {
  return normalize_answer(a) == normalize_answer(b);
}

bool answer_contained(std::string_view inner, std::string_view outer) {
  return normalize_answer(outer).find(normalize_answer(inner)) !=
         std::string::npos;
}

std::string trim(std::string_view text) {
  const auto cps = decode(text);
  std::size_t first = 0;
  while (first < cps.size() && is_whitespace(cps[first].value)) ++first;
  if (first == cps.size()) return {};
  std::size_t last = cps.size();
  while (last > first && is_whitespace(cps[last - 1].value)) --last;
  return std::string(text.substr(cps[first].begin, cps[last - 1].end - cps[first].begin));
}

std::string lowercase_trim(std::string_view text) {
  icu::UnicodeString s = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<std::int32_t>(text.size())));
  s.toLower(icu::Locale::getRoot());
  std::string out;
  s.toUTF8String(out);
  return trim(out);
}

std::u32string letter_digit_subsequence(std::string_view text) {
  std::u32string out;
  for (const auto& cp : decode(text)) {
    if (is_letter_or_digit(cp.value)) out.push_back(cp.value);
  }
  return out;
}

bool starts_with_ci(std::string_view text, std::string_view prefix) noexcept {
  if (text.size() < prefix.size()) return false;
  return std::equal(prefix.begin(), prefix.end(), text.begin(), [](char a, char b) {
    auto lower = [](char c) {
      return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
    };
    return lower(a) == lower(b);
  });
}

std::string ascii_lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

}  // namespace agentdock
