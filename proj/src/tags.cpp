// Copyright 2026 The agentdock Authors
// SPDX-License-Identifier: Apache-2.0

#include "agentdock/tags.hpp"

#include "agentdock/text.hpp"

namespace agentdock {
namespace {

std::optional<std::string> tagged(std::string_view line, std::string_view tag) {
  std::size_t i = 0;
  while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '*' ||
                             line[i] == '#' || line[i] == '>')) {
    ++i;
  }
  line.remove_prefix(i);
  if (!starts_with_ci(line, tag)) return std::nullopt;
  std::string value = trim(line.substr(tag.size()));
  // "**ANSWER:** x" leaves the closing emphasis in front of the value.
  while (value.size() >= 2 && value.starts_with("**")) value = trim(value.substr(2));
  return value;
}

}  // namespace

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::optional<std::string> last_tagged_value(std::string_view text, std::string_view tag) {
  std::optional<std::string> found;
  for (auto line : split_lines(text)) {
    if (auto v = tagged(line, tag)) found = std::move(v);
  }
  return found;
}

std::optional<std::string> first_tagged_value(std::string_view text, std::string_view tag) {
  for (auto line : split_lines(text)) {
    if (auto v = tagged(line, tag)) return v;
  }
  return std::nullopt;
}

}  // namespace agentdock
