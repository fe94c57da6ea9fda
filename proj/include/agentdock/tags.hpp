// Copyright 2026 The agentdock Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace agentdock {

/// Splits on \n, dropping a trailing \r from each line.
std::vector<std::string_view> split_lines(std::string_view text);

/// Value of the last line that starts (case-insensitively, after leading
/// markdown emphasis) with `tag`, trimmed.
std::optional<std::string> last_tagged_value(std::string_view text, std::string_view tag);

/// Same, first matching line.
std::optional<std::string> first_tagged_value(std::string_view text, std::string_view tag);

}  // namespace agentdock
