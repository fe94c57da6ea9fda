// Copyright 2026 The agentdock Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace agentdock {

/// A single-page document image. The payload is opaque: it is forwarded to
/// backends untouched and never decoded. Copies share the byte buffer.
class Document {
 public:
  /// Throws InvalidArgument when the payload is empty or the mime type is
  /// not a recognized raster image type.
  Document(std::string id, std::vector<std::uint8_t> image_bytes,
           std::string mime_type);

  /// Reads an image file, inferring the mime type from its magic bytes
  /// (falling back to the extension). Throws InvalidArgument naming the path
  /// when the file is missing or unreadable.
  static Document from_file(const std::filesystem::path& path,
                            std::string id = {});

  const std::string& id() const noexcept { return id_; }
  std::span<const std::uint8_t> image_bytes() const noexcept { return *bytes_; }
  const std::string& mime_type() const noexcept { return mime_type_; }

 private:
  std::string id_;
  std::shared_ptr<const std::vector<std::uint8_t>> bytes_;
  std::string mime_type_;
};

bool is_raster_mime_type(std::string_view mime);

/// Best-effort mime detection from leading bytes; empty when unknown.
std::string sniff_mime_type(std::span<const std::uint8_t> bytes);

struct Question {
  std::string id;
  std::string text;

  /// Throws InvalidArgument when text is blank.
  static Question make(std::string id, std::string text);
};

enum class AnswerOrigin { kThinker, kExpert, kStressTest, kDebate, kFinal };

const char* to_string(AnswerOrigin origin);
std::optional<AnswerOrigin> answer_origin_from_string(std::string_view s);

struct Answer {
  std::string text;
  AnswerOrigin origin = AnswerOrigin::kThinker;

  bool operator==(const Answer&) const = default;
};

/// Ordered reasoning steps r_1..r_n as produced by the thinker.
struct ReasoningPath {
  std::vector<std::string> steps;

  bool empty() const noexcept { return steps.empty(); }
  std::size_t size() const noexcept { return steps.size(); }
  bool operator==(const ReasoningPath&) const = default;
};

enum class AgentKind : std::uint8_t {
  kFigure = 0,
  kYesNo,
  kTable,
  kLayout,
  kImage,
  kOcr,
  kText,
  kForm,
  kOther,
};

inline constexpr std::size_t kAgentCount = 9;

inline constexpr std::array<AgentKind, kAgentCount> kAllAgents = {
    AgentKind::kFigure, AgentKind::kYesNo, AgentKind::kTable,
    AgentKind::kLayout, AgentKind::kImage, AgentKind::kOcr,
    AgentKind::kText,   AgentKind::kForm,  AgentKind::kOther,
};

constexpr std::size_t index_of(AgentKind kind) noexcept {
  return static_cast<std::size_t>(kind);
}

/// Canonical lowercase label, also used as the endpoint role name.
std::string_view label(AgentKind kind) noexcept;

/// Case-insensitive label lookup.
std::optional<AgentKind> agent_from_label(std::string_view text);

}  // namespace agentdock
