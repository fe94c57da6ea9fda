// Copyright 2026 The agentdock Authors
// SPDX-License-Identifier: Apache-2.0

#include "agentdock/types.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>

#include "agentdock/error.hpp"
#include "agentdock/text.hpp"

namespace agentdock {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "ParseError";
    case ErrorKind::kTransport: return "TransportError";
    case ErrorKind::kProtocol: return "ProtocolError";
    case ErrorKind::kModelRefusal: return "ModelRefusal";
    case ErrorKind::kUnsupportedCapability: return "UnsupportedCapability";
    case ErrorKind::kUnscripted: return "UnscriptedRequest";
    case ErrorKind::kOracle: return "OracleError";
    case ErrorKind::kEmptyDistribution: return "EmptyDistribution";
    case ErrorKind::kConfig: return "ConfigError";
    case ErrorKind::kEmptyCorpus: return "EmptyCorpus";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

void rethrow_with_context(const Error& error, const std::string& context) {
  const std::string what = context + ": " + error.what();
  switch (error.kind()) {
    case ErrorKind::kParse: throw ParseError(what);
    case ErrorKind::kTransport: throw TransportError(what);
    case ErrorKind::kProtocol: throw ProtocolError(what);
    case ErrorKind::kModelRefusal: throw ModelRefusal(what);
    case ErrorKind::kUnsupportedCapability: throw UnsupportedCapability(what);
    case ErrorKind::kUnscripted: throw UnscriptedRequest(what);
    case ErrorKind::kOracle: throw OracleError(what);
    case ErrorKind::kEmptyDistribution: throw EmptyDistribution(what);
    case ErrorKind::kConfig: throw ConfigError(what);
    case ErrorKind::kEmptyCorpus: throw EmptyCorpus(what);
    case ErrorKind::kInvalidArgument: throw InvalidArgument(what);
  }
  throw Error(error.kind(), what);
}

namespace {

constexpr std::array<std::string_view, 7> kRasterTypes = {
    "image/png", "image/jpeg", "image/gif", "image/webp",
    "image/bmp", "image/tiff", "image/x-portable-anymap",
};

std::string mime_from_extension(const std::filesystem::path& path) {
  const std::string ext = ascii_lower(path.extension().string());
  if (ext == ".png") return "image/png";
  if (ext == ".jpg" || ext == ".jpeg") return "image/jpeg";
  if (ext == ".gif") return "image/gif";
  if (ext == ".webp") return "image/webp";
  if (ext == ".bmp") return "image/bmp";
  if (ext == ".tif" || ext == ".tiff") return "image/tiff";
  if (ext == ".pnm" || ext == ".ppm" || ext == ".pgm") return "image/x-portable-anymap";
  return {};
}

}  // namespace

bool is_raster_mime_type(std::string_view mime) {
  return std::find(kRasterTypes.begin(), kRasterTypes.end(), mime) != kRasterTypes.end();
}

std::string sniff_mime_type(std::span<const std::uint8_t> b) {
  auto starts = [&](std::initializer_list<std::uint8_t> magic) {
    return b.size() >= magic.size() && std::equal(magic.begin(), magic.end(), b.begin());
  };
  if (starts({0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A})) return "image/png";
  if (starts({0xFF, 0xD8, 0xFF})) return "image/jpeg";
  if (starts({'G', 'I', 'F', '8'})) return "image/gif";
  if (b.size() >= 12 && starts({'R', 'I', 'F', 'F'}) && b[8] == 'W' && b[9] == 'E' &&
      b[10] == 'B' && b[11] == 'P') {
    return "image/webp";
  }
  if (starts({'B', 'M'})) return "image/bmp";
  if (starts({'I', 'I', 0x2A, 0x00}) || starts({'M', 'M', 0x00, 0x2A})) return "image/tiff";
  return {};
}

Document::Document(std::string id, std::vector<std::uint8_t> image_bytes,
                   std::string mime_type)
    : id_(std::move(id)), mime_type_(std::move(mime_type)) {
  if (image_bytes.empty()) {
    throw InvalidArgument("document '" + id_ + "' has an empty image payload");
  }
  if (!is_raster_mime_type(mime_type_)) {
    throw InvalidArgument("document '" + id_ + "' has unsupported mime type '" +
                          mime_type_ + "'");
  }
  bytes_ = std::make_shared<const std::vector<std::uint8_t>>(std::move(image_bytes));
}

Document Document::from_file(const std::filesystem::path& path, std::string id) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InvalidArgument("cannot read image file: " + path.string());
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw InvalidArgument("cannot read image file: " + path.string());
  }
  std::string mime = sniff_mime_type(bytes);
  if (mime.empty()) mime = mime_from_extension(path);
  if (mime.empty()) {
    throw InvalidArgument("not a recognized raster image: " + path.string());
  }
  if (id.empty()) id = path.filename().string();
  return Document(std::move(id), std::move(bytes), std::move(mime));
}

Question Question::make(std::string id, std::string text) {
  if (trim(text).empty()) {
    throw InvalidArgument("question '" + id + "' has empty text");
  }
  return Question{std::move(id), std::move(text)};
}

const char* to_string(AnswerOrigin origin) {
  switch (origin) {
    case AnswerOrigin::kThinker: return "thinker";
    case AnswerOrigin::kExpert: return "expert";
    case AnswerOrigin::kStressTest: return "stress_test";
    case AnswerOrigin::kDebate: return "debate";
    case AnswerOrigin::kFinal: return "final";
  }
  return "unknown";
}

std::optional<AnswerOrigin> answer_origin_from_string(std::string_view s) {
  for (auto o : {AnswerOrigin::kThinker, AnswerOrigin::kExpert, AnswerOrigin::kStressTest,
                 AnswerOrigin::kDebate, AnswerOrigin::kFinal}) {
    if (s == to_string(o)) return o;
  }
  return std::nullopt;
}

std::string_view label(AgentKind kind) noexcept {
  static constexpr std::array<std::string_view, kAgentCount> kLabels = {
      "figure", "yesno", "table", "layout", "image", "ocr", "text", "form", "other",
  };
  return kLabels[index_of(kind)];
}

std::optional<AgentKind> agent_from_label(std::string_view text) {
  const std::string lowered = ascii_lower(text);
  for (AgentKind kind : kAllAgents) {
    if (lowered == label(kind)) return kind;
  }
  return std::nullopt;
}

}  // namespace agentdock
