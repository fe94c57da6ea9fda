// Copyright 2026 The agentdock Authors
// SPDX-License-Identifier: Apache-2.0

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "agentdock/http_backend.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <set>
#include <thread>

#include <httplib.h>

#include "agentdock/error.hpp"

namespace agentdock {
namespace {

struct ParsedUrl {
  std::string scheme_host_port;
  std::string path;
};

ParsedUrl parse_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("endpoint url lacks a scheme: " + url);
  }
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

MessageRole role_from_string(const std::string& s) {
  if (s == "system") return MessageRole::kSystem;
  if (s == "user") return MessageRole::kUser;
  if (s == "assistant") return MessageRole::kAssistant;
  throw ProtocolError("unknown message role: " + s);
}

FinishReason finish_from_wire(const nlohmann::json& v) {
  if (!v.is_string()) return FinishReason::kStop;
  const auto s = v.get<std::string>();
  if (s == "stop" || s == "eos" || s == "end_turn") return FinishReason::kStop;
  if (s == "length" || s == "max_tokens") return FinishReason::kLength;
  return FinishReason::kError;
}

bool retryable_status(int status) { return status == 408 || status == 429 || status >= 500; }

}  // namespace

std::string base64_encode(std::span<const std::uint8_t> bytes) {
  if (bytes.empty()) return {};
  std::string out(4 * ((bytes.size() + 2) / 3), '\0');
  const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), bytes.data(),
                                static_cast<int>(bytes.size()));
  out.resize(static_cast<std::size_t>(n));
  return out;
}

std::vector<std::uint8_t> base64_decode(std::string_view text) {
  if (text.empty()) return {};
  if (text.size() % 4 != 0) throw ProtocolError("base64 payload has invalid length");
  std::vector<std::uint8_t> out(3 * text.size() / 4);
  const int n = EVP_DecodeBlock(out.data(), reinterpret_cast<const unsigned char*>(text.data()),
                                static_cast<int>(text.size()));
  if (n < 0) throw ProtocolError("invalid base64 payload");
  std::size_t padding = 0;
  if (text.back() == '=') ++padding;
  if (text.size() > 1 && text[text.size() - 2] == '=') ++padding;
  out.resize(static_cast<std::size_t>(n) - padding);
  return out;
}

nlohmann::json request_to_wire(const ChatRequest& request, const EndpointConfig& endpoint) {
  nlohmann::json body = endpoint.extra.is_object() ? endpoint.extra : nlohmann::json::object();
  body["model"] = request.model_name.empty() ? endpoint.model : request.model_name;
  auto& messages = body["messages"] = nlohmann::json::array();
  for (const auto& m : request.messages) {
    nlohmann::json content = nlohmann::json::array();
    content.push_back({{"type", "text"}, {"text", m.text}});
    if (m.image) {
      content.push_back({{"type", "image"},
                         {"image_data", "data:" + m.image->mime_type() + ";base64," +
                                            base64_encode(m.image->image_bytes())}});
    }
    messages.push_back({{"role", to_string(m.role)}, {"content", std::move(content)}});
  }
  body["temperature"] = request.temperature;
  body["max_tokens"] = request.max_tokens;
  body["logprobs"] = request.want_logprobs;
  if (request.want_logprobs) body["top_logprobs"] = endpoint.top_logprobs;
  return body;
}

ChatRequest request_from_wire(const nlohmann::json& body) {
  ChatRequest request;
  try {
    request.model_name = body.at("model").get<std::string>();
    request.temperature = body.at("temperature").get<double>();
    request.max_tokens = body.at("max_tokens").get<int>();
    request.want_logprobs = body.value("logprobs", false);
    for (const auto& m : body.at("messages")) {
      ChatMessage message;
      message.role = role_from_string(m.at("role").get<std::string>());
      for (const auto& part : m.at("content")) {
        const auto type = part.at("type").get<std::string>();
        if (type == "text") {
          message.text += part.at("text").get<std::string>();
        } else if (type == "image") {
          const auto uri = part.at("image_data").get<std::string>();
          const auto semi = uri.find(";base64,");
          if (uri.rfind("data:", 0) != 0 || semi == std::string::npos) {
            throw ProtocolError("image_data is not a base64 data URI");
          }
          message.image = Document("wire", base64_decode(std::string_view(uri).substr(semi + 8)),
                                   uri.substr(5, semi - 5));
        }
      }
      request.messages.push_back(std::move(message));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("malformed request body: ") + e.what());
  }
  return request;
}

ChatResponse response_from_wire(const nlohmann::json& body) {
  try {
    const auto& choice = body.at("choices").at(0);
    ChatResponse response;
    const auto& content = choice.at("message").at("content");
    if (content.is_string()) {
      response.text = content.get<std::string>();
    } else if (content.is_array()) {
      for (const auto& part : content) {
        if (part.value("type", "") == "text") response.text += part.at("text").get<std::string>();
      }
    } else if (!content.is_null()) {
      throw ProtocolError("message content has unexpected type");
    }
    response.finish_reason = finish_from_wire(choice.value("finish_reason", nlohmann::json()));
    if (response.finish_reason == FinishReason::kError) {
      response.error_detail = "finish_reason " + choice.at("finish_reason").dump();
    }
    return response;
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("malformed completion body: ") + e.what());
  }
}

TokenDistribution distribution_from_wire(const nlohmann::json& body) {
  const nlohmann::json* top = nullptr;
  try {
    const auto& logprobs = body.at("choices").at(0).at("logprobs");
    if (!logprobs.is_null()) top = &logprobs.at("content").at(0).at("top_logprobs");
  } catch (const nlohmann::json::exception&) {
    top = nullptr;
  }
  if (top == nullptr || !top->is_array()) {
    throw UnsupportedCapability("endpoint reply carries no top_logprobs");
  }
  TokenDistribution dist;
  std::set<std::string> seen;
  try {
    for (const auto& entry : *top) {
      auto token = entry.at("token").get<std::string>();
      const double p = std::min(1.0, std::exp(entry.at("logprob").get<double>()));
      if (p > 0.0 && seen.insert(token).second) {
        dist.entries.push_back({std::move(token), p});
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("malformed top_logprobs: ") + e.what());
  }
  return dist;
}

HttpBackend::HttpBackend(RetryPolicy policy) : policy_(std::move(policy)) {
  if (!policy_.sleep) {
    policy_.sleep = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  }
}

nlohmann::json HttpBackend::post(const EndpointConfig& endpoint, const nlohmann::json& body) {
  const ParsedUrl url = parse_url(endpoint.url);
  const std::string payload = body.dump();
  httplib::Headers headers;
  if (!endpoint.auth_env.empty()) {
    if (const char* token = std::getenv(endpoint.auth_env.c_str())) {
      headers.emplace("Authorization", std::string("Bearer ") + token);
    }
  }

  const int attempts = std::max(1, endpoint.max_attempts);
  auto backoff = policy_.initial_backoff;
  std::string last_failure;
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    httplib::Client client(url.scheme_host_port);
    const auto timeout = std::chrono::milliseconds(endpoint.timeout_ms);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);

    auto result = client.Post(url.path, headers, payload, "application/json");
    if (!result) {
      last_failure = "transport failure: " + httplib::to_string(result.error());
    } else if (retryable_status(result->status)) {
      last_failure = "HTTP " + std::to_string(result->status);
    } else if (result->status < 200 || result->status >= 300) {
      throw ProtocolError("agent '" + endpoint.role + "' endpoint returned HTTP " +
                          std::to_string(result->status) + ": " + result->body);
    } else {
      try {
        return nlohmann::json::parse(result->body);
      } catch (const nlohmann::json::exception& e) {
        throw ProtocolError("agent '" + endpoint.role + "' endpoint replied with invalid JSON: " +
                            e.what());
      }
    }
    if (attempt < attempts) {
      policy_.sleep(backoff);
      backoff = std::chrono::milliseconds(
          static_cast<long long>(static_cast<double>(backoff.count()) * policy_.multiplier));
    }
  }
  throw TransportError("agent '" + endpoint.role + "' unreachable after " +
                       std::to_string(attempts) + " attempts: " + last_failure);
}

ChatResponse HttpBackend::complete(const EndpointConfig& endpoint, const ChatRequest& request) {
  const auto start = std::chrono::steady_clock::now();
  ChatResponse response = response_from_wire(post(endpoint, request_to_wire(request, endpoint)));
  response.latency_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  return response;
}

TokenDistribution HttpBackend::next_token_distribution(const EndpointConfig& endpoint,
                                                       std::span<const std::string> prefix,
                                                       const ChatRequest& context) {
  if (!endpoint.supports_logprobs) {
    throw UnsupportedCapability("agent '" + endpoint.role + "' endpoint cannot report logprobs");
  }
  ChatRequest request = context;
  request.want_logprobs = true;
  request.max_tokens = 1;
  if (!prefix.empty()) {
    std::string prefill;
    for (const auto& t : prefix) prefill += t;
    request.messages.push_back({MessageRole::kAssistant, std::move(prefill), std::nullopt});
  }
  return distribution_from_wire(post(endpoint, request_to_wire(request, endpoint)));
}

}  // namespace agentdock
