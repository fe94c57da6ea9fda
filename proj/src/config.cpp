// Copyright 2026 The agentdock Authors
// SPDX-License-Identifier: Apache-2.0

#include "agentdock/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "agentdock/error.hpp"
#include "agentdock/text.hpp"

namespace agentdock {
namespace {

using nlohmann::json;

void reject_unknown_keys(const json& object, const std::set<std::string>& allowed,
                         const std::string& where) {
  if (!object.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : object.items()) {
    if (!allowed.contains(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

void apply_endpoint_fields(const json& j, EndpointConfig& e, const std::string& where) {
  reject_unknown_keys(j,
                      {"kind", "url", "model", "timeout_ms", "max_attempts", "auth_env",
                       "temperature", "max_tokens", "top_logprobs", "supports_logprobs", "extra"},
                      where);
  e.kind = j.value("kind", e.kind);
  e.url = j.value("url", e.url);
  e.model = j.value("model", e.model);
  e.timeout_ms = j.value("timeout_ms", e.timeout_ms);
  e.max_attempts = j.value("max_attempts", e.max_attempts);
  e.auth_env = j.value("auth_env", e.auth_env);
  e.temperature = j.value("temperature", e.temperature);
  e.max_tokens = j.value("max_tokens", e.max_tokens);
  e.top_logprobs = j.value("top_logprobs", e.top_logprobs);
  e.supports_logprobs = j.value("supports_logprobs", e.supports_logprobs);
  if (j.contains("extra")) {
    if (!j["extra"].is_object()) throw ConfigError(where + ".extra must be an object");
    e.extra.update(j["extra"]);
  }
}

void check_endpoint(const EndpointConfig& e) {
  const std::string where = "endpoint '" + e.role + "'";
  if (e.kind != "http" && e.kind != "scripted") {
    throw ConfigError(where + " has unknown kind '" + e.kind + "'");
  }
  if (e.kind == "http" && (e.url.empty() || e.model.empty())) {
    throw ConfigError(where + " needs a url and a model");
  }
  if (e.timeout_ms <= 0 || e.max_attempts < 1 || e.max_tokens <= 0 || e.temperature < 0 ||
      e.top_logprobs < 1) {
    throw ConfigError(where + " has an out-of-range setting");
  }
}

}  // namespace

PipelineConfig config_from_json(const json& doc, const std::filesystem::path& base_dir,
                                RetryPolicy retry) {
  try {
    reject_unknown_keys(doc, {"endpoints", "script", "router", "mask", "stress_turns",
                              "debate_turns", "refinement"},
                        "config");
    PipelineConfig config;

    if (doc.contains("router")) {
      const json& r = doc["router"];
      reject_unknown_keys(r, {"min_prob", "max_new_tokens", "temperature", "end_tokens"}, "router");
      config.decode.min_prob = r.value("min_prob", config.decode.min_prob);
      config.decode.max_new_tokens = r.value("max_new_tokens", config.decode.max_new_tokens);
      config.decode.temperature = r.value("temperature", config.decode.temperature);
      if (r.contains("end_tokens")) {
        config.decode.end_tokens = r["end_tokens"].get<std::vector<std::string>>();
      }
    }
    if (doc.contains("mask")) {
      const json& m = doc["mask"];
      reject_unknown_keys(m, {"threshold", "token"}, "mask");
      config.mask.threshold = m.value("threshold", config.mask.threshold);
      config.mask.mask_token = m.value("token", config.mask.mask_token);
    }
    if (doc.contains("refinement")) {
      const json& r = doc["refinement"];
      reject_unknown_keys(r, {"extra_punctuation"}, "refinement");
      config.refinement.extra_punctuation =
          to_code_points(r.value("extra_punctuation", std::string()));
    }
    config.stress_turns = doc.value("stress_turns", config.stress_turns);
    config.debate_turns = doc.value("debate_turns", config.debate_turns);

    const json endpoints = doc.value("endpoints", json::object());
    if (!endpoints.is_object()) throw ConfigError("endpoints must be an object");
    EndpointConfig base;
    if (endpoints.contains("default")) apply_endpoint_fields(endpoints["default"], base, "endpoints.default");

    const auto roles = required_roles();
    for (const auto& [role, value] : endpoints.items()) {
      if (role != "default" && std::find(roles.begin(), roles.end(), role) == roles.end()) {
        throw ConfigError("unknown role '" + role + "' in endpoints");
      }
    }

    std::shared_ptr<ScriptedBackend> scripted;
    std::shared_ptr<HttpBackend> http;
    for (const auto& role : roles) {
      EndpointConfig e = base;
      e.role = role;
      if (endpoints.contains(role)) apply_endpoint_fields(endpoints[role], e, "endpoints." + role);
      check_endpoint(e);

      std::shared_ptr<Backend> backend;
      if (e.kind == "scripted") {
        if (!scripted) {
          if (!doc.contains("script")) {
            throw ConfigError("scripted endpoints need a top-level \"script\" path");
          }
          std::filesystem::path script_path = doc["script"].get<std::string>();
          if (script_path.is_relative()) script_path = base_dir / script_path;
          try {
            scripted = std::make_shared<ScriptedBackend>(Script::load(script_path));
          } catch (const Error& err) {
            throw ConfigError("cannot load script " + script_path.string() + ": " + err.what());
          }
        }
        backend = scripted;
      } else {
        if (!http) http = std::make_shared<HttpBackend>(retry);
        backend = http;
      }
      config.endpoints.emplace(role, Endpoint{std::move(e), std::move(backend)});
    }

    config.validate();
    return config;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
}

PipelineConfig load_config(const std::filesystem::path& path, RetryPolicy retry) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return config_from_json(doc, path.parent_path(), std::move(retry));
}

}  // namespace agentdock
