// Copyright 2026 The agentdock Authors
// SPDX-License-Identifier: Apache-2.0

#include "agentdock/scripted_backend.hpp"

#include <algorithm>
#include <fstream>

#include "agentdock/error.hpp"

namespace agentdock {
namespace {

bool matches(const RuleMatch& m, const ChatRequest& request, bool check_ordinal) {
  if (check_ordinal && m.ordinal && *m.ordinal != request.ordinal) return false;
  if (m.fingerprint && *m.fingerprint != fingerprint(request)) return false;
  if (m.contains.empty() && m.excludes.empty()) return true;
  const std::string text = request.joined_text();
  for (const auto& needle : m.contains) {
    if (text.find(needle) == std::string::npos) return false;
  }
  for (const auto& needle : m.excludes) {
    if (text.find(needle) != std::string::npos) return false;
  }
  return true;
}

FinishReason finish_from_string(const std::string& s) {
  if (s == "stop") return FinishReason::kStop;
  if (s == "length") return FinishReason::kLength;
  if (s == "error") return FinishReason::kError;
  throw ConfigError("unknown finish_reason in script: " + s);
}

RuleMatch match_from_json(const nlohmann::json& j) {
  RuleMatch m;
  if (j.contains("ordinal")) m.ordinal = j.at("ordinal").get<int>();
  if (j.contains("contains")) m.contains = j.at("contains").get<std::vector<std::string>>();
  if (j.contains("excludes")) m.excludes = j.at("excludes").get<std::vector<std::string>>();
  if (j.contains("fingerprint")) m.fingerprint = j.at("fingerprint").get<std::string>();
  return m;
}

nlohmann::json match_to_json(const RuleMatch& m) {
  nlohmann::json j = nlohmann::json::object();
  if (m.ordinal) j["ordinal"] = *m.ordinal;
  if (!m.contains.empty()) j["contains"] = m.contains;
  if (!m.excludes.empty()) j["excludes"] = m.excludes;
  if (m.fingerprint) j["fingerprint"] = *m.fingerprint;
  return j;
}

}  // namespace

Script& Script::respond(std::string role, std::string text, RuleMatch match) {
  ChatResponse response;
  response.text = std::move(text);
  return respond(ResponseRule{std::move(role), std::move(match), std::move(response)});
}

Script& Script::respond(ResponseRule rule) {
  responses_.push_back(std::move(rule));
  return *this;
}

Script& Script::distribution(std::string role, std::vector<std::string> prefix,
                             std::vector<TokenProbability> entries, RuleMatch match) {
  return distribution(DistributionRule{std::move(role), std::move(prefix), std::move(match),
                                       TokenDistribution{std::move(entries)}, std::nullopt});
}

Script& Script::distribution(DistributionRule rule) {
  distributions_.push_back(std::move(rule));
  return *this;
}

const ChatResponse& Script::lookup_response(const ChatRequest& request) const {
  for (const auto& rule : responses_) {
    if (rule.role == request.agent_role && matches(rule.match, request, true)) {
      return rule.response;
    }
  }
  throw UnscriptedRequest("unscripted request: role '" + request.agent_role +
                          "', call " + std::to_string(request.ordinal) +
                          ", fingerprint " + fingerprint(request));
}

const DistributionRule& Script::lookup_distribution(std::span<const std::string> prefix,
                                                    const ChatRequest& context) const {
  for (const auto& rule : distributions_) {
    if (rule.role == context.agent_role &&
        std::equal(rule.prefix.begin(), rule.prefix.end(), prefix.begin(), prefix.end()) &&
        matches(rule.match, context, false)) {
      return rule;
    }
  }
  std::string shown;
  for (const auto& t : prefix) shown += "[" + t + "]";
  throw UnscriptedRequest("unscripted request: role '" + context.agent_role +
                          "' next-token prefix " + (shown.empty() ? "<empty>" : shown));
}

Script Script::from_json(const nlohmann::json& doc) {
  Script script;
  try {
    for (const auto& r : doc.value("responses", nlohmann::json::array())) {
      ResponseRule rule;
      rule.role = r.at("role").get<std::string>();
      rule.match = match_from_json(r);
      rule.response.text = r.value("text", std::string());
      rule.response.finish_reason = finish_from_string(r.value("finish_reason", std::string("stop")));
      rule.response.error_detail = r.value("error_detail", std::string());
      script.respond(std::move(rule));
    }
    for (const auto& d : doc.value("distributions", nlohmann::json::array())) {
      DistributionRule rule;
      rule.role = d.at("role").get<std::string>();
      rule.prefix = d.value("prefix", std::vector<std::string>{});
      rule.match = match_from_json(d);
      if (d.contains("error")) rule.error = d.at("error").get<std::string>();
      for (const auto& e : d.value("entries", nlohmann::json::array())) {
        rule.distribution.entries.push_back(
            {e.at(0).get<std::string>(), e.at(1).get<double>()});
      }
      script.distribution(std::move(rule));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed script: ") + e.what());
  }
  return script;
}

Script Script::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open script file: " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("script " + path.string() + " is not valid JSON: " + e.what());
  }
  return from_json(doc);
}

nlohmann::json Script::to_json() const {
  nlohmann::json doc;
  doc["responses"] = nlohmann::json::array();
  for (const auto& rule : responses_) {
    nlohmann::json r = match_to_json(rule.match);
    r["role"] = rule.role;
    r["text"] = rule.response.text;
    r["finish_reason"] = to_string(rule.response.finish_reason);
    if (!rule.response.error_detail.empty()) r["error_detail"] = rule.response.error_detail;
    doc["responses"].push_back(std::move(r));
  }
  doc["distributions"] = nlohmann::json::array();
  for (const auto& rule : distributions_) {
    nlohmann::json d = match_to_json(rule.match);
    d["role"] = rule.role;
    d["prefix"] = rule.prefix;
    if (rule.error) d["error"] = *rule.error;
    d["entries"] = nlohmann::json::array();
    for (const auto& e : rule.distribution.entries) {
      d["entries"].push_back({e.token, e.probability});
    }
    doc["distributions"].push_back(std::move(d));
  }
  return doc;
}

ChatResponse ScriptedBackend::complete(const EndpointConfig&, const ChatRequest& request) {
  if (record_) {
    const bool has_image = std::any_of(request.messages.begin(), request.messages.end(),
                                       [](const ChatMessage& m) { return m.image.has_value(); });
    record({request.agent_role, request.ordinal, fingerprint(request),
            request.joined_text(), has_image, false, {}});
  }
  return script_.lookup_response(request);
}

TokenDistribution ScriptedBackend::next_token_distribution(const EndpointConfig&,
                                                           std::span<const std::string> prefix,
                                                           const ChatRequest& context) {
  if (record_) {
    record({context.agent_role, context.ordinal, fingerprint(context), context.joined_text(),
            false, true, std::vector<std::string>(prefix.begin(), prefix.end())});
  }
  const DistributionRule& rule = script_.lookup_distribution(prefix, context);
  if (rule.error) throw OracleError(*rule.error);
  return rule.distribution;
}

void ScriptedBackend::record(RecordedCall call) {
  std::lock_guard lock(mu_);
  calls_.push_back(std::move(call));
}

std::vector<RecordedCall> ScriptedBackend::calls() const {
  std::lock_guard lock(mu_);
  return calls_;
}

std::vector<RecordedCall> ScriptedBackend::calls_for(std::string_view role) const {
  std::lock_guard lock(mu_);
  std::vector<RecordedCall> out;
  for (const auto& c : calls_) {
    if (c.role == role && !c.is_distribution) out.push_back(c);
  }
  return out;
}

void ScriptedBackend::clear_calls() {
  std::lock_guard lock(mu_);
  calls_.clear();
}

}  // namespace agentdock
