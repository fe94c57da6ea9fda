// Copyright 2026 The agentdock Authors
// SPDX-License-Identifier: Apache-2.0

#include "agentdock/router.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "agentdock/error.hpp"
#include "agentdock/prompts.hpp"
#include "agentdock/text.hpp"

namespace agentdock {

void DecodeConfig::validate() const {
  if (!(min_prob > 0.0 && min_prob < 1.0)) throw InvalidArgument("min_prob must lie in (0, 1)");
  if (max_new_tokens <= 0) throw InvalidArgument("max_new_tokens must be positive");
  if (!(temperature > 0.0)) throw InvalidArgument("temperature must be positive");
}

double DecodeConfig::score_threshold() const { return -std::log(min_prob); }

std::string DecodeCandidate::text() const {
  std::string out;
  for (const auto& t : tokens) out += t;
  return out;
}

bool is_end_of_label(std::string_view token, const DecodeConfig& config) {
  if (std::find(config.end_tokens.begin(), config.end_tokens.end(), token) !=
      config.end_tokens.end()) {
    return true;
  }
  for (char32_t c : to_code_points(token)) {
    if (!is_whitespace(c)) return false;
  }
  return true;
}

std::vector<double> scaled_nll(const TokenDistribution& dist, double temperature) {
  // log q_i = log p_i / T - logsumexp_j(log p_j / T); dividing by the
  // truncated mass first leaves q unchanged, so renormalization is implicit.
  std::vector<double> logits;
  logits.reserve(dist.entries.size());
  double peak = -std::numeric_limits<double>::infinity();
  for (const auto& e : dist.entries) {
    logits.push_back(std::log(e.probability) / temperature);
    peak = std::max(peak, logits.back());
  }
  double sum = 0.0;
  for (double l : logits) sum += std::exp(l - peak);
  const double log_norm = peak + std::log(sum);
  std::vector<double> nll;
  nll.reserve(logits.size());
  for (double l : logits) nll.push_back(std::max(0.0, log_norm - l));
  return nll;
}

namespace {

struct Explorer {
  const NextTokenOracle& oracle;
  const DecodeConfig& config;
  double threshold;
  std::vector<DecodeCandidate> out;
  std::vector<std::string> prefix;

  void explore(double score, bool on_greedy_path) {
    TokenDistribution dist = oracle(prefix);
    if (dist.entries.empty()) {
      throw EmptyDistribution("next-token oracle returned no tokens after " +
                              std::to_string(prefix.size()) + " decoded tokens");
    }
    const std::vector<double> nll = scaled_nll(dist, config.temperature);

    std::size_t greedy = 0;
    for (std::size_t i = 1; i < nll.size(); ++i) {
      if (nll[i] < nll[greedy] ||
          (nll[i] == nll[greedy] && dist.entries[i].token < dist.entries[greedy].token)) {
        greedy = i;
      }
    }

    for (std::size_t i = 0; i < dist.entries.size(); ++i) {
      const double next = score + nll[i];
      const bool greedy_child = on_greedy_path && i == greedy;
      if (next > threshold && !greedy_child) continue;

      prefix.push_back(dist.entries[i].token);
      const bool done = is_end_of_label(prefix.back(), config) ||
                        static_cast<int>(prefix.size()) >= config.max_new_tokens;
      if (done) {
        out.push_back({prefix, next, std::exp(-next), greedy_child});
      } else {
        explore(next, greedy_child);
      }
      prefix.pop_back();
    }
  }
};

}  // namespace

std::vector<DecodeCandidate> turbo_dfs(const NextTokenOracle& oracle, const DecodeConfig& config) {
  config.validate();
  Explorer explorer{oracle, config, config.score_threshold(), {}, {}};
  explorer.explore(0.0, true);
  std::sort(explorer.out.begin(), explorer.out.end(),
            [](const DecodeCandidate& a, const DecodeCandidate& b) {
              if (a.score != b.score) return a.score < b.score;
              return a.tokens < b.tokens;
            });
  return std::move(explorer.out);
}

std::set<AgentKind> decode_agents(std::span<const std::string> tokens) {
  std::string text;
  for (const auto& t : tokens) text += t;
  std::set<AgentKind> agents;
  std::string piece;
  auto flush = [&] {
    if (auto kind = agent_from_label(piece)) agents.insert(*kind);
    piece.clear();
  };
  for (char32_t c : to_code_points(text)) {
    if (c == U',' || is_whitespace(c)) {
      flush();
    } else {
      piece += to_utf8(std::u32string_view(&c, 1));
    }
  }
  flush();
  return agents;
}

std::size_t ActivationVector::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), true));
}

std::vector<AgentKind> ActivationVector::active() const {
  std::vector<AgentKind> out;
  for (AgentKind kind : kAllAgents) {
    if (test(kind)) out.push_back(kind);
  }
  return out;
}

ActivationVector extract_activation(std::span<const DecodeCandidate> candidates,
                                    const DecodeConfig& config) {
  ActivationVector v;
  v.provenance.assign(candidates.begin(), candidates.end());
  for (const auto& c : candidates) {
    if (c.probability < config.min_prob) continue;
    std::span<const std::string> tokens(c.tokens);
    // The closing end-of-label token is kept in candidates but is not label text.
    if (!tokens.empty() && is_end_of_label(tokens.back(), config)) {
      tokens = tokens.first(tokens.size() - 1);
    }
    for (AgentKind kind : decode_agents(tokens)) v.bits[index_of(kind)] = true;
  }
  if (v.count() == 0) {
    v.bits[index_of(AgentKind::kOther)] = true;
    v.fallback = true;
  }
  return v;
}

ActivationVector route(Session& session, const Question& question, const Document& doc,
                       const ReasoningPath& path, const DecodeConfig& config,
                       std::string_view router_role) {
  const ChatRequest request = prompts::routing(question, doc, path);
  NextTokenOracle oracle = [&](std::span<const std::string> prefix) {
    return session.next_token_distribution(router_role, prefix, request);
  };
  const auto candidates = turbo_dfs(oracle, config);
  return extract_activation(candidates, config);
}

}  // namespace agentdock
