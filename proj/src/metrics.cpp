// Copyright 2026 The agentdock Authors
// SPDX-License-Identifier: Apache-2.0

#include "agentdock/metrics.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include <nlohmann/json.hpp>

#include "agentdock/error.hpp"
#include "agentdock/pipeline.hpp"
#include "agentdock/text.hpp"

namespace agentdock {

std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diagonal + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diagonal = up;
    }
  }
  return row[b.size()];
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  return levenshtein(to_code_points(a), to_code_points(b));
}

double normalized_similarity(std::string_view prediction, std::string_view gold) {
  const std::u32string p = to_code_points(lowercase_trim(prediction));
  const std::u32string g = to_code_points(lowercase_trim(gold));
  const std::size_t longest = std::max(p.size(), g.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(levenshtein(p, g)) / static_cast<double>(longest);
}

double anls_single(std::string_view prediction, std::span<const std::string> golds,
                   double threshold) {
  if (golds.empty()) throw InvalidArgument("ANLS needs at least one gold answer");
  double best = 0.0;
  for (const auto& gold : golds) {
    const double nls = normalized_similarity(prediction, gold);
    if (nls >= threshold) best = std::max(best, nls);
  }
  return best;
}

bool exact_match(std::string_view prediction, std::span<const std::string> golds) {
  const std::string p = lowercase_trim(prediction);
  return std::any_of(golds.begin(), golds.end(),
                     [&](const std::string& g) { return lowercase_trim(g) == p; });
}

double anls_corpus(std::span<const EvalRecord> records, double threshold) {
  if (records.empty()) throw EmptyCorpus("ANLS over an empty corpus");
  double sum = 0.0;
  for (const auto& r : records) sum += anls_single(r.prediction, r.gold_answers, threshold);
  return sum / static_cast<double>(records.size());
}

std::vector<EvalRecord> read_eval_records(std::istream& in) {
  std::vector<EvalRecord> records;
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    if (trim(line).empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      EvalRecord r{j.at("id").get<std::string>(), j.at("prediction").get<std::string>(),
                   j.at("answers").get<std::vector<std::string>>()};
      if (r.gold_answers.empty()) throw ParseError("empty answers list");
      records.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw ParseError("eval record line " + std::to_string(number) + ": " + e.what());
    }
  }
  return records;
}

std::vector<EvalRecord> read_eval_records(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  return read_eval_records(in);
}

ActivationStats activation_stats(std::span<const RunActivation> runs) {
  if (runs.empty()) throw EmptyCorpus("activation statistics over no runs");
  ActivationStats s;
  s.total = runs.size();
  for (const auto& r : runs) {
    s.disagreements += r.stress_entered ? 1 : 0;
    s.stress_failures += r.debate_entered ? 1 : 0;
    s.full_debates += (r.debate_entered && r.debate_turns > 0) ? 1 : 0;
  }
  s.debates = s.stress_failures;
  const auto total = static_cast<double>(s.total);
  s.disagreement_rate = static_cast<double>(s.disagreements) / total;
  s.stress_failure_rate = s.disagreements == 0 ? 0.0
                                               : static_cast<double>(s.stress_failures) /
                                                     static_cast<double>(s.disagreements);
  s.debate_rate = static_cast<double>(s.debates) / total;
  return s;
}

ActivationStats activation_stats(std::span<const PipelineTrace> traces) {
  std::vector<RunActivation> runs;
  runs.reserve(traces.size());
  for (const auto& t : traces) runs.push_back(run_activation(t));
  return activation_stats(runs);
}

}  // namespace agentdock
