// Copyright 2026 The agentdock Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace agentdock {

struct PipelineTrace;

/// Unit-cost edit distance over Unicode scalar values.
std::size_t levenshtein(std::string_view a, std::string_view b);
std::size_t levenshtein(std::u32string_view a, std::u32string_view b);

inline constexpr double kAnlsThreshold = 0.5;

/// Normalized Levenshtein similarity after lowercasing and trimming both
/// sides. Two empty strings score 1.
double normalized_similarity(std::string_view prediction, std::string_view gold);

/// Best thresholded similarity over the gold answers. Scores below the
/// threshold count as 0. Throws InvalidArgument when golds is empty.
double anls_single(std::string_view prediction, std::span<const std::string> golds,
                   double threshold = kAnlsThreshold);

bool exact_match(std::string_view prediction, std::span<const std::string> golds);

struct EvalRecord {
  std::string question_id;
  std::string prediction;
  std::vector<std::string> gold_answers;
};

/// Mean anls_single in record order. Throws EmptyCorpus on no records.
double anls_corpus(std::span<const EvalRecord> records, double threshold = kAnlsThreshold);

/// Reads {"id", "prediction", "answers"} lines; blank lines are skipped.
/// Throws ParseError naming the line on malformed input.
std::vector<EvalRecord> read_eval_records(std::istream& in);
std::vector<EvalRecord> read_eval_records(const std::filesystem::path& path);

struct ActivationStats {
  std::size_t total = 0;
  std::size_t disagreements = 0;    // reached the stress test
  std::size_t stress_failures = 0;  // reached the debate
  std::size_t debates = 0;          // same runs as stress_failures
  std::size_t full_debates = 0;     // debates with at least one argued turn

  double disagreement_rate = 0.0;    // disagreements / total
  double stress_failure_rate = 0.0;  // stress_failures / disagreements
  double debate_rate = 0.0;          // debates / total
};

/// Counts per run which gated stages were entered. Throws EmptyCorpus on no
/// traces.
ActivationStats activation_stats(std::span<const PipelineTrace> traces);

/// Same counting from raw per-run facts, for callers without full traces.
struct RunActivation {
  bool stress_entered = false;
  bool debate_entered = false;
  std::size_t debate_turns = 0;
};

ActivationStats activation_stats(std::span<const RunActivation> runs);

}  // namespace agentdock
