// Copyright 2026 The agentdock Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "agentdock/backend.hpp"
#include "agentdock/error.hpp"
#include "agentdock/execution.hpp"
#include "agentdock/metrics.hpp"
#include "agentdock/refinement.hpp"
#include "agentdock/router.hpp"
#include "agentdock/types.hpp"
#include "agentdock/verification.hpp"

namespace agentdock {

enum class Stage { kS1 = 0, kS2, kS3, kS4, kS5 };

inline constexpr std::size_t kStageCount = 5;

const char* to_string(Stage stage);
std::optional<Stage> stage_from_string(std::string_view s);

enum class TraceFlag { kUnionFallback, kRefinementRejected, kDebateEarlyExit, kThinkerEmptyAnswer };

const char* to_string(TraceFlag flag);
std::optional<TraceFlag> trace_flag_from_string(std::string_view s);

/// Every role a full run may call.
std::vector<std::string> required_roles();

struct PipelineConfig {
  EndpointRegistry endpoints;
  DecodeConfig decode;
  MaskConfig mask;
  RefinementConfig refinement;
  int stress_turns = 2;
  int debate_turns = 3;

  /// Throws ConfigError on an unresolvable role or out-of-range setting.
  void validate() const;
};

struct TraceAnswers {
  std::optional<Answer> thinker;  // a_T
  std::optional<Answer> expert;   // a_E
  std::optional<Answer> stress;   // a_D
  std::optional<Answer> debate;   // a_C
  std::optional<Answer> final;    // a_F

  bool operator==(const TraceAnswers&) const = default;
};

/// The sealed record of one run. Partial when attached to a PipelineError.
struct PipelineTrace {
  std::string question_id;
  std::string document_id;
  bool lite = false;
  std::vector<Stage> stage_path;
  TraceAnswers answers;
  ReasoningPath reasoning;
  ReasoningPath masked_reasoning;
  bool masked = false;
  std::size_t answer_occurrences = 0;
  ActivationVector activation;
  ExecutionPlan plan;
  std::vector<ChainStep> chain;
  std::optional<StressOutcome> stress;
  std::optional<DebateOutcome> debate;
  std::optional<RefinementResult> refinement;
  std::array<double, kStageCount> timings_ms{};
  std::set<TraceFlag> flags;

  bool visited(Stage stage) const;
  bool has_flag(TraceFlag flag) const { return flags.contains(flag); }

  bool operator==(const PipelineTrace&) const = default;
};

/// Stress and debate entry facts for activation statistics.
RunActivation run_activation(const PipelineTrace& trace);

nlohmann::json to_json(const PipelineTrace& trace);
/// Throws ParseError on a malformed document.
PipelineTrace trace_from_json(const nlohmann::json& doc);

/// A stage failure. Carries the underlying error kind and the trace of the
/// stages completed before it.
class PipelineError : public Error {
 public:
  PipelineError(Stage stage, ErrorKind cause, const std::string& what, PipelineTrace trace)
      : Error(cause, what), stage_(stage), trace_(std::move(trace)) {}

  Stage stage() const noexcept { return stage_; }
  const PipelineTrace& trace() const noexcept { return trace_; }

 private:
  Stage stage_;
  PipelineTrace trace_;
};

struct PipelineResult {
  Answer answer;
  PipelineTrace trace;
};

/// The gated five-stage run: S3 only on thinker/expert disagreement, S4
/// only on a failed stress test, S5 always.
PipelineResult run(const Question& question, const Document& doc, const PipelineConfig& config);

/// Stages 1, 2 and 5 only; the expert answer goes straight to refinement.
PipelineResult run_lite(const Question& question, const Document& doc,
                        const PipelineConfig& config);

}  // namespace agentdock
