// Copyright 2026 The agentdock Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "agentdock/metrics.hpp"
#include "agentdock/pipeline.hpp"

namespace agentdock {

struct DatasetRecord {
  std::string id;
  std::filesystem::path image_path;
  std::string question;
  std::optional<std::vector<std::string>> answers;
};

/// Reads {"id", "image_path", "question", "answers"?} lines. Relative image
/// paths resolve against base_dir. Throws ParseError on malformed lines,
/// duplicate ids or an empty answers list. Image files are not opened here.
std::vector<DatasetRecord> read_dataset(std::istream& in, const std::filesystem::path& base_dir);
std::vector<DatasetRecord> read_dataset(const std::filesystem::path& path);

struct EvalResult {
  std::string id;
  std::string answer;
  std::optional<double> anls;
  std::vector<Stage> stage_path;
  std::array<double, kStageCount> timings_ms{};
  std::set<TraceFlag> flags;
  std::string error;  // empty on success
  RunActivation activation;
};

nlohmann::json to_json(const EvalResult& result);

struct EvalOptions {
  std::size_t parallel = 0;  // 0: one worker per available processor
  bool lite = false;
};

struct EvalReport {
  std::vector<EvalResult> results;  // dataset order
  std::optional<double> corpus_anls;  // over records with gold answers
  ActivationStats stats;
};

/// Runs every record on a bounded worker pool. A failing record scores 0
/// with its error recorded; the batch continues.
EvalReport evaluate(const std::vector<DatasetRecord>& dataset, const PipelineConfig& config,
                    const EvalOptions& options = {});

struct RunCommand {
  std::filesystem::path config;
  std::string question;
  std::filesystem::path image;
  bool lite = false;
  std::optional<std::filesystem::path> trace;
};

struct EvalCommand {
  std::filesystem::path config;
  std::filesystem::path dataset;
  std::filesystem::path out;
  std::size_t parallel = 0;
  bool lite = false;
};

/// Exit status 0 on success, 1 on a pipeline or I/O failure, 2 on a
/// configuration or dataset error.
int cmd_run(const RunCommand& cmd, std::ostream& out, std::ostream& err);
int cmd_eval(const EvalCommand& cmd, std::ostream& out, std::ostream& err);
int cmd_trace_show(const std::filesystem::path& path, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to a command.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace agentdock
