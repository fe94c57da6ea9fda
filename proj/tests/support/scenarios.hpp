// Copyright 2026 The agentdock Authors
// SPDX-License-Identifier: Apache-2.0

// Scripted end-to-end scenarios shared by the pipeline, CLI and acceptance
// tests.

#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "agentdock/pipeline.hpp"
#include "agentdock/scripted_backend.hpp"
#include "agentdock/types.hpp"

namespace agentdock::testing {

/// A minimal PNG payload; never decoded.
std::vector<std::uint8_t> png_bytes();
Document sample_document(std::string id = "page");

/// Writes png_bytes() to `path`.
void write_png(const std::filesystem::path& path);

/// One run's worth of scripted replies. Rules are keyed on `tag`, a marker
/// embedded in the question, and on answer texts, so several scenarios can
/// share a script.
struct Scenario {
  std::string tag = "case";
  std::vector<std::string> steps = {"Locate the totals table.",
                                    "Read the revenue row in the table."};
  std::string thinker_answer = "4.2M";
  std::vector<std::string> route = {"table"};
  std::string expert_answer = "4.2M";

  // Stage 3: one entry per turn the script answers; true means PASS.
  std::vector<bool> stress_verdicts = {true, true};
  std::optional<std::string> stress_revised;  // default: expert_answer

  // Stage 4.
  std::string alternative = "3.9M";
  std::vector<std::string> judge_verdicts = {"CONTINUE", "CONTINUE", "CONTINUE"};
  std::string final_verdict = "ANTITHESIS";

  // Stage 5: the FINAL: text for whichever answer reaches sanity checking;
  // empty means echo it unchanged.
  std::string sanity_final;

  std::string question() const;
};

/// Appends the rules for `s` to `script`.
void add_scenario(Script& script, const Scenario& s);

struct ScriptedSetup {
  PipelineConfig config;
  std::shared_ptr<ScriptedBackend> backend;
};

/// Every required role bound to one scripted backend that records calls.
ScriptedSetup scripted_setup(Script script, bool record_calls = true);

/// Writes `script` and a config binding every role to it into `dir`.
/// Returns the config path.
std::filesystem::path write_scripted_config(const std::filesystem::path& dir, const Script& script,
                                            const nlohmann::json& overrides = nlohmann::json::object());

/// A fresh directory under the system temp directory.
std::filesystem::path temp_dir(const std::string& name);

}  // namespace agentdock::testing
