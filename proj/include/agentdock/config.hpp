// Copyright 2026 The agentdock Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <memory>

#include <nlohmann/json.hpp>

#include "agentdock/http_backend.hpp"
#include "agentdock/pipeline.hpp"
#include "agentdock/scripted_backend.hpp"

namespace agentdock {

/// Parses a configuration document. Relative paths (the "script" file) are
/// resolved against base_dir. Every role inherits the "default" endpoint
/// entry and overrides individual fields. Throws ConfigError on unknown
/// keys, unknown roles, missing scripts or invalid values.
PipelineConfig config_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir,
                                RetryPolicy retry = {});

PipelineConfig load_config(const std::filesystem::path& path, RetryPolicy retry = {});

}  // namespace agentdock
