// Copyright 2026 The Plateau Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include "plateau/experiments.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace plateau {

/// Raised for unreadable, malformed or out-of-range configuration. The
/// message names the offending field, or the line and column of a JSON
/// syntax error.
class ConfigError : public Error {
  public:
    using Error::Error;
};

[[nodiscard]] ExperimentKind parse_experiment_kind(std::string_view s);
[[nodiscard]] CostKind parse_cost_kind(std::string_view s);
[[nodiscard]] EnsembleAxis parse_ensemble_axis(std::string_view s);
[[nodiscard]] TargetEnsemble parse_target_ensemble(std::string_view s);
[[nodiscard]] Observable parse_observable(std::string_view s);
[[nodiscard]] HaarIdentity parse_haar_identity(std::string_view s);
[[nodiscard]] AngleSchedule parse_angle_schedule(std::string_view s);

/// Per-experiment defaults: 500 samples for sweeps, 20000 for the oracle
/// checks, and the cost each experiment supports.
[[nodiscard]] ExperimentConfig default_config(ExperimentKind kind);

/// Builds a validated config from a JSON object. "experiment" is required
/// unless `fallback` is given; unknown keys and keys that do not apply to
/// the experiment are rejected. g_list and t_list also accept a scalar.
[[nodiscard]] ExperimentConfig config_from_json(const nlohmann::json &j,
                                                std::optional<ExperimentKind> fallback = {});

/// Parses JSON text; `source` prefixes diagnostics.
[[nodiscard]] ExperimentConfig parse_config(std::string_view text, std::string_view source,
                                            std::optional<ExperimentKind> fallback = {});

[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path &path,
                                           std::optional<ExperimentKind> fallback = {});

/// Full echo of every field, accepted back by config_from_json.
[[nodiscard]] nlohmann::json config_to_json(const ExperimentConfig &cfg);

} // namespace plateau
