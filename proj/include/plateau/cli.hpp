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
#include "plateau/io.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace plateau {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitCheckFailed = 2;

[[nodiscard]] std::string_view version();

/// Subcommand name ("sweep", "haar-check", ...) of an experiment.
[[nodiscard]] std::string_view command_name(ExperimentKind kind);

struct RunResult {
    RunManifest manifest;
    std::filesystem::path manifest_path;
    bool checks_passed = true;
};

/// Runs cfg, writes <out_dir>/<experiment>.csv and <out_dir>/manifest.json.
/// Checks only fail for thm1_oracle, thm3_oracle and haar_identity.
RunResult run_experiment(const ExperimentConfig &cfg, const std::filesystem::path &out_dir,
                         std::ostream &log);

/// Runs the built-in fast examples; prints one line per check.
[[nodiscard]] bool run_selftest(std::ostream &out);

/// Entry point behind the `plateau` binary. Output directory precedence:
/// --out, then the config's output_path, then $PLATEAU_OUTPUT_DIR, then ".".
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace plateau
