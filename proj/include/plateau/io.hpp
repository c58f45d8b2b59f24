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
/*
 * Tabular outputs. Every table is UTF-8 CSV with LF line endings, a fixed
 * header and doubles printed with %.15g, so reruns of the same config are
 * byte-identical.
 */
#pragma once

#include "plateau/experiments.hpp"

#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace plateau {

class IoError : public Error {
  public:
    using Error::Error;
};

inline constexpr std::string_view kSweepHeader =
    "experiment,n,g,t,axis,k_param,cost,samples,value,std_error,seed";
inline constexpr std::string_view kLandscapeHeader = "epsilon,cost_value,n,g,t,seed";
inline constexpr std::string_view kOracleHeader =
    "label,n,k_param,samples,mc_variance,mc_variance_se,analytic_variance,mc_mean,"
    "mc_mean_se,pass,detail";
inline constexpr std::string_view kIdentityHeader =
    "identity,dim,samples,seed,lhs_re,lhs_im,rhs_re,rhs_im,se_re,se_im,max_abs_delta,"
    "max_z,pass";
inline constexpr std::string_view kOtocHeader =
    "t,g,n,mean_otoc_real,std_error,haar_floor,haar_floor_se,samples,seed";
inline constexpr std::string_view kDesignHeader =
    "g,t,n,frame_potential,frame_potential_se,f_minus_2,scrambler_variance,"
    "scrambler_variance_se,haar_variance,haar_variance_se,variance_ratio,"
    "variance_ratio_se,samples,seed";

/// %.15g, with "nan"/"inf"/"-inf" for non-finite values.
[[nodiscard]] std::string format_double(double x);

void write_sweep_csv(std::ostream &out, const std::vector<SweepRow> &rows);
void write_landscape_csv(std::ostream &out, const std::vector<LandscapeCut> &cuts);
void write_oracle_csv(std::ostream &out, const std::vector<OracleReport> &rows);
void write_identity_csv(std::ostream &out, const std::vector<IdentityReport> &rows);
void write_otoc_csv(std::ostream &out, const std::vector<OtocRow> &rows);
void write_design_csv(std::ostream &out, const std::vector<DesignRow> &rows);

/// Readers check the header and the field count of every line; errors
/// carry the 1-based line number.
[[nodiscard]] std::vector<SweepRow> read_sweep_csv(std::istream &in);
[[nodiscard]] std::vector<LandscapeRow> read_landscape_csv(std::istream &in);

/// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path &path, std::string_view contents);

struct RunManifest {
    std::string command;
    ExperimentConfig config;
    std::chrono::system_clock::time_point started;
    std::chrono::system_clock::time_point finished;
    double wall_seconds = 0.0;
    std::vector<std::string> outputs;
    bool checks_passed = true;
    nlohmann::json extra = nlohmann::json::object(); ///< experiment-specific records

    [[nodiscard]] nlohmann::json to_json() const;
};

/// ISO 8601 UTC with second resolution.
[[nodiscard]] std::string format_timestamp(std::chrono::system_clock::time_point tp);

} // namespace plateau
