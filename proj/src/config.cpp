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
#include "plateau/config.hpp"

#include <array>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <utility>

namespace plateau {
namespace {

using nlohmann::json;

template <typename Enum, std::size_t N>
Enum parse_named(std::string_view s, const std::array<Enum, N> &values, const char *what) {
    for (Enum v : values) {
        if (to_string(v) == s) {
            return v;
        }
    }
    std::string allowed;
    for (Enum v : values) {
        allowed += (allowed.empty() ? "" : ", ") + std::string(to_string(v));
    }
    throw ConfigError("unknown " + std::string(what) + " '" + std::string(s) +
                      "' (expected one of: " + allowed + ")");
}

const std::set<std::string> kCommonKeys{
    "experiment", "n_list",  "g_list",          "t_list",     "samples",
    "master_seed", "k_param", "cost",           "ensemble_axis", "target_ensemble",
    "observable", "schedule", "threads",        "output_path"};

std::set<std::string> extra_keys(ExperimentKind kind) {
    switch (kind) {
    case ExperimentKind::landscape_cut: return {"epsilon_grid", "runs"};
    case ExperimentKind::thm1_oracle: return {"instances"};
    case ExperimentKind::thm3_oracle: return {"n_dilation"};
    case ExperimentKind::haar_identity: return {"identities"};
    case ExperimentKind::design_proximity: return {"frame_samples"};
    default: return {};
    }
}

std::string field_error(const std::string &key, const std::string &msg) {
    return "field '" + key + "': " + msg;
}

template <typename T>
T get_as(const json &j, const std::string &key) {
    try {
        if constexpr (std::is_same_v<T, std::string>) {
            if (!j.is_string()) {
                throw ConfigError(field_error(key, "expected a string"));
            }
            return j.get<std::string>();
        } else if constexpr (std::is_floating_point_v<T>) {
            if (!j.is_number()) {
                throw ConfigError(field_error(key, "expected a number"));
            }
            return j.get<T>();
        } else {
            if (!j.is_number_integer()) {
                throw ConfigError(field_error(key, "expected an integer"));
            }
            if constexpr (std::is_unsigned_v<T>) {
                if (j.is_number_unsigned()) {
                    return static_cast<T>(j.get<std::uint64_t>());
                }
                if (j.get<std::int64_t>() < 0) {
                    throw ConfigError(field_error(key, "must be non-negative"));
                }
            }
            return static_cast<T>(j.get<std::int64_t>());
        }
    } catch (const json::exception &e) {
        throw ConfigError(field_error(key, e.what()));
    }
}

template <typename T>
std::vector<T> get_list(const json &j, const std::string &key, bool allow_scalar) {
    std::vector<T> out;
    if (allow_scalar && !j.is_array()) {
        out.push_back(get_as<T>(j, key));
        return out;
    }
    if (!j.is_array()) {
        throw ConfigError(field_error(key, "expected an array"));
    }
    for (const auto &item : j) {
        out.push_back(get_as<T>(item, key));
    }
    return out;
}

int line_of(std::string_view text, std::size_t byte, int &column) {
    int line = 1;
    column = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return line;
}

} // namespace

ExperimentKind parse_experiment_kind(std::string_view s) {
    return parse_named(s,
                       std::array{ExperimentKind::landscape_cut, ExperimentKind::variance_sweep,
                                  ExperimentKind::mean_gradient, ExperimentKind::thm1_oracle,
                                  ExperimentKind::thm3_oracle, ExperimentKind::haar_identity,
                                  ExperimentKind::otoc_decay, ExperimentKind::design_proximity},
                       "experiment");
}

CostKind parse_cost_kind(std::string_view s) {
    return parse_named(s,
                       std::array{CostKind::generic, CostKind::hst, CostKind::lhst,
                                  CostKind::lhst_local_0, CostKind::gen},
                       "cost");
}

EnsembleAxis parse_ensemble_axis(std::string_view s) {
    return parse_named(s, std::array{EnsembleAxis::targets, EnsembleAxis::ansatze},
                       "ensemble_axis");
}

TargetEnsemble parse_target_ensemble(std::string_view s) {
    return parse_named(s, std::array{TargetEnsemble::scrambler, TargetEnsemble::haar},
                       "target_ensemble");
}

Observable parse_observable(std::string_view s) {
    return parse_named(
        s, std::array{Observable::zero_projector, Observable::z0, Observable::identity},
        "observable");
}

HaarIdentity parse_haar_identity(std::string_view s) {
    return parse_named(s,
                       std::array{HaarIdentity::first_moment, HaarIdentity::second_moment,
                                  HaarIdentity::subspace_first, HaarIdentity::subspace_second},
                       "identity");
}

AngleSchedule parse_angle_schedule(std::string_view s) {
    return parse_named(s, std::array{AngleSchedule::per_period, AngleSchedule::shared},
                       "schedule");
}

ExperimentConfig default_config(ExperimentKind kind) {
    ExperimentConfig cfg;
    cfg.experiment = kind;
    switch (kind) {
    case ExperimentKind::landscape_cut:
        cfg.cost = CostKind::lhst;
        cfg.n_list = {6};
        for (int i = 0; i <= 60; ++i) {
            cfg.epsilon_grid.push_back(-std::numbers::pi + i * std::numbers::pi / 30.0);
        }
        break;
    case ExperimentKind::variance_sweep:
    case ExperimentKind::design_proximity:
        cfg.cost = CostKind::lhst_local_0;
        break;
    case ExperimentKind::mean_gradient:
        cfg.cost = CostKind::generic;
        cfg.target_ensemble = TargetEnsemble::haar;
        cfg.k_param = 1;
        break;
    case ExperimentKind::thm1_oracle:
        cfg.cost = CostKind::generic;
        cfg.samples = 20000;
        cfg.n_list = {2, 3};
        break;
    case ExperimentKind::thm3_oracle:
        cfg.cost = CostKind::gen;
        cfg.samples = 20000;
        break;
    case ExperimentKind::haar_identity:
        cfg.samples = 20000;
        break;
    case ExperimentKind::otoc_decay:
        cfg.n_list = {4};
        break;
    }
    return cfg;
}

ExperimentConfig config_from_json(const json &j, std::optional<ExperimentKind> fallback) {
    if (!j.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    ExperimentKind kind{};
    if (j.contains("experiment")) {
        kind = parse_experiment_kind(get_as<std::string>(j.at("experiment"), "experiment"));
        if (fallback && *fallback != kind) {
            throw ConfigError(field_error("experiment", "config selects '" +
                                                            std::string(to_string(kind)) +
                                                            "' but the command runs '" +
                                                            std::string(to_string(*fallback)) + "'"));
        }
    } else if (fallback) {
        kind = *fallback;
    } else {
        throw ConfigError("missing required field 'experiment'");
    }

    const auto extras = extra_keys(kind);
    for (const auto &[key, _] : j.items()) {
        if (kCommonKeys.count(key) == 0 && extras.count(key) == 0) {
            const bool elsewhere = key == "epsilon_grid" || key == "runs" || key == "instances" ||
                                   key == "n_dilation" || key == "identities" ||
                                   key == "frame_samples";
            throw ConfigError(field_error(key, elsewhere ? "does not apply to experiment '" +
                                                               std::string(to_string(kind)) + "'"
                                                         : "unknown key"));
        }
    }

    ExperimentConfig cfg = default_config(kind);
    for (const auto &[key, value] : j.items()) {
        if (key == "experiment") {
            continue;
        } else if (key == "n_list") {
            cfg.n_list = get_list<int>(value, key, true);
        } else if (key == "g_list") {
            cfg.g_list = get_list<double>(value, key, true);
        } else if (key == "t_list") {
            cfg.t_list = get_list<int>(value, key, true);
        } else if (key == "samples") {
            cfg.samples = get_as<std::size_t>(value, key);
        } else if (key == "master_seed") {
            cfg.master_seed = get_as<std::uint64_t>(value, key);
        } else if (key == "k_param") {
            cfg.k_param = get_as<std::size_t>(value, key);
        } else if (key == "cost") {
            cfg.cost = parse_cost_kind(get_as<std::string>(value, key));
        } else if (key == "ensemble_axis") {
            cfg.axis = parse_ensemble_axis(get_as<std::string>(value, key));
        } else if (key == "target_ensemble") {
            cfg.target_ensemble = parse_target_ensemble(get_as<std::string>(value, key));
        } else if (key == "observable") {
            cfg.observable = parse_observable(get_as<std::string>(value, key));
        } else if (key == "schedule") {
            cfg.schedule = parse_angle_schedule(get_as<std::string>(value, key));
        } else if (key == "threads") {
            cfg.threads = get_as<unsigned>(value, key);
        } else if (key == "output_path") {
            cfg.output_path = get_as<std::string>(value, key);
        } else if (key == "epsilon_grid") {
            cfg.epsilon_grid = get_list<double>(value, key, false);
        } else if (key == "runs") {
            cfg.runs = get_as<std::size_t>(value, key);
        } else if (key == "instances") {
            cfg.instances = get_as<std::size_t>(value, key);
        } else if (key == "n_dilation") {
            cfg.n_dilation = get_as<int>(value, key);
        } else if (key == "identities") {
            cfg.identities.clear();
            for (const auto &name : get_list<std::string>(value, key, false)) {
                cfg.identities.push_back(parse_haar_identity(name));
            }
        } else if (key == "frame_samples") {
            cfg.frame_samples = get_as<std::size_t>(value, key);
        }
    }
    try {
        cfg.validate();
    } catch (const InvariantError &e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

ExperimentConfig parse_config(std::string_view text, std::string_view source,
                              std::optional<ExperimentKind> fallback) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        int column = 0;
        const int line = line_of(text, e.byte, column);
        throw ConfigError(std::string(source) + ":" + std::to_string(line) + ":" +
                          std::to_string(column) + ": malformed JSON");
    }
    try {
        return config_from_json(j, fallback);
    } catch (const ConfigError &e) {
        throw ConfigError(std::string(source) + ": " + e.what());
    }
}

ExperimentConfig load_config(const std::filesystem::path &path,
                             std::optional<ExperimentKind> fallback) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot read config file '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path.string(), fallback);
}

json config_to_json(const ExperimentConfig &cfg) {
    json j;
    j["experiment"] = to_string(cfg.experiment);
    j["n_list"] = cfg.n_list;
    j["g_list"] = cfg.g_list;
    j["t_list"] = cfg.t_list;
    j["samples"] = cfg.samples;
    j["master_seed"] = cfg.master_seed;
    j["k_param"] = cfg.k_param;
    j["cost"] = to_string(cfg.cost);
    j["ensemble_axis"] = to_string(cfg.axis);
    j["target_ensemble"] = to_string(cfg.target_ensemble);
    j["observable"] = to_string(cfg.observable);
    j["schedule"] = to_string(cfg.schedule);
    j["threads"] = cfg.threads;
    j["output_path"] = cfg.output_path;
    switch (cfg.experiment) {
    case ExperimentKind::landscape_cut:
        j["epsilon_grid"] = cfg.epsilon_grid;
        j["runs"] = cfg.runs;
        break;
    case ExperimentKind::thm1_oracle:
        j["instances"] = cfg.instances;
        break;
    case ExperimentKind::thm3_oracle:
        j["n_dilation"] = cfg.n_dilation;
        break;
    case ExperimentKind::haar_identity: {
        auto &ids = j["identities"] = json::array();
        for (auto id : cfg.identities) {
            ids.push_back(to_string(id));
        }
        break;
    }
    case ExperimentKind::design_proximity:
        j["frame_samples"] = cfg.frame_samples;
        break;
    default:
        break;
    }
    return j;
}

} // namespace plateau
