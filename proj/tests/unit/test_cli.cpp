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
#include "plateau/cli.hpp"

#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace plateau;
using Catch::Matchers::ContainsSubstring;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "plateau");
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

class TempDir {
  public:
    explicit TempDir(const std::string &name)
        : path_(std::filesystem::temp_directory_path() / name) {
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    [[nodiscard]] const std::filesystem::path &path() const { return path_; }

  private:
    std::filesystem::path path_;
};

void write(const std::filesystem::path &p, const std::string &text) { std::ofstream(p) << text; }

} // namespace

TEST_CASE("selftest passes") {
    const auto r = run({"selftest"});
    CHECK(r.code == kExitOk);
    CHECK_THAT(r.out, ContainsSubstring("PASS"));
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("sweep writes CSV and manifest, and reruns are byte-identical") {
    TempDir dir("plateau_cli_sweep");
    const auto cfg = dir.path() / "c.json";
    write(cfg, R"({"experiment": "variance_sweep", "n_list": [2, 3], "g_list": 1,
                  "t_list": 5, "samples": 100, "master_seed": 1})");
    const auto first = run({"sweep", "--config", cfg.string(), "--out", (dir.path() / "a").string()});
    REQUIRE(first.code == kExitOk);
    const auto second =
        run({"sweep", "--config", cfg.string(), "--out", (dir.path() / "b").string(), "--threads", "2"});
    REQUIRE(second.code == kExitOk);
    const std::string csv = slurp(dir.path() / "a" / "variance_sweep.csv");
    CHECK(csv == slurp(dir.path() / "b" / "variance_sweep.csv"));
    CHECK(csv.rfind(std::string(kSweepHeader), 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);

    const auto manifest = nlohmann::json::parse(slurp(dir.path() / "a" / "manifest.json"));
    CHECK(manifest.at("master_seed") == 1);
    CHECK(manifest.at("config").at("samples") == 100);
    CHECK(manifest.at("outputs").size() == 1);
    CHECK(manifest.at("records").contains("log2_slope"));
}

TEST_CASE("flags override scalar config fields") {
    TempDir dir("plateau_cli_flags");
    const auto r = run({"otoc", "--seed", "5", "--samples", "20", "--out", dir.path().string()});
    REQUIRE(r.code == kExitOk);
    const auto manifest = nlohmann::json::parse(slurp(dir.path() / "manifest.json"));
    CHECK(manifest.at("config").at("master_seed") == 5);
    CHECK(manifest.at("config").at("samples") == 20);
}

TEST_CASE("output directory falls back to PLATEAU_OUTPUT_DIR") {
    TempDir dir("plateau_cli_env");
    ::setenv("PLATEAU_OUTPUT_DIR", dir.path().c_str(), 1);
    const auto r = run({"haar-check", "--samples", "200"});
    ::unsetenv("PLATEAU_OUTPUT_DIR");
    REQUIRE(r.code == kExitOk);
    CHECK(std::filesystem::exists(dir.path() / "haar_identity.csv"));
    CHECK(std::filesystem::exists(dir.path() / "manifest.json"));
}

TEST_CASE("oracle commands report passes") {
    TempDir dir("plateau_cli_oracle");
    const auto cfg = dir.path() / "t1.json";
    write(cfg, R"({"experiment": "thm1_oracle", "n_list": [2], "samples": 3000, "instances": 1})");
    const auto r = run({"thm1", "-c", cfg.string(), "-o", dir.path().string()});
    CHECK(r.code == kExitOk);
    CHECK_THAT(r.out, ContainsSubstring("PASS thm1/n2/instance0"));
}

TEST_CASE("user errors exit with code 1") {
    TempDir dir("plateau_cli_errors");
    const auto bad = dir.path() / "bad.json";
    write(bad, "{\"experiment\": \"variance_sweep\",\n \"samples\": }");
    auto r = run({"sweep", "--config", bad.string()});
    CHECK(r.code == kExitConfig);
    CHECK_THAT(r.err, ContainsSubstring("bad.json:2:"));

    const auto wrong = dir.path() / "wrong.json";
    write(wrong, R"({"experiment": "variance_sweep", "epsilon_grid": [0.5]})");
    r = run({"sweep", "--config", wrong.string()});
    CHECK(r.code == kExitConfig);
    CHECK_THAT(r.err, ContainsSubstring("epsilon_grid"));

    r = run({"sweep", "--samples", "1"});
    CHECK(r.code == kExitConfig);

    r = run({"teleport"});
    CHECK(r.code == kExitConfig);
    CHECK_THAT(r.err, ContainsSubstring("unknown subcommand 'teleport'"));

    r = run({"sweep", "--config", (dir.path() / "absent.json").string()});
    CHECK(r.code == kExitConfig);

    write(dir.path() / "file", "x");
    r = run({"otoc", "--samples", "4", "--out", (dir.path() / "file" / "sub").string()});
    CHECK(r.code == kExitConfig);
    CHECK_THAT(r.err, ContainsSubstring("output directory"));
}

TEST_CASE("command names map to experiments") {
    CHECK(command_name(ExperimentKind::haar_identity) == "haar-check");
    CHECK(command_name(ExperimentKind::mean_gradient) == "mean-grad");
    CHECK(command_name(ExperimentKind::landscape_cut) == "landscape");
}
