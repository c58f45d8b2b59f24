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
#include "plateau/io.hpp"

#include "plateau/config.hpp"
#include "plateau/kernels.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <istream>
#include <ostream>

namespace plateau {
namespace {

std::string quote(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) {
        return std::string(s);
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + '"';
}

class Line {
  public:
    explicit Line(std::ostream &out) : out_(out) {}
    ~Line() { out_ << '\n'; }
    Line(const Line &) = delete;
    Line &operator=(const Line &) = delete;

    Line &operator<<(double x) { return field(format_double(x)); }
    Line &operator<<(int x) { return field(std::to_string(x)); }
    Line &operator<<(long x) { return field(std::to_string(x)); }
    Line &operator<<(unsigned long x) { return field(std::to_string(x)); }
    Line &operator<<(unsigned long long x) { return field(std::to_string(x)); }
    Line &operator<<(bool x) { return field(x ? "true" : "false"); }
    Line &operator<<(std::string_view s) { return field(quote(s)); }

  private:
    Line &field(const std::string &s) {
        if (!first_) {
            out_ << ',';
        }
        first_ = false;
        out_ << s;
        return *this;
    }
    std::ostream &out_;
    bool first_ = true;
};

std::vector<std::string> split_csv(const std::string &line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    return fields;
}

struct CsvTable {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers;
};

CsvTable read_table(std::istream &in, std::string_view header) {
    std::string line;
    if (!std::getline(in, line)) {
        throw IoError("line 1: empty table, expected header '" + std::string(header) + "'");
    }
    if (!line.empty() && line.back() == '\r') {
        throw IoError("line 1: CRLF line endings are not accepted");
    }
    if (line != header) {
        throw IoError("line 1: header mismatch, expected '" + std::string(header) + "'");
    }
    const std::size_t width = split_csv(std::string(header)).size();
    CsvTable table;
    std::size_t number = 1;
    while (std::getline(in, line)) {
        ++number;
        if (line.empty()) {
            continue;
        }
        auto fields = split_csv(line);
        if (fields.size() != width) {
            throw IoError("line " + std::to_string(number) + ": expected " +
                          std::to_string(width) + " fields, found " +
                          std::to_string(fields.size()));
        }
        table.rows.push_back(std::move(fields));
        table.line_numbers.push_back(number);
    }
    return table;
}

template <typename T>
T parse_number(const std::string &s, std::size_t line, std::string_view column) {
    auto fail = [&] {
        return IoError("line " + std::to_string(line) + ": bad " + std::string(column) +
                       " '" + s + "'");
    };
    if constexpr (std::is_floating_point_v<T>) {
        if (s == "nan") {
            return std::nan("");
        }
        if (s == "inf" || s == "-inf") {
            return s[0] == '-' ? -HUGE_VAL : HUGE_VAL;
        }
        try {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used != s.size()) {
                throw fail();
            }
            return v;
        } catch (const std::logic_error &) {
            throw fail();
        }
    } else {
        T v{};
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size()) {
            throw fail();
        }
        return v;
    }
}

} // namespace

std::string format_double(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

void write_sweep_csv(std::ostream &out, const std::vector<SweepRow> &rows) {
    out << kSweepHeader << '\n';
    for (const auto &r : rows) {
        Line(out) << std::string_view(r.experiment) << r.n << r.g << r.t << to_string(r.axis)
                  << r.k_param << to_string(r.cost) << r.samples << r.value << r.std_error
                  << static_cast<unsigned long long>(r.seed);
    }
}

void write_landscape_csv(std::ostream &out, const std::vector<LandscapeCut> &cuts) {
    out << kLandscapeHeader << '\n';
    for (const auto &cut : cuts) {
        for (const auto &r : cut.rows) {
            Line(out) << r.epsilon << r.cost_value << r.n << r.g << r.t
                      << static_cast<unsigned long long>(r.seed);
        }
    }
}

void write_oracle_csv(std::ostream &out, const std::vector<OracleReport> &rows) {
    out << kOracleHeader << '\n';
    for (const auto &r : rows) {
        Line(out) << std::string_view(r.label) << r.n << r.k_param << r.samples << r.mc_variance
                  << r.mc_variance_se << r.analytic_variance << r.mc_mean << r.mc_mean_se
                  << r.pass << std::string_view(r.detail);
    }
}

void write_identity_csv(std::ostream &out, const std::vector<IdentityReport> &rows) {
    out << kIdentityHeader << '\n';
    for (const auto &r : rows) {
        Line(out) << to_string(r.identity) << static_cast<long>(r.dim) << r.samples
                  << static_cast<unsigned long long>(r.seed) << r.lhs.real() << r.lhs.imag()
                  << r.rhs.real() << r.rhs.imag() << r.std_error.real() << r.std_error.imag()
                  << r.max_abs_delta << r.max_z << r.pass;
    }
}

void write_otoc_csv(std::ostream &out, const std::vector<OtocRow> &rows) {
    out << kOtocHeader << '\n';
    for (const auto &r : rows) {
        Line(out) << r.t << r.g << r.n << r.mean_otoc_real << r.std_error << r.haar_floor
                  << r.haar_floor_se << r.samples << static_cast<unsigned long long>(r.seed);
    }
}

void write_design_csv(std::ostream &out, const std::vector<DesignRow> &rows) {
    out << kDesignHeader << '\n';
    for (const auto &r : rows) {
        Line(out) << r.g << r.t << r.n << r.frame_potential << r.frame_potential_se
                  << r.f_minus_2 << r.scrambler_variance << r.scrambler_variance_se
                  << r.haar_variance << r.haar_variance_se << r.variance_ratio
                  << r.variance_ratio_se << r.samples << static_cast<unsigned long long>(r.seed);
    }
}

std::vector<SweepRow> read_sweep_csv(std::istream &in) {
    const CsvTable table = read_table(in, kSweepHeader);
    std::vector<SweepRow> rows;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto &f = table.rows[i];
        const std::size_t ln = table.line_numbers[i];
        SweepRow r;
        r.experiment = f[0];
        r.n = parse_number<int>(f[1], ln, "n");
        r.g = parse_number<double>(f[2], ln, "g");
        r.t = parse_number<int>(f[3], ln, "t");
        try {
            r.axis = parse_ensemble_axis(f[4]);
            r.cost = parse_cost_kind(f[6]);
        } catch (const Error &e) {
            throw IoError("line " + std::to_string(ln) + ": " + e.what());
        }
        r.k_param = parse_number<std::size_t>(f[5], ln, "k_param");
        r.samples = parse_number<std::size_t>(f[7], ln, "samples");
        r.value = parse_number<double>(f[8], ln, "value");
        r.std_error = parse_number<double>(f[9], ln, "std_error");
        r.seed = parse_number<std::uint64_t>(f[10], ln, "seed");
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<LandscapeRow> read_landscape_csv(std::istream &in) {
    const CsvTable table = read_table(in, kLandscapeHeader);
    std::vector<LandscapeRow> rows;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto &f = table.rows[i];
        const std::size_t ln = table.line_numbers[i];
        rows.push_back({parse_number<double>(f[0], ln, "epsilon"),
                        parse_number<double>(f[1], ln, "cost_value"),
                        parse_number<int>(f[2], ln, "n"), parse_number<double>(f[3], ln, "g"),
                        parse_number<int>(f[4], ln, "t"),
                        parse_number<std::uint64_t>(f[5], ln, "seed")});
    }
    return rows;
}

void write_file_atomic(const std::filesystem::path &path, std::string_view contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot write '" + tmp.string() + "'");
        }
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) {
            throw IoError("write to '" + tmp.string() + "' failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot move output into '" + path.string() + "'");
    }
}

std::string format_timestamp(std::chrono::system_clock::time_point tp) {
    const std::time_t t = std::chrono::system_clock::to_time_t(tp);
    std::tm utc{};
    gmtime_r(&t, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buf;
}

nlohmann::json RunManifest::to_json() const {
    nlohmann::json j;
    j["tool"] = "plateau";
    j["version"] = PLATEAU_VERSION;
    j["command"] = command;
    j["config"] = config_to_json(config);
    j["master_seed"] = config.master_seed;
    j["started"] = format_timestamp(started);
    j["finished"] = format_timestamp(finished);
    j["wall_seconds"] = wall_seconds;
    j["outputs"] = outputs;
    j["kernels"] = kernels::active().name;
    j["checks_passed"] = checks_passed;
    if (!extra.empty()) {
        j["records"] = extra;
    }
    return j;
}

} // namespace plateau
