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

#include "plateau/config.hpp"
#include "plateau/costs.hpp"
#include "plateau/ensembles.hpp"
#include "plateau/gradients.hpp"
#include "plateau/quantum_core.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

namespace plateau {
namespace {

constexpr double kTol = 1e-12;

struct Command {
    std::string_view name;
    ExperimentKind kind;
    std::string_view help;
};

constexpr Command kCommands[] = {
    {"landscape", ExperimentKind::landscape_cut, "cost along a random direction through the target"},
    {"sweep", ExperimentKind::variance_sweep, "gradient variance over a (n, g, t) grid"},
    {"mean-grad", ExperimentKind::mean_gradient, "mean gradient over Haar targets"},
    {"thm1", ExperimentKind::thm1_oracle, "Haar gradient variance against its closed form"},
    {"thm3", ExperimentKind::thm3_oracle, "generalized-cost variance against its closed form"},
    {"haar-check", ExperimentKind::haar_identity, "Monte Carlo check of Haar moment identities"},
    {"otoc", ExperimentKind::otoc_decay, "scrambler OTOC against the Haar floor"},
    {"design", ExperimentKind::design_proximity, "frame potential and scrambler/Haar variance ratio"},
};

std::string table_name(ExperimentKind kind) { return std::string(to_string(kind)) + ".csv"; }

template <typename Rows, typename Writer>
std::string render(const Rows &rows, Writer writer) {
    std::ostringstream s;
    writer(s, rows);
    return s.str();
}

bool near(double a, double b, double tol = kTol) { return std::abs(a - b) <= tol; }

bool near(const Matrix &a, const Matrix &b, double tol = kTol) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a - b).cwiseAbs().maxCoeff() <= tol;
}

bool near(const StateVector &a, const Vector &b, double tol = kTol) {
    return (a.amplitudes() - b).cwiseAbs().maxCoeff() <= tol;
}

template <typename Fn>
bool throws(Fn &&fn) {
    try {
        fn();
    } catch (const Error &) {
        return true;
    }
    return false;
}

LayeredAnsatz single_rx(double theta) {
    return LayeredAnsatz(1, {rotation_layer(Axis::x, QubitIndex{0}, theta)});
}

CostFunction z_expectation() {
    const GenericCostSpec spec{gates::pauli_z(), StateVector::basis(1, 0)};
    const Operator id = Operator::identity(1);
    return [spec, id](const Operator &u) { return generic_cost(u, id, spec); };
}

std::vector<std::pair<std::string, std::function<bool()>>> selftest_cases() {
    using namespace gates;
    const double s = 1.0 / std::sqrt(2.0);
    const Operator id1 = Operator::identity(1);
    const Operator id2 = Operator::identity(2);
    std::vector<std::pair<std::string, std::function<bool()>>> cases;
    auto add = [&cases](std::string name, std::function<bool()> fn) {
        cases.emplace_back(std::move(name), std::move(fn));
    };

    add("tensor I(2) x I(2) = I(4)",
        [=] { return near(tensor_product(id1, id1).matrix(), id2.matrix()); });
    add("diag(Z x Z) = (1, -1, -1, 1)", [=] {
        const Matrix zz = tensor_product(pauli_z(), pauli_z()).matrix();
        return near(zz.diagonal().real().cwiseAbs().sum(), 4.0) && near(zz(0, 0).real(), 1.0) &&
               near(zz(1, 1).real(), -1.0) && near(zz(2, 2).real(), -1.0) &&
               near(zz(3, 3).real(), 1.0);
    });
    add("X|0> = |1>", [=] {
        return near(apply_unitary(StateVector::basis(1, 0), pauli_x()),
                    StateVector::basis(1, 1).amplitudes());
    });
    add("H H |0> = |0>", [=] {
        const auto once = apply_unitary(StateVector::basis(1, 0), hadamard());
        return near(apply_unitary(once, hadamard()), StateVector::basis(1, 0).amplitudes());
    });
    add("X on qubit 0 of |00> = |10>", [=] {
        return near(apply_local_gate(StateVector::basis(2, 0), pauli_x(), QubitIndex{0}),
                    StateVector::basis(2, 2).amplitudes());
    });
    add("rotation_gate(x, 0) = I",
        [=] { return near(rotation_gate(Axis::x, 0.0).matrix(), id1.matrix()); });
    add("rotation_gate(z, 2 pi) = -I", [=] {
        return near(rotation_gate(Axis::z, 2.0 * std::numbers::pi).matrix(), -id1.matrix());
    });
    add("Tr_1 |00><00| = |0><0|", [=] {
        const std::vector<QubitIndex> keep{QubitIndex{0}};
        const auto rho = partial_trace(projector(StateVector::basis(2, 0)), keep);
        return near(rho.matrix(), projector(StateVector::basis(1, 0)).matrix());
    });
    add("Tr_1 |Phi+><Phi+| = I/2", [=] {
        const std::vector<QubitIndex> keep{QubitIndex{0}};
        const auto rho = partial_trace(projector(max_entangled_state(1)), keep);
        return near(rho.matrix(), 0.5 * id1.matrix());
    });
    add("<0|Z|0> = 1, <+|Z|+> = 0", [=] {
        const auto plus = apply_unitary(StateVector::basis(1, 0), hadamard());
        return near(expectation(pauli_z(), StateVector::basis(1, 0)), 1.0) &&
               near(expectation(pauli_z(), plus), 0.0);
    });
    add("choi_vector(X) = (|10> + |01>)/sqrt2", [=] {
        Vector expected = Vector::Zero(4);
        expected[1] = s;
        expected[2] = s;
        return near(choi_vector(pauli_x()), expected);
    });
    add("generic cost: Z with V = I is 1, V = X is -1", [=] {
        const GenericCostSpec spec{pauli_z(), StateVector::basis(1, 0)};
        return near(generic_cost(id1, id1, spec), 1.0) &&
               near(generic_cost(id1, pauli_x(), spec), -1.0);
    });
    add("hst(U, U) = 0 and hst(I, X) = 1", [=] {
        const Operator u = haar_unitary(4, 11);
        return near(hst_cost(u, u), 0.0, 1e-10) && near(hst_cost(id1, pauli_x()), 1.0);
    });
    add("n = 1: lhst_local = hst", [=] {
        const Operator u = haar_unitary(2, 12);
        const Operator v = haar_unitary(2, 13);
        return near(lhst_local_cost(u, v, QubitIndex{0}), hst_cost(u, v), 1e-10);
    });
    add("gen_cost weights must sum to 1", [=] {
        const std::vector<GenTrainingTerm> terms{{0.5, StateVector::basis(1, 0), pauli_z()}};
        return throws([=] { (void)gen_cost(id1, id1, terms, RegisterPartition{}); });
    });
    add("empty ansatz = I",
        [=] { return near(ansatz_unitary(LayeredAnsatz(2, {})).matrix(), id2.matrix()); });
    add("d/dtheta <0|Rx^dag Z Rx|0> at pi/2 = -1", [=] {
        return near(shift_rule_gradient(single_rx(std::numbers::pi / 2), 0, z_expectation()).value,
                    -1.0, 1e-12) &&
               near(finite_difference_gradient(single_rx(std::numbers::pi / 2), 0,
                                               z_expectation())
                        .value,
                    -1.0, 1e-9);
    });
    add("Var_|+>[Z/2] = 1/4", [=] {
        const LayeredAnsatz a(1, {FixedLayer{hadamard(), QubitIndex{0}},
                                  ParametrizedLayer{Operator(0.5 * pauli_z().matrix(),
                                                             OperatorKind::hermitian),
                                                    QubitIndex{0}, 0.0}});
        return near(output_state_variance(a, 0, StateVector::basis(1, 0)), 0.25);
    });
    add("thm1 prefactor vanishes for H = I",
        [=] { return near(thm1_prefactor(Operator::identity(3)), 0.0); });
    add("OTOC of V = I is 1", [=] {
        const Operator x = embed_local(pauli_x(), QubitIndex{0}, 2);
        const Operator y = embed_local(pauli_z(), QubitIndex{1}, 2);
        return near(std::abs(otoc(id2, x, y) - cplx{1.0, 0.0}), 0.0);
    });
    add("scrambler at t = 0 is I", [=] {
        return near(scrambler_unitary(random_scrambler_spec(3, 1.0, 0, 5)).matrix(),
                    Operator::identity(3).matrix());
    });
    add("Haar first moment with A = B = I is 2", [=] {
        const Matrix i2 = Matrix::Identity(2, 2);
        const auto r = haar_identity_check(HaarIdentity::first_moment, i2, i2, i2, i2, 1, 8, 3, 1);
        return r.pass && near(r.max_abs_delta, 0.0, 1e-12);
    });
    add("minimal sweep config is valid", [] {
        return !throws([] {
            (void)parse_config(R"({"experiment":"variance_sweep","n_list":[2,3],"g_list":1,)"
                               R"("t_list":5,"samples":100,"master_seed":1})",
                               "selftest");
        });
    });
    add("samples = 1 is rejected", [] {
        return throws([] {
            (void)parse_config(R"({"experiment":"variance_sweep","samples":1})", "selftest");
        });
    });
    add("epsilon_grid on a sweep is rejected", [] {
        return throws([] {
            (void)parse_config(R"({"experiment":"variance_sweep","epsilon_grid":[0.1]})",
                               "selftest");
        });
    });
    return cases;
}

} // namespace

std::string_view version() { return PLATEAU_VERSION; }

std::string_view command_name(ExperimentKind kind) {
    for (const auto &c : kCommands) {
        if (c.kind == kind) {
            return c.name;
        }
    }
    return "unknown";
}

RunResult run_experiment(const ExperimentConfig &cfg, const std::filesystem::path &out_dir,
                         std::ostream &log) {
    cfg.validate();
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec || !std::filesystem::is_directory(out_dir)) {
        throw IoError("cannot create output directory '" + out_dir.string() + "'");
    }

    RunResult result;
    RunManifest &m = result.manifest;
    m.command = std::string(command_name(cfg.experiment));
    m.config = cfg;
    m.started = std::chrono::system_clock::now();
    const auto t0 = std::chrono::steady_clock::now();

    std::string table;
    auto record_reports = [&](const auto &reports, auto describe) {
        for (const auto &r : reports) {
            result.checks_passed = result.checks_passed && r.pass;
            log << (r.pass ? "PASS " : "FAIL ") << describe(r) << '\n';
        }
    };

    switch (cfg.experiment) {
    case ExperimentKind::landscape_cut: {
        const auto cuts = landscape_cut(cfg);
        table = render(cuts, write_landscape_csv);
        auto &dirs = m.extra["directions"] = nlohmann::json::array();
        for (const auto &c : cuts) {
            dirs.push_back({{"n", c.n}, {"g", c.g}, {"t", c.t}, {"seed", c.seed},
                            {"direction", c.direction}});
        }
        break;
    }
    case ExperimentKind::variance_sweep:
    case ExperimentKind::mean_gradient: {
        const auto rows = cfg.experiment == ExperimentKind::variance_sweep ? variance_sweep(cfg)
                                                                           : mean_gradient(cfg);
        table = render(rows, write_sweep_csv);
        m.extra["k_param"] = cfg.k_param;
        if (cfg.experiment == ExperimentKind::variance_sweep && cfg.g_list.size() == 1 &&
            cfg.t_list.size() == 1 && cfg.n_list.size() >= 2) {
            bool positive = true;
            for (const auto &r : rows) {
                positive = positive && r.value > 0.0;
            }
            if (positive) {
                const auto fit = sweep_slope(rows);
                m.extra["log2_slope"] = {{"slope", fit.slope},
                                         {"intercept", fit.intercept},
                                         {"r_squared", fit.r_squared}};
                log << "log2 variance slope " << format_double(fit.slope) << '\n';
            }
        }
        break;
    }
    case ExperimentKind::thm1_oracle:
    case ExperimentKind::thm3_oracle: {
        const auto reports = cfg.experiment == ExperimentKind::thm1_oracle ? thm1_oracle(cfg)
                                                                           : thm3_oracle(cfg);
        table = render(reports, write_oracle_csv);
        record_reports(reports, [](const OracleReport &r) {
            return r.label + " analytic " + format_double(r.analytic_variance) + " mc " +
                   format_double(r.mc_variance) + " +- " + format_double(r.mc_variance_se);
        });
        break;
    }
    case ExperimentKind::haar_identity: {
        const auto reports = haar_identity(cfg);
        table = render(reports, write_identity_csv);
        record_reports(reports, [](const IdentityReport &r) {
            return std::string(to_string(r.identity)) + " d=" + std::to_string(r.dim) +
                   " max |delta| " + format_double(r.max_abs_delta) + " max z " +
                   format_double(r.max_z);
        });
        break;
    }
    case ExperimentKind::otoc_decay:
        table = render(otoc_decay(cfg), write_otoc_csv);
        break;
    case ExperimentKind::design_proximity:
        table = render(design_proximity(cfg), write_design_csv);
        break;
    }

    const auto csv = out_dir / table_name(cfg.experiment);
    write_file_atomic(csv, table);
    m.outputs.push_back(csv.string());
    m.finished = std::chrono::system_clock::now();
    m.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    m.checks_passed = result.checks_passed;
    result.manifest_path = out_dir / "manifest.json";
    write_file_atomic(result.manifest_path, m.to_json().dump(2) + "\n");
    log << "wrote " << csv.string() << " and " << result.manifest_path.string() << '\n';
    return result;
}

bool run_selftest(std::ostream &out) {
    bool all = true;
    for (const auto &[name, check] : selftest_cases()) {
        bool ok = false;
        try {
            ok = check();
        } catch (const std::exception &e) {
            out << "  raised: " << e.what() << '\n';
        }
        out << (ok ? "PASS " : "FAIL ") << name << '\n';
        all = all && ok;
    }
    return all;
}

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Gradient-variance experiments for scrambler and Haar targets", "plateau"};
    app.set_version_flag("--version", std::string(version()));
    app.require_subcommand(1, 1);

    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
    std::optional<unsigned> threads;

    for (const auto &c : kCommands) {
        auto *sub = app.add_subcommand(std::string(c.name), std::string(c.help));
        sub->add_option("-c,--config", config_path, "JSON config file")->check(CLI::ExistingFile);
        sub->add_option("--seed", seed, "override master_seed");
        sub->add_option("--samples", samples, "override samples");
        sub->add_option("--threads", threads, "worker threads (0 = all cores)");
        sub->add_option("-o,--out", out_dir, "output directory");
    }
    app.add_subcommand("selftest", "run the built-in fast examples");

    if (argc > 1 && argv[1][0] != '-' && app.get_subcommand_no_throw(argv[1]) == nullptr) {
        err << "plateau: unknown subcommand '" << argv[1] << "'\n";
        return kExitConfig;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion &) {
        out << version() << '\n';
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "plateau: " << e.what() << '\n';
        return kExitConfig;
    }

    const auto *chosen = app.get_subcommands().front();
    if (chosen->get_name() == "selftest") {
        return run_selftest(out) ? kExitOk : kExitCheckFailed;
    }
    ExperimentKind kind{};
    for (const auto &c : kCommands) {
        if (c.name == chosen->get_name()) {
            kind = c.kind;
        }
    }

    ExperimentConfig cfg;
    try {
        cfg = config_path.empty() ? default_config(kind) : load_config(config_path, kind);
        if (seed) {
            cfg.master_seed = *seed;
        }
        if (samples) {
            cfg.samples = *samples;
        }
        if (threads) {
            cfg.threads = *threads;
        }
        cfg.validate();
    } catch (const Error &e) {
        err << "plateau: " << e.what() << '\n';
        return kExitConfig;
    }

    std::filesystem::path dir = ".";
    if (!out_dir.empty()) {
        dir = out_dir;
    } else if (!cfg.output_path.empty()) {
        dir = cfg.output_path;
    } else if (const char *env = std::getenv("PLATEAU_OUTPUT_DIR"); env && *env) {
        dir = env;
    }
    cfg.output_path = dir.string();

    try {
        const RunResult result = run_experiment(cfg, dir, out);
        return result.checks_passed ? kExitOk : kExitCheckFailed;
    } catch (const IoError &e) {
        err << "plateau: " << e.what() << '\n';
        return kExitConfig;
    } catch (const Error &e) {
        err << "plateau: " << e.what() << '\n';
        return kExitConfig;
    }
}

} // namespace plateau
