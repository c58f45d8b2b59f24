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
// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Each criterion uses its own fixed master seed.

#include "plateau/costs.hpp"
#include "plateau/ensembles.hpp"
#include "plateau/experiments.hpp"
#include "plateau/gradients.hpp"
#include "plateau/io.hpp"
#include "plateau/kernels.hpp"
#include "plateau/statistics.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace plateau;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(double x) { return format_double(x); }

std::string fmt(double x, double se) { return fmt(x) + " +- " + fmt(se); }

ExperimentConfig base(ExperimentKind kind, std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.experiment = kind;
    cfg.master_seed = seed;
    return cfg;
}

Verdict mean_gradient_vanishes() {
    auto cfg = base(ExperimentKind::mean_gradient, 101);
    cfg.n_list = {3};
    cfg.samples = 2000;
    cfg.cost = CostKind::generic;
    cfg.observable = Observable::zero_projector;
    cfg.target_ensemble = TargetEnsemble::haar;
    cfg.k_param = 1;
    const auto row = mean_gradient(cfg).front();
    return {std::abs(row.value) <= 5.0 * row.std_error,
            "mean " + fmt(row.value, row.std_error) + " (k = 1)"};
}

Verdict variance_oracle_thm1() {
    auto cfg = base(ExperimentKind::thm1_oracle, 102);
    cfg.n_list = {2, 3};
    cfg.instances = 3;
    cfg.samples = 20000;
    cfg.cost = CostKind::generic;
    Verdict v{true, ""};
    for (const auto &r : thm1_oracle(cfg)) {
        v.pass = v.pass && r.pass;
        v.detail += (v.detail.empty() ? "" : "; ") + r.label + " " + fmt(r.analytic_variance) +
                    " vs " + fmt(r.mc_variance, r.mc_variance_se);
    }
    return v;
}

Verdict variance_oracle_thm3() {
    auto cfg = base(ExperimentKind::thm3_oracle, 103);
    cfg.n_list = {2};
    cfg.samples = 20000;
    cfg.cost = CostKind::gen;
    Verdict v{true, ""};
    for (const auto &r : thm3_oracle(cfg)) {
        v.pass = v.pass && r.pass;
        if (r.label.ends_with("two_term")) {
            v.detail += "two-term " + fmt(r.analytic_variance) + " vs " +
                        fmt(r.mc_variance, r.mc_variance_se) + " (" + r.detail + ")";
        } else if (r.label.ends_with("single_term")) {
            v.detail += "; single-term |delta| " + fmt(std::abs(r.analytic_variance - r.mc_variance));
        }
    }
    return v;
}

Verdict corollary_scaling() {
    auto cfg = base(ExperimentKind::variance_sweep, 104);
    cfg.n_list = {2, 3, 4, 5, 6, 7, 8};
    cfg.samples = 500;
    cfg.cost = CostKind::generic;
    cfg.observable = Observable::z0;
    cfg.target_ensemble = TargetEnsemble::haar;
    cfg.k_param = 1;
    const auto fit = sweep_slope(variance_sweep(cfg));
    return {fit.slope <= -0.9, "slope " + fmt(fit.slope) + ", r^2 " + fmt(fit.r_squared)};
}

Verdict scrambler_sweep() {
    auto cfg = base(ExperimentKind::variance_sweep, 105);
    cfg.n_list = {2, 3, 4, 5, 6, 7};
    cfg.samples = 500;
    cfg.cost = CostKind::lhst_local_0;
    cfg.g_list = {1.0};
    cfg.t_list = {20};
    const auto strong = sweep_slope(variance_sweep(cfg));
    cfg.g_list = {0.5};
    cfg.t_list = {3};
    const auto weak = sweep_slope(variance_sweep(cfg));
    return {strong.slope >= -2.3 && strong.slope <= -1.7 && weak.slope > strong.slope,
            "g=1,t=20 slope " + fmt(strong.slope) + "; g=0.5,t=3 slope " + fmt(weak.slope)};
}

Verdict landscape_flattening() {
    auto cfg = base(ExperimentKind::landscape_cut, 106);
    cfg.n_list = {6};
    cfg.cost = CostKind::lhst;
    cfg.runs = 10;
    for (int i = 0; i <= 60; ++i) {
        cfg.epsilon_grid.push_back(-std::numbers::pi + i * std::numbers::pi / 30.0);
    }
    cfg.g_list = {5.0};
    cfg.t_list = {15};
    const auto strong = landscape_cut(cfg);
    cfg.g_list = {0.1};
    cfg.t_list = {1};
    const auto weak = landscape_cut(cfg);
    int wins = 0;
    double worst_ratio = 0.0;
    for (std::size_t r = 0; r < strong.size(); ++r) {
        const double s = cut_variance(strong[r], 0.5, std::numbers::pi);
        const double w = cut_variance(weak[r], 0.5, std::numbers::pi);
        wins += s < w ? 1 : 0;
        worst_ratio = std::max(worst_ratio, s / w);
    }
    return {wins >= 8, std::to_string(wins) + "/10 runs flatter for g=5,t=15; largest ratio " +
                           fmt(worst_ratio)};
}

Verdict haar_identities() {
    Verdict v{true, ""};
    std::uint64_t seed = 107;
    for (auto which : {HaarIdentity::first_moment, HaarIdentity::second_moment,
                       HaarIdentity::subspace_first, HaarIdentity::subspace_second}) {
        const auto r = haar_identity_check(which, 2, 50000, seed++);
        v.pass = v.pass && r.pass;
        v.detail += (v.detail.empty() ? "" : "; ") + std::string(to_string(which)) + " max z " +
                    fmt(r.max_z);
    }
    return v;
}

Verdict sandwich_bound() {
    Rng rng(108);
    std::uniform_real_distribution<double> small(-0.3, 0.3);
    std::size_t checked = 0;
    double worst = -HUGE_VAL;
    bool pass = true;
    for (int n = 2; n <= 5; ++n) {
        for (int i = 0; i < 100; ++i) {
            const Operator v = haar_unitary(dim_for_qubits(n), rng);
            Operator u = haar_unitary(dim_for_qubits(n), rng);
            if (i % 2 == 1) {
                // Near-target pairs probe the small-cost end of the bound.
                auto a = random_layered_ansatz(n, 2, rng);
                std::vector<double> thetas(a.num_parameters());
                for (double &t : thetas) {
                    t = small(rng);
                }
                u = Operator::unchecked(ansatz_unitary(a.with_parameters(thetas)).matrix() *
                                            v.matrix(),
                                        OperatorKind::unitary);
            }
            const double lhst = lhst_cost(u, v);
            const double hst = hst_cost(u, v);
            const double gap = std::max(lhst - hst, hst - n * lhst);
            worst = std::max(worst, gap);
            pass = pass && gap <= 1e-10;
            ++checked;
        }
    }
    return {pass, std::to_string(checked) + " pairs, largest violation " + fmt(worst)};
}

Verdict shift_rule_matches_finite_difference() {
    Rng rng(109);
    std::uniform_int_distribution<int> qubits(1, 4);
    std::uniform_int_distribution<int> kinds(0, 2);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const int n = qubits(rng);
        const auto a = random_layered_ansatz(n, 3, rng);
        const std::size_t k =
            std::uniform_int_distribution<std::size_t>(0, a.num_parameters() - 1)(rng);
        const Operator v = haar_unitary(dim_for_qubits(n), rng);
        CostFunction cost;
        switch (kinds(rng)) {
        case 0: {
            Matrix g = haar_unitary(dim_for_qubits(n), rng).matrix();
            const Operator h(0.5 * (g + g.adjoint()), OperatorKind::hermitian);
            const StateVector psi = apply_unitary(StateVector::basis(n, 0),
                                                  haar_unitary(dim_for_qubits(n), rng));
            const GenericCostSpec spec{h, psi};
            cost = [v, spec](const Operator &u) { return generic_cost(u, v, spec); };
            break;
        }
        case 1:
            cost = make_cost(CostKind::hst, v, Observable::z0);
            break;
        default:
            cost = make_cost(CostKind::lhst, v, Observable::z0);
            break;
        }
        const double exact = shift_rule_gradient(a, k, cost).value;
        const double fd = finite_difference_gradient(a, k, cost, 1e-5).value;
        worst = std::max(worst, std::abs(exact - fd));
    }
    return {worst <= 1e-6, "largest |shift - fd| " + fmt(worst)};
}

Verdict otoc_floor() {
    auto cfg = base(ExperimentKind::otoc_decay, 110);
    cfg.n_list = {4};
    cfg.g_list = {1.0};
    cfg.t_list = {0, 20};
    cfg.samples = 1000;
    const auto rows = otoc_decay(cfg);
    const auto &zero = rows.at(0);
    const auto &late = rows.at(1);
    const bool exact_one = zero.mean_otoc_real == 1.0 && zero.std_error == 0.0;
    const bool floor = within_standard_errors(late.mean_otoc_real, late.haar_floor, late.std_error,
                                              late.haar_floor_se, 5.0, 0.0);
    return {exact_one && floor, "t=0 " + fmt(zero.mean_otoc_real) + "; t=20 " +
                                    fmt(late.mean_otoc_real, late.std_error) + " vs floor " +
                                    fmt(late.haar_floor, late.haar_floor_se)};
}

Verdict approximate_design() {
    auto cfg = base(ExperimentKind::design_proximity, 111);
    cfg.n_list = {3};
    cfg.g_list = {1.0};
    cfg.t_list = {20};
    cfg.samples = 5000;
    cfg.frame_samples = 200000;
    cfg.cost = CostKind::lhst_local_0;
    const auto row = design_proximity(cfg).front();
    const double eps = std::abs(row.f_minus_2);
    const bool ratio_ok = row.variance_ratio >= 0.8 && row.variance_ratio <= 1.2;
    return {eps < 0.05 && ratio_ok, "F2 - 2 = " + fmt(row.f_minus_2, row.frame_potential_se) +
                                        ", ratio " + fmt(row.variance_ratio, row.variance_ratio_se)};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"mean gradient vanishes over Haar targets (n=3)", mean_gradient_vanishes},
        {"Haar gradient variance matches closed form (n=2,3)", variance_oracle_thm1},
        {"generalized-cost variance matches closed form (n=2)", variance_oracle_thm3},
        {"generic-cost variance decays at least as 2^-0.9n", corollary_scaling},
        {"scrambler LHST_0 variance slope in [-2.3, -1.7], weak scrambler shallower",
         scrambler_sweep},
        {"strong scrambler landscape is flatter in >= 8/10 runs (n=6)", landscape_flattening},
        {"Haar moment identities at d=4 within 5 SE", haar_identities},
        {"LHST <= HST <= n LHST on 100 pairs per n=2..5", sandwich_bound},
        {"shift rule matches finite difference within 1e-6", shift_rule_matches_finite_difference},
        {"OTOC is 1 at t=0 and reaches the Haar floor at t=20 (n=4)", otoc_floor},
        {"frame-potential proxy < 0.05 and variance ratio in [0.8, 1.2] (n=3)",
         approximate_design},
    };

    std::printf("kernels: %s\n", std::string(kernels::active().name).c_str());
    int failures = 0;
    for (const auto &[name, run] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = run();
        } catch (const std::exception &e) {
            v = {false, std::string("raised: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %s | %s | %.1fs\n", v.pass ? "PASS" : "FAIL", name.c_str(),
                    v.detail.c_str(), secs);
        std::fflush(stdout);
        failures += v.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures == 0 ? 0 : 1;
}
