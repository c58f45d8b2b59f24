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
/**
 * @file
 * Config-driven numerical experiments.
 *
 * Every experiment is a pure function of its ExperimentConfig. Random draws
 * come from SeedPlan streams keyed by the master seed and the grid point, so
 * rerunning a config reproduces every row bit for bit regardless of thread
 * count.
 */
#pragma once

#include "plateau/costs.hpp"
#include "plateau/ensembles.hpp"
#include "plateau/gradients.hpp"
#include "plateau/statistics.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace plateau {

enum class ExperimentKind {
    landscape_cut,
    variance_sweep,
    mean_gradient,
    thm1_oracle,
    thm3_oracle,
    haar_identity,
    otoc_decay,
    design_proximity,
};

enum class CostKind { generic, hst, lhst, lhst_local_0, gen };
enum class EnsembleAxis { targets, ansatze };
enum class TargetEnsemble { scrambler, haar };
/// Observable of the generic cost, always with input |0...0>.
/// zero_projector: |0...0><0...0|. z0: Z on qubit 0 (Tr H^2 = 2^n).
enum class Observable { zero_projector, z0, identity };
enum class HaarIdentity { first_moment, second_moment, subspace_first, subspace_second };

[[nodiscard]] std::string_view to_string(ExperimentKind kind);
[[nodiscard]] std::string_view to_string(CostKind kind);
[[nodiscard]] std::string_view to_string(EnsembleAxis axis);
[[nodiscard]] std::string_view to_string(TargetEnsemble ensemble);
[[nodiscard]] std::string_view to_string(Observable observable);
[[nodiscard]] std::string_view to_string(HaarIdentity identity);
[[nodiscard]] std::string_view to_string(AngleSchedule schedule);

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::variance_sweep;
    std::vector<int> n_list{2};
    std::vector<double> g_list{1.0};
    std::vector<int> t_list{1};
    std::size_t samples = 500;
    std::uint64_t master_seed = 0;
    std::size_t k_param = 0;
    CostKind cost = CostKind::lhst_local_0;
    EnsembleAxis axis = EnsembleAxis::targets;
    TargetEnsemble target_ensemble = TargetEnsemble::scrambler;
    Observable observable = Observable::zero_projector;
    AngleSchedule schedule = AngleSchedule::per_period;
    std::vector<double> epsilon_grid; ///< landscape_cut only
    std::size_t runs = 1;             ///< landscape_cut: independent cuts per grid point
    std::size_t instances = 3;        ///< thm1_oracle: random instances per n
    int n_dilation = 0;               ///< thm3_oracle: dilation qubits
    std::vector<HaarIdentity> identities{HaarIdentity::first_moment,
                                         HaarIdentity::second_moment,
                                         HaarIdentity::subspace_first,
                                         HaarIdentity::subspace_second};
    std::size_t frame_samples = 0; ///< design_proximity: pairs for F^(2); 0 means `samples`
    unsigned threads = 0;          ///< 0 means hardware concurrency
    std::string output_path;

    /// Throws InvariantError on an empty grid, samples < 2, a parameter
    /// out of range, or a field that does not apply to `experiment`.
    void validate() const;
};

/// Seed of one grid point: hash of the master seed, n, g, t and axis.
[[nodiscard]] std::uint64_t grid_seed(const ExperimentConfig &cfg, int n, double g,
                                      int t);

// ------------------------------------------------------------------ rows

struct LandscapeRow {
    double epsilon = 0.0;
    double cost_value = 0.0;
    int n = 0;
    double g = 0.0;
    int t = 0;
    std::uint64_t seed = 0; ///< seed of the cut (grid point and run)
};

struct LandscapeCut {
    int n = 0;
    double g = 0.0;
    int t = 0;
    std::uint64_t seed = 0;
    std::vector<double> direction; ///< R, one entry per ansatz angle
    std::vector<LandscapeRow> rows;
};

struct SweepRow {
    std::string experiment;
    int n = 0;
    double g = 0.0;
    int t = 0;
    EnsembleAxis axis = EnsembleAxis::targets;
    std::size_t k_param = 0;
    CostKind cost = CostKind::lhst_local_0;
    std::size_t samples = 0;
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t seed = 0;
};

struct OracleReport {
    std::string label;
    int n = 0;
    std::size_t k_param = 0;
    std::size_t samples = 0;
    double mc_variance = 0.0;
    double mc_variance_se = 0.0;
    double analytic_variance = 0.0;
    double mc_mean = 0.0;
    double mc_mean_se = 0.0;
    bool pass = false;
    std::string detail;
};

struct IdentityReport {
    HaarIdentity identity = HaarIdentity::first_moment;
    Index dim = 0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    cplx lhs{};  ///< Monte Carlo mean (matrix case: entry with largest z-score)
    cplx rhs{};  ///< exact value of the same entry
    cplx std_error{}; ///< per real/imaginary component
    double max_abs_delta = 0.0;
    double max_z = 0.0; ///< largest |delta| / SE over components
    bool pass = false;
};

struct OtocRow {
    int t = 0;
    double g = 0.0;
    int n = 0;
    double mean_otoc_real = 0.0;
    double std_error = 0.0;
    double haar_floor = 0.0;
    double haar_floor_se = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
};

struct DesignRow {
    double g = 0.0;
    int t = 0;
    int n = 0;
    double frame_potential = 0.0;
    double frame_potential_se = 0.0;
    double f_minus_2 = 0.0;
    double scrambler_variance = 0.0;
    double scrambler_variance_se = 0.0;
    double haar_variance = 0.0;
    double haar_variance_se = 0.0;
    double variance_ratio = 0.0;
    double variance_ratio_se = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
};

// ----------------------------------------------------------- experiments

/// One cut per (n, g, t, run): ansatz angles theta_target + eps R with R
/// uniform in [-1, 1]^m drawn once per cut. cost is hst or lhst.
[[nodiscard]] std::vector<LandscapeCut> landscape_cut(const ExperimentConfig &cfg);

/// Sample variance of the shift-rule gradient per grid point.
[[nodiscard]] std::vector<SweepRow> variance_sweep(const ExperimentConfig &cfg);

/// Per-grid-point summaries behind variance_sweep (same seeds).
[[nodiscard]] std::vector<EnsembleSummary> gradient_summaries(const ExperimentConfig &cfg);

/// Mean gradient over Haar targets; value = mean, std_error = SE of mean.
[[nodiscard]] std::vector<SweepRow> mean_gradient(const ExperimentConfig &cfg);

/// Per n, `instances` random (depth-3 ansatz, H, psi, k); instance 0 uses
/// H = |0..0><0..0| and psi = |0..0>. Passes when the Haar-target gradient
/// variance and mean agree with the closed forms within 5 SE.
[[nodiscard]] std::vector<OracleReport> thm1_oracle(const ExperimentConfig &cfg);

/// Per n: a two-term instance H^S (x) Z_R with Psi = a|psi1>|0> + b|psi2>|1>
/// checked by Monte Carlo, the single-term reduction to thm1_variance, and
/// the all-zero-weight case.
[[nodiscard]] std::vector<OracleReport> thm3_oracle(const ExperimentConfig &cfg);

/// Monte Carlo check of one Haar moment identity on dimension 2^n (the
/// subspace identities use an n-qubit system plus an n-qubit ancilla).
/// Operators A..D are drawn once from `seed` with Gaussian entries.
[[nodiscard]] IdentityReport haar_identity_check(HaarIdentity which, int n_qubits,
                                                 std::size_t samples,
                                                 std::uint64_t seed,
                                                 unsigned threads = 0);

/// Same check with caller-supplied operators (C and D ignored by the
/// first-moment identities).
[[nodiscard]] IdentityReport haar_identity_check(HaarIdentity which, const Matrix &a,
                                                 const Matrix &b, const Matrix &c,
                                                 const Matrix &d, int n_qubits,
                                                 std::size_t samples,
                                                 std::uint64_t seed,
                                                 unsigned threads = 0);

/// Exact right-hand side of an identity for fixed operators.
[[nodiscard]] Matrix haar_identity_rhs(HaarIdentity which, const Matrix &a,
                                       const Matrix &b, const Matrix &c,
                                       const Matrix &d, int n_qubits);

[[nodiscard]] std::vector<IdentityReport> haar_identity(const ExperimentConfig &cfg);

/// Ensemble-mean OTOC with X on qubit 0 and Z on qubit n-1, per t.
[[nodiscard]] std::vector<OtocRow> otoc_decay(const ExperimentConfig &cfg);

/// F^(2) of the target ensemble over `frame_samples` pairs and the ratio
/// of its gradient variance to the Haar one. target_ensemble = haar gives
/// the self-comparison from an independent stream.
[[nodiscard]] std::vector<DesignRow> design_proximity(const ExperimentConfig &cfg);

/// Least-squares slope of log2(value) against n over rows sharing (g, t).
[[nodiscard]] SlopeFit sweep_slope(const std::vector<SweepRow> &rows);

/// Population variance of cost values with epsilon in [lo, hi].
[[nodiscard]] double cut_variance(const LandscapeCut &cut, double lo, double hi);

/// Generic-cost observable for the config's Observable choice.
[[nodiscard]] Operator make_observable(Observable observable, int n_qubits);

/// `depth` blocks of one random-axis rotation per qubit (uniform angle)
/// followed by the g = 1 entangler.
[[nodiscard]] LayeredAnsatz random_layered_ansatz(int n_qubits, int depth, Rng &rng);

/// Cost of a trial unitary against a fixed target.
[[nodiscard]] CostFunction make_cost(CostKind kind, const Operator &target,
                                     Observable observable);

} // namespace plateau
