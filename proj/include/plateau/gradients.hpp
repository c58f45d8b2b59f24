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
 * Layered ansatz, parameter derivatives and closed-form gradient variances.
 *
 * A LayeredAnsatz is an ordered list of layers; layer 0 acts first on the
 * input state (it is the rightmost factor of the product). For parameter k,
 * U_R^k is the product of all layers up to and including the one carrying
 * k, and U_L^k the product of the remaining layers, so U = U_L^k U_R^k.
 * Parametrized layers are exp(-i theta G).
 */
#pragma once

#include "plateau/costs.hpp"
#include "plateau/ensembles.hpp"

#include <functional>
#include <optional>
#include <variant>
#include <vector>

namespace plateau {

/// exp(-i theta G). With `qubit` set, G is 2x2 and acts on that qubit only;
/// otherwise G spans the whole register.
struct ParametrizedLayer {
    Operator generator;
    std::optional<QubitIndex> qubit;
    double theta = 0.0;
};

/// A fixed unitary, local (2x2 on `qubit`) or on the whole register.
struct FixedLayer {
    Operator gate;
    std::optional<QubitIndex> qubit;
};

/// A fixed diagonal unitary given by its phases.
struct DiagonalLayer {
    std::vector<cplx> phases;
};

using Layer = std::variant<ParametrizedLayer, FixedLayer, DiagonalLayer>;

/// Rotation layer exp(-i theta P/2) on one qubit.
[[nodiscard]] Layer rotation_layer(Axis axis, QubitIndex q, double theta);

class LayeredAnsatz {
  public:
    /// Throws DimensionError when a layer does not fit the register and
    /// InvariantError for non-hermitian generators or non-unitary gates.
    LayeredAnsatz(int n_qubits, std::vector<Layer> layers);

    [[nodiscard]] int n_qubits() const { return n_qubits_; }
    [[nodiscard]] const std::vector<Layer> &layers() const { return layers_; }
    [[nodiscard]] std::size_t num_parameters() const { return param_layers_.size(); }
    [[nodiscard]] std::size_t layer_of_parameter(std::size_t k) const;

    [[nodiscard]] double parameter(std::size_t k) const;
    [[nodiscard]] std::vector<double> parameters() const;
    [[nodiscard]] LayeredAnsatz with_parameter(std::size_t k, double theta) const;
    [[nodiscard]] LayeredAnsatz with_parameters(const std::vector<double> &thetas) const;

    [[nodiscard]] const ParametrizedLayer &parametrized(std::size_t k) const;
    /// G_k embedded in the full register.
    [[nodiscard]] Operator generator(std::size_t k) const;

  private:
    int n_qubits_;
    std::vector<Layer> layers_;
    std::vector<std::size_t> param_layers_;
};

/// Layers [begin, end) applied in order to the columns of `m`.
void apply_layers(Matrix &m, const LayeredAnsatz &a, std::size_t begin,
                  std::size_t end);

[[nodiscard]] Operator ansatz_unitary(const LayeredAnsatz &a);
[[nodiscard]] StateVector apply_ansatz(const LayeredAnsatz &a,
                                       const StateVector &psi);

/// U_R^k and U_L^k of the split at parameter k.
[[nodiscard]] Operator right_unitary(const LayeredAnsatz &a, std::size_t k);
[[nodiscard]] Operator left_unitary(const LayeredAnsatz &a, std::size_t k);

/// The scrambler circuit as an ansatz: per period and qubit the layers
/// R_z, R_y, R_x, then the entangler. Every rotation is its own parameter,
/// so a shared-schedule spec expands to t copies of its angles.
[[nodiscard]] LayeredAnsatz scrambler_ansatz(const ScramblerSpec &spec);

/// Parameter index of angle (period, qubit, axis) in scrambler_ansatz.
[[nodiscard]] std::size_t scrambler_parameter_index(int n_qubits, int period,
                                                    int qubit, Axis axis);

struct ShiftedPair {
    Operator plus;
    Operator minus;
};

/// U at theta_k + shift and theta_k - shift. Layers before k are applied
/// once and shared.
[[nodiscard]] ShiftedPair shifted_unitaries(const LayeredAnsatz &a,
                                            std::size_t k, double shift);

enum class GradientMethod { shift_rule, finite_difference };

struct GradientEstimate {
    double value = 0.0;
    GradientMethod method = GradientMethod::shift_rule;
    double step = 0.0; ///< finite difference only
};

using CostFunction = std::function<double(const Operator &)>;

/// True when G_k has spectrum {+1/2, -1/2} (to 1e-10).
[[nodiscard]] bool has_half_spectrum(const LayeredAnsatz &a, std::size_t k);

/// [C(theta_k + pi/2) - C(theta_k - pi/2)] / 2. Throws InvariantError when
/// G_k does not have spectrum {+1/2, -1/2}.
[[nodiscard]] GradientEstimate
shift_rule_gradient(const LayeredAnsatz &a, std::size_t k,
                    const CostFunction &cost);

/// Shift rule on precomputed shifted unitaries (pi/2 shifts).
[[nodiscard]] inline double shift_rule_value(const ShiftedPair &pair,
                                             const CostFunction &cost) {
    return 0.5 * (cost(pair.plus) - cost(pair.minus));
}

[[nodiscard]] GradientEstimate
finite_difference_gradient(const LayeredAnsatz &a, std::size_t k,
                           const CostFunction &cost, double h = 1e-5);

/// Var of G_k in U_R^k |psi>.
[[nodiscard]] double quantum_variance_of_generator(const LayeredAnsatz &a,
                                                   std::size_t k,
                                                   const StateVector &psi);

/// Var of J_k = U_L^k G_k U_L^k^dag in the output state U |psi>.
[[nodiscard]] double output_state_variance(const LayeredAnsatz &a,
                                           std::size_t k,
                                           const StateVector &psi);

/// 2 Tr[H^2] / (d^2 - 1) - 2 (Tr H)^2 / (d (d^2 - 1)).
[[nodiscard]] double thm1_prefactor(const Operator &h);

/// Haar-target variance of the generic-cost gradient.
[[nodiscard]] double thm1_variance(const Operator &h, const LayeredAnsatz &a,
                                   std::size_t k, const StateVector &psi);

/// thm1_prefactor(h) * ||G_k^2||_inf.
[[nodiscard]] double corollary_bound(const Operator &h, const Operator &g_k);

/// Haar-target variance of the generalized-cost gradient. The ansatz acts
/// on S (x) D; the first `n_system` qubits are S. Cross terms use the
/// S-marginals of the derivative states, which reduces to the
/// single-state quantum variance when l = m and D is empty.
[[nodiscard]] double thm3_variance(const std::vector<FactorizedGenTerm> &terms,
                                   const LayeredAnsatz &a, std::size_t k,
                                   int n_system);

/// The double sum with Var_chi[J] = Tr[chi J^2] Tr[chi] - (Tr[chi J])^2
/// taken literally on chi_lm = U|psi_l><psi_m|U^dag over S (x) D (real part).
/// Agrees with thm3_variance when D is empty and the states are real.
[[nodiscard]] double
thm3_variance_full_trace(const std::vector<FactorizedGenTerm> &terms,
                         const LayeredAnsatz &a, std::size_t k, int n_system);

/// w_max^2 [2 X_max / (d^2 - 1) + 2 Y_max / (d (d^2 - 1))] ||G_k^2||_inf with
/// X_max = max |Tr[H_l H_m]| and Y_max = max |Tr H_l| |Tr H_m|.
[[nodiscard]] double thm3_upper_bound(const std::vector<FactorizedGenTerm> &terms,
                                      const LayeredAnsatz &a, std::size_t k,
                                      int n_system);

} // namespace plateau
