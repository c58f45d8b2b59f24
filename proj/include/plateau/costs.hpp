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
 * Cost functions of a trainable unitary U against a target V.
 *
 * All costs are exact expectation values. The Hilbert-Schmidt test and its
 * local variant are evaluated on the Choi state of W = U V^dag, which is
 * what the corresponding two-register circuits measure.
 */
#pragma once

#include "plateau/quantum_core.hpp"

#include <vector>

namespace plateau {

/// Observable H and input state |psi> of C = <psi| U^dag V H V^dag U |psi>.
struct GenericCostSpec {
    Operator h;
    StateVector psi;
};

[[nodiscard]] double generic_cost(const Operator &u, const Operator &v,
                                  const GenericCostSpec &spec);

/// 1 - |Tr[U V^dag]|^2 / d^2.
[[nodiscard]] double hst_cost(const Operator &u, const Operator &v);

/// 1 - <phi+| rho_{S_j R_j} |phi+> on the Choi state of U V^dag.
[[nodiscard]] double lhst_local_cost(const Operator &u, const Operator &v,
                                     QubitIndex j);

/// All n local terms, sharing one Choi state.
[[nodiscard]] std::vector<double> lhst_local_costs(const Operator &u,
                                                   const Operator &v);

/// Mean of the n local terms.
[[nodiscard]] double lhst_cost(const Operator &u, const Operator &v);

/// Qubit layout S (system) then D (dilation) then R (reference), each a
/// contiguous block in that order.
struct RegisterPartition {
    int system = 1;
    int dilation = 0;
    int reference = 0;

    [[nodiscard]] int total() const { return system + dilation + reference; }
    void validate() const;
};

struct GenTrainingTerm {
    double p = 1.0;
    StateVector psi; ///< on S (x) D (x) R
    Operator h;      ///< hermitian, on S (x) R
};

/// sum_i p_i <Psi_i| A^dag (H_i (x) 1_D) A |Psi_i> with
/// A = ((V^dag (x) 1_D) U_SD) (x) 1_R. Weights must sum to 1 within 1e-10.
[[nodiscard]] double gen_cost(const Operator &u_sd, const Operator &v,
                              const std::vector<GenTrainingTerm> &terms,
                              const RegisterPartition &partition);

/// One term of the fully factorized generalized cost: reference eigenvalue
/// w, system observable H^S and the S (x) D component of the input.
struct FactorizedGenTerm {
    double p_tilde = 1.0;
    double w = 1.0;
    Operator h_s;
    StateVector psi_sd;
};

/// Throws InvariantError unless every p_tilde >= 0 and they sum to 1.
void validate_factorized_terms(const std::vector<FactorizedGenTerm> &terms,
                               int n_system, int n_dilation);

/// sum_l p_l w_l <psi_l| U^dag ((V H_l V^dag) (x) 1_D) U |psi_l>.
[[nodiscard]] double
factorized_gen_cost(const Operator &u_sd, const Operator &v,
                    const std::vector<FactorizedGenTerm> &terms, int n_system);

/// Training terms whose generalized cost equals lhst_cost: S = R = n
/// qubits, no dilation, psi = |Phi+>, H_j = 1 - |phi+><phi+|_{S_j R_j},
/// p_j = 1/n.
[[nodiscard]] std::vector<GenTrainingTerm> lhst_training_terms(int n_qubits);

} // namespace plateau
