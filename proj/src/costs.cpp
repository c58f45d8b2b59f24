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
#include "plateau/costs.hpp"

#include <cmath>
#include <string>

namespace plateau {
namespace {

constexpr double kWeightTolerance = 1e-10;

void require_same_dim(const Operator &u, const Operator &v, const char *what) {
    if (u.dim() != v.dim()) {
        throw DimensionError(std::string(what) + ": dimensions " +
                             std::to_string(u.dim()) + " and " +
                             std::to_string(v.dim()) + " differ");
    }
}

void require_hermitian(const Operator &h, const char *what) {
    if (h.kind() != OperatorKind::hermitian &&
        hermiticity_defect(h.matrix()) > 1e-10) {
        throw InvariantError(std::string(what) + ": observable is not hermitian");
    }
}

// Tr[U V^dag] without forming the product.
cplx trace_u_vdag(const Matrix &u, const Matrix &v) {
    return u.cwiseProduct(v.conjugate()).sum();
}

// <phi+| rho |phi+> for a two-qubit density matrix.
double bell_fidelity(const Matrix &rho) {
    return 0.5 * (rho(0, 0) + rho(0, 3) + rho(3, 0) + rho(3, 3)).real();
}

Vector apply_to_sd_block(const Vector &psi, const Matrix &a, Index d_r) {
    // psi index = sd * d_r + r; columns of the map are fixed-sd slices.
    const Index d_sd = psi.size() / d_r;
    Eigen::Map<const Matrix> m(psi.data(), d_r, d_sd);
    Matrix out = m * a.transpose();
    return Eigen::Map<const Vector>(out.data(), out.size());
}

} // namespace

double generic_cost(const Operator &u, const Operator &v,
                    const GenericCostSpec &spec) {
    require_same_dim(u, v, "generic_cost");
    require_same_dim(u, spec.h, "generic_cost");
    if (spec.psi.dim() != u.dim()) {
        throw DimensionError("generic_cost: state dimension differs from unitary");
    }
    require_hermitian(spec.h, "generic_cost");
    const Vector phi = v.matrix().adjoint() * (u.matrix() * spec.psi.amplitudes());
    return expectation(spec.h, StateVector::normalized(u.n_qubits(), phi));
}

double hst_cost(const Operator &u, const Operator &v) {
    require_same_dim(u, v, "hst_cost");
    const double d = static_cast<double>(u.dim());
    return 1.0 - std::norm(trace_u_vdag(u.matrix(), v.matrix())) / (d * d);
}

std::vector<double> lhst_local_costs(const Operator &u, const Operator &v) {
    require_same_dim(u, v, "lhst_cost");
    const int n = u.n_qubits();
    const Operator w = Operator::unchecked(u.matrix() * v.matrix().adjoint(),
                                           OperatorKind::unitary);
    const StateVector chi = choi_vector(w);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const std::vector<QubitIndex> keep{QubitIndex{j}, QubitIndex{n + j}};
        out.push_back(1.0 - bell_fidelity(reduced_density(chi, keep).matrix()));
    }
    return out;
}

double lhst_local_cost(const Operator &u, const Operator &v, QubitIndex j) {
    require_same_dim(u, v, "lhst_local_cost");
    const int n = u.n_qubits();
    check_qubit(j, n);
    const Operator w = Operator::unchecked(u.matrix() * v.matrix().adjoint(),
                                           OperatorKind::unitary);
    const std::vector<QubitIndex> keep{j, QubitIndex{n + j.value()}};
    return 1.0 - bell_fidelity(reduced_density(choi_vector(w), keep).matrix());
}

double lhst_cost(const Operator &u, const Operator &v) {
    const auto local = lhst_local_costs(u, v);
    double sum = 0.0;
    for (double c : local) {
        sum += c;
    }
    return sum / static_cast<double>(local.size());
}

void RegisterPartition::validate() const {
    if (system < 1 || dilation < 0 || reference < 0) {
        throw DimensionError("register partition needs system >= 1 and "
                             "non-negative dilation/reference widths");
    }
}

double gen_cost(const Operator &u_sd, const Operator &v,
                const std::vector<GenTrainingTerm> &terms,
                const RegisterPartition &partition) {
    partition.validate();
    if (terms.empty()) {
        throw InvariantError("gen_cost needs at least one training term");
    }
    if (u_sd.n_qubits() != partition.system + partition.dilation) {
        throw DimensionError("gen_cost: ansatz must act on S (x) D");
    }
    if (v.n_qubits() != partition.system) {
        throw DimensionError("gen_cost: target must act on S");
    }
    double total_p = 0.0;
    for (const auto &term : terms) {
        total_p += term.p;
        if (term.psi.n_qubits() != partition.total()) {
            throw DimensionError("gen_cost: training state must live on S (x) D (x) R");
        }
        if (term.h.n_qubits() != partition.system + partition.reference) {
            throw DimensionError("gen_cost: observable must act on S (x) R");
        }
        require_hermitian(term.h, "gen_cost");
    }
    if (std::abs(total_p - 1.0) > kWeightTolerance) {
        throw InvariantError("gen_cost: weights sum to " + std::to_string(total_p) +
                             ", expected 1");
    }

    const Operator a =
        partition.dilation == 0
            ? v.adjoint() * u_sd
            : tensor_product(v.adjoint(), Operator::identity(partition.dilation)) * u_sd;
    const Index d_r = dim_for_qubits(partition.reference);
    std::vector<QubitIndex> keep;
    for (int q = 0; q < partition.system; ++q) {
        keep.emplace_back(q);
    }
    for (int q = 0; q < partition.reference; ++q) {
        keep.emplace_back(partition.system + partition.dilation + q);
    }

    double cost = 0.0;
    for (const auto &term : terms) {
        const Vector phi = apply_to_sd_block(term.psi.amplitudes(), a.matrix(), d_r);
        const StateVector out = StateVector::normalized(partition.total(), phi);
        if (partition.dilation == 0) {
            cost += term.p * expectation(term.h, out);
        } else {
            const Operator rho = reduced_density(out, keep);
            cost += term.p * (rho.matrix().cwiseProduct(term.h.matrix().transpose()))
                                 .sum()
                                 .real();
        }
    }
    return cost;
}

void validate_factorized_terms(const std::vector<FactorizedGenTerm> &terms,
                               int n_system, int n_dilation) {
    if (terms.empty()) {
        throw InvariantError("factorized cost needs at least one term");
    }
    double total = 0.0;
    for (const auto &term : terms) {
        if (!(term.p_tilde >= 0.0) || !std::isfinite(term.w)) {
            throw InvariantError("factorized term needs p_tilde >= 0 and finite w");
        }
        if (term.h_s.n_qubits() != n_system) {
            throw DimensionError("factorized term: H^S must act on the system");
        }
        if (term.psi_sd.n_qubits() != n_system + n_dilation) {
            throw DimensionError("factorized term: state must live on S (x) D");
        }
        require_hermitian(term.h_s, "factorized term");
        total += term.p_tilde;
    }
    if (std::abs(total - 1.0) > kWeightTolerance) {
        throw InvariantError("factorized weights sum to " + std::to_string(total) +
                             ", expected 1");
    }
}

double factorized_gen_cost(const Operator &u_sd, const Operator &v,
                           const std::vector<FactorizedGenTerm> &terms,
                           int n_system) {
    const int n_dilation = u_sd.n_qubits() - n_system;
    if (n_dilation < 0 || v.n_qubits() != n_system) {
        throw DimensionError("factorized_gen_cost: register widths disagree");
    }
    validate_factorized_terms(terms, n_system, n_dilation);
    std::vector<QubitIndex> keep;
    for (int q = 0; q < n_system; ++q) {
        keep.emplace_back(q);
    }
    double cost = 0.0;
    for (const auto &term : terms) {
        const Vector phi = u_sd.matrix() * term.psi_sd.amplitudes();
        const Operator rho =
            reduced_density(StateVector::normalized(u_sd.n_qubits(), phi), keep);
        const Matrix conj_h = v.matrix() * term.h_s.matrix() * v.matrix().adjoint();
        cost += term.p_tilde * term.w *
                (rho.matrix().cwiseProduct(conj_h.transpose())).sum().real();
    }
    return cost;
}

std::vector<GenTrainingTerm> lhst_training_terms(int n_qubits) {
    const StateVector phi = max_entangled_state(n_qubits);
    const Index d = dim_for_qubits(2 * n_qubits);
    std::vector<GenTrainingTerm> terms;
    for (int j = 0; j < n_qubits; ++j) {
        // Bell projector on (S_j, R_j) embedded in S (x) R.
        Matrix h = Matrix::Identity(d, d);
        const std::size_t sj = bit_stride(2 * n_qubits, QubitIndex{j});
        const std::size_t rj = bit_stride(2 * n_qubits, QubitIndex{n_qubits + j});
        for (Index row = 0; row < d; ++row) {
            const auto r = static_cast<std::size_t>(row);
            const bool rs = (r & sj) != 0;
            const bool rr = (r & rj) != 0;
            if (rs != rr) {
                continue;
            }
            // |phi+> components |00> and |11>; the other pair member flips both bits.
            const auto partner = static_cast<Index>(r ^ sj ^ rj);
            h(row, row) -= 0.5;
            h(row, partner) -= 0.5;
        }
        terms.push_back({1.0 / n_qubits, phi, Operator(h, OperatorKind::hermitian)});
    }
    return terms;
}

} // namespace plateau
