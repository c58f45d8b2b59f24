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
 * Dense statevectors and operators on qubit registers.
 *
 * Values are immutable after construction; every operation returns a new
 * object. See types.hpp for the bit-ordering convention.
 */
#pragma once

#include "plateau/types.hpp"

#include <span>
#include <vector>

namespace plateau {

/// Normalized amplitude vector over n qubits (length 2^n).
class StateVector {
  public:
    /// Throws DimensionError on a length mismatch and InvariantError when
    /// | ||amps||^2 - 1 | > 1e-10.
    StateVector(int n_qubits, Vector amplitudes);

    /// Normalizes `amplitudes` before construction.
    [[nodiscard]] static StateVector normalized(int n_qubits,
                                                Vector amplitudes);
    [[nodiscard]] static StateVector basis(int n_qubits, std::size_t index);

    [[nodiscard]] int n_qubits() const { return n_qubits_; }
    [[nodiscard]] Index dim() const { return amplitudes_.size(); }
    [[nodiscard]] const Vector &amplitudes() const { return amplitudes_; }
    [[nodiscard]] cplx operator[](Index i) const { return amplitudes_[i]; }

    /// <this|other>.
    [[nodiscard]] cplx inner(const StateVector &other) const;

  private:
    int n_qubits_;
    Vector amplitudes_;
};

enum class OperatorKind { general, unitary, hermitian };

/// Dense square matrix over a qubit register, with an optional kind hint
/// that is validated on construction (tolerance 1e-10, max-norm).
class Operator {
  public:
    explicit Operator(Matrix entries, OperatorKind kind = OperatorKind::general);

    /// Skips the unitarity/hermiticity check. For results that hold the
    /// property by construction (products of unitaries, QR factors).
    [[nodiscard]] static Operator unchecked(Matrix entries, OperatorKind kind);
    [[nodiscard]] static Operator identity(int n_qubits);

    [[nodiscard]] Index dim() const { return entries_.rows(); }
    [[nodiscard]] int n_qubits() const { return n_qubits_; }
    [[nodiscard]] OperatorKind kind() const { return kind_; }
    [[nodiscard]] const Matrix &matrix() const { return entries_; }
    [[nodiscard]] cplx operator()(Index row, Index col) const {
        return entries_(row, col);
    }

    [[nodiscard]] Operator adjoint() const;
    [[nodiscard]] cplx trace() const { return entries_.trace(); }

    /// Matrix product; unitary * unitary keeps the unitary hint.
    [[nodiscard]] Operator operator*(const Operator &rhs) const;

  private:
    Operator(Matrix entries, OperatorKind kind, int n_qubits);

    Matrix entries_;
    OperatorKind kind_;
    int n_qubits_;
};

/// ||U^dagger U - I||_max.
[[nodiscard]] double unitarity_defect(const Matrix &m);
/// ||H - H^dagger||_max.
[[nodiscard]] double hermiticity_defect(const Matrix &m);

enum class Axis { x, y, z };

namespace gates {
[[nodiscard]] Operator pauli_x();
[[nodiscard]] Operator pauli_y();
[[nodiscard]] Operator pauli_z();
[[nodiscard]] Operator hadamard();
[[nodiscard]] Operator pauli(Axis axis);
} // namespace gates

/// Kronecker product; a's indices are the high-order (leading) qubits.
[[nodiscard]] Operator tensor_product(const Operator &a, const Operator &b);

/// Dense I (x) ... (x) gate (x) ... (x) I with `gate` on qubit q of n.
[[nodiscard]] Operator embed_local(const Operator &gate, QubitIndex q,
                                   int n_qubits);

/// exp(-i * angle * P / 2) for the Pauli P of `axis`.
[[nodiscard]] Operator rotation_gate(Axis axis, double angle);

[[nodiscard]] StateVector apply_unitary(const StateVector &state,
                                        const Operator &u);

/// Applies a 2x2 gate to qubit q by strided amplitude pairing.
[[nodiscard]] StateVector apply_local_gate(const StateVector &state,
                                           const Operator &gate, QubitIndex q);

/// In-place variants on raw registers, used by the ensemble and ansatz
/// builders. Columns of a column-major matrix are treated as independent
/// states, so left-multiplication by the embedded gate costs O(dim^2).
void apply_local_gate_inplace(Vector &amps, int n_qubits, const Matrix &gate,
                              QubitIndex q);
void apply_local_gate_to_columns(Matrix &m, int n_qubits, const Matrix &gate,
                                 QubitIndex q);
void apply_diagonal_to_columns(Matrix &m, std::span<const cplx> phases);

/// Partial trace of `rho` keeping `keep` (ascending order in the result).
[[nodiscard]] Operator partial_trace(const Operator &rho,
                                     std::span<const QubitIndex> keep);

/// Reduced density matrix of a pure state on `keep`, without forming the
/// full projector.
[[nodiscard]] Operator reduced_density(const StateVector &state,
                                       std::span<const QubitIndex> keep);

/// <state| h |state>. Throws InvariantError when h carries the hermitian
/// hint but the imaginary residue exceeds 1e-10.
[[nodiscard]] double expectation(const Operator &h, const StateVector &state);

/// |Phi+> = 2^{-n/2} sum_i |i>_S |i>_R with S the first n qubits.
[[nodiscard]] StateVector max_entangled_state(int n);

/// (W (x) I)|Phi+>, amplitude W_ab / sqrt(d) at basis index (a, b).
/// Requires W to be unitary so the result is normalized.
[[nodiscard]] StateVector choi_vector(const Operator &w);

/// |psi><psi| with the hermitian hint.
[[nodiscard]] Operator projector(const StateVector &psi);

} // namespace plateau
