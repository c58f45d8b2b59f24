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
#include "plateau/quantum_core.hpp"

#include "plateau/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace plateau {
namespace {

constexpr double kStateTolerance = 1e-10;
constexpr double kKindTolerance = 1e-10;

int checked_qubits(const Matrix &m) {
    if (m.rows() != m.cols()) {
        throw DimensionError("operator must be square, got " +
                             std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()));
    }
    return qubits_for_dim(m.rows());
}

std::vector<int> sorted_unique(std::span<const QubitIndex> keep, int n) {
    std::vector<int> bits;
    bits.reserve(keep.size());
    for (QubitIndex q : keep) {
        check_qubit(q, n);
        bits.push_back(q.value());
    }
    std::sort(bits.begin(), bits.end());
    if (std::adjacent_find(bits.begin(), bits.end()) != bits.end()) {
        throw DimensionError("duplicate qubit in keep set");
    }
    return bits;
}

// Splits a basis index of an n-qubit register into (kept, traced) indices,
// each packed with the lower-numbered qubit as the more significant bit.
struct IndexSplitter {
    std::vector<std::size_t> kept_mask;
    std::vector<std::size_t> traced_mask;

    IndexSplitter(const std::vector<int> &keep, int n) {
        for (int q = 0; q < n; ++q) {
            const std::size_t mask = bit_stride(n, QubitIndex{q});
            if (std::binary_search(keep.begin(), keep.end(), q)) {
                kept_mask.push_back(mask);
            } else {
                traced_mask.push_back(mask);
            }
        }
    }

    static std::size_t pack(std::size_t index,
                            const std::vector<std::size_t> &masks) {
        std::size_t out = 0;
        for (std::size_t mask : masks) {
            out = (out << 1U) | ((index & mask) != 0 ? 1U : 0U);
        }
        return out;
    }
    [[nodiscard]] std::size_t kept(std::size_t index) const {
        return pack(index, kept_mask);
    }
    [[nodiscard]] std::size_t traced(std::size_t index) const {
        return pack(index, traced_mask);
    }
};

} // namespace

void check_qubit(QubitIndex q, int n_qubits) {
    if (q.value() < 0 || q.value() >= n_qubits) {
        throw DimensionError("qubit index " + std::to_string(q.value()) +
                             " out of range for a " + std::to_string(n_qubits) +
                             "-qubit register");
    }
}

int qubits_for_dim(Index dim) {
    if (dim < 2 || (dim & (dim - 1)) != 0) {
        throw DimensionError("dimension " + std::to_string(dim) +
                             " is not a power of two >= 2");
    }
    int n = 0;
    while ((Index{1} << n) < dim) {
        ++n;
    }
    return n;
}

// ---------------------------------------------------------------- StateVector

StateVector::StateVector(int n_qubits, Vector amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    if (n_qubits < 1) {
        throw DimensionError("state needs at least one qubit");
    }
    if (amplitudes_.size() != dim_for_qubits(n_qubits)) {
        throw DimensionError("state of " + std::to_string(n_qubits) +
                             " qubits needs " +
                             std::to_string(dim_for_qubits(n_qubits)) +
                             " amplitudes, got " +
                             std::to_string(amplitudes_.size()));
    }
    const double norm2 = kernels::active().norm_squared(
        amplitudes_.data(), static_cast<std::size_t>(amplitudes_.size()));
    if (std::abs(norm2 - 1.0) > kStateTolerance) {
        throw InvariantError("state is not normalized: |psi|^2 = " +
                             std::to_string(norm2));
    }
}

StateVector StateVector::normalized(int n_qubits, Vector amplitudes) {
    const double norm = amplitudes.norm();
    if (norm == 0.0) {
        throw InvariantError("cannot normalize the zero vector");
    }
    amplitudes /= norm;
    return {n_qubits, std::move(amplitudes)};
}

StateVector StateVector::basis(int n_qubits, std::size_t index) {
    Vector amps = Vector::Zero(dim_for_qubits(n_qubits));
    if (static_cast<Index>(index) >= amps.size()) {
        throw DimensionError("basis index out of range");
    }
    amps[static_cast<Index>(index)] = 1.0;
    return {n_qubits, std::move(amps)};
}

cplx StateVector::inner(const StateVector &other) const {
    if (other.dim() != dim()) {
        throw DimensionError("inner product of states with different sizes");
    }
    return kernels::active().inner_product(amplitudes_.data(),
                                           other.amplitudes_.data(),
                                           static_cast<std::size_t>(dim()));
}

// ------------------------------------------------------------------- Operator

double unitarity_defect(const Matrix &m) {
    const Matrix defect = m.adjoint() * m - Matrix::Identity(m.rows(), m.cols());
    return defect.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const Matrix &m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Operator::Operator(Matrix entries, OperatorKind kind, int n_qubits)
    : entries_(std::move(entries)), kind_(kind), n_qubits_(n_qubits) {}

Operator::Operator(Matrix entries, OperatorKind kind)
    : entries_(std::move(entries)), kind_(kind),
      n_qubits_(checked_qubits(entries_)) {
    if (kind_ == OperatorKind::unitary &&
        unitarity_defect(entries_) > kKindTolerance) {
        throw InvariantError("operator marked unitary fails U^dag U = I");
    }
    if (kind_ == OperatorKind::hermitian &&
        hermiticity_defect(entries_) > kKindTolerance) {
        throw InvariantError("operator marked hermitian fails H = H^dag");
    }
}

Operator Operator::unchecked(Matrix entries, OperatorKind kind) {
    const int n = checked_qubits(entries);
    return {std::move(entries), kind, n};
}

Operator Operator::identity(int n_qubits) {
    const Index d = dim_for_qubits(n_qubits);
    return {Matrix::Identity(d, d), OperatorKind::unitary, n_qubits};
}

Operator Operator::adjoint() const {
    return {entries_.adjoint(), kind_, n_qubits_};
}

Operator Operator::operator*(const Operator &rhs) const {
    if (rhs.dim() != dim()) {
        throw DimensionError("operator product dimension mismatch");
    }
    const bool unitary = kind_ == OperatorKind::unitary &&
                         rhs.kind_ == OperatorKind::unitary;
    return {entries_ * rhs.entries_,
            unitary ? OperatorKind::unitary : OperatorKind::general, n_qubits_};
}

namespace gates {

Operator pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return Operator{std::move(m), OperatorKind::hermitian};
}

Operator pauli_y() {
    Matrix m(2, 2);
    m << 0, cplx{0, -1}, cplx{0, 1}, 0;
    return Operator{std::move(m), OperatorKind::hermitian};
}

Operator pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return Operator{std::move(m), OperatorKind::hermitian};
}

Operator hadamard() {
    Matrix m(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    m << s, s, s, -s;
    return Operator{std::move(m), OperatorKind::unitary};
}

Operator pauli(Axis axis) {
    switch (axis) {
    case Axis::x:
        return pauli_x();
    case Axis::y:
        return pauli_y();
    case Axis::z:
        break;
    }
    return pauli_z();
}

} // namespace gates

Operator tensor_product(const Operator &a, const Operator &b) {
    const Index da = a.dim();
    const Index db = b.dim();
    Matrix out(da * db, da * db);
    for (Index i = 0; i < da; ++i) {
        for (Index j = 0; j < da; ++j) {
            out.block(i * db, j * db, db, db) = a(i, j) * b.matrix();
        }
    }
    OperatorKind kind = OperatorKind::general;
    if (a.kind() == b.kind()) {
        kind = a.kind();
    }
    return Operator::unchecked(std::move(out), kind);
}

Operator embed_local(const Operator &gate, QubitIndex q, int n_qubits) {
    if (gate.dim() != 2) {
        throw DimensionError("embed_local expects a 2x2 gate");
    }
    check_qubit(q, n_qubits);
    Matrix m = Matrix::Identity(dim_for_qubits(n_qubits),
                                dim_for_qubits(n_qubits));
    apply_local_gate_to_columns(m, n_qubits, gate.matrix(), q);
    return Operator::unchecked(std::move(m), gate.kind());
}

Operator rotation_gate(Axis axis, double angle) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    Matrix m(2, 2);
    switch (axis) {
    case Axis::x:
        m << c, cplx{0, -s}, cplx{0, -s}, c;
        break;
    case Axis::y:
        m << c, -s, s, c;
        break;
    case Axis::z:
        m << cplx{c, -s}, 0, 0, cplx{c, s};
        break;
    }
    return Operator::unchecked(std::move(m), OperatorKind::unitary);
}

// ------------------------------------------------------------- applications

void apply_local_gate_inplace(Vector &amps, int n_qubits, const Matrix &gate,
                              QubitIndex q) {
    check_qubit(q, n_qubits);
    const std::array<cplx, 4> g{gate(0, 0), gate(0, 1), gate(1, 0), gate(1, 1)};
    kernels::active().apply_pair_gate(amps.data(),
                                      static_cast<std::size_t>(amps.size()),
                                      bit_stride(n_qubits, q), g.data());
}

void apply_local_gate_to_columns(Matrix &m, int n_qubits, const Matrix &gate,
                                 QubitIndex q) {
    check_qubit(q, n_qubits);
    if (m.rows() != dim_for_qubits(n_qubits)) {
        throw DimensionError("row count does not match register width");
    }
    // Column-major storage: row bits are the low bits of the flat index, so
    // the whole matrix is one strided sweep.
    const std::array<cplx, 4> g{gate(0, 0), gate(0, 1), gate(1, 0), gate(1, 1)};
    kernels::active().apply_pair_gate(m.data(),
                                      static_cast<std::size_t>(m.size()),
                                      bit_stride(n_qubits, q), g.data());
}

void apply_diagonal_to_columns(Matrix &m, std::span<const cplx> phases) {
    if (static_cast<Index>(phases.size()) != m.rows()) {
        throw DimensionError("diagonal length does not match row count");
    }
    const auto &k = kernels::active();
    for (Index c = 0; c < m.cols(); ++c) {
        k.apply_diagonal(m.col(c).data(), phases.data(), phases.size());
    }
}

StateVector apply_unitary(const StateVector &state, const Operator &u) {
    if (u.dim() != state.dim()) {
        throw DimensionError("unitary of dim " + std::to_string(u.dim()) +
                             " applied to state of dim " +
                             std::to_string(state.dim()));
    }
    return {state.n_qubits(), u.matrix() * state.amplitudes()};
}

StateVector apply_local_gate(const StateVector &state, const Operator &gate,
                             QubitIndex q) {
    if (gate.dim() != 2) {
        throw DimensionError("apply_local_gate expects a 2x2 gate");
    }
    Vector amps = state.amplitudes();
    apply_local_gate_inplace(amps, state.n_qubits(), gate.matrix(), q);
    return {state.n_qubits(), std::move(amps)};
}

// ------------------------------------------------------------ partial traces

Operator partial_trace(const Operator &rho, std::span<const QubitIndex> keep) {
    const int n = rho.n_qubits();
    const std::vector<int> bits = sorted_unique(keep, n);
    if (bits.empty()) {
        throw DimensionError("partial_trace needs at least one kept qubit");
    }
    const IndexSplitter split(bits, n);
    const Index dk = Index{1} << bits.size();
    const auto d = static_cast<std::size_t>(rho.dim());
    std::vector<std::size_t> kept(d);
    std::vector<std::size_t> traced(d);
    for (std::size_t i = 0; i < d; ++i) {
        kept[i] = split.kept(i);
        traced[i] = split.traced(i);
    }
    Matrix out = Matrix::Zero(dk, dk);
    const Matrix &m = rho.matrix();
    for (std::size_t c = 0; c < d; ++c) {
        for (std::size_t r = 0; r < d; ++r) {
            if (traced[r] == traced[c]) {
                out(static_cast<Index>(kept[r]), static_cast<Index>(kept[c])) +=
                    m(static_cast<Index>(r), static_cast<Index>(c));
            }
        }
    }
    const OperatorKind kind = rho.kind() == OperatorKind::hermitian
                                  ? OperatorKind::hermitian
                                  : OperatorKind::general;
    return Operator::unchecked(std::move(out), kind);
}

Operator reduced_density(const StateVector &state,
                         std::span<const QubitIndex> keep) {
    const int n = state.n_qubits();
    const std::vector<int> bits = sorted_unique(keep, n);
    if (bits.empty()) {
        throw DimensionError("reduced_density needs at least one kept qubit");
    }
    const IndexSplitter split(bits, n);
    const Index dk = Index{1} << bits.size();
    const Index dt = state.dim() / dk;
    Matrix reshaped(dk, dt);
    for (Index i = 0; i < state.dim(); ++i) {
        const auto u = static_cast<std::size_t>(i);
        reshaped(static_cast<Index>(split.kept(u)),
                 static_cast<Index>(split.traced(u))) = state[i];
    }
    Matrix rho = reshaped * reshaped.adjoint();
    return Operator::unchecked(std::move(rho), OperatorKind::hermitian);
}

double expectation(const Operator &h, const StateVector &state) {
    if (h.dim() != state.dim()) {
        throw DimensionError("observable and state dimensions differ");
    }
    if (h.kind() != OperatorKind::hermitian &&
        hermiticity_defect(h.matrix()) > kKindTolerance) {
        throw InvariantError("expectation requires a hermitian observable");
    }
    const Vector h_psi = h.matrix() * state.amplitudes();
    const cplx value = kernels::active().inner_product(
        state.amplitudes().data(), h_psi.data(),
        static_cast<std::size_t>(state.dim()));
    if (std::abs(value.imag()) > kKindTolerance) {
        throw InvariantError("expectation has imaginary residue " +
                             std::to_string(value.imag()));
    }
    return value.real();
}

StateVector max_entangled_state(int n) {
    if (n < 1) {
        throw DimensionError("max_entangled_state needs n >= 1");
    }
    const Index d = dim_for_qubits(n);
    Vector amps = Vector::Zero(d * d);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (Index i = 0; i < d; ++i) {
        amps[i * d + i] = amp;
    }
    return {2 * n, std::move(amps)};
}

StateVector choi_vector(const Operator &w) {
    const Index d = w.dim();
    Vector amps(d * d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    // Row-major flattening of W: index a * d + b holds W_ab.
    Eigen::Map<Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic,
                             Eigen::RowMajor>>(amps.data(), d, d) =
        w.matrix() * scale;
    return {2 * w.n_qubits(), std::move(amps)};
}

Operator projector(const StateVector &psi) {
    Matrix m = psi.amplitudes() * psi.amplitudes().adjoint();
    return Operator::unchecked(std::move(m), OperatorKind::hermitian);
}

} // namespace plateau
