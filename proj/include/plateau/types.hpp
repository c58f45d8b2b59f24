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
 * Scalar/matrix aliases, qubit indexing, and the library's exception types.
 *
 * Bit ordering: qubit 0 is the most significant bit of a computational basis
 * index. Everything that maps a qubit onto a bit position goes through
 * bit_stride().
 */
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace plateau {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Mismatched register sizes, non-power-of-two dimensions, bad qubit indices.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// A value violates a documented precondition (non-unitary, bad weights...).
class InvariantError : public Error {
  public:
    using Error::Error;
};

/// Qubit position within a register. Range is checked against the register
/// at the point of use, since the index alone does not know the width.
class QubitIndex {
  public:
    constexpr explicit QubitIndex(int value) : value_(value) {}
    [[nodiscard]] constexpr int value() const { return value_; }
    constexpr auto operator<=>(const QubitIndex &) const = default;

  private:
    int value_;
};

/// Throws DimensionError unless 0 <= q < n_qubits.
void check_qubit(QubitIndex q, int n_qubits);

/// Distance in the amplitude array between basis states differing only in
/// qubit q, i.e. 2^(n-1-q).
[[nodiscard]] inline std::size_t bit_stride(int n_qubits, QubitIndex q) {
    return std::size_t{1} << static_cast<unsigned>(n_qubits - 1 - q.value());
}

/// Value (0 or 1) of qubit q in basis index `index`.
[[nodiscard]] inline int basis_bit(std::size_t index, int n_qubits,
                                   QubitIndex q) {
    return (index & bit_stride(n_qubits, q)) != 0 ? 1 : 0;
}

/// log2(dim) for a power of two >= 2; throws DimensionError otherwise.
[[nodiscard]] int qubits_for_dim(Index dim);

[[nodiscard]] inline Index dim_for_qubits(int n_qubits) {
    return Index{1} << n_qubits;
}

} // namespace plateau
