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

#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <numbers>

using namespace plateau;

TEST_CASE("qubit 0 is the most significant bit") {
    CHECK(bit_stride(3, QubitIndex{0}) == 4);
    CHECK(bit_stride(3, QubitIndex{2}) == 1);
    CHECK(basis_bit(0b100, 3, QubitIndex{0}) == 1);
    CHECK(basis_bit(0b100, 3, QubitIndex{2}) == 0);

    // X on qubit 0 of |000> gives |100> = index 4.
    const auto s = apply_local_gate(StateVector::basis(3, 0), gates::pauli_x(), QubitIndex{0});
    CHECK(std::abs(s[4] - cplx{1.0}) < 1e-15);
}

TEST_CASE("state and operator validation") {
    CHECK_THROWS_AS(StateVector(2, Vector::Ones(4)), InvariantError);
    CHECK_THROWS_AS(StateVector(2, Vector::Ones(3)), DimensionError);
    CHECK_NOTHROW(StateVector::normalized(2, Vector::Ones(4)));
    CHECK_THROWS_AS(Operator(Matrix::Ones(2, 2), OperatorKind::unitary), InvariantError);
    CHECK_THROWS_AS(Operator(Matrix::Ones(3, 3)), DimensionError);
    Matrix skew(2, 2);
    skew << 0.0, 1.0, -1.0, 0.0;
    CHECK_THROWS_AS(Operator(skew, OperatorKind::hermitian), InvariantError);
    CHECK_THROWS_AS(check_qubit(QubitIndex{3}, 3), DimensionError);
}

TEST_CASE("rotation gates equal the matrix exponential") {
    for (double theta : {0.0, 0.3, -1.7, std::numbers::pi, 5.0}) {
        CHECK(oracle::max_abs(rotation_gate(Axis::x, theta).matrix() - oracle::rotation('x', theta)) < 1e-13);
        CHECK(oracle::max_abs(rotation_gate(Axis::y, theta).matrix() - oracle::rotation('y', theta)) < 1e-13);
        CHECK(oracle::max_abs(rotation_gate(Axis::z, theta).matrix() - oracle::rotation('z', theta)) < 1e-13);
    }
}

TEST_CASE("embedding and strided application agree with Kronecker products") {
    std::mt19937_64 rng{42};
    for (int n = 1; n <= 5; ++n) {
        const oracle::Mat g = oracle::random_unitary(2, rng);
        const Operator gate(g, OperatorKind::unitary);
        const oracle::Vec psi = oracle::random_state(Index{1} << n, rng);
        const oracle::Mat m = oracle::random_unitary(Index{1} << n, rng);
        for (int q = 0; q < n; ++q) {
            const oracle::Mat dense = oracle::embed(g, q, n);
            CHECK(oracle::max_abs(embed_local(gate, QubitIndex{q}, n).matrix() - dense) < 1e-14);

            const auto out = apply_local_gate(StateVector(n, psi), gate, QubitIndex{q});
            CHECK((out.amplitudes() - dense * psi).norm() < 1e-13);

            Matrix cols = m;
            apply_local_gate_to_columns(cols, n, g, QubitIndex{q});
            CHECK(oracle::max_abs(cols - dense * m) < 1e-13);
        }
    }
}

TEST_CASE("diagonal application on columns") {
    std::mt19937_64 rng{5};
    const oracle::Mat m = oracle::random_unitary(8, rng);
    std::vector<cplx> phases(8);
    for (std::size_t i = 0; i < phases.size(); ++i) {
        phases[i] = std::polar(1.0, 0.37 * static_cast<double>(i * i));
    }
    Matrix cols = m;
    apply_diagonal_to_columns(cols, phases);
    const oracle::Vec diag = Eigen::Map<const oracle::Vec>(phases.data(), 8);
    CHECK(oracle::max_abs(cols - diag.asDiagonal() * m) < 1e-14);
}

TEST_CASE("tensor product ordering") {
    const auto zx = tensor_product(gates::pauli_z(), gates::pauli_x());
    CHECK(oracle::max_abs(zx.matrix() - oracle::kron(oracle::pauli('z'), oracle::pauli('x'))) == 0.0);
    CHECK(zx.kind() == OperatorKind::hermitian);
}

TEST_CASE("partial trace against the definition") {
    std::mt19937_64 rng{9};
    const int n = 4;
    const oracle::Mat a = oracle::random_hermitian(16, rng);
    const Operator rho(a, OperatorKind::hermitian);
    const std::vector<std::vector<int>> keeps{{0}, {3}, {1, 2}, {0, 3}, {0, 1, 3}, {0, 1, 2, 3}};
    for (const auto &keep : keeps) {
        std::vector<QubitIndex> kq;
        for (int q : keep) kq.emplace_back(q);
        const auto got = partial_trace(rho, kq);
        CHECK(oracle::max_abs(got.matrix() - oracle::partial_trace(a, n, keep)) < 1e-12);
    }
    const std::vector<QubitIndex> unsorted{QubitIndex{2}, QubitIndex{1}};
    const std::vector<QubitIndex> sorted{QubitIndex{1}, QubitIndex{2}};
    CHECK(oracle::max_abs(partial_trace(rho, unsorted).matrix() - partial_trace(rho, sorted).matrix()) == 0.0);
    const std::vector<QubitIndex> duplicate{QubitIndex{1}, QubitIndex{1}};
    CHECK_THROWS_AS(partial_trace(rho, duplicate), DimensionError);
    CHECK_THROWS(partial_trace(rho, std::vector<QubitIndex>{}));
}

TEST_CASE("reduced density of a pure state") {
    std::mt19937_64 rng{13};
    const int n = 5;
    const oracle::Vec psi = oracle::random_state(32, rng);
    const StateVector state(n, psi);
    const oracle::Mat full = psi * psi.adjoint();
    for (const std::vector<int> keep : {std::vector<int>{0}, {4}, {1, 3}, {0, 2, 4}}) {
        std::vector<QubitIndex> kq;
        for (int q : keep) kq.emplace_back(q);
        const auto rho = reduced_density(state, kq);
        CHECK(oracle::max_abs(rho.matrix() - oracle::partial_trace(full, n, keep)) < 1e-13);
        CHECK(std::abs(rho.trace() - cplx{1.0}) < 1e-13);
        CHECK(hermiticity_defect(rho.matrix()) < 1e-14);
    }
}

TEST_CASE("expectation values") {
    std::mt19937_64 rng{17};
    const oracle::Mat h = oracle::random_hermitian(8, rng);
    const oracle::Vec psi = oracle::random_state(8, rng);
    const double ref = (psi.adjoint() * h * psi)(0, 0).real();
    CHECK(expectation(Operator(h, OperatorKind::hermitian), StateVector(3, psi)) ==
          Catch::Approx(ref).epsilon(1e-13));
    CHECK(expectation(gates::pauli_z(), StateVector::basis(1, 1)) == -1.0);
    CHECK_THROWS_AS(expectation(Operator(oracle::random_unitary(8, rng)), StateVector(3, psi)),
                    InvariantError);
}

TEST_CASE("choi vector of a unitary") {
    std::mt19937_64 rng{21};
    const int n = 2;
    const oracle::Mat w = oracle::random_unitary(4, rng);
    const auto choi = choi_vector(Operator(w, OperatorKind::unitary));
    const auto phi = max_entangled_state(n);
    const oracle::Vec expected = oracle::kron(w, oracle::Mat::Identity(4, 4)) * phi.amplitudes();
    CHECK((choi.amplitudes() - expected).norm() < 1e-13);
    CHECK(std::abs(choi_vector(Operator::identity(n)).inner(phi) - cplx{1.0}) < 1e-14);
}

TEST_CASE("projector is a rank-one hermitian idempotent") {
    std::mt19937_64 rng{23};
    const StateVector psi(2, oracle::random_state(4, rng));
    const auto p = projector(psi);
    CHECK(p.kind() == OperatorKind::hermitian);
    CHECK(oracle::max_abs(p.matrix() * p.matrix() - p.matrix()) < 1e-14);
    CHECK(std::abs(p.trace() - cplx{1.0}) < 1e-14);
}
