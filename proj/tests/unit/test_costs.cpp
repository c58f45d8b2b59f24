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
#include "plateau/ensembles.hpp"

#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <numbers>

using namespace plateau;

namespace {

Operator random_u(int n, std::mt19937_64 &rng) {
    return Operator(oracle::random_unitary(Index{1} << n, rng), OperatorKind::unitary);
}

oracle::Vec dense_phi_plus(int n) {
    const Index d = Index{1} << n;
    oracle::Vec v = oracle::Vec::Zero(d * d);
    for (Index i = 0; i < d; ++i) v[i * d + i] = 1.0;
    return v / std::sqrt(static_cast<double>(d));
}

// 1 - <chi| 1 (x) |phi+><phi+|_{S_j R_j} |chi> with everything dense.
double dense_lhst_local(const oracle::Mat &u, const oracle::Mat &v, int j) {
    const int n = static_cast<int>(std::log2(static_cast<double>(u.rows())));
    const oracle::Mat w = u * v.adjoint();
    const oracle::Vec chi = oracle::kron(w, oracle::Mat::Identity(w.rows(), w.cols())) * dense_phi_plus(n);
    const oracle::Vec bell = dense_phi_plus(1);
    // Build the projector by a permutation-free sum over basis pairs.
    const Index big = chi.size();
    oracle::Mat proj = oracle::Mat::Zero(big, big);
    const int width = 2 * n;
    auto bit = [width](Index idx, int q) { return (idx >> (width - 1 - q)) & 1; };
    for (Index r = 0; r < big; ++r) {
        for (Index c = 0; c < big; ++c) {
            bool others_equal = true;
            for (int q = 0; q < width; ++q) {
                if (q == j || q == n + j) continue;
                if (bit(r, q) != bit(c, q)) others_equal = false;
            }
            if (!others_equal) continue;
            const Index a = 2 * bit(r, j) + bit(r, n + j);
            const Index b = 2 * bit(c, j) + bit(c, n + j);
            proj(r, c) = bell[a] * std::conj(bell[b]);
        }
    }
    return 1.0 - (chi.adjoint() * proj * chi)(0, 0).real();
}

} // namespace

TEST_CASE("generic cost examples") {
    std::mt19937_64 rng{1};
    const auto u = random_u(2, rng);
    const StateVector psi(2, oracle::random_state(4, rng));
    CHECK(generic_cost(u, u, {projector(psi), psi}) == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(generic_cost(u, random_u(2, rng), {Operator::identity(2), psi}) ==
          Catch::Approx(1.0).epsilon(1e-12));
    const auto zero = StateVector::basis(1, 0);
    CHECK(generic_cost(Operator::identity(1), Operator::identity(1), {gates::pauli_z(), zero}) == 1.0);
    CHECK(generic_cost(Operator::identity(1), gates::pauli_x(), {gates::pauli_z(), zero}) ==
          Catch::Approx(-1.0).margin(1e-15));
    CHECK_THROWS_AS(generic_cost(u, u, {Operator(oracle::random_unitary(4, rng)), psi}), InvariantError);
    CHECK_THROWS_AS(generic_cost(u, random_u(1, rng), {Operator::identity(2), psi}), DimensionError);
}

TEST_CASE("generic cost stays within the observable spectrum") {
    std::mt19937_64 rng{2};
    const oracle::Mat h = oracle::random_hermitian(8, rng);
    Eigen::SelfAdjointEigenSolver<oracle::Mat> eig(h);
    const Operator hop(h, OperatorKind::hermitian);
    for (int i = 0; i < 20; ++i) {
        const StateVector psi(3, oracle::random_state(8, rng));
        const double c = generic_cost(random_u(3, rng), random_u(3, rng), {hop, psi});
        CHECK(c >= eig.eigenvalues().minCoeff() - 1e-12);
        CHECK(c <= eig.eigenvalues().maxCoeff() + 1e-12);
    }
}

TEST_CASE("hilbert-schmidt test examples") {
    std::mt19937_64 rng{3};
    const auto u = random_u(3, rng);
    CHECK(hst_cost(u, u) == Catch::Approx(0.0).margin(1e-12));
    CHECK(hst_cost(Operator::identity(1), gates::pauli_x()) == 1.0);
    CHECK(hst_cost(Operator::identity(1), rotation_gate(Axis::z, std::numbers::pi / 2)) ==
          Catch::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(hst_cost(u, Operator::identity(2)), DimensionError);
}

TEST_CASE("local hilbert-schmidt test examples") {
    std::mt19937_64 rng{4};
    for (int n = 1; n <= 3; ++n) {
        const auto u = random_u(n, rng);
        for (double c : lhst_local_costs(u, u)) {
            CHECK(c == Catch::Approx(0.0).margin(1e-12));
        }
    }
    const auto u1 = random_u(1, rng);
    const auto v1 = random_u(1, rng);
    CHECK(lhst_local_cost(u1, v1, QubitIndex{0}) == Catch::Approx(hst_cost(u1, v1)).epsilon(1e-12));

    const auto x0 = embed_local(gates::pauli_x(), QubitIndex{0}, 2);
    const auto local = lhst_local_costs(Operator::identity(2), x0);
    CHECK(local[0] == Catch::Approx(1.0).epsilon(1e-14));
    CHECK(local[1] == Catch::Approx(0.0).margin(1e-14));
    CHECK(lhst_cost(Operator::identity(2), x0) == Catch::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(lhst_local_cost(u1, v1, QubitIndex{1}), DimensionError);
}

TEST_CASE("local terms match the dense Bell-projector expectation") {
    std::mt19937_64 rng{5};
    for (int trial = 0; trial < 5; ++trial) {
        const oracle::Mat u = oracle::random_unitary(4, rng);
        const oracle::Mat v = oracle::random_unitary(4, rng);
        const Operator uo(u, OperatorKind::unitary);
        const Operator vo(v, OperatorKind::unitary);
        for (int j = 0; j < 2; ++j) {
            CHECK(std::abs(lhst_local_cost(uo, vo, QubitIndex{j}) - dense_lhst_local(u, v, j)) < 1e-12);
        }
    }
}

TEST_CASE("choi overlaps are normalized Hilbert-Schmidt products") {
    std::mt19937_64 rng{6};
    const auto w = random_u(2, rng);
    const auto v = random_u(2, rng);
    const cplx overlap = choi_vector(v).inner(choi_vector(w));
    const cplx expected = (v.matrix().adjoint() * w.matrix()).trace() / 4.0;
    CHECK(std::abs(overlap - expected) < 1e-12);
}

TEST_CASE("sandwich bound and range on random pairs") {
    std::mt19937_64 rng{7};
    for (int n = 2; n <= 4; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            const auto u = random_u(n, rng);
            const auto v = random_u(n, rng);
            const double hst = hst_cost(u, v);
            const double lhst = lhst_cost(u, v);
            CHECK(lhst <= hst + 1e-10);
            CHECK(hst <= n * lhst + 1e-10);
            CHECK(hst >= 0.0);
            CHECK(hst <= 1.0);
            CHECK(lhst >= -1e-15);
            CHECK(lhst <= 1.0 + 1e-15);
        }
    }
}

TEST_CASE("costs ignore global phases") {
    std::mt19937_64 rng{8};
    const auto u = random_u(3, rng);
    const auto v = random_u(3, rng);
    const Operator phased(std::polar(1.0, 0.77) * u.matrix(), OperatorKind::unitary);
    const StateVector psi(3, oracle::random_state(8, rng));
    const Operator h(oracle::random_hermitian(8, rng), OperatorKind::hermitian);
    CHECK(std::abs(hst_cost(u, v) - hst_cost(phased, v)) < 1e-12);
    CHECK(std::abs(lhst_cost(u, v) - lhst_cost(phased, v)) < 1e-12);
    CHECK(std::abs(generic_cost(u, v, {h, psi}) - generic_cost(phased, v, {h, psi})) < 1e-12);
}

TEST_CASE("hst faithfulness") {
    std::mt19937_64 rng{9};
    const auto u = random_u(2, rng);
    const Operator same(std::polar(1.0, -2.0) * u.matrix(), OperatorKind::unitary);
    CHECK(hst_cost(u, same) < 1e-12);
    CHECK(hst_cost(u, random_u(2, rng)) > 1e-3);
}

TEST_CASE("generalized cost reductions") {
    std::mt19937_64 rng{10};
    const auto u = random_u(2, rng);
    const auto v = random_u(2, rng);
    const StateVector psi(2, oracle::random_state(4, rng));
    const Operator h(oracle::random_hermitian(4, rng), OperatorKind::hermitian);

    SECTION("no dilation or reference is the generic cost") {
        const double g = gen_cost(u, v, {{1.0, psi, h}}, {2, 0, 0});
        CHECK(std::abs(g - generic_cost(u, v, {h, psi})) < 1e-12);
    }
    SECTION("local Bell terms reproduce the LHST cost") {
        // The generalized cost sees the Choi state of V^dag U.
        for (int n = 1; n <= 3; ++n) {
            const auto un = random_u(n, rng);
            const auto vn = random_u(n, rng);
            const double g = gen_cost(un, vn, lhst_training_terms(n), {n, 0, n});
            CHECK(std::abs(g - lhst_cost(vn.adjoint() * un, Operator::identity(n))) < 1e-12);
            const double g_target_only = gen_cost(Operator::identity(n), vn, lhst_training_terms(n), {n, 0, n});
            CHECK(std::abs(g_target_only - lhst_cost(Operator::identity(n), vn)) < 1e-12);
        }
    }
    SECTION("weights must sum to one") {
        CHECK_THROWS_AS(gen_cost(u, v, {{0.7, psi, h}}, {2, 0, 0}), InvariantError);
    }
    SECTION("explicit partition is enforced") {
        CHECK_THROWS_AS(gen_cost(u, v, {{1.0, psi, h}}, {1, 1, 0}), DimensionError);
    }
    SECTION("linear in the term list") {
        const StateVector psi2(2, oracle::random_state(4, rng));
        const Operator h2(oracle::random_hermitian(4, rng), OperatorKind::hermitian);
        const double c1 = gen_cost(u, v, {{1.0, psi, h}}, {2, 0, 0});
        const double c2 = gen_cost(u, v, {{1.0, psi2, h2}}, {2, 0, 0});
        const double mixed = gen_cost(u, v, {{0.25, psi, h}, {0.75, psi2, h2}}, {2, 0, 0});
        CHECK(std::abs(mixed - (0.25 * c1 + 0.75 * c2)) < 1e-12);
    }
}

TEST_CASE("factorized form agrees with the generalized cost") {
    // Psi = alpha |psi1>_SD |0>_R + beta |psi2>_SD |1>_R, H = H^S (x) Z_R.
    std::mt19937_64 rng{11};
    for (int n_d : {0, 1}) {
        const int n_sd = 1 + n_d;
        const Index d_sd = Index{1} << n_sd;
        const oracle::Vec psi1 = oracle::random_state(d_sd, rng);
        const oracle::Vec psi2 = oracle::random_state(d_sd, rng);
        const double alpha2 = 0.35;
        const oracle::Vec joint = std::sqrt(alpha2) * oracle::kron(psi1, oracle::Vec::Unit(2, 0)) +
                                  std::sqrt(1.0 - alpha2) * oracle::kron(psi2, oracle::Vec::Unit(2, 1));
        const oracle::Mat hs = oracle::random_hermitian(2, rng);
        const Operator h(oracle::kron(hs, oracle::pauli('z')), OperatorKind::hermitian);
        const auto u = random_u(n_sd, rng);
        const auto v = random_u(1, rng);
        const double direct = gen_cost(u, v, {{1.0, StateVector(n_sd + 1, joint), h}}, {1, n_d, 1});
        const Operator hso(hs, OperatorKind::hermitian);
        const std::vector<FactorizedGenTerm> terms{
            {alpha2, 1.0, hso, StateVector(n_sd, psi1)},
            {1.0 - alpha2, -1.0, hso, StateVector(n_sd, psi2)}};
        CHECK(std::abs(direct - factorized_gen_cost(u, v, terms, 1)) < 1e-12);
    }
}
