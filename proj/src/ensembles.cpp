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
#include "plateau/ensembles.hpp"

#include "plateau/parallel.hpp"

#include <cmath>
#include <cstring>
#include <numbers>
#include <string>

namespace plateau {

std::uint64_t double_bits(double value) {
    std::uint64_t bits = 0;
    static_assert(sizeof(bits) == sizeof(value));
    std::memcpy(&bits, &value, sizeof(bits));
    return bits;
}

// ------------------------------------------------------------ ScramblerSpec

std::size_t ScramblerSpec::expected_angle_count() const {
    const auto per_layer = static_cast<std::size_t>(3 * n_qubits);
    if (schedule == AngleSchedule::shared) {
        return per_layer;
    }
    return per_layer * static_cast<std::size_t>(std::max(t, 0));
}

double ScramblerSpec::angle(int period, int qubit, Axis axis) const {
    const int p = schedule == AngleSchedule::shared ? 0 : period;
    const auto idx = static_cast<std::size_t>((p * n_qubits + qubit) * 3 +
                                              static_cast<int>(axis));
    return angles.at(idx);
}

void ScramblerSpec::validate() const {
    if (n_qubits < 1) {
        throw InvariantError("scrambler needs n >= 1");
    }
    if (!(g >= 0.0) || !std::isfinite(g)) {
        throw InvariantError("scrambler entangling rate g must be finite and >= 0");
    }
    if (t < 0) {
        throw InvariantError("scrambler period count t must be >= 0");
    }
    if (angles.size() != expected_angle_count()) {
        throw InvariantError("scrambler expects " +
                             std::to_string(expected_angle_count()) +
                             " angles, got " + std::to_string(angles.size()));
    }
    for (double a : angles) {
        if (!std::isfinite(a)) {
            throw InvariantError("scrambler angles must be finite");
        }
    }
}

ScramblerSpec random_scrambler_spec(int n_qubits, double g, int t, Rng &rng,
                                    AngleSchedule schedule) {
    ScramblerSpec spec{n_qubits, g, t, schedule, {}};
    std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);
    spec.angles.resize(spec.expected_angle_count());
    for (double &a : spec.angles) {
        a = uniform(rng);
    }
    spec.validate();
    return spec;
}

ScramblerSpec random_scrambler_spec(int n_qubits, double g, int t,
                                    std::uint64_t seed, AngleSchedule schedule) {
    Rng rng{seed};
    return random_scrambler_spec(n_qubits, g, t, rng, schedule);
}

std::vector<cplx> entangler_phases(int n_qubits, double g) {
    const auto d = static_cast<std::size_t>(dim_for_qubits(n_qubits));
    std::vector<cplx> phases(d);
    const double scale = g / std::sqrt(static_cast<double>(n_qubits));
    for (std::size_t idx = 0; idx < d; ++idx) {
        // sum_{i<j} z_i z_j = ((sum z)^2 - n) / 2
        int total = 0;
        for (int q = 0; q < n_qubits; ++q) {
            total += basis_bit(idx, n_qubits, QubitIndex{q}) != 0 ? -1 : 1;
        }
        const double pair_sum = 0.5 * (total * total - n_qubits);
        phases[idx] = std::polar(1.0, -scale * pair_sum);
    }
    return phases;
}

Matrix single_qubit_block(double ax, double ay, double az) {
    return rotation_gate(Axis::x, ax).matrix() *
           rotation_gate(Axis::y, ay).matrix() *
           rotation_gate(Axis::z, az).matrix();
}

Operator scrambler_unitary(const ScramblerSpec &spec) {
    spec.validate();
    const int n = spec.n_qubits;
    const Index d = dim_for_qubits(n);
    Matrix m = Matrix::Identity(d, d);
    if (spec.t == 0) {
        return Operator::unchecked(std::move(m), OperatorKind::unitary);
    }
    const std::vector<cplx> phases = entangler_phases(n, spec.g);
    std::vector<Matrix> shared_blocks;
    if (spec.schedule == AngleSchedule::shared) {
        for (int q = 0; q < n; ++q) {
            shared_blocks.push_back(single_qubit_block(
                spec.angle(0, q, Axis::x), spec.angle(0, q, Axis::y),
                spec.angle(0, q, Axis::z)));
        }
    }
    for (int p = 0; p < spec.t; ++p) {
        for (int q = 0; q < n; ++q) {
            if (spec.schedule == AngleSchedule::shared) {
                apply_local_gate_to_columns(m, n, shared_blocks[q], QubitIndex{q});
            } else {
                apply_local_gate_to_columns(
                    m, n,
                    single_qubit_block(spec.angle(p, q, Axis::x),
                                       spec.angle(p, q, Axis::y),
                                       spec.angle(p, q, Axis::z)),
                    QubitIndex{q});
            }
        }
        apply_diagonal_to_columns(m, phases);
    }
    return Operator::unchecked(std::move(m), OperatorKind::unitary);
}

// ----------------------------------------------------------------------- Haar

Operator haar_unitary(Index dim, Rng &rng) {
    if (dim < 2) {
        throw DimensionError("haar_unitary needs dim >= 2");
    }
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    Matrix z(dim, dim);
    for (Index c = 0; c < dim; ++c) {
        for (Index r = 0; r < dim; ++r) {
            const double re = normal(rng);
            const double im = normal(rng);
            z(r, c) = cplx{re, im};
        }
    }
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    const auto &packed = qr.matrixQR();
    for (Index j = 0; j < dim; ++j) {
        const cplx r = packed(j, j);
        const double mag = std::abs(r);
        if (mag > 0.0) {
            q.col(j) *= r / mag;
        }
    }
    return Operator::unchecked(std::move(q), OperatorKind::unitary);
}

Operator haar_unitary(Index dim, std::uint64_t seed) {
    Rng rng{seed};
    return haar_unitary(dim, rng);
}

// --------------------------------------------------------------- EnsembleSpec

EnsembleSpec EnsembleSpec::haar(int n_qubits, std::uint64_t seed) {
    return {EnsembleKind::haar, n_qubits, 0.0, 0, AngleSchedule::per_period, seed};
}

EnsembleSpec EnsembleSpec::scrambler(int n_qubits, double g, int t,
                                     std::uint64_t seed,
                                     AngleSchedule schedule) {
    return {EnsembleKind::scrambler, n_qubits, g, t, schedule, seed};
}

Operator EnsembleSpec::sample(std::uint64_t index) const {
    Rng rng = SeedPlan{master_seed}.sample_rng(index);
    if (kind == EnsembleKind::haar) {
        return haar_unitary(dim_for_qubits(n_qubits), rng);
    }
    return scrambler_unitary(random_scrambler_spec(n_qubits, g, t, rng, schedule));
}

// ---------------------------------------------------------------- diagnostics

cplx otoc(const Operator &v, const Operator &x, const Operator &y) {
    if (v.dim() != x.dim() || v.dim() != y.dim()) {
        throw DimensionError("otoc operands must share one dimension");
    }
    const Matrix xt = v.matrix().adjoint() * x.matrix() * v.matrix();
    const Matrix prod = xt * y.matrix() * xt.adjoint() * y.matrix().adjoint();
    return prod.trace() / static_cast<double>(v.dim());
}

EnsembleSummary frame_potential(const EnsembleSpec &spec, int k,
                                std::size_t samples, unsigned threads) {
    if (k != 1 && k != 2) {
        throw InvariantError("frame potential supports k in {1, 2}");
    }
    if (samples < 2) {
        throw InvariantError("frame potential needs at least two pairs");
    }
    const auto values = parallel_map<double>(samples, threads, [&](std::size_t i) {
        const Operator u = spec.sample(2 * i);
        const Operator v = spec.sample(2 * i + 1);
        const double overlap2 =
            std::norm(u.matrix().conjugate().cwiseProduct(v.matrix()).sum());
        return k == 1 ? overlap2 : overlap2 * overlap2;
    });
    return summarize(values, spec.master_seed);
}

} // namespace plateau
