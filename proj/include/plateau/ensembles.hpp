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
 * Random-unitary ensembles and scrambling diagnostics.
 *
 * The scrambler model is V_S(g, t) = (V_2(g) V_1)^t, where V_1 applies
 * R_x R_y R_z to every qubit (R_z first) and V_2(g) is the all-pairs ZZ
 * entangler exp(-i g sum_{i<j} Z_i Z_j / sqrt(n)).
 */
#pragma once

#include "plateau/quantum_core.hpp"
#include "plateau/random.hpp"
#include "plateau/statistics.hpp"

#include <cstdint>
#include <vector>

namespace plateau {

/// Whether each period of the scrambler draws its own single-qubit angles
/// (per_period) or all periods reuse one V_1 (shared).
enum class AngleSchedule { per_period, shared };

struct ScramblerSpec {
    int n_qubits = 1;
    double g = 0.0; ///< entangling rate, >= 0
    int t = 0;      ///< number of periods, >= 0
    AngleSchedule schedule = AngleSchedule::per_period;
    /// Layout: angles[(p * n + i) * 3 + a] for period p, qubit i and axis
    /// a in (x, y, z). For the shared schedule p is always 0.
    std::vector<double> angles;

    [[nodiscard]] std::size_t expected_angle_count() const;
    [[nodiscard]] double angle(int period, int qubit, Axis axis) const;
    /// Throws InvariantError on a wrong angle count, non-finite angles,
    /// g < 0, t < 0 or n < 1.
    void validate() const;
};

/// Angles i.i.d. uniform in [0, 2 pi).
[[nodiscard]] ScramblerSpec
random_scrambler_spec(int n_qubits, double g, int t, std::uint64_t seed,
                      AngleSchedule schedule = AngleSchedule::per_period);
[[nodiscard]] ScramblerSpec
random_scrambler_spec(int n_qubits, double g, int t, Rng &rng,
                      AngleSchedule schedule = AngleSchedule::per_period);

/// Diagonal of V_2(g): exp(-i g sum_{i<j} z_i z_j / sqrt(n)), z = +-1.
[[nodiscard]] std::vector<cplx> entangler_phases(int n_qubits, double g);

/// 2x2 factor of V_1 on one qubit: R_x(ax) R_y(ay) R_z(az).
[[nodiscard]] Matrix single_qubit_block(double ax, double ay, double az);

[[nodiscard]] Operator scrambler_unitary(const ScramblerSpec &spec);

/// Haar-random unitary: QR of a complex Ginibre matrix with the phases of
/// R's diagonal folded back into Q.
[[nodiscard]] Operator haar_unitary(Index dim, std::uint64_t seed);
[[nodiscard]] Operator haar_unitary(Index dim, Rng &rng);

enum class EnsembleKind { haar, scrambler };

struct EnsembleSpec {
    EnsembleKind kind = EnsembleKind::haar;
    int n_qubits = 1;
    double g = 0.0;
    int t = 0;
    AngleSchedule schedule = AngleSchedule::per_period;
    std::uint64_t master_seed = 0;

    [[nodiscard]] static EnsembleSpec haar(int n_qubits, std::uint64_t seed);
    [[nodiscard]] static EnsembleSpec
    scrambler(int n_qubits, double g, int t, std::uint64_t seed,
              AngleSchedule schedule = AngleSchedule::per_period);

    /// Sample `index` of the stream; a pure function of (spec, index).
    [[nodiscard]] Operator sample(std::uint64_t index) const;
};

/// Infinite-temperature OTOC Tr[X~ Y X~^dag Y^dag] / d with X~ = V^dag X V.
[[nodiscard]] cplx otoc(const Operator &v, const Operator &x,
                        const Operator &y);

/// Monte Carlo estimate of F^(k) = E |Tr[U^dag V]|^{2k} over `samples`
/// i.i.d. pairs; pair i uses ensemble samples 2i and 2i + 1.
[[nodiscard]] EnsembleSummary frame_potential(const EnsembleSpec &spec, int k,
                                              std::size_t samples,
                                              unsigned threads = 0);

} // namespace plateau
