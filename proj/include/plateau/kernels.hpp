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
 * Data-parallel inner loops over complex amplitude arrays.
 *
 * Every kernel has a scalar reference implementation. When the build enables
 * it and the CPU reports AVX2+FMA, an AVX2 variant of the same table is
 * selected at runtime. Setting PLATEAU_KERNELS=scalar (or =avx2) in the
 * environment overrides the automatic choice.
 */
#pragma once

#include "plateau/types.hpp"

#include <cstddef>
#include <string_view>

namespace plateau::kernels {

struct KernelSet {
    std::string_view name;

    /// For every index i with (i & stride) == 0 and i < size, replaces the
    /// pair (a[i], a[i + stride]) with gate * (a[i], a[i + stride]). `gate` is
    /// a row-major 2x2 matrix. `size` is a multiple of 2 * stride.
    void (*apply_pair_gate)(cplx *amps, std::size_t size, std::size_t stride,
                            const cplx *gate);

    /// a[i] *= phases[i].
    void (*apply_diagonal)(cplx *amps, const cplx *phases, std::size_t size);

    /// sum_i conj(a[i]) * b[i].
    cplx (*inner_product)(const cplx *a, const cplx *b, std::size_t size);

    /// sum_i |a[i]|^2.
    double (*norm_squared)(const cplx *a, std::size_t size);
};

[[nodiscard]] const KernelSet &scalar();

/// nullptr when the AVX2 variants were not compiled in or the running CPU
/// lacks AVX2/FMA.
[[nodiscard]] const KernelSet *avx2();

/// Kernel table used by the library. Resolved once on first call.
[[nodiscard]] const KernelSet &active();

} // namespace plateau::kernels
