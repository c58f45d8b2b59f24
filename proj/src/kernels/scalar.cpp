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
#include "plateau/kernels.hpp"

namespace plateau::kernels {
namespace {

void apply_pair_gate_scalar(cplx *amps, std::size_t size, std::size_t stride,
                            const cplx *gate) {
    const cplx g00 = gate[0];
    const cplx g01 = gate[1];
    const cplx g10 = gate[2];
    const cplx g11 = gate[3];
    for (std::size_t block = 0; block < size; block += 2 * stride) {
        for (std::size_t i = block; i < block + stride; ++i) {
            const cplx a = amps[i];
            const cplx b = amps[i + stride];
            amps[i] = g00 * a + g01 * b;
            amps[i + stride] = g10 * a + g11 * b;
        }
    }
}

void apply_diagonal_scalar(cplx *amps, const cplx *phases, std::size_t size) {
    for (std::size_t i = 0; i < size; ++i) {
        amps[i] *= phases[i];
    }
}

cplx inner_product_scalar(const cplx *a, const cplx *b, std::size_t size) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

double norm_squared_scalar(const cplx *a, std::size_t size) {
    double acc = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
        acc += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    }
    return acc;
}

} // namespace

const KernelSet &scalar() {
    static const KernelSet table{"scalar", &apply_pair_gate_scalar,
                                 &apply_diagonal_scalar, &inner_product_scalar,
                                 &norm_squared_scalar};
    return table;
}

} // namespace plateau::kernels
