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
// Compiled with -mavx2 -mfma. Nothing in this file may run before the
// dispatcher has confirmed CPU support.

#include "plateau/kernels.hpp"

#include <immintrin.h>

namespace plateau::kernels::detail {
namespace {

// One __m256d holds two complex doubles laid out (re0, im0, re1, im1).

inline __m256d swap_re_im(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

/// v * g for a broadcast complex scalar g = (gr, gi).
inline __m256d cmul_scalar(__m256d v, __m256d gr, __m256d gi) {
    return _mm256_fmaddsub_pd(v, gr, _mm256_mul_pd(swap_re_im(v), gi));
}

/// Lane-wise complex product of two vectors of complex numbers.
inline __m256d cmul(__m256d a, __m256d b) {
    const __m256d br = _mm256_movedup_pd(b);
    const __m256d bi = _mm256_permute_pd(b, 0b1111);
    return _mm256_fmaddsub_pd(a, br, _mm256_mul_pd(swap_re_im(a), bi));
}

inline double *as_doubles(cplx *p) { return reinterpret_cast<double *>(p); }
inline const double *as_doubles(const cplx *p) {
    return reinterpret_cast<const double *>(p);
}

void apply_pair_gate_stride1(cplx *amps, std::size_t size, const cplx *gate) {
    // Pair (a, b) sits in a single register. out = c0 * (a, a) + c1 * (b, b)
    // with c0 = (g00, g10), c1 = (g01, g11).
    const __m256d c0 = _mm256_setr_pd(gate[0].real(), gate[0].imag(),
                                      gate[2].real(), gate[2].imag());
    const __m256d c1 = _mm256_setr_pd(gate[1].real(), gate[1].imag(),
                                      gate[3].real(), gate[3].imag());
    for (std::size_t i = 0; i < size; i += 2) {
        const __m256d v = _mm256_loadu_pd(as_doubles(amps + i));
        const __m256d aa = _mm256_permute2f128_pd(v, v, 0x00);
        const __m256d bb = _mm256_permute2f128_pd(v, v, 0x11);
        const __m256d out = _mm256_add_pd(cmul(c0, aa), cmul(c1, bb));
        _mm256_storeu_pd(as_doubles(amps + i), out);
    }
}

void apply_pair_gate_avx2(cplx *amps, std::size_t size, std::size_t stride,
                          const cplx *gate) {
    if (stride == 1) {
        apply_pair_gate_stride1(amps, size, gate);
        return;
    }
    const __m256d g00r = _mm256_set1_pd(gate[0].real());
    const __m256d g00i = _mm256_set1_pd(gate[0].imag());
    const __m256d g01r = _mm256_set1_pd(gate[1].real());
    const __m256d g01i = _mm256_set1_pd(gate[1].imag());
    const __m256d g10r = _mm256_set1_pd(gate[2].real());
    const __m256d g10i = _mm256_set1_pd(gate[2].imag());
    const __m256d g11r = _mm256_set1_pd(gate[3].real());
    const __m256d g11i = _mm256_set1_pd(gate[3].imag());
    for (std::size_t block = 0; block < size; block += 2 * stride) {
        for (std::size_t i = block; i < block + stride; i += 2) {
            double *pa = as_doubles(amps + i);
            double *pb = as_doubles(amps + i + stride);
            const __m256d a = _mm256_loadu_pd(pa);
            const __m256d b = _mm256_loadu_pd(pb);
            const __m256d out_a = _mm256_add_pd(cmul_scalar(a, g00r, g00i),
                                                cmul_scalar(b, g01r, g01i));
            const __m256d out_b = _mm256_add_pd(cmul_scalar(a, g10r, g10i),
                                                cmul_scalar(b, g11r, g11i));
            _mm256_storeu_pd(pa, out_a);
            _mm256_storeu_pd(pb, out_b);
        }
    }
}

void apply_diagonal_avx2(cplx *amps, const cplx *phases, std::size_t size) {
    std::size_t i = 0;
    for (; i + 2 <= size; i += 2) {
        const __m256d a = _mm256_loadu_pd(as_doubles(amps + i));
        const __m256d p = _mm256_loadu_pd(as_doubles(phases + i));
        _mm256_storeu_pd(as_doubles(amps + i), cmul(a, p));
    }
    for (; i < size; ++i) {
        amps[i] *= phases[i];
    }
}

inline double horizontal_sum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

cplx inner_product_avx2(const cplx *a, const cplx *b, std::size_t size) {
    // re accumulates (ar*br, ai*bi); im accumulates (ar*bi, ai*br) and is
    // reduced with alternating signs.
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= size; i += 2) {
        const __m256d va = _mm256_loadu_pd(as_doubles(a + i));
        const __m256d vb = _mm256_loadu_pd(as_doubles(b + i));
        acc_re = _mm256_fmadd_pd(va, vb, acc_re);
        acc_im = _mm256_fmadd_pd(va, swap_re_im(vb), acc_im);
    }
    const __m256d sign = _mm256_setr_pd(1.0, -1.0, 1.0, -1.0);
    double re = horizontal_sum(acc_re);
    double im = horizontal_sum(_mm256_mul_pd(acc_im, sign));
    for (; i < size; ++i) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

double norm_squared_avx2(const cplx *a, std::size_t size) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= size; i += 2) {
        const __m256d v = _mm256_loadu_pd(as_doubles(a + i));
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double total = horizontal_sum(acc);
    for (; i < size; ++i) {
        total += std::norm(a[i]);
    }
    return total;
}

} // namespace

const KernelSet &avx2_table() {
    static const KernelSet table{"avx2", &apply_pair_gate_avx2,
                                 &apply_diagonal_avx2, &inner_product_avx2,
                                 &norm_squared_avx2};
    return table;
}

} // namespace plateau::kernels::detail
