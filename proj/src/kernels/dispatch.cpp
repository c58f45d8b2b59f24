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

#include <cstdlib>
#include <string>

namespace plateau::kernels {

#if defined(PLATEAU_HAVE_AVX2)
namespace detail {
const KernelSet &avx2_table();
} // namespace detail
#endif

const KernelSet *avx2() {
#if defined(PLATEAU_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
    static const bool supported = [] {
        __builtin_cpu_init();
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    }();
    return supported ? &detail::avx2_table() : nullptr;
#else
    return nullptr;
#endif
}

const KernelSet &active() {
    static const KernelSet &chosen = []() -> const KernelSet & {
        const char *forced = std::getenv("PLATEAU_KERNELS");
        if (forced != nullptr && std::string{forced} == "scalar") {
            return scalar();
        }
        if (const KernelSet *simd = avx2()) {
            return *simd;
        }
        return scalar();
    }();
    return chosen;
}

} // namespace plateau::kernels
