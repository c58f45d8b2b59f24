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
#pragma once

#include <cstdint>
#include <cstddef>
#include <span>

namespace plateau {

/// Monte Carlo summary of a scalar sample.
struct EnsembleSummary {
    double mean = 0.0;
    double variance = 0.0; ///< unbiased, divisor samples - 1
    double std_error_of_mean = 0.0;
    /// sqrt((m4 - (N-3)/(N-1) s^4) / N), m4 the fourth central moment.
    double std_error_of_variance = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
};

/// Two-pass summary in index order, so the result depends only on the
/// values and not on how they were produced. Requires >= 2 values.
[[nodiscard]] EnsembleSummary summarize(std::span<const double> values,
                                        std::uint64_t seed);

/// Least squares of log2(variance) against x.
struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Throws InvariantError unless every variance is > 0 and there are at
/// least two distinct x values.
[[nodiscard]] SlopeFit fit_log2_slope(std::span<const double> xs,
                                      std::span<const double> variances);

/// |a - b| <= k * sqrt(se_a^2 + se_b^2), plus `floor` for exactly
/// degenerate samples whose standard errors vanish.
[[nodiscard]] bool within_standard_errors(double a, double b, double se_a,
                                          double se_b, double k,
                                          double floor = 1e-12);

} // namespace plateau
