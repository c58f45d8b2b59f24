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
#include "plateau/statistics.hpp"

#include "plateau/types.hpp"

#include <algorithm>
#include <cmath>

namespace plateau {

EnsembleSummary summarize(std::span<const double> values, std::uint64_t seed) {
    const std::size_t n = values.size();
    if (n < 2) {
        throw InvariantError("summarize needs at least two samples");
    }
    const auto nd = static_cast<double>(n);
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    const double mean = sum / nd;
    double m2 = 0.0;
    double m4 = 0.0;
    for (double v : values) {
        const double dev = v - mean;
        const double dev2 = dev * dev;
        m2 += dev2;
        m4 += dev2 * dev2;
    }
    const double variance = m2 / (nd - 1.0);
    m4 /= nd;

    EnsembleSummary out;
    out.mean = mean;
    out.variance = variance;
    out.std_error_of_mean = std::sqrt(variance / nd);
    const double var_of_var =
        (m4 - (nd - 3.0) / (nd - 1.0) * variance * variance) / nd;
    out.std_error_of_variance = std::sqrt(std::max(var_of_var, 0.0));
    out.samples = n;
    out.seed = seed;
    return out;
}

SlopeFit fit_log2_slope(std::span<const double> xs,
                        std::span<const double> variances) {
    if (xs.size() != variances.size() || xs.size() < 2) {
        throw InvariantError("slope fit needs matching arrays of >= 2 points");
    }
    const auto n = static_cast<double>(xs.size());
    double sx = 0.0;
    double sy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(variances[i] > 0.0)) {
            throw InvariantError("slope fit requires strictly positive variances");
        }
        sx += xs[i];
        sy += std::log2(variances[i]);
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = std::log2(variances[i]) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) {
        throw InvariantError("slope fit needs at least two distinct x values");
    }
    SlopeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

bool within_standard_errors(double a, double b, double se_a, double se_b,
                            double k, double floor) {
    return std::abs(a - b) <= k * std::hypot(se_a, se_b) + floor;
}

} // namespace plateau
