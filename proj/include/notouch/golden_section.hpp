// Copyright 2026 The notouch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NOTOUCH_GOLDEN_SECTION_HPP
#define NOTOUCH_GOLDEN_SECTION_HPP

#include <cmath>

#include "notouch/errors.hpp"

namespace notouch {

struct GoldenSectionResult {
    double x = 0.0;
    int iterations = 0;
};

/// Golden-section search for the maximizer of a unimodal function on
/// [lo, hi]. `prefer(a, b)` returns true when f(a) > f(b); taking the
/// comparison rather than f lets callers compare without cancellation.
template <class Prefer>
GoldenSectionResult golden_section_maximize(Prefer &&prefer, double lo, double hi, double tolerance = 1e-12,
                                            int max_iterations = 500) {
    detail::require(lo < hi, "golden_section_maximize: empty bracket");
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - ratio * (hi - lo);
    double d = lo + ratio * (hi - lo);
    int it = 0;
    while (hi - lo > tolerance && it < max_iterations) {
        if (prefer(c, d)) {
            hi = d;
            d = c;
            c = hi - ratio * (hi - lo);
        } else {
            lo = c;
            c = d;
            d = lo + ratio * (hi - lo);
        }
        ++it;
    }
    return {0.5 * (lo + hi), it};
}

/// log Eff_N(x) - log Eff_N(y) for x = delta^2, y = delta'^2 in (0, 1),
/// evaluated from the differences x - y so that it stays accurate when x and
/// y are close to each other and to the maximum.
inline double efficiency_log_ratio(int n, double x, double y) {
    const double m2 = (n - 1.0) * (n - 1.0);
    const double h = x - y;
    const double denom_y = y + m2 * (1.0 - y);
    return std::log1p(h / y) + (n - 1) * std::log1p(-h / (1.0 - y)) - std::log1p(-h * (m2 - 1.0) / denom_y);
}

/// delta^2 maximizing the success probability, found numerically on
/// [1e-6, 1 - 1e-6] without using the closed-form stationary point.
inline GoldenSectionResult golden_section_optimal_delta_squared(int n, double tolerance = 1e-12) {
    detail::require(n >= 2, "golden_section_optimal_delta_squared: n must be at least 2");
    return golden_section_maximize([n](double a, double b) { return efficiency_log_ratio(n, a, b) > 0.0; },
                                   1e-6, 1.0 - 1e-6, tolerance);
}

}  // namespace notouch

#endif  // NOTOUCH_GOLDEN_SECTION_HPP
