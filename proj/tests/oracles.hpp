// Copyright 2026 The mrpc Authors
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

// Test-side brute-force oracles. Everything here stays independent of the
// implementation paths it checks: plain grid scans, no vertex algebra.

#pragma once

#include <limits>
#include <vector>

#include "mrpc/lp.hpp"

namespace mrpc_test {

struct GridLpResult {
    bool found = false;
    double objective = -std::numeric_limits<double>::infinity();
};

inline bool grid_feasible(const std::vector<mrpc::LinearConstraint>& rows,
                          const std::vector<double>& x, double tol) {
    for (const auto& row : rows) {
        double v = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) v += row.coeffs[i] * x[i];
        if (v < row.lower - tol || v > row.upper + tol) return false;
    }
    return true;
}

/// Dense scan over all points with at most two positive coordinates: both
/// coordinates on a uniform [0,1] grid, plus points where the second
/// coordinate is solved exactly from one finite constraint bound (so
/// equality rows are hit exactly). Basic solutions of a two-row program
/// have support at most two, so this scan brackets the true optimum to
/// grid accuracy.
inline GridLpResult grid_lp_oracle(const std::vector<double>& objective,
                                   const std::vector<mrpc::LinearConstraint>& rows,
                                   int steps = 200) {
    const std::size_t n = objective.size();
    GridLpResult result;
    std::vector<double> x(n, 0.0);

    auto consider = [&](double xi, double xj, std::size_t i, std::size_t j) {
        if (xi < 0.0 || xi > 1.0 + 1e-12 || xj < 0.0 || xj > 1.0 + 1e-12)
            return;
        std::fill(x.begin(), x.end(), 0.0);
        x[i] = xi;
        if (j < n) x[j] = xj;
        if (!grid_feasible(rows, x, 1e-9)) return;
        double value = 0.0;
        for (std::size_t t = 0; t < n; ++t) value += objective[t] * x[t];
        if (!result.found || value > result.objective) {
            result.found = true;
            result.objective = value;
        }
    };

    consider(0.0, 0.0, 0, n);  // origin

    for (std::size_t i = 0; i < n; ++i) {
        for (int gi = 0; gi <= steps; ++gi) {
            const double xi = static_cast<double>(gi) / steps;
            consider(xi, 0.0, i, n);
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                for (int gj = 0; gj <= steps; ++gj)
                    consider(xi, static_cast<double>(gj) / steps, i, j);
                // Solve the second coordinate exactly from each finite bound.
                for (const auto& row : rows) {
                    if (std::abs(row.coeffs[j]) < 1e-12) continue;
                    for (const double bound : {row.lower, row.upper}) {
                        if (bound <= -mrpc::kLpInf || bound >= mrpc::kLpInf)
                            continue;
                        consider(xi, (bound - row.coeffs[i] * xi) / row.coeffs[j],
                                 i, j);
                    }
                }
            }
        }
    }
    return result;
}

}  // namespace mrpc_test
