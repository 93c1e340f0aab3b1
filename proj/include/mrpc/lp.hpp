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

#pragma once

#include <limits>
#include <vector>

#include "mrpc/core.hpp"

namespace mrpc {

inline constexpr double kLpInf = std::numeric_limits<double>::infinity();

/// One functional constraint: lower <= coeffs . x <= upper.
/// Use -inf / +inf for one-sided rows and lower == upper for an equality.
struct LinearConstraint {
    std::vector<double> coeffs;
    double lower = -kLpInf;
    double upper = kLpInf;
};

enum class LpStatus { optimal, infeasible, unbounded };

/// Solution of a small LP. `weights` is the sparse optimal point over the
/// variable indices; support_size is the number of strictly positive
/// entries (at most two by construction).
struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    SubProb weights;
    double objective = 0.0;
    std::size_t support_size = 0;
};

namespace detail {

inline bool lp_row_feasible(const LinearConstraint& row,
                            const std::vector<double>& x) {
    double v = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) v += row.coeffs[i] * x[i];
    return v >= row.lower - kFeasEps && v <= row.upper + kFeasEps;
}

inline bool lp_feasible(const std::vector<LinearConstraint>& rows,
                        const std::vector<double>& x) {
    for (const double xi : x)
        if (xi < -kFeasEps) return false;
    for (const auto& row : rows)
        if (!lp_row_feasible(row, x)) return false;
    return true;
}

struct LpVertex {
    std::vector<std::size_t> support;  // increasing indices
    std::vector<double> values;        // aligned with support
    double objective = 0.0;
};

inline bool lp_vertex_preferred(const LpVertex& a, const LpVertex& b) {
    // Higher objective wins; within tolerance, the lexicographically
    // smallest support, then the lexicographically smallest value vector.
    if (a.objective > b.objective + kFeasEps) return true;
    if (a.objective < b.objective - kFeasEps) return false;
    if (a.support != b.support)
        return std::lexicographical_compare(a.support.begin(), a.support.end(),
                                            b.support.begin(), b.support.end());
    return std::lexicographical_compare(a.values.begin(), a.values.end(),
                                        b.values.begin(), b.values.end());
}

/// True if moving forever along the nonnegative direction d from inside the
/// feasible set stays feasible.
inline bool lp_ray_feasible(const std::vector<LinearConstraint>& rows,
                            const std::vector<double>& d) {
    for (const auto& row : rows) {
        double slope = 0.0;
        for (std::size_t i = 0; i < d.size(); ++i) slope += row.coeffs[i] * d[i];
        if (slope > kFeasEps && row.upper < kLpInf) return false;
        if (slope < -kFeasEps && row.lower > -kLpInf) return false;
    }
    return true;
}

}  // namespace detail

/**
 * @brief Exact maximizer of a linear objective over {x >= 0} intersected
 *        with at most two functional constraints, by vertex enumeration.
 *
 * Every basic feasible point has at most two strictly positive variables
 * (one active functional bound per positive variable), so the optimum is
 * found among: the origin, single-variable solutions of one active bound,
 * and two-variable solutions of two active bounds from distinct rows.
 *
 * Ties within kFeasEps are broken toward the lexicographically smallest
 * support (then smallest value vector), which makes the returned vertex
 * deterministic.
 *
 * Unboundedness is reported whenever an improving recession direction with
 * at most two positive components exists; with a finite upper bound on a
 * row of positive coefficients (the total-mass row in every use here) no
 * recession direction exists at all.
 *
 * @param objective  coefficients of the maximized functional
 * @param rows       0, 1 or 2 functional constraints
 * @param nonnegative must be true; the solver only handles x >= 0
 */
inline LpSolution lp2_solve(const std::vector<double>& objective,
                            const std::vector<LinearConstraint>& rows,
                            bool nonnegative = true) {
    if (!nonnegative)
        throw std::invalid_argument("lp2_solve: only nonnegative variables are supported");
    if (rows.size() > 2)
        throw std::invalid_argument("lp2_solve: at most two functional constraints");
    const std::size_t n = objective.size();
    for (const auto& row : rows) {
        if (row.coeffs.size() != n)
            throw std::invalid_argument("lp2_solve: constraint arity mismatch");
        if (row.lower > row.upper)
            throw std::invalid_argument("lp2_solve: empty constraint range");
    }

    constexpr double kPivotEps = 1e-12;

    // Collect the finite active bounds of each row.
    struct Bound {
        std::size_t row;
        double value;
    };
    std::vector<Bound> bounds;
    for (std::size_t j = 0; j < rows.size(); ++j) {
        if (rows[j].lower > -kLpInf) bounds.push_back({j, rows[j].lower});
        if (rows[j].upper < kLpInf && rows[j].upper != rows[j].lower)
            bounds.push_back({j, rows[j].upper});
    }

    bool found = false;
    detail::LpVertex best;
    std::vector<double> x(n, 0.0);

    auto consider = [&](const std::vector<std::size_t>& support,
                        const std::vector<double>& values) {
        std::fill(x.begin(), x.end(), 0.0);
        for (std::size_t t = 0; t < support.size(); ++t)
            x[support[t]] = std::max(0.0, values[t]);
        if (!detail::lp_feasible(rows, x)) return;
        detail::LpVertex v;
        v.support = support;
        for (const std::size_t i : support) v.values.push_back(x[i]);
        v.objective = 0.0;
        for (std::size_t i = 0; i < n; ++i) v.objective += objective[i] * x[i];
        if (!found || detail::lp_vertex_preferred(v, best)) {
            best = std::move(v);
            found = true;
        }
    };

    // Origin.
    consider({}, {});

    // One active bound, one positive variable.
    for (const Bound& b : bounds) {
        for (std::size_t i = 0; i < n; ++i) {
            const double c = rows[b.row].coeffs[i];
            if (std::abs(c) < kPivotEps) continue;
            const double xi = b.value / c;
            if (xi < -kFeasEps) continue;
            consider({i}, {xi});
        }
    }

    // Two active bounds from distinct rows, two positive variables.
    for (std::size_t a = 0; a < bounds.size(); ++a) {
        for (std::size_t b = a + 1; b < bounds.size(); ++b) {
            if (bounds[a].row == bounds[b].row) continue;
            const auto& r1 = rows[bounds[a].row].coeffs;
            const auto& r2 = rows[bounds[b].row].coeffs;
            const double b1 = bounds[a].value, b2 = bounds[b].value;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t k = i + 1; k < n; ++k) {
                    const double det = r1[i] * r2[k] - r1[k] * r2[i];
                    if (std::abs(det) < kPivotEps) continue;
                    const double xi = (b1 * r2[k] - r1[k] * b2) / det;
                    const double xk = (r1[i] * b2 - b1 * r2[i]) / det;
                    if (xi < -kFeasEps || xk < -kFeasEps) continue;
                    consider({i, k}, {xi, xk});
                }
            }
        }
    }

    LpSolution solution;
    if (!found) {
        solution.status = LpStatus::infeasible;
        return solution;
    }

    // Recession directions: axes and in-row edge directions.
    std::vector<std::vector<double>> ray_candidates;
    for (std::size_t i = 0; i < n; ++i) {
        if (objective[i] > kPivotEps) {
            std::vector<double> d(n, 0.0);
            d[i] = 1.0;
            ray_candidates.push_back(std::move(d));
        }
    }
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = i + 1; k < n; ++k) {
                double di = row.coeffs[k], dk = -row.coeffs[i];
                if (di <= kPivotEps && dk <= kPivotEps) {
                    di = -di;
                    dk = -dk;
                }
                if (di < 0.0 || dk < 0.0) continue;  // not a nonnegative direction
                if (di < kPivotEps && dk < kPivotEps) continue;
                std::vector<double> d(n, 0.0);
                d[i] = di;
                d[k] = dk;
                ray_candidates.push_back(std::move(d));
            }
        }
    }
    for (const auto& d : ray_candidates) {
        double gain = 0.0;
        for (std::size_t i = 0; i < n; ++i) gain += objective[i] * d[i];
        if (gain > kFeasEps && detail::lp_ray_feasible(rows, d)) {
            solution.status = LpStatus::unbounded;
            return solution;
        }
    }

    solution.status = LpStatus::optimal;
    solution.objective = best.objective;
    for (std::size_t t = 0; t < best.support.size(); ++t)
        if (best.values[t] > 0.0)
            solution.weights.weights.emplace_back(best.support[t], best.values[t]);
    solution.support_size = solution.weights.weights.size();
    return solution;
}

}  // namespace mrpc
