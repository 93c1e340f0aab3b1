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

#include <cstdint>
#include <future>
#include <thread>

#include "mrpc/core.hpp"
#include "mrpc/mechanism.hpp"
#include "mrpc/multi.hpp"

namespace mrpc {

/// Resolution of the adversarial type search.
struct SearchSpec {
    int grid_n = 101;        // per-axis grid resolution over the payoff rectangle
    int max_type_size = 2;   // cap on the number of projects per candidate type
    int refine_rounds = 2;   // local refinement passes around the incumbent

    void ensure_valid() const {
        if (grid_n < 2 || max_type_size < 1 || refine_rounds < 0)
            throw std::invalid_argument(
                "SearchSpec: need grid_n >= 2, max_type_size >= 1, "
                "refine_rounds >= 0");
    }
};

/// A certified lower bound on a mechanism's worst-case regret: the regret
/// the mechanism's own episode realizes on the witness type.
struct WcrCertificate {
    double value = 0.0;
    ProjectSet witness;
    std::string mechanism_id;
    SearchSpec spec;
};

/// Hard cap on episode evaluations per search. Exceeding it is an error;
/// the search never silently subsamples.
inline constexpr std::uint64_t kSearchBudget = 10'000'000;

/**
 * @brief Worst-case-regret lower bound from the single-project argument at
 *        principal payoff v: min{1-v, (1-u_min)v}.
 *
 * Maximizing this bound over v in [v_min, 1] yields exactly wcr_single.
 */
inline double wcr_lower_bound_single(double v, const Params& params) {
    params.ensure_valid();
    if (v < params.v_min - kFeasEps || v > 1.0 + kFeasEps)
        throw std::invalid_argument("wcr_lower_bound_single: v outside [v_min, 1]");
    return std::min(1.0 - v, (1.0 - params.u_min) * v);
}

/**
 * @brief Worst-case-regret lower bound from pairing a project with the
 *        principal-ideal fallback (u_min, 1):
 *        min over p of max{(1-p)v, matching_mass(u,p)(1-v)}.
 *
 * Solved analytically at the crossing of the two affine pieces. Maximizing
 * over the payoff rectangle yields exactly wcr_multi.
 */
inline double wcr_lower_bound_multi(const Project& p, const Params& params) {
    params.ensure_valid();
    if (!p.in_domain(params))
        throw std::invalid_argument(
            "wcr_lower_bound_multi: project outside the payoff rectangle");
    return detail::pair_balance_value(p.u, p.v, params);
}

namespace detail {

struct SearchBest {
    bool has = false;
    double value = 0.0;
    ProjectSet witness;

    void offer(double v, ProjectSet w) {
        if (!has || v > value ||
            (v == value && canonical_set_less(w, witness))) {
            has = true;
            value = v;
            witness = std::move(w);
        }
    }

    void merge(const SearchBest& other) {
        if (other.has) offer(other.value, other.witness);
    }
};

/// Runs fn over [0, count) in parallel chunks and folds the per-chunk bests
/// with the deterministic (value, canonical witness) max, so the outcome is
/// independent of scheduling and thread count.
template <typename Fn>
inline SearchBest parallel_scan(std::size_t count, const Fn& fn) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const std::size_t chunks =
        std::max<std::size_t>(1, std::min<std::size_t>(count / 1024, hw * 4));
    if (chunks == 1) {
        SearchBest best;
        fn(0, count, best);
        return best;
    }
    std::vector<std::future<SearchBest>> parts;
    parts.reserve(chunks);
    const std::size_t step = (count + chunks - 1) / chunks;
    for (std::size_t begin = 0; begin < count; begin += step) {
        const std::size_t end = std::min(count, begin + step);
        parts.push_back(std::async(std::launch::async, [&fn, begin, end]() {
            SearchBest best;
            fn(begin, end, best);
            return best;
        }));
    }
    SearchBest best;
    for (auto& part : parts) best.merge(part.get());
    return best;
}

inline std::vector<double> axis_points(double lo, int n) {
    std::vector<double> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i)
        pts.push_back(i + 1 == n ? 1.0 : lo + i * (1.0 - lo) / (n - 1));
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

inline std::vector<double> decimate(const std::vector<double>& pts,
                                    std::size_t target) {
    if (pts.size() <= target) return pts;
    const std::size_t step = (pts.size() - 1 + target - 2) / (target - 1);
    std::vector<double> out;
    for (std::size_t i = 0; i < pts.size(); i += step) out.push_back(pts[i]);
    if (out.back() != pts.back()) out.push_back(pts.back());
    return out;
}

inline std::vector<Project> product_grid(const std::vector<double>& us,
                                         const std::vector<double>& vs) {
    std::vector<Project> grid;
    grid.reserve(us.size() * vs.size());
    for (const double u : us)
        for (const double v : vs) grid.push_back({u, v});
    return grid;
}

inline void push_unique(std::vector<Project>& pool, const Project& p) {
    for (const Project& q : pool)
        if (q == p) return;
    pool.push_back(p);
}

inline std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        if (r > kSearchBudget * 64) return kSearchBudget * 64;  // saturate
        r = r * (n - k + i) / i;
    }
    return r;
}

/// 11 sample points on [center-half, center+half] clamped to [lo, 1].
inline std::vector<double> window_points(double center, double half, double lo) {
    std::vector<double> pts;
    if (half <= 0.0) {
        pts.push_back(std::clamp(center, lo, 1.0));
        return pts;
    }
    for (int i = -5; i <= 5; ++i)
        pts.push_back(std::clamp(center + i * half / 5.0, lo, 1.0));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

}  // namespace detail

/**
 * @brief Adversarial estimate of a mechanism's worst-case regret.
 *
 * Enumerates candidate agent types assembled from a grid_n x grid_n lattice
 * over the payoff rectangle augmented with the structural candidates the
 * worst cases live on — the principal-ideal corner (u_min, 1), the corner
 * (1,1) and the full column u = 1: every lattice point as a singleton,
 * every (lattice point, structural candidate) pair, every pair from a
 * coarsened sub-lattice, and all larger combinations from a further
 * coarsened pool up to max_type_size. The incumbent witness is then
 * polished by refine_rounds of local window search, each round shrinking
 * the cell size tenfold.
 *
 * The certified value is the regret the mechanism's own episode realizes
 * on the witness, hence a sound lower bound on the true worst-case regret.
 * The search is deterministic for a fixed spec regardless of thread count.
 *
 * Throws std::runtime_error when the planned episode count would exceed
 * kSearchBudget (reduce grid_n or max_type_size).
 */
inline WcrCertificate wcr_search(const Mechanism& mech, const SearchSpec& spec,
                                 const Params& params) {
    spec.ensure_valid();
    params.ensure_valid();

    const std::vector<double> us = detail::axis_points(params.u_min, spec.grid_n);
    const std::vector<double> vs = detail::axis_points(params.v_min, spec.grid_n);

    // The full lattice is addressed by index and never materialized; its
    // endpoints are exact, so it already contains the structural candidates.
    const std::size_t grid_count = us.size() * vs.size();
    const auto grid_at = [&us, &vs](std::size_t idx) -> Project {
        return {us[idx / vs.size()], vs[idx % vs.size()]};
    };

    // Structural pair partners: (u_min, 1), (1, 1) and the column u = 1.
    std::vector<Project> structural;
    detail::push_unique(structural, {params.u_min, 1.0});
    detail::push_unique(structural, {1.0, 1.0});
    for (const double v : vs) detail::push_unique(structural, {1.0, v});

    const std::vector<double> coarse_us = detail::decimate(us, 31);
    const std::vector<double> coarse_vs = detail::decimate(vs, 31);

    // Budget check before evaluating (or materializing) anything.
    std::uint64_t planned = grid_count;
    if (spec.max_type_size >= 2) {
        planned += static_cast<std::uint64_t>(grid_count) * structural.size();
        planned += detail::choose(
            coarse_us.size() * coarse_vs.size() + structural.size(), 2);
    }
    for (int m = 3; m <= spec.max_type_size; ++m) {
        const std::size_t target = m == 3 ? 11 : (m == 4 ? 7 : 5);
        planned += detail::choose(detail::decimate(us, target).size() *
                                          detail::decimate(vs, target).size() +
                                      3,
                                  m);
    }
    planned += static_cast<std::uint64_t>(spec.refine_rounds) *
               (spec.max_type_size >= 2 ? 14641 : 121);
    if (planned > kSearchBudget)
        throw std::runtime_error(
            "wcr_search: planned episode count " + std::to_string(planned) +
            " exceeds the evaluation budget; reduce grid_n or max_type_size");

    // Coarse pool for unstructured pairs.
    std::vector<Project> coarse = detail::product_grid(coarse_us, coarse_vs);
    for (const Project& s : structural) detail::push_unique(coarse, s);

    // Pools for larger types.
    std::vector<std::vector<Project>> big_pools;
    for (int m = 3; m <= spec.max_type_size; ++m) {
        const std::size_t target = m == 3 ? 11 : (m == 4 ? 7 : 5);
        std::vector<Project> pool = detail::product_grid(
            detail::decimate(us, target), detail::decimate(vs, target));
        detail::push_unique(pool, {params.u_min, 1.0});
        detail::push_unique(pool, {1.0, 1.0});
        detail::push_unique(pool, {1.0, params.v_min});
        big_pools.push_back(std::move(pool));
    }

    detail::SearchBest best;

    // Singletons over the full lattice.
    best.merge(detail::parallel_scan(
        grid_count, [&](std::size_t lo, std::size_t hi, detail::SearchBest& out) {
            for (std::size_t i = lo; i < hi; ++i) {
                ProjectSet type{grid_at(i)};
                const double r = episode_regret(mech, type);
                out.offer(r, std::move(type));
            }
        }));

    if (spec.max_type_size >= 2) {
        // Lattice point paired with each structural candidate.
        best.merge(detail::parallel_scan(
            grid_count,
            [&](std::size_t lo, std::size_t hi, detail::SearchBest& out) {
                for (std::size_t i = lo; i < hi; ++i) {
                    const Project g = grid_at(i);
                    for (const Project& s : structural) {
                        if (s == g) continue;
                        ProjectSet type{g, s};
                        const double r = episode_regret(mech, type);
                        out.offer(r, std::move(type));
                    }
                }
            }));

        // Unstructured pairs from the coarse pool.
        best.merge(detail::parallel_scan(
            coarse.size(),
            [&](std::size_t lo, std::size_t hi, detail::SearchBest& out) {
                for (std::size_t i = lo; i < hi; ++i) {
                    for (std::size_t j = i + 1; j < coarse.size(); ++j) {
                        ProjectSet type{coarse[i], coarse[j]};
                        const double r = episode_regret(mech, type);
                        out.offer(r, std::move(type));
                    }
                }
            }));
    }

    // Larger combinations from the decimated pools.
    for (std::size_t b = 0; b < big_pools.size(); ++b) {
        const std::vector<Project>& pool = big_pools[b];
        const std::size_t m = b + 3;
        if (pool.size() < m) continue;
        std::vector<std::size_t> combo(m);
        for (std::size_t i = 0; i < m; ++i) combo[i] = i;
        detail::SearchBest local;
        while (true) {
            std::vector<Project> sel;
            sel.reserve(m);
            for (const std::size_t i : combo) sel.push_back(pool[i]);
            ProjectSet type(std::move(sel));
            const double r = episode_regret(mech, type);
            local.offer(r, std::move(type));
            // next combination
            std::size_t t = m;
            while (t > 0 && combo[t - 1] == pool.size() - m + t - 1) --t;
            if (t == 0) break;
            ++combo[t - 1];
            for (std::size_t i = t; i < m; ++i) combo[i] = combo[i - 1] + 1;
        }
        best.merge(local);
    }

    // Local refinement around the incumbent witness.
    const double du = us.size() > 1 ? (1.0 - params.u_min) / (spec.grid_n - 1) : 0.0;
    const double dv = vs.size() > 1 ? (1.0 - params.v_min) / (spec.grid_n - 1) : 0.0;
    for (int round = 0; round < spec.refine_rounds; ++round) {
        const double shrink = std::pow(10.0, round);
        const double hu = du / shrink;
        const double hv = dv / shrink;
        const std::vector<Project> center(best.witness.begin(),
                                          best.witness.end());
        const std::size_t m = center.size();
        if (m == 0) break;

        if (m <= 2) {
            // Joint window product over the witness projects.
            std::vector<std::vector<Project>> windows;
            for (const Project& c : center)
                windows.push_back(detail::product_grid(
                    detail::window_points(c.u, hu, params.u_min),
                    detail::window_points(c.v, hv, params.v_min)));
            std::vector<std::size_t> pick(m, 0);
            while (true) {
                std::vector<Project> sel;
                sel.reserve(m);
                for (std::size_t t = 0; t < m; ++t)
                    sel.push_back(windows[t][pick[t]]);
                ProjectSet type(std::move(sel));
                const double r = episode_regret(mech, type);
                best.offer(r, std::move(type));
                std::size_t t = 0;
                while (t < m && ++pick[t] == windows[t].size()) pick[t++] = 0;
                if (t == m) break;
            }
        } else {
            // Coordinate descent: refine one project at a time, two passes.
            std::vector<Project> current = center;
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t t = 0; t < m; ++t) {
                    for (const Project& candidate : detail::product_grid(
                             detail::window_points(current[t].u, hu, params.u_min),
                             detail::window_points(current[t].v, hv, params.v_min))) {
                        std::vector<Project> sel = current;
                        sel[t] = candidate;
                        ProjectSet type(std::move(sel));
                        const double r = episode_regret(mech, type);
                        if (r > best.value) current[t] = candidate;
                        best.offer(r, std::move(type));
                    }
                }
            }
        }
    }

    WcrCertificate cert;
    cert.value = best.value;
    cert.witness = best.witness;
    cert.mechanism_id = mech.id();
    cert.spec = spec;

    // Replay the witness through the mechanism: the certificate must stand
    // on its own episode, independent of the search bookkeeping.
    const double replay = episode_regret(mech, cert.witness);
    if (std::abs(replay - cert.value) > kFeasEps)
        throw std::logic_error("wcr_search: witness replay mismatch");
    return cert;
}

}  // namespace mrpc
