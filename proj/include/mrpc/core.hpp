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

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mrpc {

/// Absolute tolerance for every feasibility and equality check in the
/// library. All payoffs live in [0,1], so an absolute epsilon is adequate.
inline constexpr double kFeasEps = 1e-9;

/**
 * @brief The payoff rectangle. Every admissible project lies in
 *        [u_min,1] x [v_min,1].
 *
 * u_min bounds the agent's payoff from below, v_min the principal's.
 */
struct Params {
    double u_min = 0.0;
    double v_min = 0.0;

    bool valid() const {
        return std::isfinite(u_min) && std::isfinite(v_min) && u_min >= 0.0 &&
               u_min <= 1.0 && v_min >= 0.0 && v_min <= 1.0;
    }

    /// Throws std::invalid_argument if the rectangle bounds are out of range.
    void ensure_valid() const {
        if (!valid())
            throw std::invalid_argument(
                "Params: u_min and v_min must lie in [0,1]");
    }
};

/// A project, identified with its payoff pair: u to the agent, v to the
/// principal. Equality is exact coordinate equality; near-duplicates are
/// distinct projects.
struct Project {
    double u = 0.0;
    double v = 0.0;

    bool operator==(const Project& o) const { return u == o.u && v == o.v; }
    bool operator!=(const Project& o) const { return !(*this == o); }

    bool in_domain(const Params& p) const {
        return u >= p.u_min && u <= 1.0 && v >= p.v_min && v <= 1.0;
    }
};

/// Canonical project order: descending principal payoff, then descending
/// agent payoff. The first project of a canonically sorted set is therefore
/// a principal-favorite.
inline bool canonical_less(const Project& a, const Project& b) {
    if (a.v != b.v) return a.v > b.v;
    return a.u > b.u;
}

/**
 * @brief A finite set of projects in canonical order.
 *
 * Doubles as the agent's type A and as a proposal P (a proposal is a subset
 * of a type). Construction sorts canonically and removes exact duplicates,
 * so set identity is independent of input order. The empty set is legal.
 */
class ProjectSet {
  public:
    ProjectSet() = default;

    explicit ProjectSet(std::vector<Project> projects)
        : projects_(std::move(projects)) {
        std::sort(projects_.begin(), projects_.end(), canonical_less);
        projects_.erase(std::unique(projects_.begin(), projects_.end()),
                        projects_.end());
    }

    ProjectSet(std::initializer_list<Project> projects)
        : ProjectSet(std::vector<Project>(projects)) {}

    std::size_t size() const { return projects_.size(); }
    bool empty() const { return projects_.empty(); }
    const Project& operator[](std::size_t i) const { return projects_[i]; }

    std::vector<Project>::const_iterator begin() const {
        return projects_.begin();
    }
    std::vector<Project>::const_iterator end() const { return projects_.end(); }
    const std::vector<Project>& projects() const { return projects_; }

    bool contains(const Project& p) const {
        return index_of(p).has_value();
    }

    /// Index of an exactly matching project, if present.
    std::optional<std::size_t> index_of(const Project& p) const {
        for (std::size_t i = 0; i < projects_.size(); ++i)
            if (projects_[i] == p) return i;
        return std::nullopt;
    }

    bool is_subset_of(const ProjectSet& other) const {
        for (const Project& p : projects_)
            if (!other.contains(p)) return false;
        return true;
    }

    bool operator==(const ProjectSet& o) const {
        return projects_ == o.projects_;
    }
    bool operator!=(const ProjectSet& o) const { return !(*this == o); }

    /// True if every project lies in the payoff rectangle.
    bool in_domain(const Params& params) const {
        return std::all_of(projects_.begin(), projects_.end(),
                           [&](const Project& p) { return p.in_domain(params); });
    }

  private:
    std::vector<Project> projects_;
};

/// Total order on sets used for deterministic tie-breaking: lexicographic
/// over the canonical project sequences, with a strict prefix ordered first
/// (so the empty set precedes everything).
inline bool canonical_set_less(const ProjectSet& a, const ProjectSet& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] != b[i]) return canonical_less(a[i], b[i]);
    }
    return a.size() < b.size();
}

/**
 * @brief A subprobability lottery over a carrier ProjectSet.
 *
 * Sparse representation: (index into the carrier, weight) pairs. Weights are
 * nonnegative and sum to at most one; the residual mass is "no project".
 */
struct SubProb {
    std::vector<std::pair<std::size_t, double>> weights;

    double total_mass() const {
        double s = 0.0;
        for (const auto& [i, w] : weights) s += w;
        return s;
    }

    double weight_on(std::size_t index) const {
        double s = 0.0;
        for (const auto& [i, w] : weights)
            if (i == index) s += w;
        return s;
    }

    std::size_t support_size() const {
        std::size_t n = 0;
        for (const auto& [i, w] : weights)
            if (w > 0.0) ++n;
        return n;
    }

    /// Checks index range, nonnegativity and total mass against a carrier of
    /// the given size.
    bool valid_over(std::size_t carrier_size) const {
        for (const auto& [i, w] : weights) {
            if (i >= carrier_size) return false;
            if (!(w >= -kFeasEps)) return false;
        }
        return total_mass() <= 1.0 + kFeasEps;
    }
};

/// Expected agent payoff of a lottery over its carrier set.
inline double agent_payoff(const SubProb& dist, const ProjectSet& carrier) {
    double s = 0.0;
    for (const auto& [i, w] : dist.weights) s += w * carrier[i].u;
    return s;
}

/// Expected principal payoff of a lottery over its carrier set.
inline double principal_payoff(const SubProb& dist, const ProjectSet& carrier) {
    double s = 0.0;
    for (const auto& [i, w] : dist.weights) s += w * carrier[i].v;
    return s;
}

/// The principal's benchmark: his favorite available payoff.
/// Undefined (domain error) on the empty set.
inline double best_available(const ProjectSet& type_set) {
    if (type_set.empty())
        throw std::domain_error(
            "best_available: undefined for an empty project set");
    double best = type_set[0].v;
    for (const Project& p : type_set) best = std::max(best, p.v);
    return best;
}

/**
 * @brief Principal's regret of a lottery against a type set: what he could
 *        have had minus what the lottery gives him in expectation.
 *
 * @param dist lottery over type_set (validated against it)
 * @param type_set the agent's available projects; must be nonempty
 */
inline double regret(const SubProb& dist, const ProjectSet& type_set) {
    if (type_set.empty())
        throw std::domain_error("regret: undefined for an empty type set");
    if (!dist.valid_over(type_set.size()))
        throw std::invalid_argument("regret: lottery invalid over the type set");
    return best_available(type_set) - principal_payoff(dist, type_set);
}

/**
 * @brief Outcome of one mechanism episode: what the agent had, what he
 *        proposed, the realized lottery, and both parties' expected payoffs.
 *
 * regret is empty when the type set is empty (no benchmark exists).
 * The lottery indexes the proposal's canonical order.
 */
struct EpisodeReport {
    ProjectSet type_set;
    ProjectSet proposal;
    SubProb distribution;
    double agent_payoff = 0.0;
    double principal_payoff = 0.0;
    std::optional<double> regret;
};

}  // namespace mrpc
