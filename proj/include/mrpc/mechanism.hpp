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

#include <bit>
#include <cstdint>
#include <limits>
#include <string>

#include "mrpc/core.hpp"

namespace mrpc {

/// Proposal environments: how many projects the agent may put forward.
enum class EnvKind { single_project, k_project, multi_project };

struct EnvTag {
    EnvKind kind = EnvKind::multi_project;
    int k = 0;  // proposal cap, meaningful for k_project only

    static EnvTag single() { return {EnvKind::single_project, 1}; }
    static EnvTag k_cap(int k) { return {EnvKind::k_project, k}; }
    static EnvTag multi() { return {EnvKind::multi_project, 0}; }

    /// Largest admissible proposal for a type of the given size.
    std::size_t proposal_cap(std::size_t type_size) const {
        switch (kind) {
            case EnvKind::single_project: return std::min<std::size_t>(1, type_size);
            case EnvKind::k_project:
                return std::min<std::size_t>(static_cast<std::size_t>(k), type_size);
            case EnvKind::multi_project: return type_size;
        }
        return type_size;
    }

    std::string name() const {
        switch (kind) {
            case EnvKind::single_project: return "single";
            case EnvKind::k_project: return "k=" + std::to_string(k);
            case EnvKind::multi_project: return "multi";
        }
        return "?";
    }
};

/**
 * @brief A mechanism: a lottery attached to every admissible proposal.
 *
 * choice(P) returns the lottery played when the agent proposes P (indices
 * into P's canonical order; support inside P; mass at most one). Mechanisms
 * are immutable and their methods are pure, so instances are freely shared
 * across threads.
 */
class Mechanism {
  public:
    virtual ~Mechanism() = default;

    virtual std::string id() const = 0;
    virtual EnvTag env() const = 0;
    virtual SubProb choice(const ProjectSet& proposal) const = 0;

    /// The proposal the agent submits when his type is `type_set`.
    /// Default: exhaustive search over admissible subsets (see
    /// best_response below). Closed-form mechanisms override this with the
    /// behavior their optimality statement prescribes; the generic and the
    /// structural selections are payoff-equivalent.
    virtual ProjectSet best_response(const ProjectSet& type_set) const;

    /// Agent's expected payoff from a proposal under this mechanism.
    double payoff_to_agent(const ProjectSet& proposal) const {
        return agent_payoff(choice(proposal), proposal);
    }
};

/**
 * @brief Exhaustive agent best response: the payoff-maximizing admissible
 *        proposal, deterministically selected.
 *
 * Enumerates every P subset of type_set with |P| <= env cap (including the
 * empty proposal, worth 0). Ties on agent payoff (within kFeasEps) are
 * broken by higher principal expected payoff, then by canonical set order.
 *
 * Throws std::invalid_argument when the subset count exceeds 2^20; the
 * closed-form mechanisms never route through this path, so the bound only
 * limits brute-force verification, which uses small types anyway.
 */
inline ProjectSet best_response(const Mechanism& mech, const ProjectSet& type_set,
                                const EnvTag& env) {
    const std::size_t n = type_set.size();
    if (n > 20)
        throw std::invalid_argument(
            "best_response: type too large for exhaustive enumeration");

    const std::size_t cap = env.proposal_cap(n);

    ProjectSet best;  // empty proposal
    double best_agent = 0.0;
    double best_principal = 0.0;

    const std::uint32_t masks = n == 0 ? 1u : (1u << n);
    for (std::uint32_t mask = 1; mask < masks; ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) > cap) continue;
        std::vector<Project> sel;
        sel.reserve(static_cast<std::size_t>(std::popcount(mask)));
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) sel.push_back(type_set[i]);
        ProjectSet proposal(std::move(sel));

        const SubProb dist = mech.choice(proposal);
        const double a = agent_payoff(dist, proposal);
        const double v = principal_payoff(dist, proposal);

        bool take = false;
        if (a > best_agent + kFeasEps) {
            take = true;
        } else if (a >= best_agent - kFeasEps) {
            if (v > best_principal + kFeasEps)
                take = true;
            else if (v >= best_principal - kFeasEps)
                take = canonical_set_less(proposal, best);
        }
        if (take) {
            best = std::move(proposal);
            best_agent = a;
            best_principal = v;
        }
    }
    return best;
}

inline ProjectSet Mechanism::best_response(const ProjectSet& type_set) const {
    return mrpc::best_response(*this, type_set, env());
}

/**
 * @brief Runs one episode: the agent best-responds, the mechanism draws.
 *
 * For an empty type set the report carries an empty proposal, zero payoffs
 * and an undefined regret.
 */
inline EpisodeReport run_episode(const Mechanism& mech,
                                 const ProjectSet& type_set) {
    EpisodeReport report;
    report.type_set = type_set;
    if (type_set.empty()) return report;

    report.proposal = mech.best_response(type_set);
    report.distribution = mech.choice(report.proposal);
    report.agent_payoff = agent_payoff(report.distribution, report.proposal);
    report.principal_payoff =
        principal_payoff(report.distribution, report.proposal);
    report.regret = best_available(type_set) - report.principal_payoff;
    return report;
}

/// Regret of the mechanism's episode on a nonempty type set. Same
/// computation as run_episode, without materializing the report.
inline double episode_regret(const Mechanism& mech, const ProjectSet& type_set) {
    const ProjectSet proposal = mech.best_response(type_set);
    const SubProb dist = mech.choice(proposal);
    return best_available(type_set) - principal_payoff(dist, proposal);
}

/// Result of an incentive-compatibility check over nested proposal pairs.
struct IcCheck {
    bool holds = true;
    std::size_t violation_index = 0;  // index of the first violating pair
    double payoff_small = 0.0;        // U(mech, P) at the violation
    double payoff_large = 0.0;        // U(mech, Q) at the violation
};

/**
 * @brief Verifies that the agent's payoff weakly increases under set
 *        inclusion on the supplied chain of nested pairs (P, Q), P subset Q.
 *
 * Throws std::invalid_argument if some pair is not nested.
 */
inline IcCheck is_ic_on(const Mechanism& mech,
                        const std::vector<std::pair<ProjectSet, ProjectSet>>& chains) {
    IcCheck result;
    for (std::size_t idx = 0; idx < chains.size(); ++idx) {
        const auto& [small, large] = chains[idx];
        if (!small.is_subset_of(large))
            throw std::invalid_argument(
                "is_ic_on: pair " + std::to_string(idx) + " is not nested");
        const double u_small = mech.payoff_to_agent(small);
        const double u_large = mech.payoff_to_agent(large);
        if (u_small > u_large + kFeasEps) {
            result.holds = false;
            result.violation_index = idx;
            result.payoff_small = u_small;
            result.payoff_large = u_large;
            return result;
        }
    }
    return result;
}

}  // namespace mrpc
