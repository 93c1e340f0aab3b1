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

#include <functional>

#include "mrpc/core.hpp"
#include "mrpc/mechanism.hpp"
#include "mrpc/multi.hpp"
#include "mrpc/single.hpp"

namespace mrpc {

/// Environment in which the agent may propose up to k projects.
struct KEnv {
    int k = 2;

    void ensure_valid() const {
        if (k < 1) throw std::invalid_argument("KEnv: k must be at least 1");
    }
};

/**
 * @brief The two projects that implement the multiproject optimum under a
 *        proposal cap: the principal's favorite project and the project
 *        that pins down the agent's promised payoff.
 *
 * The principal-favorite is the max-v project, ties resolved toward the
 * lowest agent payoff; the agent-favorite maximizes approval_multi * u,
 * ties resolved by canonical order. The two may coincide.
 */
inline ProjectSet two_project_proposal(const ProjectSet& type_set,
                                       const Params& params) {
    if (type_set.empty())
        throw std::invalid_argument("two_project_proposal: empty type set");

    const Project* fav_principal = &type_set[0];
    for (const Project& p : type_set) {
        if (p.v > fav_principal->v ||
            (p.v == fav_principal->v && p.u < fav_principal->u))
            fav_principal = &p;
    }

    const Project* fav_agent = nullptr;
    double best = -1.0;
    for (const Project& p : type_set) {
        const double value = approval_multi(p, params) * p.u;
        if (value > best) {
            best = value;
            fav_agent = &p;
        }
    }

    return ProjectSet{*fav_principal, *fav_agent};
}

/**
 * @brief The multiproject optimum played under a proposal cap k >= 2: the
 *        agent submits the two-project implementation, the mechanism plays
 *        the proposal-wide maximal-payoff lottery on it.
 *
 * Delivers the same agent payoff and the same worst-case regret as the
 * unrestricted multiproject mechanism.
 */
class KProjectMechanism : public Mechanism {
  public:
    KProjectMechanism(const Params& params, int k)
        : params_(params), k_(k), wcr_(wcr_multi(params)) {
        params_.ensure_valid();
        if (k < 2)
            throw std::invalid_argument(
                "KProjectMechanism: requires k >= 2 (k = 1 is the "
                "single-project environment)");
    }

    std::string id() const override { return "pmp-k" + std::to_string(k_); }
    EnvTag env() const override { return EnvTag::k_cap(k_); }

    const Params& params() const { return params_; }
    double wcr() const { return wcr_; }

    SubProb choice(const ProjectSet& proposal) const override {
        if (proposal.empty()) return {};
        if (proposal.size() > static_cast<std::size_t>(k_))
            throw std::invalid_argument("proposal exceeds the k-project cap");
        return pmp_choice(proposal, params_).weights;
    }

    ProjectSet best_response(const ProjectSet& type_set) const override {
        if (type_set.empty()) return {};
        return two_project_proposal(type_set, params_);
    }

  private:
    Params params_;
    int k_;
    double wcr_;
};

/// Episode of the capped multiproject mechanism. Requires env.k >= 2; for
/// env.k == 1 use single_project_episode instead.
inline EpisodeReport k_project_episode(const ProjectSet& type_set,
                                       const KEnv& env, const Params& params) {
    env.ensure_valid();
    if (env.k == 1)
        throw std::invalid_argument(
            "k_project_episode: k = 1 is the single-project environment; "
            "use single_project_episode");
    return run_episode(KProjectMechanism(params, env.k), type_set);
}

/**
 * @brief Optimal mechanism when the principal can reject everything but
 *        cannot pick a dominated project: the lottery may only place mass
 *        on a principal-favorite of the proposal.
 *
 * Plays the two-tier approval probability of the single-project optimum on
 * the principal-favorite project with the lowest agent payoff, which makes
 * any proposal equivalent to that single project. Same worst-case regret
 * as the single-project environment.
 */
class PartialCommitmentMechanism : public Mechanism {
  public:
    explicit PartialCommitmentMechanism(const Params& params)
        : params_(params), single_(params) {}

    std::string id() const override { return "partial-commitment"; }
    EnvTag env() const override { return EnvTag::multi(); }

    const Params& params() const { return params_; }
    double wcr() const { return single_.wcr(); }

    SubProb choice(const ProjectSet& proposal) const override {
        if (proposal.empty()) return {};
        // Principal-favorite payoff, and the lowest agent payoff attaining it.
        std::size_t pick = 0;
        for (std::size_t i = 1; i < proposal.size(); ++i) {
            if (proposal[i].v > proposal[pick].v ||
                (proposal[i].v == proposal[pick].v &&
                 proposal[i].u < proposal[pick].u))
                pick = i;
        }
        SubProb dist;
        const double a = approval_single(proposal[pick], params_);
        if (a > 0.0) dist.weights.emplace_back(pick, a);
        return dist;
    }

    ProjectSet best_response(const ProjectSet& type_set) const override {
        // A proposal is worth exactly its principal-favorite project, so
        // the agent's problem collapses to the single-project selection.
        return single_.best_response(type_set);
    }

  private:
    Params params_;
    SingleProjectMechanism single_;
};

/// Episode of the partial-commitment mechanism on a type set.
inline EpisodeReport partial_commitment_episode(const ProjectSet& type_set,
                                                const Params& params) {
    return run_episode(PartialCommitmentMechanism(params), type_set);
}

/// Default proposal-size bonus for the strict-IC perturbation: strictly
/// increasing into [0, 1).
inline double default_size_bonus(int n) { return n / (n + 1.0); }

inline constexpr double kDefaultStrictEps = 1e-3;

namespace detail {

/// Validates the perturbation inputs on the queried prefix 0..size and
/// returns the scale 1 - eps + eps*h(size).
inline double strict_scale(int size, double eps,
                           const std::function<double(int)>& h) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("strict perturbation: eps must lie in (0,1)");
    if (size < 0)
        throw std::invalid_argument("strict perturbation: negative proposal size");
    double prev = -1.0;
    for (int i = 0; i <= size; ++i) {
        const double hi = h(i);
        if (!(hi >= 0.0 && hi <= 1.0) || hi <= prev)
            throw std::invalid_argument(
                "strict perturbation: h must be strictly increasing into [0,1]");
        prev = hi;
    }
    return 1.0 - eps + eps * h(size);
}

}  // namespace detail

/**
 * @brief Size-sensitive approval probability that makes the multiproject
 *        optimum strictly incentive-compatible:
 *        (1 - eps + eps*h(|P|)) * approval_multi(u,v).
 *
 * Never exceeds approval_multi and converges to it pointwise as eps -> 0.
 * h is validated (strictly increasing into [0,1]) on the queried sizes.
 */
inline double strict_approval(const Project& p, int proposal_size, double eps,
                              const std::function<double(int)>& h,
                              const Params& params) {
    return detail::strict_scale(proposal_size, eps, h) * approval_multi(p, params);
}

/**
 * @brief The strictly incentive-compatible perturbation of the multiproject
 *        optimum.
 *
 * Promises the agent (1 - eps + eps*h(|P|)) * agent_promise(P), so every
 * added project strictly raises his payoff whenever the promise is
 * positive. Worst-case regret is within eps of wcr_multi.
 */
class StrictPmpMechanism : public Mechanism {
  public:
    StrictPmpMechanism(const Params& params, double eps = kDefaultStrictEps,
                       std::function<double(int)> h = default_size_bonus)
        : params_(params), eps_(eps), h_(std::move(h)) {
        params_.ensure_valid();
        detail::strict_scale(1, eps_, h_);
    }

    std::string id() const override { return "strict-pmp"; }
    EnvTag env() const override { return EnvTag::multi(); }

    const Params& params() const { return params_; }
    double eps() const { return eps_; }

    SubProb choice(const ProjectSet& proposal) const override {
        if (proposal.empty()) return {};
        if (proposal.size() == 1) {
            SubProb dist;
            const double a = strict_approval(
                proposal[0], 1, eps_, h_, params_);
            if (a > 0.0) dist.weights.emplace_back(0, a);
            return dist;
        }
        const double scale = detail::strict_scale(
            static_cast<int>(proposal.size()), eps_, h_);
        return detail::pmp_solve_at_target(
                   proposal, scale * agent_promise(proposal, params_))
            .weights;
    }

    ProjectSet best_response(const ProjectSet& type_set) const override {
        return type_set;  // proposing everything is strictly optimal
    }

  private:
    Params params_;
    double eps_;
    std::function<double(int)> h_;
};

}  // namespace mrpc
