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

#include "mrpc/core.hpp"
#include "mrpc/lp.hpp"
#include "mrpc/mechanism.hpp"

namespace mrpc {

/**
 * @brief Minimal probability mass on the agent's project (u, .) that,
 *        alongside the principal-ideal fallback (u_min, 1), matches the
 *        agent's stand-alone payoff p*u.
 *
 * The smallest q in [0,1] with u_min + q(u - u_min) >= p*u. Zero when
 * u == u_min; p*u <= u guarantees the target is always reachable.
 */
inline double matching_mass(double u, double p, const Params& params) {
    assert(u >= params.u_min - kFeasEps && u <= 1.0 + kFeasEps);
    assert(p >= 0.0 && p <= 1.0 + kFeasEps);
    if (u <= params.u_min) return 0.0;
    const double q = (p * u - params.u_min) / (u - params.u_min);
    return std::clamp(q, 0.0, 1.0);
}

/// Which branch of the closed-form multiproject worst-case regret applies:
/// the interior maximizer of the regret landscape, or the boundary v = v_min.
enum class WcrMultiBranch { interior, boundary };

inline WcrMultiBranch wcr_multi_branch(const Params& params) {
    params.ensure_valid();
    const double s = std::sqrt(1.0 - params.u_min);
    return params.v_min < 1.0 / (1.0 + s) ? WcrMultiBranch::interior
                                          : WcrMultiBranch::boundary;
}

/**
 * @brief Minimal worst-case regret in the multiproject environment,
 *        closed form.
 *
 * With s = sqrt(1 - u_min): (1-u_min)/(1+s)^2 when v_min < 1/(1+s), and
 * (1-u_min)(1-v_min)v_min / (1-u_min*v_min) otherwise. This is the
 * singular-point-free rewrite of the raw expression, finite at u_min = 0
 * (value 1/4) and continuous across the branch boundary.
 */
inline double wcr_multi(const Params& params) {
    params.ensure_valid();
    if (1.0 - params.u_min * params.v_min == 0.0) return 0.0;  // degenerate corner domain
    const double s = std::sqrt(1.0 - params.u_min);
    if (wcr_multi_branch(params) == WcrMultiBranch::interior)
        return (1.0 - params.u_min) / ((1.0 + s) * (1.0 + s));
    return (1.0 - params.u_min) * (1.0 - params.v_min) * params.v_min /
           (1.0 - params.u_min * params.v_min);
}

namespace detail {

/// Inner balance value at a single project: min over p in [0,1] of
/// max{(1-p)v, matching_mass(u,p)(1-v)}. The first piece falls in p, the
/// second rises, so the minimum sits at their crossing (or at p = 1 when
/// the rising piece vanishes identically).
inline double pair_balance_value(double u, double v, const Params& params) {
    if (u <= params.u_min) return 0.0;
    const double du = u - params.u_min;
    const double denom = u * (1.0 - v) + v * du;
    assert(denom > 0.0);
    const double p_star =
        std::clamp((v * du + params.u_min * (1.0 - v)) / denom, 0.0, 1.0);
    return std::max((1.0 - p_star) * v,
                    matching_mass(u, p_star, params) * (1.0 - v));
}

}  // namespace detail

/**
 * @brief Grid oracle for the multiproject worst-case regret: evaluates the
 *        max-min-max program directly on a grid_n^3 lattice over (u, v, p).
 *
 * The inner minimum over p additionally samples the analytic crossing of
 * the two affine-in-p pieces, so lattice error comes only from the outer
 * (u, v) grid. Independent of wcr_multi's closed form by construction.
 */
inline double wcr_multi_grid(const Params& params, int grid_n) {
    params.ensure_valid();
    if (grid_n < 2)
        throw std::invalid_argument("wcr_multi_grid: grid_n must be at least 2");

    const double du = (1.0 - params.u_min) / (grid_n - 1);
    const double dv = (1.0 - params.v_min) / (grid_n - 1);
    double worst = 0.0;
    for (int iu = 0; iu < grid_n; ++iu) {
        const double u = params.u_min + iu * du;
        for (int iv = 0; iv < grid_n; ++iv) {
            const double v = params.v_min + iv * dv;
            double inner = std::min(v, 1.0 - v);  // p = 1 and p = 0 endpoints
            for (int ip = 0; ip < grid_n; ++ip) {
                const double p = static_cast<double>(ip) / (grid_n - 1);
                const double value = std::max(
                    (1.0 - p) * v, matching_mass(u, p, params) * (1.0 - v));
                inner = std::min(inner, value);
            }
            inner = std::min(inner, detail::pair_balance_value(u, v, params));
            worst = std::max(worst, inner);
        }
    }
    return worst;
}

/**
 * @brief Optimal single-proposal approval probability in the multiproject
 *        environment.
 *
 * One on the top tier (v >= 1 - wcr_multi, weak inequality) and at
 * u == u_min; otherwise (1 - R/(1-v)) * u_min/u + R/(1-v) with
 * R = wcr_multi. Continuous across the tier boundary, nondecreasing in v,
 * nonincreasing in u.
 */
inline double approval_multi(const Project& p, const Params& params) {
    const double r = wcr_multi(params);
    if (p.v >= 1.0 - r || p.u == params.u_min) return 1.0;
    const double c = r / (1.0 - p.v);
    return (1.0 - c) * params.u_min / p.u + c;
}

/**
 * @brief The agent's promised payoff at a proposal: his maximal expected
 *        payoff from proposing each project alone,
 *        max over (u,v) in P of approval_multi(u,v) * u.
 *
 * Zero on the empty proposal.
 */
inline double agent_promise(const ProjectSet& proposal, const Params& params) {
    double best = 0.0;
    for (const Project& p : proposal)
        best = std::max(best, approval_multi(p, params) * p.u);
    return best;
}

/**
 * @brief Upper bound on the agent's payoff at a proposal under any
 *        incentive-compatible mechanism whose worst-case regret stays
 *        within wcr_multi.
 *
 * Maximizes u_min + sum pi(u,v)(u - u_min) over subprobabilities pi with
 * sum pi(u,v)(1 - v) <= wcr_multi. The returned objective includes the
 * u_min constant and is therefore at least u_min.
 */
inline LpSolution agent_payoff_cap(const ProjectSet& proposal,
                                   const Params& params) {
    if (proposal.empty())
        throw std::invalid_argument("agent_payoff_cap: empty proposal");
    const std::size_t n = proposal.size();
    std::vector<double> objective(n);
    LinearConstraint mass{std::vector<double>(n, 1.0), -kLpInf, 1.0};
    LinearConstraint slack{std::vector<double>(n), -kLpInf, wcr_multi(params)};
    for (std::size_t i = 0; i < n; ++i) {
        objective[i] = proposal[i].u - params.u_min;
        slack.coeffs[i] = 1.0 - proposal[i].v;
    }
    LpSolution solution = lp2_solve(objective, {mass, slack});
    assert(solution.status == LpStatus::optimal);  // the origin is feasible
    solution.objective += params.u_min;
    return solution;
}

namespace detail {

/// Principal-optimal lottery delivering exactly `target` to the agent:
/// maximize sum pi*v subject to sum pi <= 1 and sum pi*u == target.
inline LpSolution pmp_solve_at_target(const ProjectSet& proposal,
                                      double target) {
    const std::size_t n = proposal.size();
    std::vector<double> objective(n);
    LinearConstraint mass{std::vector<double>(n, 1.0), -kLpInf, 1.0};
    LinearConstraint promise{std::vector<double>(n), target, target};
    for (std::size_t i = 0; i < n; ++i) {
        objective[i] = proposal[i].v;
        promise.coeffs[i] = proposal[i].u;
    }
    LpSolution solution = lp2_solve(objective, {mass, promise});
    if (solution.status != LpStatus::optimal)
        throw std::logic_error(
            "pmp program unexpectedly infeasible or unbounded");
    return solution;
}

}  // namespace detail

/**
 * @brief The proposal-wide maximal-payoff lottery: the principal-optimal
 *        randomization that grants the agent exactly agent_promise(P).
 *
 * The returned vertex has support of at most two projects and its
 * objective (the principal's expected payoff) is at least
 * max v over P minus wcr_multi.
 */
inline LpSolution pmp_choice(const ProjectSet& proposal, const Params& params) {
    if (proposal.empty())
        throw std::invalid_argument("pmp_choice: empty proposal");
    return detail::pmp_solve_at_target(proposal, agent_promise(proposal, params));
}

/**
 * @brief The same optimum through the relaxed program: the agent's payoff
 *        is only required to lie between agent_promise(P) and
 *        agent_payoff_cap(P).
 *
 * The two programs have identical optimal solutions; this route exists as
 * an algebraic cross-check of pmp_choice.
 */
inline LpSolution pmp_choice_range(const ProjectSet& proposal,
                                   const Params& params) {
    if (proposal.empty())
        throw std::invalid_argument("pmp_choice_range: empty proposal");
    const std::size_t n = proposal.size();
    std::vector<double> objective(n);
    // The cap provably dominates the promise; the max only repairs the
    // ulp-level inversion that occurs when the two are mathematically equal.
    const double lower = agent_promise(proposal, params);
    const double upper =
        std::max(agent_payoff_cap(proposal, params).objective, lower);
    LinearConstraint mass{std::vector<double>(n, 1.0), -kLpInf, 1.0};
    LinearConstraint promise{std::vector<double>(n), lower, upper};
    for (std::size_t i = 0; i < n; ++i) {
        objective[i] = proposal[i].v;
        promise.coeffs[i] = proposal[i].u;
    }
    LpSolution solution = lp2_solve(objective, {mass, promise});
    if (solution.status != LpStatus::optimal)
        throw std::logic_error(
            "pmp range program unexpectedly infeasible or unbounded");
    return solution;
}

/**
 * @brief The optimal multiproject mechanism: approval_multi on singletons
 *        and the proposal-wide maximal-payoff lottery on larger proposals.
 *
 * Incentive-compatible (the promise is monotone under set inclusion), so
 * proposing the whole type is optimal for the agent. Attains the minimal
 * worst-case regret for every parameter choice; admissibility (no mechanism
 * weakly dominates it in regret) additionally requires v_min > 0.
 */
class MultiProjectMechanism : public Mechanism {
  public:
    explicit MultiProjectMechanism(const Params& params)
        : params_(params), wcr_(wcr_multi(params)) {
        params_.ensure_valid();
    }

    std::string id() const override { return "pmp-multi"; }
    EnvTag env() const override { return EnvTag::multi(); }

    const Params& params() const { return params_; }
    double wcr() const { return wcr_; }

    SubProb choice(const ProjectSet& proposal) const override {
        if (proposal.empty()) return {};
        return pmp_choice(proposal, params_).weights;
    }

    ProjectSet best_response(const ProjectSet& type_set) const override {
        return type_set;  // propose everything
    }

  private:
    Params params_;
    double wcr_;
};

/// Full episode of the optimal multiproject mechanism on a type set.
inline EpisodeReport multi_project_episode(const ProjectSet& type_set,
                                           const Params& params) {
    return run_episode(MultiProjectMechanism(params), type_set);
}

}  // namespace mrpc
