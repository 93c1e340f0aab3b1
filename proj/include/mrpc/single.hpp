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
#include "mrpc/mechanism.hpp"

namespace mrpc {

/**
 * @brief Minimal worst-case regret in the single-project environment:
 *        min{ (1-u_min)/(2-u_min), 1-v_min }.
 *
 * Always in [0, 1/2].
 */
inline double wcr_single(const Params& params) {
    params.ensure_valid();
    return std::min((1.0 - params.u_min) / (2.0 - params.u_min),
                    1.0 - params.v_min);
}

/**
 * @brief Optimal single-proposal approval probability (two-tier rule).
 *
 * A project is approved for sure when its principal payoff clears the
 * top-tier threshold 1 - wcr_single (weak inequality on the boundary) or
 * when it gives the agent nothing; otherwise the approval probability
 * u_min/u leaves the agent indifferent across bottom-tier proposals.
 */
inline double approval_single(const Project& p, const Params& params) {
    const double r = wcr_single(params);
    if (p.v >= 1.0 - r || p.u == 0.0) return 1.0;
    return params.u_min / p.u;
}

/**
 * @brief The two-tier mechanism of the single-project environment.
 *
 * Proposals hold at most one project; a singleton {a} is approved with
 * probability approval_single(a). The agent's optimal proposal is his
 * favorite top-tier project when he has one, and otherwise a project
 * maximizing the principal's expected payoff.
 */
class SingleProjectMechanism : public Mechanism {
  public:
    explicit SingleProjectMechanism(const Params& params)
        : params_(params), wcr_(wcr_single(params)) {
        params_.ensure_valid();
    }

    std::string id() const override { return "two-tier-single"; }
    EnvTag env() const override { return EnvTag::single(); }

    const Params& params() const { return params_; }
    double wcr() const { return wcr_; }

    SubProb choice(const ProjectSet& proposal) const override {
        if (proposal.empty()) return {};
        if (proposal.size() > 1)
            throw std::invalid_argument(
                "single-project environment: proposals hold at most one project");
        SubProb dist;
        const double a = approval_single(proposal[0], params_);
        if (a > 0.0) dist.weights.emplace_back(0, a);
        return dist;
    }

    ProjectSet best_response(const ProjectSet& type_set) const override {
        if (type_set.empty()) return {};
        const double threshold = 1.0 - wcr_;

        // Favorite top-tier project: highest u, then highest v.
        const Project* pick = nullptr;
        for (const Project& p : type_set) {
            if (p.v < threshold) continue;
            if (pick == nullptr || p.u > pick->u ||
                (p.u == pick->u && p.v > pick->v))
                pick = &p;
        }
        if (pick == nullptr) {
            // All bottom tier: maximize the principal's expected payoff
            // approval * v; ties keep the canonically first project.
            double best = -1.0;
            for (const Project& p : type_set) {
                const double value = approval_single(p, params_) * p.v;
                if (value > best) {
                    best = value;
                    pick = &p;
                }
            }
        }
        return ProjectSet{*pick};
    }

  private:
    Params params_;
    double wcr_;
};

/// Full episode of the two-tier mechanism on a type set.
inline EpisodeReport single_project_episode(const ProjectSet& type_set,
                                            const Params& params) {
    return run_episode(SingleProjectMechanism(params), type_set);
}

}  // namespace mrpc
