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

#include <iomanip>
#include <ostream>
#include <sstream>

#include "mrpc/adversary.hpp"
#include "mrpc/curves.hpp"
#include "mrpc/extensions.hpp"
#include "mrpc/multi.hpp"
#include "mrpc/random.hpp"
#include "mrpc/single.hpp"

namespace mrpc {

enum class VerifyLevel { quick, full };

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

namespace detail {

/// Collects the first failure of a check; further requirements are skipped
/// in the report but still evaluated cheaply.
struct Checker {
    bool ok = true;
    std::string why;

    void require(bool condition, const std::string& message) {
        if (!condition && ok) {
            ok = false;
            why = message;
        }
    }
};

inline std::vector<Params> parameter_grid() {
    std::vector<Params> grid;
    for (const double u : {0.0, 0.25, 0.5, 0.75})
        for (const double v : {0.0, 0.25, 0.5, 0.75}) grid.push_back({u, v});
    return grid;
}

inline std::string describe(const Params& p) {
    return "(u_min=" + format_significant(p.u_min, 6) +
           ", v_min=" + format_significant(p.v_min, 6) + ")";
}

/// The three-project fixture on which the two-project implementation is
/// strictly dominated by the full proposal: the promise-pinning project,
/// the principal's favorite, and a high-u fallback the full optimum mixes
/// in.
inline ProjectSet strict_dominance_fixture() {
    return ProjectSet{{0.16, 0.95}, {0.25, 0.6875}, {0.6, 0.214}};
}

}  // namespace detail

/**
 * @brief Runs the cross-module verification suite.
 *
 * quick keeps grids and sample counts small enough for interactive use;
 * full runs the certification-grade resolutions. Random suites are seeded
 * and fully reproducible.
 */
inline std::vector<CheckResult> run_verification(VerifyLevel level,
                                                 std::uint64_t seed = 0) {
    const int oracle_grid = level == VerifyLevel::quick ? 61 : 201;
    const std::size_t random_count = level == VerifyLevel::quick ? 200 : 1000;
    const SearchSpec cert_spec{level == VerifyLevel::quick ? 41 : 101, 2, 2};
    const std::vector<Params> all_params = detail::parameter_grid();
    const std::vector<Params> cert_params =
        level == VerifyLevel::quick
            ? std::vector<Params>{{0.0, 0.0}, {0.5, 0.25}}
            : all_params;

    std::vector<CheckResult> results;
    auto add = [&results](const std::string& name, const detail::Checker& c) {
        results.push_back({name, c.ok, c.ok ? "ok" : c.why});
    };

    {  // Exact endpoint values of both closed forms.
        detail::Checker c;
        c.require(std::abs(wcr_single({0.0, 0.0}) - 0.5) <= 1e-12,
                  "wcr_single(0,0) != 1/2");
        c.require(std::abs(wcr_multi({0.0, 0.0}) - 0.25) <= 1e-12,
                  "wcr_multi(0,0) != 1/4");
        c.require(wcr_single({1.0, 0.0}) == 0.0, "wcr_single(1,0) != 0");
        c.require(wcr_multi({1.0, 0.5}) == 0.0, "wcr_multi(1,.5) != 0");
        c.require(std::abs(wcr_multi({0.0, 0.75}) - 0.1875) <= 1e-12,
                  "wcr_multi(0,0.75) != 0.1875");
        add("closed-form-endpoints", c);
    }

    {  // The canonical two-point episode: a half-half split, regret 1/4.
        detail::Checker c;
        const Params params{0.0, 0.0};
        const ProjectSet type{{1.0, 0.5}, {0.0, 1.0}};
        const LpSolution sol = pmp_choice(type, params);
        c.require(sol.support_size == 2, "expected a two-point split");
        c.require(std::abs(sol.weights.weight_on(0) - 0.5) <= 1e-9 &&
                      std::abs(sol.weights.weight_on(1) - 0.5) <= 1e-9,
                  "weights differ from (1/2, 1/2)");
        const EpisodeReport ep = multi_project_episode(type, params);
        c.require(ep.regret && std::abs(*ep.regret - 0.25) <= 1e-9,
                  "episode regret != 1/4");
        c.require(std::abs(approval_multi({1.0, 0.5}, params) - 0.5) <= 1e-12,
                  "approval_multi(1,1/2) != 1/2");
        add("two-point-episode", c);
    }

    {  // Continuity of the closed form across its branch boundary.
        detail::Checker c;
        for (double u = 0.0; u <= 0.95; u += 0.05) {
            const double threshold = 1.0 / (1.0 + std::sqrt(1.0 - u));
            const double below = wcr_multi({u, threshold - 1e-9});
            const double at = wcr_multi({u, threshold});
            c.require(std::abs(below - at) <= 1e-7,
                      "branch discontinuity at u_min=" +
                          format_significant(u, 6));
        }
        add("closed-form-branch-continuity", c);
    }

    {  // Closed form against the direct lattice evaluation of the
       // max-min-max program.
        detail::Checker c;
        for (const Params& params : all_params) {
            const double numeric = wcr_multi_grid(params, oracle_grid);
            const double closed = wcr_multi(params);
            c.require(std::abs(numeric - closed) <= 2e-3,
                      "grid oracle off at " + detail::describe(params) +
                          ": " + format_significant(numeric) + " vs " +
                          format_significant(closed));
        }
        add("wcr-grid-oracle", c);
    }

    {  // Shape of the two worst-case-regret curves.
        detail::Checker c;
        const auto left = wcr_curve(CurveAxis::u_min, 0.0, 100);
        const auto right = wcr_curve(CurveAxis::v_min, 0.0, 100);
        for (const auto& pts : {left, right}) {
            for (std::size_t i = 0; i < pts.size(); ++i) {
                c.require(pts[i].r_m <= pts[i].r_s + 1e-12,
                          "r_m above r_s along a curve");
                if (i > 0) {
                    c.require(pts[i].r_s <= pts[i - 1].r_s + 1e-12 &&
                                  pts[i].r_m <= pts[i - 1].r_m + 1e-12,
                              "curve not nonincreasing");
                }
            }
        }
        for (const CurvePoint& p : right) {
            const double expect = p.x <= 0.5 ? 0.25 : p.x * (1.0 - p.x);
            c.require(std::abs(p.r_m - expect) <= 1e-12,
                      "flat-then-parabola law violated at x=" +
                          format_significant(p.x, 6));
        }
        add("curve-shape", c);
    }

    // Seeded random proposals per parameter pair, shared by several checks.
    {
        detail::Checker equivalence, sandwich, guarantee;
        for (std::size_t pi = 0; pi < all_params.size(); ++pi) {
            const Params& params = all_params[pi];
            const double r_m = wcr_multi(params);
            Rng rng(seed * 0x9E3779B9ULL + pi + 1);
            for (std::size_t t = 0; t < random_count; ++t) {
                const ProjectSet proposal = random_proposal(rng, params, 1, 6);
                const LpSolution direct = pmp_choice(proposal, params);
                const LpSolution ranged = pmp_choice_range(proposal, params);
                equivalence.require(
                    std::abs(direct.objective - ranged.objective) <= 1e-9,
                    "promise-equality and ranged programs disagree at " +
                        detail::describe(params));
                const double promise = agent_promise(proposal, params);
                const double cap = agent_payoff_cap(proposal, params).objective;
                sandwich.require(promise <= cap + 1e-9,
                                 "promise above cap at " +
                                     detail::describe(params));
                guarantee.require(
                    best_available(proposal) - direct.objective <= r_m + 1e-9,
                    "regret guarantee violated at " + detail::describe(params));
                guarantee.require(direct.support_size <= 2,
                                  "support larger than two");
                guarantee.require(
                    std::abs(agent_payoff(direct.weights, proposal) - promise) <=
                        1e-9,
                    "promise not met with equality");
            }
        }
        add("lp-two-route-agreement", equivalence);
        add("promise-sandwich", sandwich);
        add("pmp-regret-guarantee", guarantee);
    }

    {  // Singleton identities on a dense grid.
        detail::Checker identity, bound;
        for (const Params& params : all_params) {
            const double r_m = wcr_multi(params);
            for (int i = 0; i <= 100; ++i) {
                for (int j = 0; j <= 100; ++j) {
                    const Project p{
                        params.u_min + i * (1.0 - params.u_min) / 100.0,
                        params.v_min + j * (1.0 - params.v_min) / 100.0};
                    const double cap =
                        agent_payoff_cap(ProjectSet{p}, params).objective;
                    identity.require(
                        std::abs(cap - approval_multi(p, params) * p.u) <= 1e-9,
                        "singleton cap differs from approval*u at " +
                            detail::describe(params));
                    bound.require(
                        p.v * (1.0 - approval_multi(p, params)) <= r_m + 1e-9,
                        "singleton regret above wcr_multi at " +
                            detail::describe(params));
                }
            }
        }
        add("singleton-cap-identity", identity);
        add("singleton-regret-bound", bound);
    }

    {  // Incentive compatibility of the multiproject optimum.
        detail::Checker c;
        for (std::size_t pi = 0; pi < all_params.size(); ++pi) {
            const Params& params = all_params[pi];
            const MultiProjectMechanism mech(params);
            Rng rng(seed * 0x517CC1B7ULL + pi + 1);
            std::vector<std::pair<ProjectSet, ProjectSet>> chains;
            chains.reserve(random_count);
            for (std::size_t t = 0; t < random_count; ++t)
                chains.push_back(random_nested_pair(rng, params, 6));
            const IcCheck ic = is_ic_on(mech, chains);
            c.require(ic.holds, "payoff monotonicity violated at " +
                                    detail::describe(params));
        }
        add("ic-nested-pairs", c);
    }

    {  // Monotonicity of both approval rules on a dense grid.
        detail::Checker c;
        for (const Params& params : all_params) {
            const double r_m = wcr_multi(params);
            const double du = (1.0 - params.u_min) / 100.0;
            const double dv = (1.0 - params.v_min) / 100.0;
            for (int i = 0; i <= 100; ++i) {
                const double u = params.u_min + i * du;
                for (int j = 0; j <= 100; ++j) {
                    const double v = params.v_min + j * dv;
                    if (j < 100) {
                        c.require(approval_single({u, v}, params) <=
                                      approval_single({u, v + dv}, params) +
                                          1e-12,
                                  "approval_single decreasing in v");
                        c.require(approval_multi({u, v}, params) <=
                                      approval_multi({u, v + dv}, params) +
                                          1e-12,
                                  "approval_multi decreasing in v");
                    }
                    if (i < 100 && du > 0.0) {
                        const double su = approval_single({u, v}, params);
                        const double su2 = approval_single({u + du, v}, params);
                        c.require(su2 <= su + 1e-12,
                                  "approval_single increasing in u");
                        const double mu = approval_multi({u, v}, params);
                        const double mu2 = approval_multi({u + du, v}, params);
                        c.require(mu2 <= mu + 1e-12,
                                  "approval_multi increasing in u");
                        // Strictly decreasing inside the bottom tier when
                        // u_min > 0 (for u_min = 0 the bottom tier is flat
                        // in u).
                        if (params.u_min > 0.0 && v < 1.0 - r_m &&
                            u > params.u_min)
                            c.require(mu2 <= mu - 1e-12,
                                      "approval_multi not strict in the "
                                      "bottom tier at " +
                                          detail::describe(params));
                    }
                }
            }
        }
        add("approval-monotonicity", c);
    }

    {  // Worst-case-regret certification of the two optimal mechanisms.
        detail::Checker single_cert, multi_cert;
        for (const Params& params : cert_params) {
            const SingleProjectMechanism alpha(params);
            const WcrCertificate cs = wcr_search(alpha, cert_spec, params);
            single_cert.require(
                std::abs(cs.value - wcr_single(params)) <= 2e-3,
                "single-project certificate off at " +
                    detail::describe(params) + ": " +
                    format_significant(cs.value));
            single_cert.require(cs.value <= wcr_single(params) + 1e-9,
                                "certified value above the proven bound");

            const MultiProjectMechanism pmp(params);
            const WcrCertificate cm = wcr_search(pmp, cert_spec, params);
            multi_cert.require(
                std::abs(cm.value - wcr_multi(params)) <= 2e-3,
                "multiproject certificate off at " + detail::describe(params) +
                    ": " + format_significant(cm.value));
            multi_cert.require(cm.value <= wcr_multi(params) + 1e-9,
                               "certified value above the proven bound");
        }
        add("wcr-cert-single", single_cert);
        add("wcr-cert-multi", multi_cert);
    }

    {  // The capped environment: same agent payoff, same regret guarantee,
       // strictly dominated on the three-project fixture.
        detail::Checker c;
        for (std::size_t pi = 0; pi < all_params.size(); ++pi) {
            const Params& params = all_params[pi];
            const double r_m = wcr_multi(params);
            Rng rng(seed * 0xA24BAED4ULL + pi + 1);
            for (std::size_t t = 0; t < random_count / 4 + 25; ++t) {
                const ProjectSet type = random_proposal(rng, params, 1, 6);
                const EpisodeReport ep = k_project_episode(type, {2}, params);
                c.require(ep.regret && *ep.regret <= r_m + 1e-9,
                          "capped episode exceeds wcr_multi at " +
                              detail::describe(params));
                c.require(std::abs(ep.agent_payoff -
                                   agent_promise(type, params)) <= 1e-9,
                          "capped episode breaks the promise at " +
                              detail::describe(params));
            }
        }
        const Params params{0.0, 0.0};
        const ProjectSet fixture = detail::strict_dominance_fixture();
        const double full = pmp_choice(fixture, params).objective;
        const double pair =
            pmp_choice(two_project_proposal(fixture, params), params).objective;
        c.require(full >= pair + 1e-6,
                  "full proposal does not strictly dominate the two-project "
                  "implementation on the fixture");
        add("k-cap-episodes", c);
    }

    {  // Partial commitment: single-project guarantee and certification.
        detail::Checker c;
        for (std::size_t pi = 0; pi < all_params.size(); ++pi) {
            const Params& params = all_params[pi];
            const double r_s = wcr_single(params);
            Rng rng(seed * 0xD6E8FEB8ULL + pi + 1);
            for (std::size_t t = 0; t < random_count / 4 + 25; ++t) {
                const ProjectSet type = random_proposal(rng, params, 1, 6);
                const EpisodeReport ep = partial_commitment_episode(type, params);
                c.require(ep.regret && *ep.regret <= r_s + 1e-9,
                          "partial-commitment episode exceeds wcr_single at " +
                              detail::describe(params));
            }
        }
        for (const Params& params : cert_params) {
            const PartialCommitmentMechanism mech(params);
            const WcrCertificate cert = wcr_search(mech, cert_spec, params);
            c.require(std::abs(cert.value - wcr_single(params)) <= 2e-3,
                      "partial-commitment certificate off at " +
                          detail::describe(params));
        }
        add("partial-commitment", c);
    }

    {  // Strict-IC perturbation: strictly growing payoffs, regret within
       // eps of the unperturbed optimum.
        detail::Checker c;
        const double eps = kDefaultStrictEps;
        for (std::size_t pi = 0; pi < all_params.size(); ++pi) {
            const Params& params = all_params[pi];
            const StrictPmpMechanism mech(params, eps);
            Rng rng(seed * 0x2545F491ULL + pi + 1);
            for (std::size_t t = 0; t < random_count / 4 + 25; ++t) {
                ProjectSet large = random_proposal(rng, params, 2, 6);
                std::vector<Project> sub(large.begin(), large.end());
                sub.erase(sub.begin() + rng.uniform_index(sub.size()));
                const ProjectSet small(std::move(sub));
                if (small.empty()) continue;
                const double payoff_small = mech.payoff_to_agent(small);
                const double payoff_large = mech.payoff_to_agent(large);
                if (agent_promise(small, params) > 1e-6)
                    c.require(payoff_large > payoff_small,
                              "enlarging the proposal did not strictly raise "
                              "the payoff at " +
                                  detail::describe(params));
                else
                    c.require(payoff_large >= payoff_small - 1e-12,
                              "payoff monotonicity violated at zero promise");
            }
        }
        for (const Params& params : cert_params) {
            const StrictPmpMechanism mech(params, eps);
            const WcrCertificate cert = wcr_search(mech, cert_spec, params);
            c.require(cert.value <= wcr_multi(params) + eps + 2e-3,
                      "perturbed mechanism exceeds wcr_multi + eps at " +
                          detail::describe(params));
        }
        add("strict-ic-perturbation", c);
    }

    return results;
}

/// Prints one status line per check; returns true when everything passed.
inline bool print_verification(std::ostream& os,
                               const std::vector<CheckResult>& results) {
    bool all = true;
    for (const CheckResult& r : results) {
        os << (r.passed ? "[PASS] " : "[FAIL] ") << std::left << std::setw(32)
           << r.name << ' ' << r.detail << '\n';
        all = all && r.passed;
    }
    os << (all ? "all checks passed" : "verification FAILED") << " ("
       << results.size() << " checks)\n";
    return all;
}

}  // namespace mrpc
