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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mrpc/adversary.hpp"
#include "mrpc/extensions.hpp"
#include "mrpc/random.hpp"

using namespace mrpc;

namespace {

// Three projects where the full proposal strictly beats the two-project
// implementation: the promise is pinned by the mid project, but the optimum
// mixes the principal's favorite with the high-u fallback.
const ProjectSet kThreeProjectFixture{{0.16, 0.95}, {0.25, 0.6875},
                                      {0.6, 0.214}};

}  // namespace

TEST_CASE("two-project proposal combines both favorites") {
    const Params zero{0.0, 0.0};
    CHECK(two_project_proposal(ProjectSet{{1.0, 0.5}, {0.0, 1.0}}, zero) ==
          ProjectSet{{1.0, 0.5}, {0.0, 1.0}});

    CHECK(two_project_proposal(ProjectSet{{0.4, 0.7}}, zero) ==
          ProjectSet{{0.4, 0.7}});

    // Fixture: promise project and principal favorite, fallback excluded.
    CHECK(two_project_proposal(kThreeProjectFixture, zero) ==
          ProjectSet{{0.25, 0.6875}, {0.16, 0.95}});

    // Principal-favorite ties resolve toward the lower agent payoff.
    CHECK(two_project_proposal(ProjectSet{{0.9, 0.8}, {0.3, 0.8}}, zero) ==
          ProjectSet{{0.3, 0.8}, {0.9, 0.8}});

    CHECK_THROWS_AS(two_project_proposal(ProjectSet{}, zero),
                    std::invalid_argument);
}

TEST_CASE("two-project proposal preserves the agent promise") {
    Rng rng(53);
    for (const double u_min : {0.0, 0.25, 0.6}) {
        const Params params{u_min, 0.1};
        for (int trial = 0; trial < 150; ++trial) {
            const ProjectSet type = random_proposal(rng, params, 1, 6);
            const ProjectSet pair = two_project_proposal(type, params);
            CHECK(pair.size() <= 2);
            CHECK(pair.is_subset_of(type));
            CHECK(agent_promise(pair, params) ==
                  doctest::Approx(agent_promise(type, params)).epsilon(1e-12));
        }
    }
}

TEST_CASE("capped episodes keep the multiproject guarantee") {
    Rng rng(59);
    for (const double u_min : {0.0, 0.5}) {
        const Params params{u_min, 0.0};
        const double r_m = wcr_multi(params);
        for (int trial = 0; trial < 120; ++trial) {
            const ProjectSet type = random_proposal(rng, params, 1, 6);
            const EpisodeReport ep = k_project_episode(type, {2}, params);
            REQUIRE(ep.regret.has_value());
            CHECK(*ep.regret <= r_m + 1e-9);
            CHECK(ep.agent_payoff ==
                  doctest::Approx(agent_promise(type, params)).epsilon(1e-9));
            CHECK(ep.proposal.size() <= 2);
        }
    }
}

TEST_CASE("a cap of one routes to the single-project environment") {
    CHECK_THROWS_AS(
        k_project_episode(ProjectSet{{0.5, 0.5}}, {1}, {0.0, 0.0}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        k_project_episode(ProjectSet{{0.5, 0.5}}, {0}, {0.0, 0.0}),
        std::invalid_argument);
    CHECK_THROWS_AS(KProjectMechanism({0.0, 0.0}, 1), std::invalid_argument);
}

TEST_CASE("a lone top-tier project is chosen for sure under the cap") {
    const Params params{0.0, 0.0};
    const EpisodeReport ep =
        k_project_episode(ProjectSet{{0.6, 0.9}}, {2}, params);
    CHECK(ep.distribution.total_mass() == doctest::Approx(1.0));
    CHECK(*ep.regret == doctest::Approx(0.0));
}

TEST_CASE("full proposals strictly dominate the two-project implementation "
          "on the fixture") {
    const Params zero{0.0, 0.0};
    const double full = pmp_choice(kThreeProjectFixture, zero).objective;
    const double pair =
        pmp_choice(two_project_proposal(kThreeProjectFixture, zero), zero)
            .objective;
    // Exact values: 5/6 for the pair, (9.5 + 0.214)/11 for the full set.
    CHECK(pair == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
    CHECK(full == doctest::Approx(9.714 / 11.0).epsilon(1e-12));
    CHECK(full >= pair + 1e-6);

    // Same agent payoff either way.
    const EpisodeReport capped = k_project_episode(kThreeProjectFixture, {2}, zero);
    const EpisodeReport unrestricted =
        multi_project_episode(kThreeProjectFixture, zero);
    CHECK(capped.agent_payoff ==
          doctest::Approx(unrestricted.agent_payoff).epsilon(1e-12));
    CHECK(unrestricted.principal_payoff >= capped.principal_payoff + 1e-6);
}

TEST_CASE("capped payoffs never beat the unrestricted optimum") {
    Rng rng(61);
    const Params params{0.0, 0.25};
    for (int trial = 0; trial < 120; ++trial) {
        const ProjectSet type = random_proposal(rng, params, 1, 6);
        CHECK(pmp_choice(type, params).objective >=
              pmp_choice(two_project_proposal(type, params), params).objective -
                  1e-9);
    }
}

TEST_CASE("partial commitment: top-tier favorite chosen for sure") {
    const Params zero{0.0, 0.0};
    const EpisodeReport ep = partial_commitment_episode(
        ProjectSet{{0.8, 0.7}, {0.3, 0.95}, {0.9, 0.2}}, zero);
    CHECK(ep.proposal == ProjectSet{{0.8, 0.7}});  // favorite top-tier
    CHECK(ep.distribution.total_mass() == doctest::Approx(1.0));
    CHECK(*ep.regret == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("partial commitment: lone bottom-tier project rejected at u_min=0") {
    const EpisodeReport ep =
        partial_commitment_episode(ProjectSet{{1.0, 0.4}}, {0.0, 0.0});
    CHECK(ep.distribution.total_mass() == 0.0);
    CHECK(*ep.regret == doctest::Approx(0.4));
}

TEST_CASE("partial commitment: empty type, empty report") {
    const EpisodeReport ep = partial_commitment_episode({}, {0.2, 0.2});
    CHECK(ep.proposal.empty());
    CHECK(!ep.regret.has_value());
}

TEST_CASE("partial commitment plays the two-tier probability on the "
          "principal-favorite with least agent payoff") {
    const Params params{0.25, 0.0};
    const PartialCommitmentMechanism mech(params);
    // Two principal-favorites with equal v: mass goes to the lower-u one.
    const ProjectSet proposal{{0.9, 0.5}, {0.4, 0.5}, {0.6, 0.3}};
    const SubProb dist = mech.choice(proposal);
    const std::size_t target = *proposal.index_of({0.4, 0.5});
    CHECK(dist.weight_on(target) ==
          doctest::Approx(approval_single({0.4, 0.5}, params)).epsilon(1e-12));
    CHECK(dist.total_mass() ==
          doctest::Approx(approval_single({0.4, 0.5}, params)).epsilon(1e-12));
}

TEST_CASE("partial commitment keeps the single-project guarantee") {
    Rng rng(67);
    for (const double u_min : {0.0, 0.25, 0.75}) {
        const Params params{u_min, 0.0};
        const double r_s = wcr_single(params);
        for (int trial = 0; trial < 150; ++trial) {
            const ProjectSet type = random_proposal(rng, params, 1, 6);
            const EpisodeReport ep = partial_commitment_episode(type, params);
            REQUIRE(ep.regret.has_value());
            CHECK(*ep.regret <= r_s + 1e-9);
        }
    }
}

TEST_CASE("strict approval scales the base probability") {
    const Params zero{0.0, 0.0};
    const auto h = [](int n) { return n / (n + 1.0); };
    const Project p{0.7, 0.3};

    // Larger proposals get strictly larger factors.
    const double at1 = strict_approval(p, 1, 0.01, h, zero);
    const double at2 = strict_approval(p, 2, 0.01, h, zero);
    CHECK(at2 > at1);
    CHECK(at1 <= approval_multi(p, zero));
    CHECK(at2 <= approval_multi(p, zero));

    // Vanishing eps converges to the unperturbed approval.
    CHECK(strict_approval(p, 3, 1e-9, h, zero) ==
          doctest::Approx(approval_multi(p, zero)).epsilon(1e-7));

    CHECK_THROWS_AS(strict_approval(p, 2, 0.0, h, zero),
                    std::invalid_argument);
    CHECK_THROWS_AS(strict_approval(p, 2, 1.0, h, zero),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        strict_approval(p, 2, 0.01, [](int) { return 0.5; }, zero),
        std::invalid_argument);
    CHECK_THROWS_AS(
        strict_approval(p, 2, 0.01, [](int n) { return n * 2.0; }, zero),
        std::invalid_argument);
}

TEST_CASE("the perturbed mechanism strictly rewards larger proposals") {
    Rng rng(71);
    for (const double u_min : {0.0, 0.25}) {
        const Params params{u_min, 0.0};
        const StrictPmpMechanism mech(params);
        for (int trial = 0; trial < 100; ++trial) {
            const ProjectSet large = random_proposal(rng, params, 2, 6);
            std::vector<Project> sub(large.begin(), large.end());
            sub.erase(sub.begin() + rng.uniform_index(sub.size()));
            const ProjectSet small(std::move(sub));
            const double payoff_small = mech.payoff_to_agent(small);
            const double payoff_large = mech.payoff_to_agent(large);
            if (agent_promise(small, params) > 1e-9)
                CHECK(payoff_large > payoff_small);
            else
                CHECK(payoff_large >= payoff_small - 1e-12);
        }
    }
}

namespace {

// Partial-commitment variant that is more generous with principal-favorites
// than the two-tier probability allows.
class GenerousPartialMechanism : public Mechanism {
  public:
    explicit GenerousPartialMechanism(const Params& params) : params_(params) {}

    std::string id() const override { return "generous-partial"; }
    EnvTag env() const override { return EnvTag::multi(); }

    SubProb choice(const ProjectSet& proposal) const override {
        if (proposal.empty()) return {};
        std::size_t pick = 0;
        for (std::size_t i = 1; i < proposal.size(); ++i)
            if (proposal[i].v > proposal[pick].v ||
                (proposal[i].v == proposal[pick].v &&
                 proposal[i].u < proposal[pick].u))
                pick = i;
        SubProb dist;
        dist.weights.emplace_back(
            pick, std::min(1.0, approval_single(proposal[pick], params_) + 0.15));
        return dist;
    }

  private:
    Params params_;
};

}  // namespace

TEST_CASE("exceeding the two-tier probability forfeits the regret bound") {
    const Params params{0.25, 0.0};
    const GenerousPartialMechanism mech(params);
    const WcrCertificate cert = wcr_search(mech, {41, 2, 1}, params);
    CHECK(cert.value > wcr_single(params) + 0.05);
}

TEST_CASE("the perturbed mechanism stays within eps of the optimum regret") {
    const Params params{0.0, 0.0};
    const double eps = 1e-3;
    const StrictPmpMechanism mech(params, eps);
    Rng rng(73);
    for (int trial = 0; trial < 150; ++trial) {
        const ProjectSet type = random_proposal(rng, params, 1, 5);
        const EpisodeReport ep = run_episode(mech, type);
        REQUIRE(ep.regret.has_value());
        CHECK(*ep.regret <= wcr_multi(params) + eps + 1e-9);
    }
    const WcrCertificate cert = wcr_search(mech, {41, 2, 2}, params);
    CHECK(cert.value <= wcr_multi(params) + eps + 2e-3);
}
