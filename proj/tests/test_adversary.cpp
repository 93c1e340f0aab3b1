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

#include "fixtures.hpp"
#include "mrpc/adversary.hpp"
#include "mrpc/extensions.hpp"
#include "mrpc/multi.hpp"
#include "mrpc/single.hpp"

using namespace mrpc;

TEST_CASE("single-project lower bound") {
    const Params zero{0.0, 0.0};
    CHECK(wcr_lower_bound_single(0.5, zero) == doctest::Approx(0.5));
    CHECK(wcr_lower_bound_single(1.0, zero) == 0.0);
    CHECK_THROWS_AS(wcr_lower_bound_single(0.1, Params{0.0, 0.5}),
                    std::invalid_argument);

    // The maximized bound reproduces the closed form.
    for (const double u_min : {0.0, 0.3, 0.8}) {
        for (const double v_min : {0.0, 0.4}) {
            const Params params{u_min, v_min};
            double best = 0.0;
            for (int i = 0; i <= 1000; ++i)
                best = std::max(best, wcr_lower_bound_single(
                                          v_min + i * (1.0 - v_min) / 1000.0,
                                          params));
            best = std::max(
                best, wcr_lower_bound_single(
                          std::clamp(1.0 / (2.0 - u_min), v_min, 1.0), params));
            CHECK(best == doctest::Approx(wcr_single(params)).epsilon(1e-12));
        }
    }
}

TEST_CASE("pair lower bound") {
    const Params zero{0.0, 0.0};
    CHECK(wcr_lower_bound_multi({1.0, 0.5}, zero) ==
          doctest::Approx(0.25).epsilon(1e-12));
    CHECK(wcr_lower_bound_multi({0.0, 0.7}, zero) == 0.0);  // u == u_min
    CHECK_THROWS_AS(wcr_lower_bound_multi({0.1, 0.5}, Params{0.2, 0.0}),
                    std::invalid_argument);

    // Never above the closed form; the maximum over the rectangle hits it.
    for (const double u_min : {0.0, 0.25, 0.6}) {
        for (const double v_min : {0.0, 0.5}) {
            const Params params{u_min, v_min};
            const double r_m = wcr_multi(params);
            double best = 0.0;
            for (int i = 0; i <= 300; ++i) {
                for (int j = 0; j <= 300; ++j) {
                    const Project p{
                        params.u_min + i * (1.0 - params.u_min) / 300.0,
                        params.v_min + j * (1.0 - params.v_min) / 300.0};
                    const double bound = wcr_lower_bound_multi(p, params);
                    CHECK(bound <= r_m + 1e-12);
                    best = std::max(best, bound);
                }
            }
            CHECK(std::abs(best - r_m) <= 1e-3);
        }
    }
}

TEST_CASE("certification of the two-tier rule at the default resolution") {
    const Params zero{0.0, 0.0};
    const SingleProjectMechanism mech(zero);
    const WcrCertificate cert = wcr_search(mech, {101, 2, 2}, zero);
    CHECK(std::abs(cert.value - 0.5) <= 1e-3);
    CHECK(cert.value <= wcr_single(zero) + 1e-9);  // soundness
    CHECK(cert.witness.size() <= 2);
    CHECK(cert.mechanism_id == mech.id());
    // The witness replays to the certified value.
    CHECK(std::abs(episode_regret(mech, cert.witness) - cert.value) <= 1e-9);
}

TEST_CASE("certification of the multiproject optimum at the default "
          "resolution") {
    const Params zero{0.0, 0.0};
    const MultiProjectMechanism mech(zero);
    const WcrCertificate cert = wcr_search(mech, {101, 2, 2}, zero);
    CHECK(std::abs(cert.value - 0.25) <= 1e-3);
    CHECK(cert.value <= wcr_multi(zero) + 1e-9);
    CHECK(cert.witness.size() <= 2);
    CHECK(std::abs(episode_regret(mech, cert.witness) - cert.value) <= 1e-9);
}

TEST_CASE("the no-commitment benchmark certifies at 1 - v_min") {
    for (const Params& params : {Params{0.0, 0.0}, Params{0.25, 0.25}}) {
        const mrpc_test::AgentFavoriteMechanism mech;
        const WcrCertificate cert = wcr_search(mech, {11, 2, 0}, params);
        CHECK(cert.value == doctest::Approx(1.0 - params.v_min).epsilon(1e-9));
    }
}

TEST_CASE("searches are deterministic") {
    const Params params{0.25, 0.0};
    const MultiProjectMechanism mech(params);
    const WcrCertificate a = wcr_search(mech, {31, 2, 1}, params);
    const WcrCertificate b = wcr_search(mech, {31, 2, 1}, params);
    CHECK(a.value == b.value);
    CHECK(a.witness == b.witness);
}

TEST_CASE("certified values are monotone in the search resolution") {
    const Params params{0.0, 0.25};
    const mrpc_test::UniformSplitMechanism mech;
    // Nested grids: each next resolution contains the previous lattice.
    const double v5 = wcr_search(mech, {5, 2, 0}, params).value;
    const double v9 = wcr_search(mech, {9, 2, 0}, params).value;
    const double v17 = wcr_search(mech, {17, 2, 0}, params).value;
    CHECK(v9 >= v5 - 1e-15);
    CHECK(v17 >= v9 - 1e-15);

    // Monotone in the type-size cap as well.
    const double s1 = wcr_search(mech, {9, 1, 0}, params).value;
    const double s2 = wcr_search(mech, {9, 2, 0}, params).value;
    const double s3 = wcr_search(mech, {9, 3, 0}, params).value;
    CHECK(s2 >= s1 - 1e-15);
    CHECK(s3 >= s2 - 1e-15);
}

TEST_CASE("pairs suffice: size-3 types add nothing against the optimum") {
    const Params params{0.0, 0.0};
    const MultiProjectMechanism mech(params);
    const double pairs = wcr_search(mech, {17, 2, 1}, params).value;
    const double triples = wcr_search(mech, {17, 3, 1}, params).value;
    CHECK(triples >= pairs - 1e-15);
    CHECK(triples <= wcr_multi(params) + 1e-9);
}

TEST_CASE("the budget cap rejects oversized searches explicitly") {
    const Params zero{0.0, 0.0};
    const MultiProjectMechanism mech(zero);
    CHECK_THROWS_AS(wcr_search(mech, {401, 2, 0}, zero), std::runtime_error);
    CHECK_THROWS_AS(wcr_search(mech, {101, 9, 0}, zero), std::runtime_error);
    CHECK_THROWS_AS(wcr_search(mech, {1, 2, 0}, zero), std::invalid_argument);
}

TEST_CASE("degenerate rectangles still certify") {
    const Params corner{1.0, 0.5};
    const MultiProjectMechanism mech(corner);
    const WcrCertificate cert = wcr_search(mech, {11, 2, 1}, corner);
    CHECK(cert.value == doctest::Approx(0.0));
}
