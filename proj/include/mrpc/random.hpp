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

#include "mrpc/core.hpp"

namespace mrpc {

/// Small deterministic generator (splitmix64). Standard-library
/// distributions are implementation-defined, so seeded suites use this to
/// stay reproducible across toolchains.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform index in [0, n).
    std::size_t uniform_index(std::size_t n) {
        return static_cast<std::size_t>(uniform() * n);
    }

  private:
    std::uint64_t state_;
};

inline Project random_project(Rng& rng, const Params& params) {
    return {rng.uniform(params.u_min, 1.0), rng.uniform(params.v_min, 1.0)};
}

/// Nonempty random proposal with between min_size and max_size projects
/// (before deduplication, which is almost surely a no-op).
inline ProjectSet random_proposal(Rng& rng, const Params& params,
                                  std::size_t min_size, std::size_t max_size) {
    const std::size_t n =
        min_size + rng.uniform_index(max_size - min_size + 1);
    std::vector<Project> projects;
    projects.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        projects.push_back(random_project(rng, params));
    return ProjectSet(std::move(projects));
}

/// A nested pair (P, Q) with P a random subset of the random set Q.
inline std::pair<ProjectSet, ProjectSet> random_nested_pair(
    Rng& rng, const Params& params, std::size_t max_size) {
    ProjectSet large = random_proposal(rng, params, 1, max_size);
    std::vector<Project> subset;
    for (const Project& p : large)
        if (rng.uniform() < 0.5) subset.push_back(p);
    return {ProjectSet(std::move(subset)), std::move(large)};
}

}  // namespace mrpc
