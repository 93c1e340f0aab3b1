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

// Deliberately suboptimal or broken mechanisms used as adversary-suite
// fixtures and counterexamples.

#pragma once

#include <functional>

#include "mrpc/mechanism.hpp"

namespace mrpc_test {

/// Single-proposal mechanism defined by an arbitrary approval table.
class TableMechanism : public mrpc::Mechanism {
  public:
    TableMechanism(std::string id,
                   std::function<double(const mrpc::Project&)> table)
        : id_(std::move(id)), table_(std::move(table)) {}

    std::string id() const override { return id_; }
    mrpc::EnvTag env() const override { return mrpc::EnvTag::single(); }

    mrpc::SubProb choice(const mrpc::ProjectSet& proposal) const override {
        if (proposal.empty()) return {};
        if (proposal.size() > 1)
            throw std::invalid_argument("table mechanism: singletons only");
        mrpc::SubProb dist;
        const double a = std::clamp(table_(proposal[0]), 0.0, 1.0);
        if (a > 0.0) dist.weights.emplace_back(0, a);
        return dist;
    }

  private:
    std::string id_;
    std::function<double(const mrpc::Project&)> table_;
};

/// Deterministic acceptance above a principal-payoff threshold, rejection
/// below: the best deterministic rule, worst-case regret 1/2 at (0,0).
class DeterministicThresholdMechanism : public mrpc::Mechanism {
  public:
    explicit DeterministicThresholdMechanism(double threshold)
        : threshold_(threshold) {}

    std::string id() const override { return "deterministic-threshold"; }
    mrpc::EnvTag env() const override { return mrpc::EnvTag::single(); }

    mrpc::SubProb choice(const mrpc::ProjectSet& proposal) const override {
        if (proposal.empty()) return {};
        if (proposal.size() > 1)
            throw std::invalid_argument("threshold mechanism: singletons only");
        mrpc::SubProb dist;
        if (proposal[0].v >= threshold_) dist.weights.emplace_back(0, 1.0);
        return dist;
    }

  private:
    double threshold_;
};

/// No-commitment benchmark: whatever is proposed, the agent's favorite
/// project is chosen for sure.
class AgentFavoriteMechanism : public mrpc::Mechanism {
  public:
    std::string id() const override { return "agent-favorite"; }
    mrpc::EnvTag env() const override { return mrpc::EnvTag::multi(); }

    mrpc::SubProb choice(const mrpc::ProjectSet& proposal) const override {
        if (proposal.empty()) return {};
        std::size_t pick = 0;
        for (std::size_t i = 1; i < proposal.size(); ++i)
            if (proposal[i].u > proposal[pick].u) pick = i;
        mrpc::SubProb dist;
        dist.weights.emplace_back(pick, 1.0);
        return dist;
    }
};

/// Splits the mass uniformly over whatever is proposed. Approves singletons
/// for sure but punishes larger proposals, so it is not incentive
/// compatible.
class UniformSplitMechanism : public mrpc::Mechanism {
  public:
    std::string id() const override { return "uniform-split"; }
    mrpc::EnvTag env() const override { return mrpc::EnvTag::multi(); }

    mrpc::SubProb choice(const mrpc::ProjectSet& proposal) const override {
        mrpc::SubProb dist;
        for (std::size_t i = 0; i < proposal.size(); ++i)
            dist.weights.emplace_back(i, 1.0 / proposal.size());
        return dist;
    }
};

}  // namespace mrpc_test
