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

#include <json.hpp>

#include "mrpc/adversary.hpp"
#include "mrpc/core.hpp"
#include "mrpc/format.hpp"
#include "mrpc/lp.hpp"

namespace mrpc {

/// A parsed problem instance: the payoff rectangle plus a project set.
struct Instance {
    Params params;
    ProjectSet projects;
};

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& j,
                                           const char* key,
                                           const std::string& parent) {
    const std::string path = parent.empty() ? key : parent + "." + key;
    if (!j.is_object())
        throw std::invalid_argument(parent + ": expected an object");
    if (!j.contains(key))
        throw std::invalid_argument(path + ": missing");
    return j.at(key);
}

inline double require_number(const nlohmann::json& j, const std::string& path) {
    if (!j.is_number())
        throw std::invalid_argument(path + ": expected a number");
    return j.get<double>();
}

}  // namespace detail

/**
 * @brief Parses the project-set schema
 *        {"params": {"u_min": x, "v_min": y}, "projects": [{"u": a, "v": b}, ...]}.
 *
 * Rejects malformed fields and projects outside the payoff rectangle with
 * a std::invalid_argument whose message names the offending field path
 * (e.g. "projects[3].v").
 */
inline Instance parse_instance(const nlohmann::json& j) {
    const nlohmann::json& jp = detail::require_field(j, "params", "");
    Params params{
        detail::require_number(detail::require_field(jp, "u_min", "params"),
                               "params.u_min"),
        detail::require_number(detail::require_field(jp, "v_min", "params"),
                               "params.v_min")};
    if (!params.valid())
        throw std::invalid_argument(
            "params: u_min and v_min must lie in [0,1]");

    const nlohmann::json& ja = detail::require_field(j, "projects", "");
    if (!ja.is_array())
        throw std::invalid_argument("projects: expected an array");

    std::vector<Project> projects;
    projects.reserve(ja.size());
    for (std::size_t i = 0; i < ja.size(); ++i) {
        const std::string path = "projects[" + std::to_string(i) + "]";
        const nlohmann::json& je = ja.at(i);
        if (!je.is_object())
            throw std::invalid_argument(path + ": expected an object");
        Project p{detail::require_number(detail::require_field(je, "u", path),
                                         path + ".u"),
                  detail::require_number(detail::require_field(je, "v", path),
                                         path + ".v")};
        if (p.u < params.u_min || p.u > 1.0)
            throw std::invalid_argument(
                path + ".u = " + format_significant(p.u) + " outside [" +
                format_significant(params.u_min) + ", 1]");
        if (p.v < params.v_min || p.v > 1.0)
            throw std::invalid_argument(
                path + ".v = " + format_significant(p.v) + " outside [" +
                format_significant(params.v_min) + ", 1]");
        projects.push_back(p);
    }
    return {params, ProjectSet(std::move(projects))};
}

/// Text front end of parse_instance; JSON syntax errors surface as
/// std::invalid_argument as well.
inline Instance parse_instance_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
    }
    return parse_instance(j);
}

inline nlohmann::json params_json(const Params& params) {
    return {{"u_min", round_significant(params.u_min)},
            {"v_min", round_significant(params.v_min)}};
}

inline nlohmann::json projects_json(const ProjectSet& set) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Project& p : set)
        arr.push_back({{"u", round_significant(p.u)},
                       {"v", round_significant(p.v)}});
    return arr;
}

/// The core project-set schema (round-trips through parse_instance).
inline nlohmann::json project_set_json(const ProjectSet& set,
                                       const Params& params) {
    return {{"params", params_json(params)}, {"projects", projects_json(set)}};
}

inline nlohmann::json subprob_json(const SubProb& dist,
                                   const ProjectSet& carrier) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [i, w] : dist.weights)
        arr.push_back({{"index", i},
                       {"u", round_significant(carrier[i].u)},
                       {"v", round_significant(carrier[i].v)},
                       {"weight", round_significant(w)}});
    return arr;
}

inline nlohmann::json episode_report_json(const EpisodeReport& report,
                                          const Params& params) {
    nlohmann::json j;
    j["params"] = params_json(params);
    j["type_set"] = projects_json(report.type_set);
    j["proposal"] = projects_json(report.proposal);
    j["distribution"] = subprob_json(report.distribution, report.proposal);
    j["no_project_probability"] =
        round_significant(1.0 - report.distribution.total_mass());
    j["agent_payoff"] = round_significant(report.agent_payoff);
    j["principal_payoff"] = round_significant(report.principal_payoff);
    if (report.regret.has_value())
        j["regret"] = round_significant(*report.regret);
    else
        j["regret"] = nullptr;
    return j;
}

inline nlohmann::json lp_solution_json(const LpSolution& solution) {
    nlohmann::json weights = nlohmann::json::array();
    nlohmann::json support = nlohmann::json::array();
    for (const auto& [i, w] : solution.weights.weights) {
        weights.push_back({{"index", i}, {"weight", round_significant(w)}});
        support.push_back(i);
    }
    return {{"weights", weights},
            {"objective", round_significant(solution.objective)},
            {"support", support}};
}

inline nlohmann::json certificate_json(const WcrCertificate& cert,
                                       const Params& params) {
    return {{"mechanism", cert.mechanism_id},
            {"wcr", round_significant(cert.value)},
            {"witness", project_set_json(cert.witness, params)},
            {"spec",
             {{"grid_n", cert.spec.grid_n},
              {"max_type_size", cert.spec.max_type_size},
              {"refine_rounds", cert.spec.refine_rounds}}}};
}

}  // namespace mrpc
