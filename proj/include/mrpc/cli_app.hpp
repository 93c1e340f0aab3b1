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

#include <CLI11.hpp>
#include <fstream>
#include <sstream>

#include "mrpc/curves.hpp"
#include "mrpc/extensions.hpp"
#include "mrpc/json_io.hpp"
#include "mrpc/verify.hpp"

namespace mrpc {

namespace detail {

inline EpisodeReport dispatch_episode(const std::string& env,
                                      const Instance& instance) {
    if (env == "single")
        return single_project_episode(instance.projects, instance.params);
    if (env == "multi")
        return multi_project_episode(instance.projects, instance.params);
    if (env == "partial")
        return partial_commitment_episode(instance.projects, instance.params);
    if (env.rfind("k=", 0) == 0) {
        int k = 0;
        try {
            k = std::stoi(env.substr(2));
        } catch (const std::exception&) {
            throw std::invalid_argument("--env: cannot parse '" + env + "'");
        }
        return k_project_episode(instance.projects, KEnv{k}, instance.params);
    }
    throw std::invalid_argument("--env: unknown environment '" + env +
                                "' (expected single, multi, k=K or partial)");
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::invalid_argument("cannot read input file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace detail

/**
 * @brief The command-line front end. Subcommands: compute, episode, curves,
 *        certify, verify.
 *
 * Exit codes: 0 success, 1 runtime failure (e.g. unwritable output path),
 * 2 usage or input error (bad flags, malformed instance files, projects
 * outside the payoff rectangle).
 */
inline int run_cli(std::vector<std::string> args, std::ostream& out,
                   std::ostream& err) {
    CLI::App app{"minimax-regret project-choice mechanisms"};
    app.require_subcommand(1);

    double u_min = 0.0;
    double v_min = 0.0;
    std::string format = "json";
    std::uint64_t seed = 0;
    app.add_option("--u-min", u_min, "lower bound of the agent payoff range");
    app.add_option("--v-min", v_min,
                   "lower bound of the principal payoff range");
    app.add_option("--format", format, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--seed", seed, "seed for the randomized suites");

    int exit_code = 0;

    auto* compute = app.add_subcommand(
        "compute", "closed-form worst-case regrets and tier thresholds");
    compute->fallthrough();
    compute->callback([&] {
        const Params params{u_min, v_min};
        params.ensure_valid();
        const double r_s = wcr_single(params);
        const double r_m = wcr_multi(params);
        const char* branch =
            wcr_multi_branch(params) == WcrMultiBranch::interior ? "interior"
                                                                 : "boundary";
        if (format == "text") {
            out << "worst-case regret, single-project:  "
                << format_significant(r_s) << '\n'
                << "worst-case regret, multiproject:    "
                << format_significant(r_m) << '\n'
                << "top-tier threshold, single-project: "
                << format_significant(1.0 - r_s) << '\n'
                << "top-tier threshold, multiproject:   "
                << format_significant(1.0 - r_m) << '\n'
                << "multiproject closed-form branch:    " << branch << '\n';
        } else {
            nlohmann::json j{{"u_min", round_significant(u_min)},
                             {"v_min", round_significant(v_min)},
                             {"r_single", round_significant(r_s)},
                             {"r_multi", round_significant(r_m)},
                             {"top_tier_threshold_single",
                              round_significant(1.0 - r_s)},
                             {"top_tier_threshold_multi",
                              round_significant(1.0 - r_m)},
                             {"r_multi_branch", branch}};
            out << j.dump(2) << '\n';
        }
    });

    auto* episode = app.add_subcommand(
        "episode", "run one mechanism episode on a project-set file");
    episode->fallthrough();
    std::string episode_file;
    std::string env = "multi";
    episode->add_option("file", episode_file, "project-set JSON file")
        ->required();
    episode->add_option("--env", env,
                        "environment: single, multi, k=K or partial");
    episode->callback([&] {
        const Instance instance =
            parse_instance_text(detail::read_file(episode_file));
        const EpisodeReport report = detail::dispatch_episode(env, instance);
        if (format == "text") {
            out << "proposal size:     " << report.proposal.size() << '\n'
                << "agent payoff:      " << format_significant(report.agent_payoff)
                << '\n'
                << "principal payoff:  "
                << format_significant(report.principal_payoff) << '\n'
                << "regret:            "
                << (report.regret ? format_significant(*report.regret)
                                  : std::string("undefined"))
                << '\n';
        } else {
            out << episode_report_json(report, instance.params).dump(2) << '\n';
        }
    });

    auto* curves = app.add_subcommand(
        "curves", "emit the worst-case-regret curves as CSV");
    curves->fallthrough();
    std::string axis;
    double fixed = 0.0;
    int samples = 100;
    std::string out_path;
    curves->add_option("--axis", axis, "varying bound: u or v")
        ->required()
        ->check(CLI::IsMember({"u", "v"}));
    curves->add_option("--fixed", fixed, "value of the non-varying bound");
    curves->add_option("--n", samples, "number of intervals (n+1 rows)");
    curves->add_option("--out", out_path, "output path (default: stdout)");
    curves->callback([&] {
        const auto points = wcr_curve(
            axis == "u" ? CurveAxis::u_min : CurveAxis::v_min, fixed, samples);
        if (out_path.empty()) {
            write_curve_csv(out, points);
            return;
        }
        std::ofstream file(out_path, std::ios::binary);
        if (!file)
            throw std::runtime_error("cannot write to '" + out_path + "'");
        write_curve_csv(file, points);
        if (!file.good())
            throw std::runtime_error("write failed for '" + out_path + "'");
    });

    auto* certify = app.add_subcommand(
        "certify", "adversarial worst-case-regret certificate");
    certify->fallthrough();
    std::string mech_name = "multi";
    SearchSpec spec;
    double strict_eps = kDefaultStrictEps;
    certify->add_option("--mech", mech_name,
                        "mechanism: single, multi, partial or strict-pmp")
        ->check(CLI::IsMember({"single", "multi", "partial", "strict-pmp"}));
    certify->add_option("--grid-n", spec.grid_n, "per-axis grid resolution");
    certify->add_option("--max-type-size", spec.max_type_size,
                        "largest candidate type");
    certify->add_option("--refine-rounds", spec.refine_rounds,
                        "local refinement passes");
    certify->add_option("--eps", strict_eps,
                        "perturbation size for strict-pmp");
    certify->callback([&] {
        const Params params{u_min, v_min};
        params.ensure_valid();
        std::unique_ptr<Mechanism> mech;
        if (mech_name == "single")
            mech = std::make_unique<SingleProjectMechanism>(params);
        else if (mech_name == "multi")
            mech = std::make_unique<MultiProjectMechanism>(params);
        else if (mech_name == "partial")
            mech = std::make_unique<PartialCommitmentMechanism>(params);
        else
            mech = std::make_unique<StrictPmpMechanism>(params, strict_eps);
        const WcrCertificate cert = wcr_search(*mech, spec, params);
        out << certificate_json(cert, params).dump(2) << '\n';
    });

    auto* verify = app.add_subcommand(
        "verify", "run the cross-module verification suite");
    verify->fallthrough();
    std::string level = "quick";
    verify->add_option("--level", level, "quick or full")
        ->check(CLI::IsMember({"quick", "full"}));
    verify->callback([&] {
        const auto results = run_verification(
            level == "quick" ? VerifyLevel::quick : VerifyLevel::full, seed);
        if (!print_verification(out, results)) exit_code = 1;
    });

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return exit_code;
}

}  // namespace mrpc
