// Copyright 2026 The luclass Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "luclass/cli.hpp"

namespace {

using luclass::cli::Command;
using luclass::cli::RunConfig;

const std::map<std::string, luclass::ParticleCase> kCases{
    {"boson", luclass::ParticleCase::Boson},
    {"fermion", luclass::ParticleCase::Fermion},
    {"dist", luclass::ParticleCase::Distinguishable},
};

void add_output_flags(CLI::App* sub, RunConfig& cfg) {
    sub->add_flag("--json", cfg.json, "Machine-readable JSON output");
    sub->add_option("--out", cfg.out, "Write output to PATH instead of stdout");
}

void add_tol(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--tol", cfg.tol,
                    "Input symmetry tolerance and spectral equality tolerance (default 1e-8)");
}

void add_cluster_tol(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--cluster-tol", cfg.cluster_tol, "Relative gap for grouping equal probabilities (default 1e-8)");
}

void add_rank_tol(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--rank-tol", cfg.rank_tol, "Relative singular value cutoff for numerical ranks (default 1e-9)");
}

void add_case_n(CLI::App* sub, RunConfig& cfg, std::string& case_name) {
    sub->add_option("--case", case_name, "boson | fermion | dist")
        ->required()
        ->check(CLI::IsMember({"boson", "fermion", "dist"}, CLI::ignore_case));
    sub->add_option("--n,--N", cfg.n, "One-particle dimension N >= 2")->required();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Local unitary classification of two-boson, two-fermion and two-qudit pure states"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string case_name = "boson";

    auto* classify = app.add_subcommand("classify", "Slice representative, moment spectrum and orbit type");
    classify->add_option("file", cfg.inputs, "State JSON file")->required()->expected(1);
    add_tol(classify, cfg);
    add_cluster_tol(classify, cfg);
    add_output_flags(classify, cfg);
    classify->callback([&cfg] { cfg.command = Command::Classify; });

    auto* compare = app.add_subcommand("compare", "Decide local unitary equivalence (exit 0 yes, 1 no)");
    compare->add_option("files", cfg.inputs, "Two state JSON files")->required()->expected(2);
    add_tol(compare, cfg);
    add_output_flags(compare, cfg);
    compare->callback([&cfg] { cfg.command = Command::Compare; });

    auto* strata = app.add_subcommand("strata", "Table of all orbit types for a case and N");
    add_case_n(strata, cfg, case_name);
    strata->add_flag("--verify", cfg.verify, "Check each row with the numerical oracle on a sampled representative");
    strata->add_option("--seed", cfg.seed, "Seed for sampled representatives");
    add_cluster_tol(strata, cfg);
    add_rank_tol(strata, cfg);
    add_output_flags(strata, cfg);
    strata->callback([&cfg] { cfg.command = Command::Strata; });

    auto* oracle = app.add_subcommand("oracle", "Numerical orbit dimension and symplectic degeneracy vs formulas");
    oracle->add_option("file", cfg.inputs, "State JSON file")->required()->expected(1);
    add_tol(oracle, cfg);
    add_cluster_tol(oracle, cfg);
    add_rank_tol(oracle, cfg);
    add_output_flags(oracle, cfg);
    oracle->callback([&cfg] { cfg.command = Command::Oracle; });

    auto* random = app.add_subcommand("random", "Write a random normalized state as JSON");
    add_case_n(random, cfg, case_name);
    random->add_option("--seed", cfg.seed, "Random seed")->required();
    random->add_option("--out", cfg.out, "Write output to PATH instead of stdout");
    random->callback([&cfg] { cfg.command = Command::Random; });

    auto* demo = app.add_subcommand("demo", "Three-qubit states with equal moment image in different orbits");
    add_output_flags(demo, cfg);
    demo->callback([&cfg] { cfg.command = Command::Demo; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return luclass::cli::kParseError;
    }
    cfg.particle_case = kCases.at(case_name);
    return luclass::cli::run(cfg, std::cout, std::cerr);
}
