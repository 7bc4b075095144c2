// Copyright 2026 The bogomin Authors
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

#ifndef BOGOMIN_CONFIG_HPP
#define BOGOMIN_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bogomin/grid.hpp"
#include "bogomin/potential.hpp"
#include "bogomin/solver.hpp"

namespace bogomin {

/// Configuration or usage problems; the CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class RunMode { Minimize, MuSweep, KappaSweep, FixedDensity };

/// A parsed and validated run configuration. The file format is a flat
/// sectioned key = value text; `--set section.key=value` overrides entries.
struct RunConfig {
    // [potential]
    std::string potential_family = "gaussian";
    double amplitude = 1.0;
    double width = 1.0;
    double rate = 1.0;
    std::string table_path;

    // [grid]
    int n = 1024;
    double pmax = 12.0;
    std::string scheme = "clustered";
    std::optional<double> pivot;  // defaults to pmax / 3

    // [solver]
    SolverConfig solver;

    // [physics] - exactly one run mode implied by which fields are present
    std::optional<double> mu;
    std::vector<double> mu_list;
    std::vector<double> kappa_list;
    std::vector<double> lambda_list;
    std::vector<double> rho0_list;

    // [output]
    std::string output_dir = ".";

    RunMode mode() const;
    double pivot_value() const { return pivot.value_or(pmax / 3.0); }

    PotentialSpec make_potential() const;
    RadialGrid make_grid() const;

    /// Full resolved configuration, for embedding into outputs.
    nlohmann::json to_json() const;
    std::vector<std::string> echo_lines() const;
};

/// Parse `path` and apply `overrides` ("section.key=value" each).
RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

/// Parse from in-memory text (used by tests).
RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides = {});

}  // namespace bogomin

#endif
