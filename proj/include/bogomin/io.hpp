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

#ifndef BOGOMIN_IO_HPP
#define BOGOMIN_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "bogomin/solver.hpp"
#include "bogomin/verify.hpp"

namespace bogomin {

/// 17-significant-digit decimal; round-trips doubles exactly.
std::string format_double(double x);

/// Grid metadata carried in the state-file header.
struct GridDescriptor {
    int n = 0;
    double pmax = 0.0;
    std::string scheme;
    double pivot = 0.0;

    static GridDescriptor of(const RadialGrid& grid);
    bool matches(const RadialGrid& grid) const;
};

struct LoadedState {
    RawState raw;
    double mu = 0.0;
    GridDescriptor grid;
    Eigen::ArrayXd nodes;
};

/// Three-column text (p, gamma, alpha) with a header line carrying rho0, mu
/// and the grid descriptor. Bit-exact round-trip.
void save_state(const std::string& path, const State& state, double mu, const RadialGrid& grid,
                const std::vector<std::string>& provenance = {});
LoadedState load_state(const std::string& path);

/// Per-node profile (p, gamma, alpha, A, B) as CSV.
void save_profile_csv(const std::string& path, const RadialGrid& grid, const State& state,
                      const Derivatives& deriv, const std::vector<std::string>& provenance = {});

nlohmann::json report_to_json(const SolverReport& report);
nlohmann::json verification_to_json(const VerificationReport& report);

void write_json_file(const std::string& path, const nlohmann::json& j);
void write_text_file(const std::string& path, const std::string& content);

/// Human-readable one-line-per-check table.
std::string verification_table(const VerificationReport& report);

}  // namespace bogomin

#endif
