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

#include "bogomin/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace bogomin {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

GridDescriptor GridDescriptor::of(const RadialGrid& grid) {
    GridDescriptor d;
    d.n = grid.n();
    d.pmax = grid.pmax;
    d.scheme = grid.scheme == GridScheme::Uniform ? "uniform" : "clustered";
    d.pivot = grid.pivot;
    return d;
}

bool GridDescriptor::matches(const RadialGrid& grid) const {
    const GridDescriptor g = of(grid);
    return n == g.n && pmax == g.pmax && scheme == g.scheme && pivot == g.pivot;
}

void save_state(const std::string& path, const State& state, double mu, const RadialGrid& grid,
                const std::vector<std::string>& provenance) {
    std::ostringstream out;
    const GridDescriptor d = GridDescriptor::of(grid);
    out << "# rho0=" << format_double(state.rho0()) << " mu=" << format_double(mu)
        << " n=" << d.n << " pmax=" << format_double(d.pmax) << " scheme=" << d.scheme
        << " pivot=" << format_double(d.pivot) << "\n";
    for (const std::string& line : provenance) out << "# " << line << "\n";
    out << "# p gamma alpha\n";
    for (int i = 0; i < grid.n(); ++i)
        out << format_double(grid.nodes[i]) << ' ' << format_double(state.gamma()[i]) << ' '
            << format_double(state.alpha()[i]) << "\n";
    write_text_file(path, out.str());
}

LoadedState load_state(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open state file: " + path);

    std::string header;
    if (!std::getline(in, header) || header.rfind("# rho0=", 0) != 0)
        throw std::runtime_error("state file has no header line: " + path);

    LoadedState ls;
    {
        std::istringstream hs(header.substr(1));
        std::string tok;
        while (hs >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
            if (key == "rho0") ls.raw.rho0 = std::strtod(val.c_str(), nullptr);
            else if (key == "mu") ls.mu = std::strtod(val.c_str(), nullptr);
            else if (key == "n") ls.grid.n = std::stoi(val);
            else if (key == "pmax") ls.grid.pmax = std::strtod(val.c_str(), nullptr);
            else if (key == "scheme") ls.grid.scheme = val;
            else if (key == "pivot") ls.grid.pivot = std::strtod(val.c_str(), nullptr);
        }
    }
    if (ls.grid.n <= 0) throw std::runtime_error("state file header has no grid size: " + path);

    std::vector<double> p, g, a;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') continue;
        std::istringstream row(line);
        double pi, gi, ai;
        if (row >> pi >> gi >> ai) {
            p.push_back(pi);
            g.push_back(gi);
            a.push_back(ai);
        }
    }
    if (static_cast<int>(p.size()) != ls.grid.n)
        throw std::runtime_error("state file row count does not match header n: " + path);
    ls.nodes = Eigen::Map<Eigen::ArrayXd>(p.data(), static_cast<Eigen::Index>(p.size()));
    ls.raw.gamma = Eigen::Map<Eigen::ArrayXd>(g.data(), static_cast<Eigen::Index>(g.size()));
    ls.raw.alpha = Eigen::Map<Eigen::ArrayXd>(a.data(), static_cast<Eigen::Index>(a.size()));
    return ls;
}

void save_profile_csv(const std::string& path, const RadialGrid& grid, const State& state,
                      const Derivatives& deriv, const std::vector<std::string>& provenance) {
    std::ostringstream out;
    for (const std::string& line : provenance) out << "# " << line << "\n";
    out << "p,gamma,alpha,A,B\n";
    for (int i = 0; i < grid.n(); ++i)
        out << format_double(grid.nodes[i]) << ',' << format_double(state.gamma()[i]) << ','
            << format_double(state.alpha()[i]) << ',' << format_double(deriv.a[i]) << ','
            << format_double(deriv.b[i]) << "\n";
    write_text_file(path, out.str());
}

nlohmann::json report_to_json(const SolverReport& report) {
    nlohmann::json j;
    j["mu"] = report.mu;
    j["kappa"] = std::isfinite(report.kappa) ? nlohmann::json(report.kappa)
                                             : nlohmann::json("inf");
    j["energy"] = {{"kinetic", report.energy.kinetic},   {"chemical", report.energy.chemical},
                   {"hartree", report.energy.hartree},   {"linear", report.energy.linear},
                   {"quad_gamma", report.energy.quad_gamma},
                   {"quad_alpha", report.energy.quad_alpha},
                   {"total", report.energy.total}};
    j["densities"] = {{"rho0", report.state.rho0()},
                      {"rho_gamma", report.density.rho_gamma},
                      {"rho", report.density.rho},
                      {"condensate_fraction",
                       report.density.rho > 0.0 ? report.state.rho0() / report.density.rho : 0.0}};
    j["residuals"] = {{"stationarity", report.residuals.stationarity},
                      {"rho0_gradient", report.residuals.rho0_gradient},
                      {"pure_state_identity", report.residuals.pure_identity},
                      {"domain_violation", report.residuals.domain_violation}};
    j["iterations"] = report.iterations;
    j["converged"] = report.converged;
    j["stop_reason"] = report.stop_reason;
    j["active_clamp_nodes"] = report.active_clamp_nodes;
    nlohmann::json trace = nlohmann::json::array();
    for (const TracePoint& t : report.trace) trace.push_back({t.energy, t.residual});
    j["trace"] = std::move(trace);
    return j;
}

nlohmann::json verification_to_json(const VerificationReport& report) {
    nlohmann::json j;
    j["overall_pass"] = report.overall();
    nlohmann::json checks = nlohmann::json::array();
    for (const CheckRecord& c : report.checks) {
        nlohmann::json jc;
        jc["name"] = c.name;
        jc["pass"] = c.pass;
        jc["skipped"] = c.skipped;
        jc["inconclusive"] = c.inconclusive;
        jc["measured"] = c.measured;
        jc["threshold"] = c.threshold;
        jc["worst_node"] = c.worst_node;
        jc["note"] = c.note;
        checks.push_back(std::move(jc));
    }
    j["checks"] = std::move(checks);
    return j;
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

std::string verification_table(const VerificationReport& report) {
    std::ostringstream out;
    for (const CheckRecord& c : report.checks) {
        const char* status = c.skipped ? "SKIP" : c.inconclusive ? "INCONCLUSIVE"
                                       : c.pass ? "PASS"
                                                : "FAIL";
        out << std::left << std::setw(13) << status << std::setw(26) << c.name
            << " measured=" << format_double(c.measured);
        if (!c.note.empty()) out << "  [" << c.note << "]";
        out << "\n";
    }
    out << (report.overall() ? "overall: PASS" : "overall: FAIL") << "\n";
    return out.str();
}

}  // namespace bogomin
