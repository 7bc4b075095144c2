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

#include "bogomin/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "bogomin/io.hpp"

namespace bogomin {

namespace {

const std::set<std::string> kKnownKeys = {
    "potential.family", "potential.amplitude", "potential.width", "potential.rate",
    "potential.table_path",
    "grid.n", "grid.pmax", "grid.scheme", "grid.pivot",
    "solver.kappa", "solver.damping", "solver.step_init", "solver.step_backtrack",
    "solver.armijo_c", "solver.tol_grad", "solver.tol_energy", "solver.max_iter",
    "solver.consec_required", "solver.engine", "solver.init", "solver.init_gamma0",
    "solver.init_eps_ball", "solver.init_file",
    "physics.mu", "physics.mu_list", "physics.kappa_list", "physics.lambda",
    "physics.lambda_list", "physics.rho0", "physics.rho0_list",
    "output.directory",
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    if (value == "inf" || value == "infinity") return std::numeric_limits<double>::infinity();
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0')
        throw ConfigError("config: bad number for " + key + ": '" + value + "'");
    return v;
}

int parse_int(const std::string& key, const std::string& value) {
    const double v = parse_double(key, value);
    if (v != std::floor(v)) throw ConfigError("config: expected integer for " + key);
    return static_cast<int>(v);
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::istringstream in(value);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(key, item));
    }
    return out;
}

using KvMap = std::map<std::string, std::string>;

KvMap parse_kv(const std::string& text) {
    KvMap kv;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config: malformed section at line " + std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected key = value at line " + std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        if (section.empty())
            throw ConfigError("config: key '" + key + "' outside any [section]");
        kv[section + "." + key] = trim(line.substr(eq + 1));
    }
    return kv;
}

RunConfig build(const KvMap& kv) {
    for (const auto& [key, value] : kv) {
        (void)value;
        if (!kKnownKeys.count(key)) throw ConfigError("config: unknown key '" + key + "'");
    }

    RunConfig c;
    const auto get = [&](const std::string& key) -> const std::string* {
        const auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };

    if (const auto* v = get("potential.family")) c.potential_family = *v;
    if (const auto* v = get("potential.amplitude")) c.amplitude = parse_double("potential.amplitude", *v);
    if (const auto* v = get("potential.width")) c.width = parse_double("potential.width", *v);
    if (const auto* v = get("potential.rate")) c.rate = parse_double("potential.rate", *v);
    if (const auto* v = get("potential.table_path")) c.table_path = *v;

    if (const auto* v = get("grid.n")) c.n = parse_int("grid.n", *v);
    if (const auto* v = get("grid.pmax")) c.pmax = parse_double("grid.pmax", *v);
    if (const auto* v = get("grid.scheme")) c.scheme = *v;
    if (const auto* v = get("grid.pivot")) c.pivot = parse_double("grid.pivot", *v);

    if (const auto* v = get("solver.kappa")) c.solver.kappa = parse_double("solver.kappa", *v);
    if (const auto* v = get("solver.damping")) c.solver.damping = parse_double("solver.damping", *v);
    if (const auto* v = get("solver.step_init")) c.solver.step_init = parse_double("solver.step_init", *v);
    if (const auto* v = get("solver.step_backtrack"))
        c.solver.step_backtrack = parse_double("solver.step_backtrack", *v);
    if (const auto* v = get("solver.armijo_c")) c.solver.armijo_c = parse_double("solver.armijo_c", *v);
    if (const auto* v = get("solver.tol_grad")) c.solver.tol_grad = parse_double("solver.tol_grad", *v);
    if (const auto* v = get("solver.tol_energy"))
        c.solver.tol_energy = parse_double("solver.tol_energy", *v);
    if (const auto* v = get("solver.max_iter")) c.solver.max_iter = parse_int("solver.max_iter", *v);
    if (const auto* v = get("solver.consec_required"))
        c.solver.consec_required = parse_int("solver.consec_required", *v);
    if (const auto* v = get("solver.engine")) {
        if (*v == "auto") c.solver.engine = Engine::Auto;
        else if (*v == "fixed-point") c.solver.engine = Engine::FixedPoint;
        else if (*v == "gradient") c.solver.engine = Engine::Gradient;
        else throw ConfigError("config: solver.engine must be auto|fixed-point|gradient");
    }
    if (const auto* v = get("solver.init")) {
        if (*v == "vacuum") c.solver.init = InitMode::Vacuum;
        else if (*v == "trial") c.solver.init = InitMode::Trial;
        else if (*v == "file") c.solver.init = InitMode::File;
        else throw ConfigError("config: solver.init must be vacuum|trial|file");
    }
    if (const auto* v = get("solver.init_gamma0"))
        c.solver.init_gamma0 = parse_double("solver.init_gamma0", *v);
    if (const auto* v = get("solver.init_eps_ball"))
        c.solver.init_eps_ball = parse_double("solver.init_eps_ball", *v);
    if (const auto* v = get("solver.init_file")) c.solver.init_file = *v;

    if (const auto* v = get("physics.mu")) c.mu = parse_double("physics.mu", *v);
    if (const auto* v = get("physics.mu_list")) c.mu_list = parse_list("physics.mu_list", *v);
    if (const auto* v = get("physics.kappa_list")) c.kappa_list = parse_list("physics.kappa_list", *v);
    if (const auto* v = get("physics.lambda_list"))
        c.lambda_list = parse_list("physics.lambda_list", *v);
    if (const auto* v = get("physics.lambda")) c.lambda_list = {parse_double("physics.lambda", *v)};
    if (const auto* v = get("physics.rho0_list")) c.rho0_list = parse_list("physics.rho0_list", *v);
    if (const auto* v = get("physics.rho0")) c.rho0_list = {parse_double("physics.rho0", *v)};

    if (const auto* v = get("output.directory")) c.output_dir = *v;

    // validation
    if (c.potential_family != "gaussian" && c.potential_family != "exponential" &&
        c.potential_family != "tabulated")
        throw ConfigError("config: potential.family must be gaussian|exponential|tabulated");
    if (c.potential_family == "tabulated" && c.table_path.empty())
        throw ConfigError("config: tabulated potential requires potential.table_path");
    if (c.scheme != "uniform" && c.scheme != "uniform-trapezoid" && c.scheme != "clustered")
        throw ConfigError("config: grid.scheme must be uniform|clustered");
    if (c.n < 16) throw ConfigError("config: grid.n must be >= 16");
    if (!(c.pmax > 0.0)) throw ConfigError("config: grid.pmax must be > 0");
    if (c.pivot && !(*c.pivot > 0.0 && *c.pivot < c.pmax))
        throw ConfigError("config: grid.pivot must lie in (0, pmax)");
    if (!(c.solver.damping > 0.0 && c.solver.damping <= 1.0))
        throw ConfigError("config: solver.damping must be in (0, 1]");
    if (!(c.solver.tol_grad > 0.0) || !(c.solver.tol_energy > 0.0))
        throw ConfigError("config: solver tolerances must be > 0");
    if (!(c.solver.kappa > 0.0)) throw ConfigError("config: solver.kappa must be > 0");
    if (c.solver.max_iter < 1) throw ConfigError("config: solver.max_iter must be >= 1");

    const bool has_mu_list = kv.count("physics.mu_list") > 0;
    const bool has_kappa_list = kv.count("physics.kappa_list") > 0;
    const bool has_fixed = kv.count("physics.lambda_list") || kv.count("physics.lambda") ||
                           kv.count("physics.rho0_list") || kv.count("physics.rho0");
    const int modes = (has_mu_list ? 1 : 0) + (has_kappa_list ? 1 : 0) + (has_fixed ? 1 : 0);
    if (modes > 1)
        throw ConfigError("config: physics must request exactly one of mu_list, kappa_list, "
                          "or lambda/rho0");
    if (has_mu_list && c.mu_list.empty()) throw ConfigError("config: physics.mu_list is empty");
    if (has_kappa_list) {
        if (c.kappa_list.empty()) throw ConfigError("config: physics.kappa_list is empty");
        if (!c.mu) throw ConfigError("config: kappa_list mode requires physics.mu");
    }
    if (has_fixed) {
        if (c.lambda_list.empty() || c.rho0_list.empty())
            throw ConfigError("config: fixed-density mode requires lambda and rho0 values");
        if (!c.mu) throw ConfigError("config: fixed-density mode requires physics.mu");
        for (double l : c.lambda_list)
            if (l < 0.0) throw ConfigError("config: lambda must be >= 0");
        for (double r : c.rho0_list)
            if (r < 0.0) throw ConfigError("config: rho0 must be >= 0");
    }
    if (modes == 0 && !c.mu)
        throw ConfigError("config: physics.mu (or a sweep list) is required");
    return c;
}

}  // namespace

RunMode RunConfig::mode() const {
    if (!mu_list.empty()) return RunMode::MuSweep;
    if (!kappa_list.empty()) return RunMode::KappaSweep;
    if (!lambda_list.empty() || !rho0_list.empty()) return RunMode::FixedDensity;
    return RunMode::Minimize;
}

PotentialSpec RunConfig::make_potential() const {
    if (potential_family == "gaussian") return PotentialSpec::gaussian(amplitude, width);
    if (potential_family == "exponential") return PotentialSpec::exponential(amplitude, rate);
    return PotentialSpec::tabulated_from_file(table_path);
}

RadialGrid RunConfig::make_grid() const {
    const GridScheme s = (scheme == "clustered") ? GridScheme::Clustered : GridScheme::Uniform;
    return build_grid(n, pmax, s, s == GridScheme::Clustered ? pivot_value() : 0.0);
}

nlohmann::json RunConfig::to_json() const {
    nlohmann::json j;
    j["potential"]["family"] = potential_family;
    j["potential"]["amplitude"] = amplitude;
    if (potential_family == "gaussian") j["potential"]["width"] = width;
    if (potential_family == "exponential") j["potential"]["rate"] = rate;
    if (potential_family == "tabulated") j["potential"]["table_path"] = table_path;
    j["grid"] = {{"n", n}, {"pmax", pmax}, {"scheme", scheme}, {"pivot", pivot_value()}};
    j["solver"] = {
        {"kappa", std::isfinite(solver.kappa) ? nlohmann::json(solver.kappa) : nlohmann::json("inf")},
        {"damping", solver.damping},
        {"step_init", solver.step_init},
        {"step_backtrack", solver.step_backtrack},
        {"armijo_c", solver.armijo_c},
        {"tol_grad", solver.tol_grad},
        {"tol_energy", solver.tol_energy},
        {"max_iter", solver.max_iter},
        {"consec_required", solver.consec_required},
        {"engine", solver.engine == Engine::Auto          ? "auto"
                   : solver.engine == Engine::FixedPoint ? "fixed-point"
                                                         : "gradient"},
        {"init", solver.init == InitMode::Vacuum  ? "vacuum"
                 : solver.init == InitMode::Trial ? "trial"
                                                  : "file"}};
    if (!std::isnan(solver.init_gamma0)) j["solver"]["init_gamma0"] = solver.init_gamma0;
    if (!std::isnan(solver.init_eps_ball)) j["solver"]["init_eps_ball"] = solver.init_eps_ball;
    if (!solver.init_file.empty()) j["solver"]["init_file"] = solver.init_file;
    if (mu) j["physics"]["mu"] = *mu;
    if (!mu_list.empty()) j["physics"]["mu_list"] = mu_list;
    if (!kappa_list.empty()) j["physics"]["kappa_list"] = kappa_list;
    if (!lambda_list.empty()) j["physics"]["lambda_list"] = lambda_list;
    if (!rho0_list.empty()) j["physics"]["rho0_list"] = rho0_list;
    j["output"]["directory"] = output_dir;
    return j;
}

std::vector<std::string> RunConfig::echo_lines() const {
    std::vector<std::string> lines;
    lines.push_back("config " + to_json().dump());
    return lines;
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), overrides);
}

RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides) {
    KvMap kv = parse_kv(text);
    for (const std::string& o : overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos)
            throw ConfigError("--set expects section.key=value, got '" + o + "'");
        const std::string key = trim(o.substr(0, eq));
        if (key.find('.') == std::string::npos)
            throw ConfigError("--set key must be section.key, got '" + key + "'");
        kv[key] = trim(o.substr(eq + 1));
    }
    return build(kv);
}

}  // namespace bogomin
