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

// bogomin: ground states of the Bogoliubov energy functional.
//
// Subcommands: minimize, verify, sweep, fixed-density. Exit codes:
//   0 success, 1 convergence or property-check failure, 2 usage/config error.
// Outputs are deterministic: identical config and build produce byte-identical
// files.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>

#include "bogomin/config.hpp"
#include "bogomin/io.hpp"
#include "bogomin/verify.hpp"

namespace fs = std::filesystem;
using namespace bogomin;

namespace {

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string output_dir;
    int jobs = 1;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "run configuration file")->required();
    cmd->add_option("--set", args.overrides, "override a config entry (section.key=value)");
    cmd->add_option("--output", args.output_dir, "output directory (overrides output.directory)");
    cmd->add_option("--jobs", args.jobs, "parallel sweep rows")->check(CLI::PositiveNumber);
}

RunConfig resolve_config(const CommonArgs& args) {
    RunConfig config = load_config(args.config_path, args.overrides);
    if (!args.output_dir.empty()) config.output_dir = args.output_dir;
    return config;
}

fs::path prepare_output_dir(const RunConfig& config) {
    fs::path dir(config.output_dir);
    fs::create_directories(dir);
    return dir;
}

std::optional<State> load_warm_state(const RunConfig& config, const RadialGrid& grid) {
    if (config.solver.init != InitMode::File) return std::nullopt;
    if (config.solver.init_file.empty())
        throw ConfigError("solver.init = file requires solver.init_file");
    LoadedState ls = load_state(config.solver.init_file);
    if (!ls.grid.matches(grid))
        throw ConfigError("init state grid does not match the configured grid");
    return State(ls.raw.gamma, ls.raw.alpha, ls.raw.rho0);
}

int cmd_minimize(const CommonArgs& args) {
    RunConfig config = resolve_config(args);
    if (config.mode() != RunMode::Minimize)
        throw ConfigError("minimize needs a single physics.mu (no sweep lists)");
    const PotentialSpec spec = config.make_potential();
    const RadialGrid grid = config.make_grid();
    const ConvolutionKernel kernel(grid, spec);
    const std::optional<State> warm = load_warm_state(config, grid);

    const SolverReport report =
        minimize(grid, kernel, spec, *config.mu, config.solver, warm ? &*warm : nullptr);

    const fs::path dir = prepare_output_dir(config);
    nlohmann::json j = report_to_json(report);
    j["config"] = config.to_json();
    write_json_file((dir / "report.json").string(), j);
    save_state((dir / "state.txt").string(), report.state, report.mu, grid, config.echo_lines());
    save_profile_csv((dir / "profile.csv").string(), grid, report.state,
                     derivatives(report.state, grid, kernel, spec, report.mu),
                     config.echo_lines());

    std::cout << (report.converged ? "converged" : "NOT converged") << " in " << report.iterations
              << " iterations, energy = " << format_double(report.energy.total) << "\n";
    return report.converged ? 0 : 1;
}

int cmd_verify(const CommonArgs& args, const std::string& state_path) {
    RunConfig config = resolve_config(args);
    const PotentialSpec spec = config.make_potential();
    const RadialGrid grid = config.make_grid();

    LoadedState ls = load_state(state_path);
    if (!ls.grid.matches(grid))
        throw ConfigError("state file grid (" + std::to_string(ls.grid.n) +
                          " nodes) does not match the configured grid");

    VerificationReport report;
    const CheckRecord domain = check_domain(ls.raw);
    if (!domain.pass) {
        report.checks.push_back(domain);
    } else {
        const ConvolutionKernel kernel(grid, spec);
        State state(ls.raw.gamma, ls.raw.alpha, ls.raw.rho0);
        report = run_verify_suite(state, grid, kernel, spec, ls.mu);
    }

    const fs::path dir = prepare_output_dir(config);
    nlohmann::json j = verification_to_json(report);
    j["config"] = config.to_json();
    j["state_file"] = state_path;
    write_json_file((dir / "verify.json").string(), j);
    std::cout << verification_table(report);
    return report.overall() ? 0 : 1;
}

int cmd_sweep(const CommonArgs& args) {
    RunConfig config = resolve_config(args);
    const RunMode mode = config.mode();
    if (mode != RunMode::MuSweep && mode != RunMode::KappaSweep)
        throw ConfigError("sweep needs physics.mu_list or physics.kappa_list");
    const PotentialSpec spec = config.make_potential();
    const RadialGrid grid = config.make_grid();
    const ConvolutionKernel kernel(grid, spec);
    const fs::path dir = prepare_output_dir(config);

    std::ostringstream csv;
    for (const std::string& line : config.echo_lines()) csv << "# " << line << "\n";
    bool all_converged = true;

    if (mode == RunMode::MuSweep) {
        const std::vector<SolverReport> reports =
            mu_sweep(config.mu_list, grid, kernel, spec, config.solver, args.jobs);
        csv << "mu,rho0,rho_gamma,rho,energy,condensate_fraction,converged\n";
        for (std::size_t i = 0; i < reports.size(); ++i) {
            const SolverReport& r = reports[i];
            const double fraction = r.density.rho > 0.0 ? r.state.rho0() / r.density.rho : 0.0;
            csv << format_double(r.mu) << ',' << format_double(r.state.rho0()) << ','
                << format_double(r.density.rho_gamma) << ',' << format_double(r.density.rho) << ','
                << format_double(r.energy.total) << ',' << format_double(fraction) << ','
                << (r.converged ? 1 : 0) << "\n";
            all_converged = all_converged && r.converged;
            char name[32];
            std::snprintf(name, sizeof(name), "state_%03zu.txt", i);
            save_state((dir / name).string(), r.state, r.mu, grid, config.echo_lines());
        }
    } else {
        // kappa rows run sequentially warm-started regardless of --jobs, so
        // the energy column is non-increasing by construction
        const KappaSweepResult sweep =
            kappa_sweep(config.kappa_list, grid, kernel, spec, *config.mu, config.solver);
        csv << "kappa,energy,rho0,rho_gamma,active_clamp_nodes,converged\n";
        double prev = std::numeric_limits<double>::infinity();
        bool monotone = true;
        for (std::size_t i = 0; i < sweep.reports.size(); ++i) {
            const SolverReport& r = sweep.reports[i];
            csv << format_double(sweep.kappas[i]) << ',' << format_double(r.energy.total) << ','
                << format_double(r.state.rho0()) << ',' << format_double(r.density.rho_gamma)
                << ',' << r.active_clamp_nodes << ',' << (r.converged ? 1 : 0) << "\n";
            monotone = monotone && r.energy.total <= prev + 1e-12 * std::abs(prev);
            prev = r.energy.total;
            all_converged = all_converged && r.converged;
            char name[32];
            std::snprintf(name, sizeof(name), "state_%03zu.txt", i);
            save_state((dir / name).string(), r.state, r.mu, grid, config.echo_lines());
        }
        if (sweep.stabilization_index) {
            const double kstar = sweep.kappas[static_cast<std::size_t>(*sweep.stabilization_index)];
            csv << "# stabilization kappa* = " << format_double(kstar) << "\n";
            std::cout << "stabilization kappa* = " << format_double(kstar) << "\n";
        } else {
            csv << "# no stabilization within the swept kappas\n";
            std::cout << "no stabilization within the swept kappas\n";
        }
        if (!monotone) {
            std::cerr << "error: energy column is not monotone non-increasing\n";
            all_converged = false;
        }
    }
    write_text_file((dir / "sweep.csv").string(), csv.str());
    return all_converged ? 0 : 1;
}

int cmd_fixed_density(const CommonArgs& args) {
    RunConfig config = resolve_config(args);
    if (config.mode() != RunMode::FixedDensity)
        throw ConfigError("fixed-density needs physics.lambda(_list) and physics.rho0(_list)");
    const PotentialSpec spec = config.make_potential();
    const RadialGrid grid = config.make_grid();
    const ConvolutionKernel kernel(grid, spec);
    const fs::path dir = prepare_output_dir(config);

    std::ostringstream csv;
    for (const std::string& line : config.echo_lines()) csv << "# " << line << "\n";
    csv << "lambda,rho0,f,converged\n";
    bool all_converged = true;
    std::vector<std::string> verdicts;

    for (double rho0 : config.rho0_list) {
        std::vector<double> f_values;
        const State* warm = nullptr;
        std::optional<SolverReport> prev;
        for (double lambda : config.lambda_list) {
            SolverReport r = minimize_fixed_density(lambda, rho0, grid, kernel, spec, *config.mu,
                                                    config.solver, warm);
            csv << format_double(lambda) << ',' << format_double(rho0) << ','
                << format_double(r.energy.total) << ',' << (r.converged ? 1 : 0) << "\n";
            all_converged = all_converged && r.converged;
            f_values.push_back(r.energy.total);
            prev = std::move(r);
            warm = &prev->state;
        }
        if (config.lambda_list.size() >= 3) {
            const CheckRecord rec = check_convexity_slice(config.lambda_list, f_values);
            std::ostringstream verdict;
            verdict << "convexity at rho0 = " << format_double(rho0) << ": "
                    << (rec.pass ? "pass" : "FAIL")
                    << " (min second difference = " << format_double(rec.measured) << ")";
            verdicts.push_back(verdict.str());
            all_converged = all_converged && rec.pass;
        }
    }
    for (const std::string& v : verdicts) {
        csv << "# " << v << "\n";
        std::cout << v << "\n";
    }
    write_text_file((dir / "fixed_density.csv").string(), csv.str());
    return all_converged ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ground states of the Bogoliubov energy functional"};
    app.require_subcommand(1);

    CommonArgs margs, vargs, sargs, fargs;
    std::string state_path;

    CLI::App* cmd_min = app.add_subcommand("minimize", "minimize the functional for a single mu");
    add_common(cmd_min, margs);
    CLI::App* cmd_ver = app.add_subcommand("verify", "run the minimizer property suite on a state");
    add_common(cmd_ver, vargs);
    cmd_ver->add_option("--state", state_path, "state file to verify")->required();
    CLI::App* cmd_sw = app.add_subcommand("sweep", "sweep mu or kappa");
    add_common(cmd_sw, sargs);
    CLI::App* cmd_fd = app.add_subcommand("fixed-density", "evaluate f(lambda, rho0)");
    add_common(cmd_fd, fargs);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_min->parsed()) return cmd_minimize(margs);
        if (cmd_ver->parsed()) return cmd_verify(vargs, state_path);
        if (cmd_sw->parsed()) return cmd_sweep(sargs);
        if (cmd_fd->parsed()) return cmd_fixed_density(fargs);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
