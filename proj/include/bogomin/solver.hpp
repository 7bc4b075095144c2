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

#ifndef BOGOMIN_SOLVER_HPP
#define BOGOMIN_SOLVER_HPP

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bogomin/functional.hpp"

namespace bogomin {

enum class InitMode { Vacuum, Trial, File };
enum class Engine { Auto, FixedPoint, Gradient };

struct SolverConfig {
    // Cutoff gamma <= kappa; infinity disables the restriction.
    double kappa = std::numeric_limits<double>::infinity();
    // Damping of the self-consistent fixed-point update, in (0, 1].
    double damping = 0.5;
    // Backtracking line search for the gradient fallback.
    double step_init = 1.0;
    double step_backtrack = 0.5;
    double armijo_c = 1e-4;
    // Convergence: residuals below tol_grad and relative energy change below
    // tol_energy, both for `consec_required` consecutive iterations. The
    // safeguarded line searches cannot resolve energy differences below the
    // floating-point noise of the total energy, which floors the reachable
    // residual around 1e-7 on coarse grids; the default sits above that.
    double tol_grad = 3e-7;
    double tol_energy = 1e-10;
    int consec_required = 3;
    int max_iter = 10000;
    Engine engine = Engine::Auto;
    InitMode init = InitMode::Trial;
    // Trial-state parameters; NaN selects them by a small energy scan.
    double init_gamma0 = std::numeric_limits<double>::quiet_NaN();
    double init_eps_ball = std::numeric_limits<double>::quiet_NaN();
    std::string init_file;
};

struct Residuals {
    double stationarity = 0.0;       // max-norm of the pure gradient (KKT form)
    double rho0_gradient = 0.0;      // |dF/drho0|, one-sided at rho0 = 0
    double pure_identity = 0.0;      // max |alpha^2 - gamma^2 - gamma| / (1 + gamma^2)
    double domain_violation = 0.0;   // worst violation of the domain constraints
    double max() const;
};

struct TracePoint {
    double energy = 0.0;
    double residual = 0.0;
};

struct SolverReport {
    State state;
    EnergyBreakdown energy;
    Densities density;
    Residuals residuals;
    int iterations = 0;
    bool converged = false;
    std::string stop_reason;
    int active_clamp_nodes = 0;
    double mu = 0.0;
    double kappa = std::numeric_limits<double>::infinity();
    std::vector<TracePoint> trace;
};

/// Trial state: gamma = gamma0 on the ball |p| <= eps_ball, the matching
/// pure pairing alpha = -sqrt(gamma0^2 + gamma0) there, and the condensate
/// density rho0 = mu/vhat(0) - gamma0 |ball| that keeps rho = mu/vhat(0).
State init_trial(const RadialGrid& grid, const PotentialSpec& spec, double mu, double gamma0,
                 double eps_ball);

/// One damped self-consistent update of the Euler-Lagrange system. Returns
/// nullopt when dF/dgamma is not strictly positive everywhere (the update is
/// only defined there; the caller falls back to a gradient step).
std::optional<State> fixed_point_step(const State& state, const RadialGrid& grid,
                                      const ConvolutionKernel& kernel, const PotentialSpec& spec,
                                      double mu, const SolverConfig& config, double damping);

struct GradientStepResult {
    State state;
    double step = 0.0;
    bool stagnated = false;
};

/// Projected backtracking step on (alpha, rho0) descending the pure-state
/// functional; energy is non-increasing by the Armijo condition.
GradientStepResult gradient_step(const State& state, const RadialGrid& grid,
                                 const ConvolutionKernel& kernel, const PotentialSpec& spec,
                                 double mu, const SolverConfig& config);

/// Minimize over the (possibly kappa-restricted) domain. For mu <= 0 the
/// vacuum is returned immediately. `warm` replaces the configured init.
SolverReport minimize(const RadialGrid& grid, const ConvolutionKernel& kernel,
                      const PotentialSpec& spec, double mu, const SolverConfig& config,
                      const State* warm = nullptr);

/// minimize with gamma <= kappa enforced at every step.
SolverReport minimize_restricted(double kappa, const RadialGrid& grid,
                                 const ConvolutionKernel& kernel, const PotentialSpec& spec,
                                 double mu, const SolverConfig& config, const State* warm = nullptr);

struct KappaSweepResult {
    std::vector<double> kappas;
    std::vector<SolverReport> reports;
    // Index k such that every successive energy change from k onward is
    // below stab_tol; empty when the energies never stabilize.
    std::optional<int> stabilization_index;
};

/// Ascending restricted minimizations, warm-started, so the energy column is
/// non-increasing by construction.
KappaSweepResult kappa_sweep(const std::vector<double>& kappas, const RadialGrid& grid,
                             const ConvolutionKernel& kernel, const PotentialSpec& spec, double mu,
                             const SolverConfig& config, double stab_tol = 1e-8);

/// Minimize over (gamma, alpha) with rho_gamma = lambda and rho0 held fixed,
/// i.e. evaluate f(lambda, rho0). The mass constraint is maintained by
/// rescaling gamma (with alpha kept pure) after every step.
SolverReport minimize_fixed_density(double lambda, double rho0, const RadialGrid& grid,
                                    const ConvolutionKernel& kernel, const PotentialSpec& spec,
                                    double mu, const SolverConfig& config,
                                    const State* warm = nullptr);

/// One converged minimize per mu. jobs <= 1 runs sequentially with warm
/// starts; jobs > 1 runs rows concurrently from cold starts. Reports are in
/// input order either way.
std::vector<SolverReport> mu_sweep(const std::vector<double>& mus, const RadialGrid& grid,
                                   const ConvolutionKernel& kernel, const PotentialSpec& spec,
                                   const SolverConfig& config, int jobs = 1);

}  // namespace bogomin

#endif
