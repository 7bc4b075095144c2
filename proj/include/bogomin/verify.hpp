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

#ifndef BOGOMIN_VERIFY_HPP
#define BOGOMIN_VERIFY_HPP

#include <string>
#include <vector>

#include "bogomin/functional.hpp"

namespace bogomin {

/// One quantitative minimizer property, measured on a state. Checks are pure;
/// running a check twice yields the same record.
struct CheckRecord {
    std::string name;
    bool pass = false;
    bool skipped = false;       // out of scope (e.g. mu <= 0)
    bool inconclusive = false;  // not decidable on this grid; not a failure
    double measured = 0.0;
    double threshold = 0.0;
    int worst_node = -1;
    std::string note;
};

struct VerificationReport {
    std::vector<CheckRecord> checks;
    /// All applicable checks pass (skipped and inconclusive records do not
    /// count against).
    bool overall() const;
};

/// Raw per-node data for states loaded from disk; lets the domain check fail
/// on hand-edited files instead of rejecting them at construction.
struct RawState {
    Eigen::ArrayXd gamma;
    Eigen::ArrayXd alpha;
    double rho0 = 0.0;
};

/// Membership in the variational domain: gamma >= 0, alpha^2 <= gamma^2 +
/// gamma, rho0 >= 0.
CheckRecord check_domain(const RawState& raw);

/// Pure-state identity alpha^2 = gamma^2 + gamma, normalized residual.
CheckRecord check_pure_state(const State& state);

/// rho0 > rho_gamma plus the quantitative transfer inequality
/// rho0 >= rho_gamma + (kinetic + quad_gamma) / (-int vhat (gamma + alpha)).
/// The precondition int vhat (gamma + alpha) < 0 is itself checked.
CheckRecord check_condensate_majority(const State& state, const RadialGrid& grid,
                                      const ConvolutionKernel& kernel, const PotentialSpec& spec);

/// Least-squares fit of log gamma vs log p on [p0_est, 0.8 pmax]: slope must
/// be <= -3.5 and gamma p^4 must stay bounded across the window (no growth
/// beyond 10x its reference level).
CheckRecord check_decay(const State& state, const RadialGrid& grid, double p0_est);

/// Onset estimate for the decay window: the momentum where p^2 exceeds twice
/// the largest non-kinetic contribution to dF/dgamma.
double estimate_decay_onset(const State& state, const RadialGrid& grid,
                            const ConvolutionKernel& kernel, const PotentialSpec& spec, double mu);

/// The Euler-Lagrange system at a minimizer: A > 0, A^2 - B^2 > 0 on the
/// support of gamma, stationarity of the pure gradient, alpha B <= 0, the
/// algebraic identity alpha^2 = B^2 / (4 (A^2 - B^2)), and dF/drho0 = 0 when
/// rho0 > 0.
CheckRecord check_el_system(const State& state, const RadialGrid& grid,
                            const ConvolutionKernel& kernel, const PotentialSpec& spec, double mu,
                            double tol_stationarity = 1e-6);

/// Strict upper bound total < -mu^2 / (2 vhat(0)) and the explicit coercivity
/// lower bound from lower_bound_constants().
CheckRecord check_energy_bounds(const EnergyBreakdown& breakdown, const Densities& density,
                                const PotentialSpec& spec, double mu);

/// Necessary condition from comparing the minimizer against its shifted and
/// reflected modifications: for p in [0, pmax/2] and both signs,
/// p^2 rho_gamma + rho0 [ (vhat*(gamma±alpha))(p) - int vhat (gamma+alpha) ] >= 0.
CheckRecord check_shift_stationarity(const State& state, const RadialGrid& grid,
                                     const ConvolutionKernel& kernel, const PotentialSpec& spec);

/// Convexity of a lambda slice of f: second differences >= -1e-8 * scale.
CheckRecord check_convexity_slice(const std::vector<double>& lambdas,
                                  const std::vector<double>& f_values);

/// Every minimizer property applicable to (state, mu) in one report.
VerificationReport run_verify_suite(const State& state, const RadialGrid& grid,
                                    const ConvolutionKernel& kernel, const PotentialSpec& spec,
                                    double mu, double tol_stationarity = 1e-6);

}  // namespace bogomin

#endif
