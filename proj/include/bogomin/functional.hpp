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

#ifndef BOGOMIN_FUNCTIONAL_HPP
#define BOGOMIN_FUNCTIONAL_HPP

#include <Eigen/Dense>

#include "bogomin/grid.hpp"
#include "bogomin/kernel.hpp"
#include "bogomin/potential.hpp"

namespace bogomin {

/// Discretized element of the variational domain: per-node occupation gamma,
/// per-node real pairing alpha, and condensate density rho0.
///
/// The constructor enforces the domain conditions
///   gamma >= 0,   alpha^2 <= gamma^2 + gamma,   rho0 >= 0.
/// Violations of the pairing bound within kDomainTol (floating-point
/// round-trip noise) are repaired by shrinking |alpha|; anything larger is
/// rejected. States are immutable values.
class State {
  public:
    static constexpr double kDomainTol = 1e-12;

    State(Eigen::ArrayXd gamma, Eigen::ArrayXd alpha, double rho0);

    static State vacuum(int n);

    const Eigen::ArrayXd& gamma() const { return gamma_; }
    const Eigen::ArrayXd& alpha() const { return alpha_; }
    double rho0() const { return rho0_; }
    int n() const { return static_cast<int>(gamma_.size()); }

  private:
    Eigen::ArrayXd gamma_, alpha_;
    double rho0_;
};

/// Term-by-term energy; total is the exact sum of the parts.
struct EnergyBreakdown {
    double kinetic = 0.0;     // int p^2 gamma
    double chemical = 0.0;    // -mu rho
    double hartree = 0.0;     // vhat(0) rho^2 / 2
    double linear = 0.0;      // rho0 int vhat (gamma + alpha)
    double quad_gamma = 0.0;  // <gamma, vhat*gamma>_w / 2
    double quad_alpha = 0.0;  // <alpha, vhat*alpha>_w / 2
    double total = 0.0;
};

/// Functional derivatives at a state: a = dF/dgamma and b = dF/dalpha as
/// per-node densities against the absorbed measure, plus the scalar
/// dF/drho0.
struct Derivatives {
    Eigen::ArrayXd a;
    Eigen::ArrayXd b;
    double dF_drho0 = 0.0;
};

struct Densities {
    double rho_gamma = 0.0;
    double rho = 0.0;
};

Densities densities(const State& state, const RadialGrid& grid);

/// Energy and derivatives share the two kernel products; Evaluation computes
/// both at once. energy() and derivatives() are thin wrappers over it.
struct Evaluation {
    Densities density;
    EnergyBreakdown energy;
    Derivatives deriv;
};

Evaluation evaluate(const State& state, const RadialGrid& grid, const ConvolutionKernel& kernel,
                    const PotentialSpec& spec, double mu);

EnergyBreakdown energy(const State& state, const RadialGrid& grid, const ConvolutionKernel& kernel,
                       const PotentialSpec& spec, double mu);

Derivatives derivatives(const State& state, const RadialGrid& grid, const ConvolutionKernel& kernel,
                        const PotentialSpec& spec, double mu);

/// gamma(alpha) = -1/2 + sqrt(1/4 + alpha^2), evaluated in the cancellation-
/// free form alpha^2 / (1/2 + sqrt(1/4 + alpha^2)) so the pure-state identity
/// alpha^2 = gamma^2 + gamma survives round-trips.
Eigen::ArrayXd pure_gamma_of_alpha(const Eigen::ArrayXd& alpha);

/// d gamma / d alpha = alpha / sqrt(1/4 + alpha^2); bounded by 1.
Eigen::ArrayXd pure_gamma_derivative(const Eigen::ArrayXd& alpha);

/// Gradient of the pure-state functional F~(alpha, rho0) = F(gamma(alpha),
/// alpha, rho0) by the chain rule: dF~/dalpha = gamma'(alpha) a + b.
struct PureGradient {
    Eigen::ArrayXd dalpha;
    double drho0 = 0.0;
};

PureGradient pure_gradient(const Eigen::ArrayXd& alpha, double rho0, const RadialGrid& grid,
                           const ConvolutionKernel& kernel, const PotentialSpec& spec, double mu);

/// Explicit constants for the coercivity bound
///   F >= kinetic + eps (rho0^2 + rho_gamma^2) - C,
/// fixed as eps = vhat(0)/4, K = 2 l2norm / vhat(0) and C the closed-form
/// maximum of mu(x+y) + (l2norm K / 2) y - (vhat(0)/4)(x^2 + y^2) over
/// x, y >= 0.
struct LowerBoundConstants {
    double epsilon = 0.0;
    double C = 0.0;
};

LowerBoundConstants lower_bound_constants(const PotentialSpec& spec, double mu);

}  // namespace bogomin

#endif
