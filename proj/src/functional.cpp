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

#include "bogomin/functional.hpp"

#include <cmath>
#include <stdexcept>

namespace bogomin {

State::State(Eigen::ArrayXd gamma, Eigen::ArrayXd alpha, double rho0)
    : gamma_(std::move(gamma)), alpha_(std::move(alpha)), rho0_(rho0) {
    if (gamma_.size() != alpha_.size())
        throw std::invalid_argument("State: gamma and alpha length mismatch");
    if (!(rho0_ >= 0.0)) throw std::invalid_argument("State: rho0 must be >= 0");
    for (Eigen::Index i = 0; i < gamma_.size(); ++i) {
        const double g = gamma_[i];
        if (!std::isfinite(g) || g < 0.0)
            throw std::invalid_argument("State: gamma must be finite and >= 0");
        const double bound = g * g + g;
        const double a2 = alpha_[i] * alpha_[i];
        if (a2 > bound) {
            if (a2 - bound > kDomainTol * (1.0 + bound))
                throw std::invalid_argument("State: alpha^2 exceeds gamma^2 + gamma");
            alpha_[i] = std::copysign(std::sqrt(bound), alpha_[i]);
            while (alpha_[i] * alpha_[i] > bound)  // sqrt can overshoot by an ulp
                alpha_[i] = std::nextafter(alpha_[i], 0.0);
        }
        // implied by the pairing bound, asserted for safety
        if (gamma_[i] + alpha_[i] < -0.5 - kDomainTol)
            throw std::invalid_argument("State: gamma + alpha below -1/2");
    }
}

State State::vacuum(int n) {
    return State(Eigen::ArrayXd::Zero(n), Eigen::ArrayXd::Zero(n), 0.0);
}

Densities densities(const State& state, const RadialGrid& grid) {
    Densities d;
    d.rho_gamma = integrate(grid, state.gamma());
    d.rho = state.rho0() + d.rho_gamma;
    return d;
}

Evaluation evaluate(const State& state, const RadialGrid& grid, const ConvolutionKernel& kernel,
                    const PotentialSpec& spec, double mu) {
    Evaluation ev;
    ev.density = densities(state, grid);
    Eigen::ArrayXd vhat_nodes(grid.n());
    for (int i = 0; i < grid.n(); ++i) vhat_nodes[i] = spec.vhat(grid.nodes[i]);

    const Eigen::ArrayXd conv_gamma = kernel.apply(state.gamma());
    const Eigen::ArrayXd conv_alpha = kernel.apply(state.alpha());
    const double lin_integral = integrate(grid, vhat_nodes * (state.gamma() + state.alpha()));

    EnergyBreakdown& e = ev.energy;
    e.kinetic = integrate(grid, grid.nodes.square() * state.gamma());
    e.chemical = -mu * ev.density.rho;
    e.hartree = 0.5 * spec.vhat0() * ev.density.rho * ev.density.rho;
    e.linear = state.rho0() * lin_integral;
    e.quad_gamma = 0.5 * integrate(grid, state.gamma() * conv_gamma);
    e.quad_alpha = 0.5 * integrate(grid, state.alpha() * conv_alpha);
    e.total = e.kinetic + e.chemical + e.hartree + e.linear + e.quad_gamma + e.quad_alpha;

    Derivatives& d = ev.deriv;
    d.a = grid.nodes.square() + (spec.vhat0() * ev.density.rho - mu) +
          state.rho0() * vhat_nodes + conv_gamma;
    d.b = state.rho0() * vhat_nodes + conv_alpha;
    d.dF_drho0 = spec.vhat0() * ev.density.rho - mu + lin_integral;
    return ev;
}

EnergyBreakdown energy(const State& state, const RadialGrid& grid, const ConvolutionKernel& kernel,
                       const PotentialSpec& spec, double mu) {
    return evaluate(state, grid, kernel, spec, mu).energy;
}

Derivatives derivatives(const State& state, const RadialGrid& grid, const ConvolutionKernel& kernel,
                        const PotentialSpec& spec, double mu) {
    return evaluate(state, grid, kernel, spec, mu).deriv;
}

Eigen::ArrayXd pure_gamma_of_alpha(const Eigen::ArrayXd& alpha) {
    const Eigen::ArrayXd a2 = alpha.square();
    return a2 / (0.5 + (0.25 + a2).sqrt());
}

Eigen::ArrayXd pure_gamma_derivative(const Eigen::ArrayXd& alpha) {
    return alpha / (0.25 + alpha.square()).sqrt();
}

PureGradient pure_gradient(const Eigen::ArrayXd& alpha, double rho0, const RadialGrid& grid,
                           const ConvolutionKernel& kernel, const PotentialSpec& spec, double mu) {
    State state(pure_gamma_of_alpha(alpha), alpha, rho0);
    const Derivatives d = derivatives(state, grid, kernel, spec, mu);
    PureGradient g;
    g.dalpha = pure_gamma_derivative(alpha) * d.a + d.b;
    g.drho0 = d.dF_drho0;
    return g;
}

LowerBoundConstants lower_bound_constants(const PotentialSpec& spec, double mu) {
    LowerBoundConstants lb;
    const double v0 = spec.vhat0();
    lb.epsilon = v0 / 4.0;
    const double K = 2.0 * spec.l2norm() / v0;
    // max over x >= 0 of c x - (v0/4) x^2 is c^2 / v0 when c > 0, else 0.
    const auto branch = [&](double c) { return c > 0.0 ? c * c / v0 : 0.0; };
    lb.C = branch(mu) + branch(mu + 0.5 * spec.l2norm() * K);
    return lb;
}

}  // namespace bogomin
