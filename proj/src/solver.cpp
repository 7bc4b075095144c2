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

#include "bogomin/solver.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace bogomin {

namespace {

// |t| = |B/A| is kept below 1 - kDeltaClamp; off-minimum states may
// transiently violate A^2 > B^2.
constexpr double kDeltaClamp = 1e-8;
constexpr double kMinStep = 1e-16;
constexpr double kClampRel = 1.0 - 1e-12;

double alpha_box_max(double kappa) {
    if (!std::isfinite(kappa)) return std::numeric_limits<double>::infinity();
    return std::sqrt(kappa * kappa + kappa);
}

// Stationary alpha from t = -B/A: alpha / sqrt(1/4 + alpha^2) = t.
double alpha_from_t(double t) {
    return t / (2.0 * std::sqrt((1.0 - t) * (1.0 + t)));
}

Eigen::ArrayXd vhat_samples(const RadialGrid& grid, const PotentialSpec& spec) {
    Eigen::ArrayXd v(grid.n());
    for (int i = 0; i < grid.n(); ++i) v[i] = spec.vhat(grid.nodes[i]);
    return v;
}

Residuals compute_residuals(const State& state, const Evaluation& ev, double kappa) {
    Residuals r;
    const Eigen::ArrayXd pg = pure_gamma_derivative(state.alpha()) * ev.deriv.a + ev.deriv.b;
    const double abox = alpha_box_max(kappa);
    for (Eigen::Index i = 0; i < pg.size(); ++i) {
        double viol;
        if (std::isfinite(abox) && std::abs(state.alpha()[i]) >= abox * kClampRel) {
            // at the cutoff only shrinking |alpha| is feasible
            viol = state.alpha()[i] < 0.0 ? std::max(0.0, -pg[i]) : std::max(0.0, pg[i]);
        } else {
            viol = std::abs(pg[i]);
        }
        r.stationarity = std::max(r.stationarity, viol);
    }
    r.rho0_gradient = state.rho0() > 0.0 ? std::abs(ev.deriv.dF_drho0)
                                         : std::max(0.0, -ev.deriv.dF_drho0);
    const Eigen::ArrayXd purity = (state.alpha().square() - state.gamma().square() - state.gamma())
                                      .abs() /
                                  (1.0 + state.gamma().square());
    r.pure_identity = purity.maxCoeff();
    r.domain_violation = std::max(
        {0.0, -state.gamma().minCoeff(), -state.rho0(),
         ((state.alpha().square() - state.gamma().square() - state.gamma()) /
          (1.0 + state.gamma().square()))
             .maxCoeff()});
    return r;
}

int count_clamped(const State& state, double kappa) {
    if (!std::isfinite(kappa)) return 0;
    int c = 0;
    for (Eigen::Index i = 0; i < state.gamma().size(); ++i)
        if (state.gamma()[i] >= kappa * kClampRel) ++c;
    return c;
}

// Fixed-point target from the derivatives of the current state; shared by
// the public op and the solver loop.
State fp_step_impl(const State& state, const Derivatives& d, const RadialGrid& grid,
                   const Eigen::ArrayXd& vhat_nodes, const PotentialSpec& spec, double mu,
                   double kappa, double damping) {
    const double tmax = 1.0 - kDeltaClamp;
    const double abox = alpha_box_max(kappa);
    const double sat = std::isfinite(abox) ? abox : alpha_from_t(tmax);

    Eigen::ArrayXd alpha_new(state.alpha().size());
    for (Eigen::Index i = 0; i < alpha_new.size(); ++i) {
        const double t = -d.b[i] / d.a[i];
        double target = (std::abs(t) < tmax) ? alpha_from_t(t) : std::copysign(sat, t);
        if (std::isfinite(abox)) target = std::clamp(target, -abox, abox);
        alpha_new[i] = (1.0 - damping) * state.alpha()[i] + damping * target;
        if (std::isfinite(abox)) alpha_new[i] = std::clamp(alpha_new[i], -abox, abox);
    }
    Eigen::ArrayXd gamma_new = pure_gamma_of_alpha(alpha_new);
    if (std::isfinite(kappa)) gamma_new = gamma_new.min(kappa);

    // closed-form Euler-Lagrange solution for rho0, projected to >= 0
    const double lin = integrate(grid, vhat_nodes * (gamma_new + alpha_new));
    const double rho_gamma = integrate(grid, gamma_new);
    const double rho0 = std::max(0.0, (mu - lin) / spec.vhat0() - rho_gamma);
    return State(std::move(gamma_new), std::move(alpha_new), rho0);
}

struct GradStep {
    State state;
    Evaluation ev;
    double step = 0.0;
    bool stagnated = false;
};

// Projected Armijo backtracking on (alpha, rho0) for the pure functional.
GradStep grad_step_impl(const State& state, const Evaluation& ev, const RadialGrid& grid,
                        const ConvolutionKernel& kernel, const PotentialSpec& spec, double mu,
                        const SolverConfig& config, double step_start) {
    const Eigen::ArrayXd pg = pure_gamma_derivative(state.alpha()) * ev.deriv.a + ev.deriv.b;
    const double grho = ev.deriv.dF_drho0;
    const double abox = alpha_box_max(config.kappa);

    // sufficient decrease below the floating-point resolution of the energy
    // cannot be measured; there any non-increase is accepted
    const double noise = 1e-14 * std::max(1.0, std::abs(ev.energy.total));
    double s = std::max(step_start, kMinStep);
    while (s >= kMinStep) {
        Eigen::ArrayXd alpha_c = state.alpha() - s * pg;
        if (std::isfinite(abox)) alpha_c = alpha_c.max(-abox).min(abox);
        const double rho0_c = std::max(0.0, state.rho0() - s * grho);
        State cand(pure_gamma_of_alpha(alpha_c), alpha_c, rho0_c);
        Evaluation cev = evaluate(cand, grid, kernel, spec, mu);
        const double decrease = (grid.weights * pg * (cand.alpha() - state.alpha())).sum() +
                                grho * (rho0_c - state.rho0());
        const double delta = cev.energy.total - ev.energy.total;
        if (delta <= 0.0 && delta <= config.armijo_c * decrease + noise)
            return {std::move(cand), std::move(cev), s, false};
        s *= config.step_backtrack;
    }
    return {state, ev, 0.0, true};
}

State trial_or_vacuum(const RadialGrid& grid, const ConvolutionKernel& kernel,
                      const PotentialSpec& spec, double mu, const SolverConfig& config) {
    if (config.init == InitMode::Vacuum) return State::vacuum(grid.n());
    if (config.init == InitMode::File)
        throw std::logic_error("file-based init must be resolved by the caller into a warm state");

    if (!std::isnan(config.init_gamma0) && !std::isnan(config.init_eps_ball))
        return init_trial(grid, spec, mu, config.init_gamma0, config.init_eps_ball);

    // scan a small parameter family and keep the lowest-energy feasible state
    const double gamma0s[] = {1.0, 10.0, 100.0};
    const double epss[] = {0.05, 0.1, 0.2};
    State best = State::vacuum(grid.n());
    double best_e = energy(best, grid, kernel, spec, mu).total;
    for (double g0 : gamma0s) {
        for (double eps : epss) {
            try {
                State t = init_trial(grid, spec, mu, g0, eps);
                const double e = energy(t, grid, kernel, spec, mu).total;
                if (e < best_e) {
                    best = std::move(t);
                    best_e = e;
                }
            } catch (const std::invalid_argument&) {
                // infeasible corner of the scan
            }
        }
    }
    return best;
}

State project_to_kappa(const State& state, double kappa) {
    const double abox = alpha_box_max(kappa);
    if (!std::isfinite(abox)) return state;
    Eigen::ArrayXd alpha = state.alpha().max(-abox).min(abox);
    Eigen::ArrayXd gamma = state.gamma().min(kappa);
    // keep the pairing bound after the independent clamps
    for (Eigen::Index i = 0; i < gamma.size(); ++i) {
        const double bound = gamma[i] * gamma[i] + gamma[i];
        if (alpha[i] * alpha[i] > bound) alpha[i] = std::copysign(std::sqrt(bound), alpha[i]);
    }
    return State(std::move(gamma), std::move(alpha), state.rho0());
}

SolverReport make_report(State state, Evaluation ev, const Residuals& res, int iterations,
                         bool converged, std::string reason, double mu, double kappa,
                         std::vector<TracePoint> trace) {
    SolverReport rep{std::move(state), ev.energy,      ev.density, res,
                     iterations,       converged,      std::move(reason),
                     0,                mu,             kappa,
                     std::move(trace)};
    rep.active_clamp_nodes = count_clamped(rep.state, kappa);
    return rep;
}

}  // namespace

double Residuals::max() const {
    return std::max({stationarity, rho0_gradient, pure_identity, domain_violation});
}

State init_trial(const RadialGrid& grid, const PotentialSpec& spec, double mu, double gamma0,
                 double eps_ball) {
    if (!(gamma0 > 0.0)) throw std::invalid_argument("init_trial: gamma0 must be > 0");
    if (!(eps_ball > 0.0)) throw std::invalid_argument("init_trial: eps_ball must be > 0");
    const double rho0 = mu / spec.vhat0() - gamma0 * ball_volume(eps_ball);
    if (!(rho0 > 0.0))
        throw std::invalid_argument(
            "init_trial: mu/vhat(0) - gamma0 |ball| <= 0; reduce gamma0 or eps_ball");
    const double alpha_val = -std::sqrt(gamma0 * gamma0 + gamma0);
    Eigen::ArrayXd gamma = Eigen::ArrayXd::Zero(grid.n());
    Eigen::ArrayXd alpha = Eigen::ArrayXd::Zero(grid.n());
    for (int i = 0; i < grid.n(); ++i) {
        if (grid.nodes[i] <= eps_ball) {
            gamma[i] = gamma0;
            alpha[i] = alpha_val;
        }
    }
    return State(std::move(gamma), std::move(alpha), rho0);
}

std::optional<State> fixed_point_step(const State& state, const RadialGrid& grid,
                                      const ConvolutionKernel& kernel, const PotentialSpec& spec,
                                      double mu, const SolverConfig& config, double damping) {
    const Derivatives d = derivatives(state, grid, kernel, spec, mu);
    if (d.a.minCoeff() <= 0.0) return std::nullopt;
    return fp_step_impl(state, d, grid, vhat_samples(grid, spec), spec, mu, config.kappa, damping);
}

GradientStepResult gradient_step(const State& state, const RadialGrid& grid,
                                 const ConvolutionKernel& kernel, const PotentialSpec& spec,
                                 double mu, const SolverConfig& config) {
    const Evaluation ev = evaluate(state, grid, kernel, spec, mu);
    GradStep g = grad_step_impl(state, ev, grid, kernel, spec, mu, config, config.step_init);
    return {std::move(g.state), g.step, g.stagnated};
}

SolverReport minimize(const RadialGrid& grid, const ConvolutionKernel& kernel,
                      const PotentialSpec& spec, double mu, const SolverConfig& config,
                      const State* warm) {
    const double kappa = config.kappa;
    if (!(kappa > 0.0)) throw std::invalid_argument("minimize: kappa must be > 0");

    if (mu <= 0.0) {
        // the Hamiltonian is positive; the vacuum minimizes
        State vac = State::vacuum(grid.n());
        Evaluation ev = evaluate(vac, grid, kernel, spec, mu);
        Residuals res = compute_residuals(vac, ev, kappa);
        std::vector<TracePoint> trace{{ev.energy.total, res.max()}};
        return make_report(std::move(vac), std::move(ev), res, 0, true, "vacuum (mu <= 0)", mu,
                           kappa, std::move(trace));
    }

    State state = warm ? project_to_kappa(*warm, kappa)
                       : project_to_kappa(trial_or_vacuum(grid, kernel, spec, mu, config), kappa);
    if (state.n() != grid.n()) throw std::invalid_argument("minimize: warm state size mismatch");

    const Eigen::ArrayXd vhat_nodes = vhat_samples(grid, spec);
    Evaluation ev = evaluate(state, grid, kernel, spec, mu);

    std::vector<TracePoint> trace;
    trace.reserve(static_cast<std::size_t>(config.max_iter) + 1);
    double prev_energy = std::numeric_limits<double>::quiet_NaN();
    double grad_step_mem = config.step_init;
    int consec = 0, stalls = 0, iter = 0;
    bool converged = false;
    std::string reason;

    for (iter = 0; iter < config.max_iter; ++iter) {
        const Residuals res = compute_residuals(state, ev, kappa);
        trace.push_back({ev.energy.total, res.max()});

        const bool res_ok = std::max(res.stationarity, res.rho0_gradient) < config.tol_grad;
        const bool energy_ok =
            !std::isnan(prev_energy) &&
            std::abs(ev.energy.total - prev_energy) <=
                config.tol_energy * std::max(1.0, std::abs(ev.energy.total));
        if (res_ok && energy_ok) {
            if (++consec >= config.consec_required) {
                converged = true;
                reason = "converged";
                break;
            }
        } else {
            consec = 0;
        }
        prev_energy = ev.energy.total;

        bool accepted = false;
        if (config.engine != Engine::Gradient && ev.deriv.a.minCoeff() > 0.0) {
            for (double factor : {1.0, 0.5, 0.25}) {
                State cand = fp_step_impl(state, ev.deriv, grid, vhat_nodes, spec, mu, kappa,
                                          config.damping * factor);
                Evaluation cev = evaluate(cand, grid, kernel, spec, mu);
                if (cev.energy.total <= ev.energy.total) {
                    state = std::move(cand);
                    ev = std::move(cev);
                    accepted = true;
                    break;
                }
            }
        }
        if (!accepted && config.engine != Engine::FixedPoint) {
            GradStep g = grad_step_impl(state, ev, grid, kernel, spec, mu, config, grad_step_mem);
            if (!g.stagnated) {
                state = std::move(g.state);
                ev = std::move(g.ev);
                grad_step_mem = std::min(config.step_init, 2.0 * g.step);
                accepted = true;
            }
        }
        if (accepted) {
            stalls = 0;
        } else if (++stalls >= 5) {
            reason = "stalled: neither engine can decrease the energy";
            ++iter;
            break;
        }
    }
    if (reason.empty()) reason = "max_iter reached";

    const Residuals res = compute_residuals(state, ev, kappa);
    return make_report(std::move(state), std::move(ev), res, iter, converged, std::move(reason),
                       mu, kappa, std::move(trace));
}

SolverReport minimize_restricted(double kappa, const RadialGrid& grid,
                                 const ConvolutionKernel& kernel, const PotentialSpec& spec,
                                 double mu, const SolverConfig& config, const State* warm) {
    SolverConfig c = config;
    c.kappa = kappa;
    return minimize(grid, kernel, spec, mu, c, warm);
}

KappaSweepResult kappa_sweep(const std::vector<double>& kappas, const RadialGrid& grid,
                             const ConvolutionKernel& kernel, const PotentialSpec& spec, double mu,
                             const SolverConfig& config, double stab_tol) {
    if (kappas.empty()) throw std::invalid_argument("kappa_sweep: empty kappa list");
    for (std::size_t i = 0; i < kappas.size(); ++i) {
        if (!(kappas[i] > 0.0)) throw std::invalid_argument("kappa_sweep: kappas must be > 0");
        if (i > 0 && !(kappas[i] > kappas[i - 1]))
            throw std::invalid_argument("kappa_sweep: kappas must ascend");
    }

    KappaSweepResult result;
    result.kappas = kappas;
    result.reports.reserve(kappas.size());
    const State* warm = nullptr;
    for (double k : kappas) {
        result.reports.push_back(minimize_restricted(k, grid, kernel, spec, mu, config, warm));
        warm = &result.reports.back().state;
    }

    // kappa* is the first kappa from which on every successive energy change
    // stays below stab_tol; with warm starts the column is non-increasing, so
    // this is where the cutoff stops being felt
    int last_big = 0;
    for (std::size_t j = 1; j < result.reports.size(); ++j) {
        const double diff = std::abs(result.reports[j].energy.total -
                                     result.reports[j - 1].energy.total);
        if (diff >= stab_tol) last_big = static_cast<int>(j);
    }
    if (result.reports.size() >= 2 && last_big + 1 < static_cast<int>(result.reports.size()))
        result.stabilization_index = last_big == 0 ? 1 : last_big + 1;
    return result;
}

SolverReport minimize_fixed_density(double lambda, double rho0, const RadialGrid& grid,
                                    const ConvolutionKernel& kernel, const PotentialSpec& spec,
                                    double mu, const SolverConfig& config, const State* warm) {
    if (!(lambda >= 0.0)) throw std::invalid_argument("minimize_fixed_density: lambda must be >= 0");
    if (!(rho0 >= 0.0)) throw std::invalid_argument("minimize_fixed_density: rho0 must be >= 0");
    const int n = grid.n();
    const double kappa = config.kappa;

    if (lambda == 0.0) {
        State state(Eigen::ArrayXd::Zero(n), Eigen::ArrayXd::Zero(n), rho0);
        Evaluation ev = evaluate(state, grid, kernel, spec, mu);
        Residuals res{};  // only condensate terms survive; nothing to iterate
        std::vector<TracePoint> trace{{ev.energy.total, 0.0}};
        return make_report(std::move(state), std::move(ev), res, 0, true, "lambda = 0 closed form",
                           mu, kappa, std::move(trace));
    }

    const double abox = alpha_box_max(kappa);
    const double tmax = 1.0 - kDeltaClamp;

    // rescale gamma to mass lambda and rebuild the pure pairing; the pairing
    // is negative by default, nodes with positive alpha keep their sign
    const auto rescaled = [&](Eigen::ArrayXd gamma, const Eigen::ArrayXd& alpha_sign) -> State {
        const double mass = integrate(grid, gamma);
        if (!(mass > 0.0)) throw std::runtime_error("fixed-density rescale: vanishing gamma mass");
        gamma *= lambda / mass;
        if (std::isfinite(kappa)) gamma = gamma.min(kappa);
        Eigen::ArrayXd alpha = -(gamma.square() + gamma).sqrt();
        for (Eigen::Index i = 0; i < alpha.size(); ++i)
            if (alpha_sign[i] > 0.0) alpha[i] = -alpha[i];
        return State(std::move(gamma), std::move(alpha), rho0);
    };

    State state = [&]() {
        if (warm && warm->n() == n && integrate(grid, warm->gamma()) > 0.0)
            return rescaled(warm->gamma(), warm->alpha());
        Eigen::ArrayXd profile = (-grid.nodes.square()).exp();
        return rescaled(std::move(profile), Eigen::ArrayXd::Zero(n));
    }();

    Evaluation ev = evaluate(state, grid, kernel, spec, mu);
    std::vector<TracePoint> trace;
    double prev_energy = std::numeric_limits<double>::quiet_NaN();
    double grad_step_mem = config.step_init;
    int consec = 0, stalls = 0, iter = 0;
    bool converged = false;
    std::string reason;

    // Stationarity multiplier of the mass constraint: alpha(nu) solves the
    // Euler-Lagrange system with A shifted by nu, and the gamma mass of the
    // shot is monotone increasing in nu, so the nu matching the target mass
    // is found by bisection on the algebraic shot (no kernel products).
    const auto mass_at_nu = [&](const Derivatives& d, double nu, Eigen::ArrayXd* alpha_out) {
        Eigen::ArrayXd alpha(n);
        for (int i = 0; i < n; ++i) {
            const double denom = d.a[i] - nu;
            double t = denom > 0.0 ? -d.b[i] / denom : std::copysign(tmax, -d.b[i]);
            if (std::abs(t) >= tmax) t = std::copysign(tmax, t);
            double a = alpha_from_t(t);
            if (std::isfinite(abox)) a = std::clamp(a, -abox, abox);
            alpha[i] = a;
        }
        const double mass = integrate(grid, pure_gamma_of_alpha(alpha));
        if (alpha_out) *alpha_out = std::move(alpha);
        return mass;
    };

    const auto residual_of = [&](const State& s, const Evaluation& e) {
        const Eigen::ArrayXd c = pure_gamma_derivative(s.alpha());
        const Eigen::ArrayXd pg = c * e.deriv.a + e.deriv.b;
        const double cc = (grid.weights * c * c).sum();
        const double nu = cc > 0.0 ? (grid.weights * pg * c).sum() / cc : 0.0;
        Residuals r;
        r.stationarity = (pg - nu * c).abs().maxCoeff();
        r.rho0_gradient = 0.0;  // rho0 is held fixed
        r.pure_identity = ((s.alpha().square() - s.gamma().square() - s.gamma()).abs() /
                           (1.0 + s.gamma().square()))
                              .maxCoeff();
        return r;
    };

    for (iter = 0; iter < config.max_iter; ++iter) {
        const Residuals res = residual_of(state, ev);
        trace.push_back({ev.energy.total, res.max()});

        const bool res_ok = res.stationarity < config.tol_grad;
        const bool energy_ok =
            !std::isnan(prev_energy) &&
            std::abs(ev.energy.total - prev_energy) <=
                config.tol_energy * std::max(1.0, std::abs(ev.energy.total));
        if (res_ok && energy_ok) {
            if (++consec >= config.consec_required) {
                converged = true;
                reason = "converged";
                break;
            }
        } else {
            consec = 0;
        }
        prev_energy = ev.energy.total;

        bool accepted = false;
        if (config.engine != Engine::Gradient && ev.deriv.a.minCoeff() > 0.0) {
            // bracket nu from above by the saturation bound of the current
            // derivatives, from below by doubling; then bisect on the shot
            double nu_hi = std::numeric_limits<double>::infinity();
            for (int i = 0; i < n; ++i)
                nu_hi = std::min(nu_hi, ev.deriv.a[i] - std::abs(ev.deriv.b[i]) / tmax);
            nu_hi -= 1e-12 * std::max(1.0, std::abs(nu_hi));
            if (mass_at_nu(ev.deriv, nu_hi, nullptr) >= lambda) {
                double nu_lo = std::min(nu_hi - 1.0, 0.0);
                while (mass_at_nu(ev.deriv, nu_lo, nullptr) > lambda)
                    nu_lo = nu_hi - 2.0 * (nu_hi - nu_lo);
                for (int b = 0; b < 100; ++b) {
                    const double mid = 0.5 * (nu_lo + nu_hi);
                    (mass_at_nu(ev.deriv, mid, nullptr) < lambda ? nu_lo : nu_hi) = mid;
                }
                Eigen::ArrayXd alpha_target;
                mass_at_nu(ev.deriv, 0.5 * (nu_lo + nu_hi), &alpha_target);
                // near the floor the energy cannot resolve the update of
                // weight-suppressed nodes; a candidate that shrinks the
                // residual is accepted up to noise-level energy changes
                const double fp_noise = 1e-15 * std::max(1.0, std::abs(ev.energy.total));
                for (double factor : {1.0, 0.5, 0.25}) {
                    const double eta = config.damping * factor;
                    Eigen::ArrayXd alpha_mix = (1.0 - eta) * state.alpha() + eta * alpha_target;
                    State cand = rescaled(pure_gamma_of_alpha(alpha_mix), alpha_mix);
                    Evaluation cev = evaluate(cand, grid, kernel, spec, mu);
                    const bool descent = cev.energy.total <= ev.energy.total;
                    const bool contraction =
                        cev.energy.total <= ev.energy.total + fp_noise &&
                        residual_of(cand, cev).stationarity < res.stationarity;
                    if (descent || contraction) {
                        state = std::move(cand);
                        ev = std::move(cev);
                        accepted = true;
                        break;
                    }
                }
            }
        }
        if (!accepted && config.engine != Engine::FixedPoint) {
            // gradient projected onto the fixed-mass tangent, repaired by the
            // rescale; sufficient decrease carries the same noise allowance
            // as the unconstrained line search
            const Eigen::ArrayXd c = pure_gamma_derivative(state.alpha());
            const Eigen::ArrayXd pg = c * ev.deriv.a + ev.deriv.b;
            const double cc = (grid.weights * c * c).sum();
            const double nu = cc > 0.0 ? (grid.weights * pg * c).sum() / cc : 0.0;
            const Eigen::ArrayXd dir = pg - nu * c;
            const double dir_norm2 = (grid.weights * dir * dir).sum();
            const double noise = 1e-14 * std::max(1.0, std::abs(ev.energy.total));
            double s = grad_step_mem;
            while (s >= kMinStep) {
                Eigen::ArrayXd alpha_c = state.alpha() - s * dir;
                bool ok = true;
                State cand = State::vacuum(n);
                try {
                    cand = rescaled(pure_gamma_of_alpha(alpha_c), alpha_c);
                } catch (const std::runtime_error&) {
                    ok = false;  // step annihilated the mass; shorten
                }
                if (ok) {
                    Evaluation cev = evaluate(cand, grid, kernel, spec, mu);
                    const double delta = cev.energy.total - ev.energy.total;
                    if (delta <= 0.0 && delta <= -config.armijo_c * s * dir_norm2 + noise) {
                        state = std::move(cand);
                        ev = std::move(cev);
                        grad_step_mem = std::min(config.step_init, 2.0 * s);
                        accepted = true;
                        break;
                    }
                }
                s *= config.step_backtrack;
            }
        }
        if (accepted) {
            stalls = 0;
        } else if (++stalls >= 5) {
            reason = "stalled: neither engine can decrease the energy";
            ++iter;
            break;
        }
    }
    if (reason.empty()) reason = "max_iter reached";

    const Residuals res = residual_of(state, ev);
    return make_report(std::move(state), std::move(ev), res, iter, converged, std::move(reason),
                       mu, kappa, std::move(trace));
}

std::vector<SolverReport> mu_sweep(const std::vector<double>& mus, const RadialGrid& grid,
                                   const ConvolutionKernel& kernel, const PotentialSpec& spec,
                                   const SolverConfig& config, int jobs) {
    std::vector<SolverReport> reports;
    if (mus.empty()) return reports;

    if (jobs <= 1) {
        reports.reserve(mus.size());
        const State* warm = nullptr;
        for (double mu : mus) {
            reports.push_back(minimize(grid, kernel, spec, mu, config, warm));
            warm = &reports.back().state;
        }
        return reports;
    }

    // cold starts so rows are independent; output order stays input order
    std::vector<std::optional<SolverReport>> slots(mus.size());
    std::atomic<std::size_t> next{0};
    const int workers = std::min<int>(jobs, static_cast<int>(mus.size()));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&]() {
            for (std::size_t i = next.fetch_add(1); i < mus.size(); i = next.fetch_add(1))
                slots[i] = minimize(grid, kernel, spec, mus[i], config, nullptr);
        });
    }
    for (auto& th : pool) th.join();
    reports.reserve(mus.size());
    for (auto& s : slots) reports.push_back(std::move(*s));
    return reports;
}

}  // namespace bogomin
