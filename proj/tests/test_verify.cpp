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

// Every check passes on a converged minimizer and fails on a deliberately
// violating synthetic state, so none of them is vacuous.

#include <doctest.h>

#include <cmath>

#include "bogomin/solver.hpp"
#include "bogomin/verify.hpp"

using namespace bogomin;

namespace {

struct Converged {
    PotentialSpec spec = PotentialSpec::gaussian(1.0, 1.0);
    RadialGrid grid;
    ConvolutionKernel kernel;
    SolverReport report;
    Converged()
        : grid(build_grid(256, 10.0, GridScheme::Clustered, 3.0)),
          kernel(grid, spec),
          report(minimize(grid, kernel, spec, 1.0, SolverConfig{})) {}
};

const Converged& fixture() {
    static const Converged c;
    return c;
}

}  // namespace

TEST_CASE("check_domain") {
    const Converged& c = fixture();
    SUBCASE("accepts the minimizer") {
        const CheckRecord r = check_domain(
            {c.report.state.gamma(), c.report.state.alpha(), c.report.state.rho0()});
        CHECK(r.pass);
    }
    SUBCASE("rejects negative gamma") {
        RawState raw{Eigen::ArrayXd::Constant(8, -0.5), Eigen::ArrayXd::Zero(8), 0.0};
        CHECK_FALSE(check_domain(raw).pass);
    }
    SUBCASE("rejects an oversized pairing") {
        RawState raw{Eigen::ArrayXd::Ones(8), Eigen::ArrayXd::Constant(8, 2.0), 0.0};
        CHECK_FALSE(check_domain(raw).pass);
    }
}

TEST_CASE("check_pure_state") {
    const Converged& c = fixture();
    SUBCASE("converged minimizer is pure") {
        const CheckRecord r = check_pure_state(c.report.state);
        CHECK(r.pass);
        CHECK(r.measured < 1e-12);
    }
    SUBCASE("states built by the reduction pass at 1e-14") {
        Eigen::ArrayXd alpha = -Eigen::ArrayXd::LinSpaced(64, 0.0, 5.0);
        const State s(pure_gamma_of_alpha(alpha), alpha, 0.1);
        const CheckRecord r = check_pure_state(s);
        CHECK(r.pass);
        CHECK(r.measured < 1e-14);
    }
    SUBCASE("gamma = 1 with alpha = 0 fails with normalized residual 1") {
        const State s(Eigen::ArrayXd::Ones(16), Eigen::ArrayXd::Zero(16), 0.0);
        const CheckRecord r = check_pure_state(s);
        CHECK_FALSE(r.pass);
        CHECK(r.measured == doctest::Approx(1.0));  // |0 - 2| / (1 + 1)
    }
}

TEST_CASE("check_condensate_majority") {
    const Converged& c = fixture();
    SUBCASE("passes on the minimizer with the transfer margin") {
        const CheckRecord r =
            check_condensate_majority(c.report.state, c.grid, c.kernel, c.spec);
        CHECK(r.pass);
        CHECK(r.measured >= -1e-8);
    }
    SUBCASE("fails when the condensate is empty") {
        Eigen::ArrayXd alpha = -0.5 * (-c.grid.nodes.square()).exp();
        const State s(pure_gamma_of_alpha(alpha), alpha, 0.0);
        CHECK_FALSE(check_condensate_majority(s, c.grid, c.kernel, c.spec).pass);
    }
    SUBCASE("flags a positive linear term as a precondition failure") {
        Eigen::ArrayXd alpha = 0.4 * (-c.grid.nodes.square()).exp();  // positive pairing
        const State s(pure_gamma_of_alpha(alpha), alpha, 1.0);
        const CheckRecord r = check_condensate_majority(s, c.grid, c.kernel, c.spec);
        CHECK_FALSE(r.pass);
        CHECK(r.note.find("precondition") != std::string::npos);
    }
}

TEST_CASE("check_decay") {
    const Converged& c = fixture();
    SUBCASE("converged minimizer decays faster than p^-4") {
        const double p0 =
            estimate_decay_onset(c.report.state, c.grid, c.kernel, c.spec, 1.0);
        CHECK(c.grid.pmax >= 2.0 * p0);
        const CheckRecord r = check_decay(c.report.state, c.grid, p0);
        CHECK(r.pass);
        CHECK(r.measured <= -3.5);
    }
    SUBCASE("a p^-2 profile fails the slope test") {
        Eigen::ArrayXd gamma = 1.0 / (1.0 + c.grid.nodes.square());
        Eigen::ArrayXd alpha = Eigen::ArrayXd::Zero(c.grid.n());
        const State s(gamma, alpha, 0.1);
        const CheckRecord r = check_decay(s, c.grid, 1.5);
        CHECK_FALSE(r.pass);
        CHECK(r.measured > -3.5);
    }
    SUBCASE("gamma p^4 growing across the window fails the boundedness proxy") {
        // slope steeper than -3.5 overall but with a large bump at the top
        Eigen::ArrayXd gamma(c.grid.n());
        for (int i = 0; i < c.grid.n(); ++i) {
            const double p = c.grid.nodes[i];
            gamma[i] = std::pow(1.0 + p, -4.0) +
                       2e-3 * std::exp(-8.0 * (p - 7.5) * (p - 7.5));
        }
        const State s(gamma, Eigen::ArrayXd::Zero(c.grid.n()), 0.1);
        const CheckRecord r = check_decay(s, c.grid, 1.5);
        CHECK_FALSE(r.pass);
    }
    SUBCASE("compact support passes trivially") {
        Eigen::ArrayXd gamma(c.grid.n());
        for (int i = 0; i < c.grid.n(); ++i)
            gamma[i] = c.grid.nodes[i] <= 1.0 ? 1.0 : 0.0;
        const State s(gamma, Eigen::ArrayXd::Zero(c.grid.n()), 0.1);
        const CheckRecord r = check_decay(s, c.grid, 1.5);
        CHECK(r.pass);
    }
    SUBCASE("an empty window is inconclusive, not failed") {
        const CheckRecord r = check_decay(c.report.state, c.grid, c.grid.pmax);
        CHECK(r.inconclusive);
        CHECK_FALSE(r.pass);
    }
}

TEST_CASE("check_el_system") {
    const Converged& c = fixture();
    SUBCASE("all six conditions hold at the minimizer") {
        const CheckRecord r =
            check_el_system(c.report.state, c.grid, c.kernel, c.spec, 1.0, 1e-6);
        CHECK(r.pass);
    }
    SUBCASE("vacuum at mu > 0 fails (dF/drho0 would be -mu < 0)") {
        // rho0 = 0 sidesteps the stationarity clause, so probe a tiny
        // positive condensate where dF/drho0 is still far from zero
        const State near_vacuum(Eigen::ArrayXd::Zero(c.grid.n()),
                                Eigen::ArrayXd::Zero(c.grid.n()), 1e-6);
        const CheckRecord r = check_el_system(near_vacuum, c.grid, c.kernel, c.spec, 1.0, 1e-6);
        CHECK_FALSE(r.pass);
    }
    SUBCASE("positive pairing against positive B fails the sign condition") {
        Eigen::ArrayXd alpha = 0.3 * (-c.grid.nodes.square()).exp();
        const State s(pure_gamma_of_alpha(alpha), alpha, 1.0);
        const CheckRecord r = check_el_system(s, c.grid, c.kernel, c.spec, 1.0, 1e6);
        CHECK_FALSE(r.pass);  // alpha B > 0 somewhere even with a huge tol
    }
}

TEST_CASE("check_energy_bounds") {
    const Converged& c = fixture();
    SUBCASE("minimizer sits strictly between the bounds") {
        const Evaluation ev = evaluate(c.report.state, c.grid, c.kernel, c.spec, 1.0);
        const CheckRecord r = check_energy_bounds(ev.energy, ev.density, c.spec, 1.0);
        CHECK(r.pass);
    }
    SUBCASE("the pure condensate misses the strict upper bound") {
        const State s(Eigen::ArrayXd::Zero(c.grid.n()), Eigen::ArrayXd::Zero(c.grid.n()), 1.0);
        const Evaluation ev = evaluate(s, c.grid, c.kernel, c.spec, 1.0);
        CHECK(ev.energy.total == doctest::Approx(-0.5).epsilon(1e-14));
        CHECK_FALSE(check_energy_bounds(ev.energy, ev.density, c.spec, 1.0).pass);
    }
    SUBCASE("the vacuum fails the upper bound") {
        const Evaluation ev =
            evaluate(State::vacuum(c.grid.n()), c.grid, c.kernel, c.spec, 1.0);
        CHECK_FALSE(check_energy_bounds(ev.energy, ev.density, c.spec, 1.0).pass);
    }
}

TEST_CASE("check_shift_stationarity") {
    const Converged& c = fixture();
    SUBCASE("passes on the minimizer") {
        const CheckRecord r =
            check_shift_stationarity(c.report.state, c.grid, c.kernel, c.spec);
        CHECK(r.pass);
        CHECK(r.measured >= -1e-8);
    }
    SUBCASE("fails on a state with a positive linear term") {
        // gamma heavy, alpha positive: shifting mass can pay off
        Eigen::ArrayXd gamma(c.grid.n());
        for (int i = 0; i < c.grid.n(); ++i)
            gamma[i] = c.grid.nodes[i] <= 0.2 ? 4.0 : 0.0;
        Eigen::ArrayXd alpha = (gamma.square() + gamma).sqrt();  // positive sign
        const State s(gamma, alpha, 1.0);
        const CheckRecord r = check_shift_stationarity(s, c.grid, c.kernel, c.spec);
        CHECK_FALSE(r.pass);
    }
}

TEST_CASE("check_convexity_slice") {
    SUBCASE("convex values pass") {
        const CheckRecord r =
            check_convexity_slice({0.0, 1.0, 2.0, 3.0}, {1.0, 0.5, 0.3, 0.4});
        CHECK(r.pass);
    }
    SUBCASE("a concave parabola fails") {
        std::vector<double> xs, fs;
        for (int k = 0; k < 9; ++k) {
            xs.push_back(k);
            fs.push_back(-(k - 4.0) * (k - 4.0));
        }
        CHECK_FALSE(check_convexity_slice(xs, fs).pass);
    }
    SUBCASE("affine values pass (convexity is tested non-strictly)") {
        CHECK(check_convexity_slice({0.0, 0.5, 1.0}, {1.0, 2.0, 3.0}).pass);
    }
    SUBCASE("fewer than three points is an argument error") {
        CHECK_THROWS_AS(check_convexity_slice({0.0, 1.0}, {1.0, 2.0}), std::invalid_argument);
        CHECK_THROWS_AS(check_convexity_slice({1.0, 0.0, 2.0}, {1.0, 2.0, 3.0}),
                        std::invalid_argument);
    }
}

TEST_CASE("run_verify_suite") {
    const Converged& c = fixture();
    SUBCASE("full suite passes on the converged minimizer") {
        const VerificationReport r =
            run_verify_suite(c.report.state, c.grid, c.kernel, c.spec, 1.0);
        CHECK(r.overall());
        for (const CheckRecord& rec : r.checks) {
            INFO(rec.name, ": ", rec.note);
            CHECK((rec.pass || rec.skipped || rec.inconclusive));
        }
    }
    SUBCASE("suite on the vacuum at mu <= 0 passes with skips") {
        const VerificationReport r =
            run_verify_suite(State::vacuum(c.grid.n()), c.grid, c.kernel, c.spec, -1.0);
        CHECK(r.overall());
        bool saw_skip = false;
        for (const CheckRecord& rec : r.checks) saw_skip = saw_skip || rec.skipped;
        CHECK(saw_skip);
    }
    SUBCASE("running the suite twice yields identical records") {
        const VerificationReport a =
            run_verify_suite(c.report.state, c.grid, c.kernel, c.spec, 1.0);
        const VerificationReport b =
            run_verify_suite(c.report.state, c.grid, c.kernel, c.spec, 1.0);
        REQUIRE(a.checks.size() == b.checks.size());
        for (std::size_t k = 0; k < a.checks.size(); ++k) {
            CHECK(a.checks[k].name == b.checks[k].name);
            CHECK(a.checks[k].pass == b.checks[k].pass);
            CHECK(a.checks[k].measured == b.checks[k].measured);
        }
    }
    SUBCASE("overall is false iff some applicable check fails") {
        VerificationReport r;
        r.checks.push_back({"a", true, false, false, 0.0, 0.0, -1, ""});
        r.checks.push_back({"b", false, true, false, 0.0, 0.0, -1, ""});  // skipped
        CHECK(r.overall());
        r.checks.push_back({"c", false, false, false, 0.0, 0.0, -1, ""});
        CHECK_FALSE(r.overall());
    }
}
