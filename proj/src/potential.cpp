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

#include "bogomin/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bogomin {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
// (2pi)^-3 * 4pi, the radial prefactor of the absorbed measure.
const double kRadialMeasure = 4.0 * M_PI / (kTwoPi * kTwoPi * kTwoPi);

// Exact integral of p^2 * (linear segment) over [a, b] where the segment
// interpolates (a, fa) -> (b, fb).
double segment_p2_moment(double a, double b, double fa, double fb) {
    // f(p) = fa + (fb - fa) (p - a) / (b - a)
    const double h = b - a;
    if (h <= 0.0) return 0.0;
    const double slope = (fb - fa) / h;
    const double c0 = fa - slope * a;
    // integral p^2 (c0 + slope p) dp
    const double i3 = (b * b * b - a * a * a) / 3.0;
    const double i4 = (b * b * b * b - a * a * a * a) / 4.0;
    return c0 * i3 + slope * i4;
}

double segment_p2_moment_sq(double a, double b, double fa, double fb) {
    const double h = b - a;
    if (h <= 0.0) return 0.0;
    const double slope = (fb - fa) / h;
    const double c0 = fa - slope * a;
    // integral p^2 (c0 + slope p)^2 dp
    const double i3 = (std::pow(b, 3) - std::pow(a, 3)) / 3.0;
    const double i4 = (std::pow(b, 4) - std::pow(a, 4)) / 4.0;
    const double i5 = (std::pow(b, 5) - std::pow(a, 5)) / 5.0;
    return c0 * c0 * i3 + 2.0 * c0 * slope * i4 + slope * slope * i5;
}

}  // namespace

bool AdmissibilityReport::admissible() const {
    return std::none_of(checks.begin(), checks.end(), [](const AdmissibilityCheck& c) {
        return c.status == CheckStatus::Fail;
    });
}

PotentialSpec PotentialSpec::gaussian(double amplitude, double width) {
    if (!(amplitude > 0.0)) throw std::invalid_argument("gaussian potential: amplitude must be > 0");
    if (!(width > 0.0)) throw std::invalid_argument("gaussian potential: width must be > 0");
    PotentialSpec s;
    s.family_ = PotentialFamily::Gaussian;
    s.amplitude_ = amplitude;
    s.shape_ = width;
    s.vhat0_ = amplitude;
    // integral p^2 exp(-w^2 p^2 / 2) dp = sqrt(pi/2) / w^3, so
    // v0 = a (2pi)^{-3/2} / w^3.
    s.v0_ = amplitude * std::pow(kTwoPi, -1.5) / std::pow(width, 3);
    // integral p^2 exp(-w^2 p^2) dp = sqrt(pi) / (4 w^3)
    s.l2norm_ = std::sqrt(kRadialMeasure * amplitude * amplitude * std::sqrt(M_PI) /
                          (4.0 * std::pow(width, 3)));
    return s;
}

PotentialSpec PotentialSpec::exponential(double amplitude, double rate) {
    if (!(amplitude > 0.0)) throw std::invalid_argument("exponential potential: amplitude must be > 0");
    if (!(rate > 0.0)) throw std::invalid_argument("exponential potential: rate must be > 0");
    PotentialSpec s;
    s.family_ = PotentialFamily::Exponential;
    s.amplitude_ = amplitude;
    s.shape_ = rate;
    s.vhat0_ = amplitude;
    // integral p^2 exp(-b p) dp = 2 / b^3
    s.v0_ = kRadialMeasure * amplitude * 2.0 / std::pow(rate, 3);
    s.l2norm_ = std::sqrt(kRadialMeasure * amplitude * amplitude * 2.0 / std::pow(2.0 * rate, 3));
    return s;
}

PotentialSpec PotentialSpec::tabulated(std::vector<double> nodes, std::vector<double> values) {
    if (nodes.size() != values.size() || nodes.size() < 2)
        throw std::invalid_argument("tabulated potential: need >= 2 (p, vhat) pairs of equal length");
    if (nodes.front() != 0.0)
        throw std::invalid_argument("tabulated potential: table must start at p = 0");
    for (std::size_t i = 1; i < nodes.size(); ++i)
        if (!(nodes[i] > nodes[i - 1]))
            throw std::invalid_argument("tabulated potential: nodes must be strictly ascending");
    for (double v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument("tabulated potential: non-finite value");
        if (v < 0.0) throw std::invalid_argument("tabulated potential: vhat must be nonnegative");
    }
    if (!(values.front() > 0.0))
        throw std::invalid_argument("tabulated potential: vhat(0) must be > 0");

    PotentialSpec s;
    s.family_ = PotentialFamily::Tabulated;
    s.table_p_ = std::move(nodes);
    s.table_v_ = std::move(values);
    s.vhat0_ = s.table_v_.front();
    s.amplitude_ = s.vhat0_;

    // The representation is piecewise linear with a hard zero tail, so the
    // norms are exact segment-by-segment.
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 1; i < s.table_p_.size(); ++i) {
        m1 += segment_p2_moment(s.table_p_[i - 1], s.table_p_[i], s.table_v_[i - 1], s.table_v_[i]);
        m2 += segment_p2_moment_sq(s.table_p_[i - 1], s.table_p_[i], s.table_v_[i - 1], s.table_v_[i]);
    }
    s.v0_ = kRadialMeasure * m1;
    s.l2norm_ = std::sqrt(kRadialMeasure * m2);
    if (!std::isfinite(s.v0_) || !std::isfinite(s.l2norm_))
        throw std::runtime_error("tabulated potential: divergent norm");
    return s;
}

PotentialSpec PotentialSpec::tabulated_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open potential table: " + path);
    std::vector<double> p, v;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        double a, b;
        if (row >> a >> b) {
            p.push_back(a);
            v.push_back(b);
        }
    }
    return tabulated(std::move(p), std::move(v));
}

double PotentialSpec::vhat(double p) const {
    if (p < 0.0) throw std::invalid_argument("vhat: momentum must be >= 0");
    switch (family_) {
        case PotentialFamily::Gaussian:
            return amplitude_ * std::exp(-0.5 * shape_ * shape_ * p * p);
        case PotentialFamily::Exponential:
            return amplitude_ * std::exp(-shape_ * p);
        case PotentialFamily::Tabulated: {
            if (p > table_p_.back()) return 0.0;
            if (p == table_p_.back()) return table_v_.back();
            const auto it = std::upper_bound(table_p_.begin(), table_p_.end(), p);
            const std::size_t hi = static_cast<std::size_t>(it - table_p_.begin());
            const std::size_t lo = hi - 1;
            const double t = (p - table_p_[lo]) / (table_p_[hi] - table_p_[lo]);
            return table_v_[lo] + t * (table_v_[hi] - table_v_[lo]);
        }
    }
    return 0.0;
}

double PotentialSpec::support_radius() const {
    switch (family_) {
        case PotentialFamily::Gaussian:
            return 10.0 / shape_;
        case PotentialFamily::Exponential:
            return 40.0 / shape_;
        case PotentialFamily::Tabulated:
            return table_p_.back();
    }
    return 1.0;
}

std::string PotentialSpec::family_name() const {
    switch (family_) {
        case PotentialFamily::Gaussian: return "gaussian";
        case PotentialFamily::Exponential: return "exponential";
        case PotentialFamily::Tabulated: return "tabulated";
    }
    return "?";
}

AdmissibilityReport check_admissible(const PotentialSpec& spec) {
    AdmissibilityReport report;
    const double range = spec.support_radius();
    const int samples = 20000;

    bool nonneg = true, below0 = true;
    double worst = 0.0;
    for (int i = 0; i <= samples; ++i) {
        const double p = range * static_cast<double>(i) / samples;
        const double v = spec.vhat(p);
        if (v < 0.0) nonneg = false;
        if (v > spec.vhat0() * (1.0 + 1e-12)) {
            below0 = false;
            worst = std::max(worst, v - spec.vhat0());
        }
    }
    report.checks.push_back({"vhat_nonnegative", nonneg ? CheckStatus::Pass : CheckStatus::Fail,
                             "sampled sweep on [0, " + std::to_string(range) + "]"});
    report.checks.push_back({"vhat_bounded_by_vhat0", below0 ? CheckStatus::Pass : CheckStatus::Fail,
                             below0 ? "" : "excess " + std::to_string(worst)});
    report.checks.push_back({"vhat_in_L1",
                             std::isfinite(spec.v0()) ? CheckStatus::Pass : CheckStatus::Fail,
                             "v0 = " + std::to_string(spec.v0())});
    report.checks.push_back({"vhat_in_L2",
                             std::isfinite(spec.l2norm()) ? CheckStatus::Pass : CheckStatus::Fail,
                             "l2norm = " + std::to_string(spec.l2norm())});

    // Positivity of V in position space: the built-in families have manifestly
    // positive inverse transforms (Gaussian -> Gaussian, exponential ->
    // squared Lorentzian). For tabulated data this would require an inverse
    // transform with sign analysis, so it is reported as not verified.
    if (spec.family() == PotentialFamily::Tabulated) {
        report.checks.push_back({"v_nonnegative", CheckStatus::NotVerified,
                                 "position-space positivity not checked for tabulated data"});
    } else {
        report.checks.push_back({"v_nonnegative", CheckStatus::Pass, "analytic for built-in family"});
    }
    return report;
}

}  // namespace bogomin
