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

#include "bogomin/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace bogomin {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
const double kRadialMeasure = 4.0 * M_PI / (kTwoPi * kTwoPi * kTwoPi);

// 1D quadrature coefficients for a uniformly spaced closed segment with
// `m` intervals of width h. Composite Simpson, with a Simpson 3/8 block on
// the last three intervals when m is odd. All coefficients positive; exact
// for cubic polynomials.
void segment_coefficients(int m, double h, std::vector<double>& c) {
    c.assign(static_cast<std::size_t>(m) + 1, 0.0);
    if (m == 1) {  // trapezoid fallback; unreachable for n >= 16 grids
        c[0] = c[1] = h / 2.0;
        return;
    }
    int simpson_end = m;  // number of intervals handled by plain Simpson
    if (m % 2 != 0) simpson_end = m - 3;
    for (int k = 0; k + 2 <= simpson_end; k += 2) {
        c[k] += h / 3.0;
        c[k + 1] += 4.0 * h / 3.0;
        c[k + 2] += h / 3.0;
    }
    if (simpson_end < m) {  // Simpson 3/8 tail
        c[m - 3] += 3.0 * h / 8.0;
        c[m - 2] += 9.0 * h / 8.0;
        c[m - 1] += 9.0 * h / 8.0;
        c[m] += 3.0 * h / 8.0;
    }
}

}  // namespace

double ball_volume(double radius) {
    return kRadialMeasure * radius * radius * radius / 3.0;
}

RadialGrid build_grid(int n, double pmax, GridScheme scheme, double pivot) {
    if (n < 16) throw std::invalid_argument("build_grid: need n >= 16");
    if (!(pmax > 0.0)) throw std::invalid_argument("build_grid: pmax must be > 0");
    if (scheme == GridScheme::Clustered && !(pivot > 0.0 && pivot < pmax))
        throw std::invalid_argument("build_grid: clustered scheme needs 0 < pivot < pmax");

    RadialGrid g;
    g.pmax = pmax;
    g.scheme = scheme;
    g.pivot = (scheme == GridScheme::Clustered) ? pivot : 0.0;
    g.nodes.resize(n);
    g.weights = Eigen::ArrayXd::Zero(n);

    // Segments of uniformly spaced nodes: (first node index, node count, h).
    struct Segment { int start; int count; double h; double origin; };
    std::vector<Segment> segments;
    if (scheme == GridScheme::Uniform) {
        segments.push_back({0, n, pmax / n, 0.0});
    } else {
        const int n_low = n / 2;
        const int n_high = n - n_low;
        segments.push_back({0, n_low, pivot / n_low, 0.0});
        segments.push_back({n_low, n_high, (pmax - pivot) / n_high, pivot});
    }

    for (const Segment& s : segments)
        for (int i = 0; i < s.count; ++i)
            g.nodes[s.start + i] = s.origin + s.h * (i + 1);
    g.nodes[n - 1] = pmax;  // guard against roundoff at the top end

    // 1D coefficients per segment applied to F(p) = p^2 f(p). The left
    // endpoint of the first segment is p = 0 where F vanishes identically,
    // so dropping it loses nothing and the rule stays exact for constants.
    std::vector<double> c;
    for (const Segment& s : segments) {
        segment_coefficients(s.count, s.h, c);
        for (int k = 0; k <= s.count; ++k) {
            const int idx = s.start + k - 1;  // k = 0 is the left endpoint
            if (idx < 0) continue;
            const double p = g.nodes[idx];
            g.weights[idx] += kRadialMeasure * p * p * c[static_cast<std::size_t>(k)];
        }
    }

    for (int i = 0; i < n; ++i)
        if (!(g.weights[i] > 0.0)) throw std::logic_error("build_grid: nonpositive weight");
    return g;
}

double integrate(const RadialGrid& grid, const Eigen::ArrayXd& samples) {
    if (samples.size() != grid.nodes.size())
        throw std::invalid_argument("integrate: sample length does not match grid");
    return (grid.weights * samples).sum();
}

}  // namespace bogomin
